#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace linevo {

/// Shortest decimal string that parses back to the same double.
std::string format_real(double value);

/// Parses a decimal uint64 (seeds travel as strings to survive JSON readers
/// that coerce integers to doubles).
std::uint64_t parse_u64(std::string_view text);

/// FNV-1a over raw bytes.
class Fnv1a64 {
 public:
  void update(const void* data, std::size_t size);
  void update(std::span<const double> values) { update(values.data(), values.size_bytes()); }
  void update_u64(std::uint64_t v) { update(&v, sizeof v); }
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace linevo
