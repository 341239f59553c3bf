#include "linevo/common/seeding.hpp"

#include <array>
#include <vector>

namespace linevo {
namespace {

std::vector<std::uint32_t> split_words(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  words.reserve(parts.size() * 2 + 1);
  words.push_back(static_cast<std::uint32_t>(parts.size()));
  for (std::uint64_t p : parts) {
    words.push_back(static_cast<std::uint32_t>(p & 0xffffffffULL));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  return words;
}

}  // namespace

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  const auto words = split_words(parts);
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Rng make_stream(std::initializer_list<std::uint64_t> parts) {
  const auto words = split_words(parts);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace linevo
