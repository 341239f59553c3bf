#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace linevo {

using Rng = std::mt19937_64;

/// Stream tags keep seeds for different purposes disjoint even when the
/// numeric coordinates coincide.
enum class StreamTag : std::uint64_t {
  kCandidate = 1,
  kTrainEpisode = 2,
  kTestEpisode = 3,
  kEnvReset = 4,
  kTestFunction = 5,
};

/// Derives a 64-bit seed from an ordered tuple of coordinates via
/// std::seed_seq, so the mapping is fixed by the standard.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Engine seeded from the same coordinates as derive_seed.
Rng make_stream(std::initializer_list<std::uint64_t> parts);

}  // namespace linevo
