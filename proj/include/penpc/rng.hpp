#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace penpc {

using Rng = std::mt19937_64;

// One splitmix64 step: advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministically derives the seed of a labeled substream, e.g.
// derive_seed(master, {setting, replicate, phase}). Distinct label paths
// give independent-looking seeds; the same path always gives the same seed.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path);
std::uint64_t derive_seed(std::uint64_t master,
                          const std::vector<std::uint64_t>& path);

Rng make_rng(std::uint64_t seed);

}  // namespace penpc
