#include "penpc/rng.hpp"

namespace penpc {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

template <typename Range>
std::uint64_t derive_seed_impl(std::uint64_t master, const Range& path) {
  std::uint64_t state = master;
  std::uint64_t seed = splitmix64(state);
  for (std::uint64_t label : path) {
    state ^= label;
    seed = splitmix64(state);
  }
  return seed;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) {
  return derive_seed_impl(master, path);
}

std::uint64_t derive_seed(std::uint64_t master,
                          const std::vector<std::uint64_t>& path) {
  return derive_seed_impl(master, path);
}

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace penpc
