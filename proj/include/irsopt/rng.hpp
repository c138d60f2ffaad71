// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace irsopt {

/// splitmix64 finalizer; whitens user-provided seeds and derives substreams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic substream seed for (master seed, stream tag, item index).
/// Every Monte Carlo trial owns independent streams derived this way, so
/// results do not depend on execution order or thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(tag));
  s = splitmix64(s ^ splitmix64(index));
  return s;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

}  // namespace irsopt
