#pragma once

#include <cstdint>
#include <random>

namespace slicesim {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One independent stream per (master seed, tag). Traffic streams are keyed by
// UE id and service streams by UPF id, so the scheduler choice never perturbs
// the arrival realizations of a compared run.
inline std::mt19937_64 make_stream(uint64_t master_seed, uint64_t tag) {
  return std::mt19937_64(splitmix64(master_seed ^ splitmix64(tag)));
}

}  // namespace slicesim
