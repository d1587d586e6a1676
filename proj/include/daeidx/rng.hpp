#pragma once

#include <cstdint>

#include "daeidx/rat.hpp"

namespace daeidx {

// splitmix64: tiny, portable, deterministic across platforms
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// combine a master seed with a stream tag and an index into a fresh seed
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  SplitMix64 s(master ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (index + 0x632be59bd9b4e019ULL));
  s.next();
  return s.next();
}

// uniform draw from [-B, B] by rejection on fixed-width bit strings
Int uniform_in_range(SplitMix64& rng, const Int& B);

}  // namespace daeidx
