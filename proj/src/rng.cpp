#include "daeidx/rng.hpp"

#include <stdexcept>

namespace daeidx {

Int uniform_in_range(SplitMix64& rng, const Int& B) {
  if (B < 0) throw std::logic_error("uniform_in_range: negative range");
  Int span = 2 * B + 1;
  size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
  size_t words = (bits + 63) / 64;
  for (;;) {
    Int draw = 0;
    for (size_t w = 0; w < words; ++w) {
      draw <<= 64;
      Int chunk;
      uint64_t raw = rng.next();
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(raw), 0, 0, &raw);
      draw |= chunk;
    }
    // keep only `bits` bits so the acceptance probability stays >= 1/2
    Int mask = (Int(1) << bits) - 1;
    draw &= mask;
    if (draw < span) return draw - B;
  }
}

}  // namespace daeidx
