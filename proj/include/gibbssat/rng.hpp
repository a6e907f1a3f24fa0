#pragma once

#include <cstdint>

namespace gibbssat {

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the state advances by
// a fixed odd increment and each output is a bijective mix of the counter,
// so a stream is fully determined by its 64-bit key and can be split by
// re-keying. Used everywhere reproducibility matters.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n) via Lemire's multiply-shift rejection.
  // Hand-rolled (not std::uniform_int_distribution) so the stream is
  // bit-identical across standard libraries and platforms.
  uint32_t next_below(uint32_t n);

  bool next_bool() { return next_u64() >> 63; }

 private:
  uint64_t state_;
};

// Derives a child seed from up to three words (e.g. master seed, density
// index, instance index). Fixed function; documented part of the sweep
// reproducibility contract.
uint64_t mix_seed(uint64_t a, uint64_t b = 0, uint64_t c = 0);

}  // namespace gibbssat
