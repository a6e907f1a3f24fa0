#include "gibbssat/rng.hpp"

namespace gibbssat {

uint32_t SplitMix64::next_below(uint32_t n) {
  uint64_t x = next_u64() >> 32;
  uint64_t m = x * n;
  uint32_t low = static_cast<uint32_t>(m);
  if (low < n) {
    uint32_t threshold = static_cast<uint32_t>(-n) % n;  // 2^32 mod n
    while (low < threshold) {
      x = next_u64() >> 32;
      m = x * n;
      low = static_cast<uint32_t>(m);
    }
  }
  return static_cast<uint32_t>(m >> 32);
}

uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
  auto mix = [](uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  uint64_t h = mix(a + 0x9e3779b97f4a7c15ull);
  h = mix(h ^ (b + 0x9e3779b97f4a7c15ull * 2));
  h = mix(h ^ (c + 0x9e3779b97f4a7c15ull * 3));
  return h;
}

}  // namespace gibbssat
