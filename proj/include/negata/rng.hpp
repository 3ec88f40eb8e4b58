// Seeded randomness with platform-independent draws. std::mt19937_64 is
// fully specified by the standard; the distributions are not, so bounded
// draws and shuffles are done here.

#ifndef NEGATA_RNG_HPP_
#define NEGATA_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace negata {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, 64 bit.
inline std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ splitmix64(value));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream keyed by a base seed, a label and up to two integers, so that
  // independent consumers (one per document, per stage) never share draws.
  static Rng keyed(std::uint64_t seed, std::string_view label, std::uint64_t a = 0,
                   std::uint64_t b = 0) {
    std::uint64_t s = mix_seed(seed, stable_hash(label));
    s = mix_seed(s, a);
    s = mix_seed(s, b);
    return Rng(s);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound > 0; unbiased by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace negata

#endif  // NEGATA_RNG_HPP_
