#pragma once
#include <cstdint>
#include <vector>

namespace edem {

// Single per-run random stream. xoshiro256++ seeded via splitmix64, so runs
// are bit-identical across platforms (no reliance on libstdc++ distribution
// internals). Every helper consumes a documented number of raw draws; the
// per-tick consumption order is written out in draw_order_registry().
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  std::uint64_t seed() const { return seed_; }

  // raw 64-bit draw
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // one draw; uniform on [0, 1) with 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // one draw; uniform on [lo, hi)
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // one draw; unbiased-to-2^-64 bounded integer in [0, n) (Lemire multiply-shift)
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // one draw
  bool bernoulli(double p) { return uniform01() < p; }

  // Fisher-Yates, consuming size-1 draws (i = size-1 .. 1)
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace edem
