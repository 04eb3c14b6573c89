#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace wavecb {

/// splitmix64: used to expand seeds and to derive independent per-replication
/// stream seeds from (master seed, stream index).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the `index`-th independent sub-stream of a master seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64_next(s);
  s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  std::uint64_t b = splitmix64_next(s);
  return a ^ (b + 0x2545f4914f6cdd1dULL * (index + 1));
}

/// xoshiro256++ with a splitmix64-expanded seed. Hand-rolled so that streams
/// are identical across platforms and standard-library versions.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64_next(seed);
  }

  std::uint64_t next() {
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

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Standard-Normal stream via Box-Muller (deterministic, platform-stable).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so log() is finite.
    const double u1 = 1.0 - gen_.uniform01();
    const double u2 = gen_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  Xoshiro256pp gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wavecb
