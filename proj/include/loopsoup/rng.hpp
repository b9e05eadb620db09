#pragma once
#include <cstdint>
#include <cmath>
#include <array>

namespace loopsoup {

// Counter-keyed random stream: (seed, stream_id) fully determines the draw
// sequence, independent of thread scheduling. xoshiro256++ seeded through
// splitmix64 so nearby stream ids decorrelate.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {
    uint64_t x = seed ^ (stream_id * 0x9e3779b97f4a7c15ULL) ^ 0x8e58b4b6c8a2f3ULL;
    for (auto& s : s_) s = splitmix(x);
    // discard a few outputs so weak seeds mix
    for (int i = 0; i < 4; ++i) (void)u64();
    have_gauss_ = false;
  }

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_; }

  uint64_t u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in (0,1); never returns 0 or 1
  double uniform() { return (static_cast<double>(u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  uint64_t uniform_below(uint64_t n) {
    // Lemire rejection-free-ish bounded draw
    __uint128_t m = static_cast<__uint128_t>(u64()) * n;
    uint64_t lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t thresh = (0 - n) % n;
      while (lo < thresh) {
        m = static_cast<__uint128_t>(u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Marsaglia polar method (no trig, deterministic given the stream)
  double gaussian() {
    if (have_gauss_) { have_gauss_ = false; return gauss_; }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    gauss_ = v * f;
    have_gauss_ = true;
    return u * f;
  }

  double exponential() { return -std::log(uniform()); }

  // Gamma(shape, rate 1), Marsaglia-Tsang with the alpha<1 boost
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      // inversion by multiplication
      const double l = std::exp(-mean);
      uint64_t k = 0;
      double p = uniform();
      while (p > l) { ++k; p *= uniform(); }
      return k;
    }
    // PTRS transformed rejection (Hormann)
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      double u = uniform() - 0.5;
      double v = uniform();
      double us = 0.5 - std::fabs(u);
      double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * std::log(mean) - mean - std::lgamma(k + 1.0)) {
        return static_cast<uint64_t>(k);
      }
    }
  }

  // Derived independent stream, usable in nested samplers.
  RngStream substream(uint64_t tag) const {
    return RngStream(seed_ ^ (0xd1342543de82ef95ULL * (stream_ + 1)), tag);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  static uint64_t splitmix(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<uint64_t, 4> s_{};
  uint64_t seed_ = 0, stream_ = 0;
  double gauss_ = 0.0;
  bool have_gauss_ = false;
};

// Stream id for (experiment, scale, replica) triples; stable across
// parallelism widths by construction.
inline uint64_t replica_stream_id(uint64_t config_hash, uint64_t scale_index, uint64_t replica) {
  uint64_t h = config_hash ^ 0x9e3779b97f4a7c15ULL;
  h ^= (scale_index + 1) * 0xc2b2ae3d27d4eb4fULL;
  h ^= (replica + 1) * 0x165667b19e3779f9ULL;
  h ^= h >> 29; h *= 0xbf58476d1ce4e5b9ULL; h ^= h >> 32;
  return h;
}

}  // namespace loopsoup
