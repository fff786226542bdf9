#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace patree {

// All randomness flows through RngStream so that runs are reproducible from
// (master seed, stream index) alone.  Stream k never touches stream j's
// state, which lets replicas run on any thread and still merge in replica
// order.  mt19937_64 is fully specified by the standard, and every variate
// transform below is implemented here rather than taken from
// std::*_distribution (whose algorithms are implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream_index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL;
    std::uint64_t b = splitmix64(s);
    engine_.seed(a ^ (b + 0x9E3779B97F4A7C15ULL));
  }

  static const char* generator_name() { return "mt19937_64/splitmix64"; }

  std::uint64_t u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe under log().
  double uniform01_pos() {
    return (static_cast<double>(u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n).  Lemire's multiply-shift with rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n == 0");
    std::uint64_t x = u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = u64();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  double exponential() { return -std::log(uniform01_pos()); }

  // Marsaglia polar method; the spare value is cached per stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Marsaglia-Tsang for shape >= 1; boosted by U^(1/shape) below 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape <= 0");
    if (shape < 1.0) {
      double g = gamma(shape + 1.0);
      return g * std::pow(uniform01_pos(), 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform01_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  // Normalized independent gammas.
  std::vector<double> dirichlet(const std::vector<double>& alpha) {
    std::vector<double> out(alpha.size());
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      out[i] = gamma(alpha[i]);
      total += out[i];
    }
    for (double& x : out) x /= total;
    return out;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace patree
