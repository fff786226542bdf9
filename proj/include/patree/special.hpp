#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "patree/quadrature.hpp"

namespace patree {

// Exact binomial coefficient; valid for n <= 64 without overflow.
inline unsigned __int128 binomial_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 64) throw std::invalid_argument("binomial_u128: n > 64");
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return c;
}

inline double binomial(int n, int k) {
  return static_cast<double>(binomial_u128(n, k));
}

// (2n - 1)!! = 1 * 3 * ... * (2n - 1); (−1)!! = 1.
inline double odd_double_factorial(int n) {
  if (n < 0) throw std::invalid_argument("odd_double_factorial: n < 0");
  unsigned __int128 p = 1;
  for (int j = 1; j <= n; ++j) p *= static_cast<unsigned>(2 * j - 1);
  return static_cast<double>(p);
}

// A_m(t) = integral of y^m exp(-y^2/4) over [t, inf).
// Closed recursion: A_0 = sqrt(pi) erfc(t/2), A_1 = 2 exp(-t^2/4),
// A_m = 2 t^(m-1) exp(-t^2/4) + 2 (m-1) A_(m-2).  All terms positive, so the
// upward recursion is stable.
inline double upper_gauss_moment(int m, double t) {
  if (m < 0) throw std::invalid_argument("upper_gauss_moment: m < 0");
  double expf = std::exp(-t * t / 4.0);
  double even = std::sqrt(std::numbers::pi) * std::erfc(t / 2.0);  // A_0
  double odd = 2.0 * expf;                                         // A_1
  if (m == 0) return even;
  if (m == 1) return odd;
  double cur = 0.0;
  for (int k = 2; k <= m; ++k) {
    double prev2 = (k % 2 == 0) ? even : odd;
    cur = 2.0 * std::pow(t, k - 1) * expf + 2.0 * (k - 1) * prev2;
    if (k % 2 == 0)
      even = cur;
    else
      odd = cur;
  }
  return cur;
}

struct AsymptoticValue {
  double value;
  double error_bound;
};

// Truncated large-t expansion of sqrt(pi) * erfc(t/2):
//   2 exp(-t^2/4) * sum_{n=0}^{order} (-1)^n 2^n (2n-1)!! t^(-2n-1).
// The series is enveloping for t > 0, so the remainder is bounded by the
// first omitted term: 2^(order+2) (2 order + 1)!! t^(-(2 order + 3)) e^(-t^2/4).
inline AsymptoticValue erfc_scaled_asymptotic(double t, int order) {
  if (!(t > 0.0)) throw std::invalid_argument("erfc_scaled_asymptotic: t <= 0");
  if (order < 0) throw std::invalid_argument("erfc_scaled_asymptotic: order < 0");
  double expf = std::exp(-t * t / 4.0);
  double sum = 0.0;
  double sign = 1.0;
  for (int n = 0; n <= order; ++n) {
    sum += sign * std::pow(2.0, n) * odd_double_factorial(n) *
           std::pow(t, -2 * n - 1);
    sign = -sign;
  }
  double bound = std::pow(2.0, order + 2) * odd_double_factorial(order + 1) *
                 std::pow(t, -(2 * order + 3)) * expf;
  return {2.0 * expf * sum, bound};
}

// sum_{k=0}^{n} binom(n,k) (-1)^k P(k) for an integer-coefficient polynomial
// P given by coeffs[j] = coefficient of k^j.  Exact signed 128-bit arithmetic;
// the result is 0 whenever deg P < n.
inline __int128 alternating_binomial_sum(int n, const std::vector<long long>& coeffs) {
  __int128 total = 0;
  for (int k = 0; k <= n; ++k) {
    __int128 pk = 0;
    __int128 kpow = 1;
    for (long long c : coeffs) {
      pk += static_cast<__int128>(c) * kpow;
      kpow *= k;
    }
    __int128 term = static_cast<__int128>(binomial_u128(n, k)) * pk;
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

// Confluent hypergeometric U(a, b, z) for a >= 0, z > 0, via
//   Gamma(a) U(a,b,z) = integral_0^inf e^(-z w) w^(a-1) (1+w)^(b-a-1) dw,
// with w = v/(1-v) collapsing the integrand to e^(-z v/(1-v)) v^(a-1) (1-v)^(-b).
// U(0, b, z) = 1.
inline double kummer_u(double a, double b, double z, double rel_tol = 1e-10) {
  if (a < 0.0) throw std::invalid_argument("kummer_u: a < 0");
  if (!(z > 0.0)) throw std::invalid_argument("kummer_u: z <= 0");
  if (a == 0.0) return 1.0;
  auto f = [a, b, z](double v) {
    double om = 1.0 - v;
    return std::exp(-z * v / om) * std::pow(v, a - 1.0) * std::pow(om, -b);
  };
  double integral = integrate_adaptive(f, 0.0, 1.0, rel_tol, 0.0, 8000);
  return std::exp(-std::lgamma(a)) * integral;
}

// U(a, 1/2, z) extended to a >= -1/2 through the Kummer transformation
// U(a, b, z) = z^(1-b) U(a - b + 1, 2 - b, z).
inline double kummer_u_half(double a, double z, double rel_tol = 1e-10) {
  if (a < -0.5) throw std::invalid_argument("kummer_u_half: a < -1/2");
  if (a >= 0.0) return kummer_u(a, 0.5, z, rel_tol);
  return std::sqrt(z) * kummer_u(a + 0.5, 1.5, z, rel_tol);
}

}  // namespace patree
