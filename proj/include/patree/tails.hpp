#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "patree/quadrature.hpp"
#include "patree/special.hpp"

namespace patree {

// Tail analytics for V = 2 B Z with B ~ Beta(a, b), Z ~ GGa(a+b+1, 2),
// a, b positive integers.  Subset sums of limiting seed degrees have this
// form with a = d (the subset's seed degree) and b = 2|T| - 2 - d.

// c(a, d) = Gamma(2a - 2) / (2^(d-1) Gamma(a - 1/2) Gamma(d)), a > 1.
inline double const_c(double a, double d) {
  if (!(a > 1.0) || !(d > 0.0)) throw std::invalid_argument("const_c: need a > 1, d > 0");
  double lg = std::lgamma(2.0 * a - 2.0) - (d - 1.0) * std::numbers::ln2 -
              std::lgamma(a - 0.5) - std::lgamma(d);
  return std::exp(lg);
}

struct TailValue {
  double value;
  // True when the closed form was abandoned for the quadrature route because
  // alternating-sum cancellation exceeded the 1e12 guard.
  bool from_quadrature = false;
};

namespace detail_tails {

inline void check_ab(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("tail_V: need a, b >= 1");
  if (a + b > 64) throw std::invalid_argument("tail_V: a + b > 64 unsupported");
}

// Survival function of Beta(a, b) at x for integer parameters:
// 1 - I_x(a, b) = sum_{j=0}^{a-1} binom(a+b-1, j) x^j (1-x)^(a+b-1-j).
inline double beta_survival_int(int a, int b, double x) {
  int n = a + b - 1;
  double c = 1.0;  // binom(n, 0)
  double sum = 0.0;
  for (int j = 0; j < a; ++j) {
    sum += c * std::pow(x, j) * std::pow(1.0 - x, n - j);
    c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
  }
  return sum;
}

}  // namespace detail_tails

// P(V > t) by integrating the GGa(a+b+1, 2) density of Z against the Beta
// survival at t/(2z):
//   integral_(t/2)^inf [1 - I_(t/2z)(a, b)] * (2 / Gamma((a+b+1)/2)) z^(a+b) e^(-z^2) dz
// with the substitution z = t/2 + u/(1-u).  The z-power factor is assembled
// in log space so large a+b stays finite.
inline double tail_V_quadrature(int a, int b, double t, double rel_tol = 1e-10) {
  detail_tails::check_ab(a, b);
  if (!(t > 0.0)) return 1.0;
  double log_norm = std::numbers::ln2 - std::lgamma(0.5 * (a + b + 1));
  auto f = [&](double z) {
    double x = t / (2.0 * z);
    double surv = detail_tails::beta_survival_int(a, b, x);
    if (surv <= 0.0) return 0.0;
    double lg = log_norm + (a + b) * std::log(z) - z * z;
    return surv * std::exp(lg);
  };
  return integrate_to_inf(f, t / 2.0, rel_tol, 0.0, 8000);
}

// Closed form for P(V > t):
//   2^-(a+b) / Gamma((a+b+1)/2) *
//   sum_{j=0}^{a-1} sum_{k=0}^{a+b-1-j} binom(a+b-1, j) binom(a+b-1-j, k)
//                   (-1)^(a+b-1-j-k) t^(a+b-1-k) A_(k+1)(t)
// with A_m the upper Gaussian moments.  The terms alternate and nearly
// cancel for large t; compensated summation plus a cancellation guard keeps
// the route honest, falling back to quadrature (flagged) past 1e12 blow-up.
inline TailValue tail_V_exact(int a, int b, double t) {
  detail_tails::check_ab(a, b);
  if (!(t > 0.0)) return {1.0, false};
  int n = a + b - 1;
  // A_1 .. A_(n+1).
  std::vector<double> A(n + 2);
  for (int m = 0; m <= n + 1; ++m) A[m] = upper_gauss_moment(m, t);

  double sum = 0.0, comp = 0.0, max_abs = 0.0;
  for (int j = 0; j <= a - 1; ++j) {
    double cj = binomial(n, j);
    for (int k = 0; k <= n - j; ++k) {
      double term = cj * binomial(n - j, k) * std::pow(t, n - k) * A[k + 1];
      if ((n - j - k) % 2 != 0) term = -term;
      max_abs = std::max(max_abs, std::abs(term));
      double y = term - comp;
      double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
  }
  double scale = std::exp(-(a + b) * std::numbers::ln2 - std::lgamma(0.5 * (a + b + 1)));
  double value = scale * sum;
  if (!(std::abs(sum) * 1e12 >= max_abs) || !(value > 0.0) || value > 1.0) {
    return {tail_V_quadrature(a, b, t), true};
  }
  return {value, false};
}

// Large-t equivalent of the subset-sum tail for a size-|T| seed and subset
// degree d: c(|T|, d) t^(1 - 2|T| + 2d) e^(-t^2/4).  Valid for
// 1 <= d <= 2|T| - 2 (d = 2|T| - 2 reproduces the whole-tree 2Z tail).
inline double tail_asymptotic_subset(int tree_size, int d, double t) {
  if (tree_size < 2) throw std::invalid_argument("tail_asymptotic_subset: |T| < 2");
  if (d < 1 || d > 2 * tree_size - 2)
    throw std::invalid_argument("tail_asymptotic_subset: d out of range");
  if (!(t > 0.0)) throw std::invalid_argument("tail_asymptotic_subset: t <= 0");
  return const_c(tree_size, d) * std::pow(t, 1 - 2 * tree_size + 2 * d) *
         std::exp(-t * t / 4.0);
}

// Max-degree tail equivalent: multiplicity m of the maximum seed degree times
// the single-vertex tail at d = Delta(T).
inline double tail_asymptotic_max(int tree_size, int max_degree, int multiplicity,
                                  double t) {
  if (multiplicity < 1) throw std::invalid_argument("tail_asymptotic_max: m < 1");
  return multiplicity * tail_asymptotic_subset(tree_size, max_degree, t);
}

// Upper bound on sum_{i >= L} P(D_i > t) over late vertices (i beyond the
// seed), assembled as (2 / (sqrt(pi) t)) e^(-t^2/4) * S(L, t) where
//   S(3, t) = 4/t^2 + 16/t^4,
//   S(L, t) = 4^(L-2) (L-2)! / t^(2L-4)   for L >= 4,
// the geometric-series bounds on sum_i (i-2)! U(i-2, 1/2, t^2/4); both hold
// for every t > 0.  The bound is only informative once t is large enough
// that S(L, t) is small.
inline double tail_bound_late_vertices(int L, double t) {
  if (L < 3) throw std::invalid_argument("tail_bound_late_vertices: L < 3");
  if (!(t > 0.0)) throw std::invalid_argument("tail_bound_late_vertices: t <= 0");
  double s;
  if (L == 3) {
    s = 4.0 / (t * t) + 16.0 / std::pow(t, 4);
  } else {
    double lg = (L - 2) * std::log(4.0) + std::lgamma(L - 1) -
                (2.0 * L - 4.0) * std::log(t);
    s = std::exp(lg);
  }
  return (2.0 / (std::sqrt(std::numbers::pi) * t)) * std::exp(-t * t / 4.0) * s;
}

}  // namespace patree
