#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "patree/rng.hpp"
#include "patree/special.hpp"
#include "patree/tree.hpp"

namespace patree {

// Limit laws of rescaled degrees d_i(n) / sqrt(n).  Gamma arithmetic is kept
// in log space throughout.

// GGa(a, b): density proportional to x^(a-1) exp(-x^b) on x > 0.
// If G ~ Gamma(a/b, 1) then G^(1/b) has exactly this law.
inline double sample_gga(double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("sample_gga: a, b > 0");
  return std::pow(rng.gamma(a / b), 1.0 / b);
}

// E X^r for X ~ GGa(a, b).
inline double moment_gga(double a, double b, double r) {
  return std::exp(std::lgamma((a + r) / b) - std::lgamma(a / b));
}

// Joint limit of the seed-vertex degrees: (D_1, ..., D_m) = 2 Z X with
// Z ~ GGa(2m - 1, 2) independent of X ~ Dirichlet(d(1), ..., d(m)).
// The seed is taken as given (callers canonically relabel if they want the
// degree-sorted order).
inline std::vector<double> sample_joint_limit_degrees(const Tree& seed, RngStream& rng) {
  int m = seed.size();
  if (m < 2) throw std::invalid_argument("sample_joint_limit_degrees: |T| < 2");
  std::vector<double> alpha(m);
  for (int v = 0; v < m; ++v) alpha[v] = seed.degree(v);
  std::vector<double> x = rng.dirichlet(alpha);
  double z = sample_gga(2.0 * m - 1.0, 2.0, rng);
  for (double& xi : x) xi *= 2.0 * z;
  return x;
}

// Limit of a seed-subset degree sum whose subset has total seed degree d:
// 2 B Z with B ~ Beta(d, 2|T| - 2 - d), or 2 Z for the whole tree
// (d = 2|T| - 2).
inline double sample_subset_sum_limit(int tree_size, int d, RngStream& rng) {
  if (tree_size < 2) throw std::invalid_argument("sample_subset_sum_limit: |T| < 2");
  if (d < 1 || d > 2 * tree_size - 2)
    throw std::invalid_argument("sample_subset_sum_limit: d out of range");
  double z = sample_gga(2.0 * tree_size - 1.0, 2.0, rng);
  if (d == 2 * tree_size - 2) return 2.0 * z;
  double b = rng.beta(d, 2.0 * tree_size - 2.0 - d);
  return 2.0 * b * z;
}

// A vertex arriving after the seed has degree 1 in a tree of its own size, so
// its limit is the subset law at (i, 1) regardless of the seed.
inline double sample_late_vertex_limit(int i, RngStream& rng) {
  if (i < 3) throw std::invalid_argument("sample_late_vertex_limit: i < 3");
  return sample_subset_sum_limit(i, 1, rng);
}

// E D_i^r for a seed vertex of degree d in a size-m seed:
// Gamma(m - 1) Gamma(d + r) / (Gamma(d) Gamma(m - 1 + r/2)).
inline double moment_seed_vertex(int tree_size, int d, double r) {
  if (tree_size < 2 || d < 1) throw std::invalid_argument("moment_seed_vertex: bad args");
  double m = tree_size;
  return std::exp(std::lgamma(m - 1.0) + std::lgamma(d + r) - std::lgamma(d) -
                  std::lgamma(m - 1.0 + r / 2.0));
}

// E D_i^r for vertex i arriving after the seed (i > |T|):
// Gamma(i - 1) Gamma(1 + r) / Gamma(i - 1 + r/2).
inline double moment_late_vertex(int i, double r) {
  if (i < 3) throw std::invalid_argument("moment_late_vertex: i < 3");
  return std::exp(std::lgamma(i - 1.0) + std::lgamma(1.0 + r) -
                  std::lgamma(i - 1.0 + r / 2.0));
}

// E W_s^r = (s/2)^(r/2) Gamma(s) Gamma(1 + r) / Gamma(s + r/2).
inline double moment_Ws(double s, double r) {
  if (!(s > 0.0)) throw std::invalid_argument("moment_Ws: s <= 0");
  return std::exp(0.5 * r * std::log(s / 2.0) + std::lgamma(s) +
                  std::lgamma(1.0 + r) - std::lgamma(s + r / 2.0));
}

// Density of W_s on x > 0 (s >= 1/2):
//   kappa_s(x) = Gamma(s) sqrt(2 / (s pi)) e^(-x^2 / (2s)) U(s - 1, 1/2, x^2 / (2s)).
// U at negative first argument (1/2 <= s < 1) goes through the Kummer
// transformation inside kummer_u_half.
inline double kappa_density(double s, double x, double rel_tol = 1e-10) {
  if (!(s >= 0.5)) throw std::invalid_argument("kappa_density: s < 1/2");
  if (!(x > 0.0)) return 0.0;
  double z = x * x / (2.0 * s);
  double u = kummer_u_half(s - 1.0, z, rel_tol);
  return std::exp(std::lgamma(s)) * std::sqrt(2.0 / (s * std::numbers::pi)) *
         std::exp(-z) * u;
}

// Tail bound for W_s, s >= 1: integral_x^inf kappa_s <= (s/x) kappa_s(x).
inline double kappa_tail_bound(double s, double x, double rel_tol = 1e-10) {
  if (!(s >= 1.0)) throw std::invalid_argument("kappa_tail_bound: s < 1");
  if (!(x > 0.0)) throw std::invalid_argument("kappa_tail_bound: x <= 0");
  return (s / x) * kappa_density(s, x, rel_tol);
}

}  // namespace patree
