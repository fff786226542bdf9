#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "patree/rng.hpp"

namespace patree {

inline double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_of: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance (n-1 denominator).
inline double variance_of(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance_of: need >= 2 samples");
  double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double stddev_of(const std::vector<double>& xs) { return std::sqrt(variance_of(xs)); }

// r-th raw moment (1/n) sum x^r.
inline double raw_moment(const std::vector<double>& xs, double r) {
  if (xs.empty()) throw std::invalid_argument("raw_moment: empty sample");
  double s = 0.0;
  for (double x : xs) s += std::pow(x, r);
  return s / static_cast<double>(xs.size());
}

// Empirical survival fraction P(X > t).
inline double empirical_survival(const std::vector<double>& xs, double t) {
  if (xs.empty()) throw std::invalid_argument("empirical_survival: empty sample");
  std::uint64_t c = 0;
  for (double x : xs)
    if (x > t) ++c;
  return static_cast<double>(c) / static_cast<double>(xs.size());
}

// Order-statistic quantile of a sorted sample: element at floor(q * (n-1)).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile_sorted: q outside [0,1]");
  auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
  return sorted[std::min(idx, sorted.size() - 1)];
}

// Two-sample Kolmogorov-Smirnov statistic sup_t |F_a(t) - F_b(t)|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return d;
}

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_vs_cdf(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("ks_vs_cdf: empty sample");
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Bootstrap resample with replacement, same size as the input.
inline std::vector<double> bootstrap_resample(const std::vector<double>& xs, RngStream& rng) {
  std::vector<double> out(xs.size());
  for (auto& o : out) o = xs[rng.uniform_below(xs.size())];
  return out;
}

}  // namespace patree
