#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace patree {

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7/K15) on finite intervals, plus a rational
// substitution for half-infinite ones.  Kronrod abscissae are interior, so
// integrable endpoint singularities (e.g. w^(a-1) with 0 < a < 1) are never
// evaluated at the endpoint itself.

namespace detail_quad {

// QUADPACK dqk15 abscissae/weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                                  0.381830050505119, 0.417959183673469};

template <typename F>
std::pair<double, double> kronrod15(F&& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double result_k = kWgk[7] * fc;
  double result_g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = h * kXgk[i];
    double fsum = f(c - dx) + f(c + dx);
    result_k += kWgk[i] * fsum;
    if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
  }
  result_k *= h;
  result_g *= h;
  return {result_k, std::abs(result_k - result_g)};
}

struct Segment {
  double a, b, value, error;
};

}  // namespace detail_quad

// Integrates f over [a, b] until the summed Kronrod-Gauss discrepancy drops
// below rel_tol * |integral| + abs_tol.  Throws numerical_error if the
// subdivision budget is exhausted first.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                          double abs_tol = 0.0, std::size_t max_segments = 4000) {
  using detail_quad::Segment;
  auto [v0, e0] = detail_quad::kronrod15(f, a, b);
  std::vector<Segment> segs{{a, b, v0, e0}};
  for (;;) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (err <= rel_tol * std::abs(total) + abs_tol) return total;
    if (segs.size() >= max_segments)
      throw numerical_error("integrate_adaptive: did not converge");
    Segment s = segs[worst];
    double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b))
      throw numerical_error("integrate_adaptive: interval underflow");
    auto [vl, el] = detail_quad::kronrod15(f, s.a, mid);
    auto [vr, er] = detail_quad::kronrod15(f, mid, s.b);
    segs[worst] = {s.a, mid, vl, el};
    segs.push_back({mid, s.b, vr, er});
  }
}

// Integral of f over [a, +inf) via x = a + u/(1-u), dx = du/(1-u)^2.
template <typename F>
double integrate_to_inf(F&& f, double a, double rel_tol = 1e-10,
                        double abs_tol = 0.0, std::size_t max_segments = 4000) {
  auto g = [&](double u) {
    double om = 1.0 - u;
    double x = a + u / om;
    return f(x) / (om * om);
  };
  return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol, max_segments);
}

}  // namespace patree
