#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patree/grow.hpp"
#include "patree/limit_laws.hpp"
#include "patree/parallel.hpp"
#include "patree/rng.hpp"
#include "patree/stats.hpp"
#include "patree/tree.hpp"
#include "patree/umax.hpp"

namespace patree {

// A scalar functional of the grown tree, scaled by 1/sqrt(n).  Vertex indices
// refer to 0-based labels of the *canonically relabeled* seed (callers parsing
// 1-based config input subtract one).
struct StatisticSpec {
  enum class Kind { MaxDegreeScaled, VertexDegreeScaled, SubsetSumScaled, UmaxScaled };

  Kind kind = Kind::MaxDegreeScaled;
  std::vector<int> vertices;  // VertexDegreeScaled uses vertices[0]
  Tree pattern;               // UmaxScaled

  void validate(const Tree& seed) const {
    switch (kind) {
      case Kind::MaxDegreeScaled:
        break;
      case Kind::VertexDegreeScaled:
        if (vertices.size() != 1)
          throw std::invalid_argument("statistic: vertex_degree_scaled needs one vertex");
        [[fallthrough]];
      case Kind::SubsetSumScaled: {
        if (vertices.empty())
          throw std::invalid_argument("statistic: subset_sum_scaled needs vertices");
        for (int v : vertices)
          if (v < 0 || v >= seed.size())
            throw std::invalid_argument("statistic: vertex outside the seed tree");
        auto sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw std::invalid_argument("statistic: repeated vertex");
        break;
      }
      case Kind::UmaxScaled:
        if (pattern.size() == 0)
          throw std::invalid_argument("statistic: umax_scaled needs a pattern tree");
        break;
    }
  }

  std::string name() const {
    switch (kind) {
      case Kind::MaxDegreeScaled:
        return "max_degree_scaled";
      case Kind::VertexDegreeScaled:
        return "vertex_degree_scaled(v=" + std::to_string(vertices[0] + 1) + ")";
      case Kind::SubsetSumScaled: {
        std::string s = "subset_sum_scaled(v=";
        for (std::size_t i = 0; i < vertices.size(); ++i)
          s += (i ? "," : "") + std::to_string(vertices[i] + 1);
        return s + ")";
      }
      case Kind::UmaxScaled:
        return "umax_scaled(pattern=" + canonical_code(pattern) + ")";
    }
    return "?";
  }

  // Evaluate on a fully grown state.  A pattern with no embedding counts as
  // weight zero.
  double eval(const GrowthState& st) const {
    double root_n = std::sqrt(static_cast<double>(st.size()));
    switch (kind) {
      case Kind::MaxDegreeScaled:
        return st.max_degree / root_n;
      case Kind::VertexDegreeScaled:
        return st.degrees[static_cast<std::size_t>(vertices[0])] / root_n;
      case Kind::SubsetSumScaled: {
        double s = 0.0;
        for (int v : vertices) s += st.degrees[static_cast<std::size_t>(v)];
        return s / root_n;
      }
      case Kind::UmaxScaled: {
        auto v = umax_dp(pattern, to_tree(st));
        return v ? static_cast<double>(*v) / root_n : 0.0;
      }
    }
    return 0.0;
  }
};

// Grow `replicas` independent PA(n, seed) trees and evaluate the statistic.
// The seed is canonically relabeled first, so vertex indices in the statistic
// refer to canonical labels.  Replica r of side `side` draws from stream
// r * n_sides + side; results are in replica order regardless of scheduling.
inline std::vector<double> run_statistic_replicas(const Tree& seed_in, std::uint64_t n,
                                                  std::uint32_t replicas,
                                                  const StatisticSpec& spec,
                                                  std::uint64_t master_seed,
                                                  unsigned side = 0, unsigned n_sides = 1,
                                                  unsigned threads = 1) {
  if (n_sides == 0 || side >= n_sides)
    throw std::invalid_argument("run_statistic_replicas: bad side");
  Tree seed = canonical_relabel(seed_in);
  spec.validate(seed);
  std::vector<double> out(replicas);
  parallel_replicas(replicas, threads, [&](std::uint64_t r) {
    RngStream rng(master_seed, r * n_sides + side);
    GrowthState st = grow(seed, n, rng);
    out[r] = spec.eval(st);
  });
  return out;
}

struct SurvivalRow {
  double t;
  double survival_a;
  double survival_b;
};

// Everything the TV lower-bound experiment reports.  `estimate` is the signed
// difference on the estimation half at the selected threshold; `clamped`
// restricts it to [0, 1].
struct TVLowerBoundResult {
  double estimate = 0.0;
  double clamped = 0.0;
  double threshold = 0.0;
  int direction = 1;  // +1 means P(A > t) - P(B > t) was the larger direction
  double bootstrap_se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> grid;
  std::vector<SurvivalRow> curve;  // survival of the estimation halves over grid
  std::string diagnostics;
  std::vector<double> samples_a;
  std::vector<double> samples_b;
};

struct ExperimentConfig {
  std::vector<Tree> seed_trees;  // exactly two for the TV lower bound
  std::uint64_t n = 0;
  std::uint32_t replicas = 0;  // per seed tree
  StatisticSpec statistic;
  std::vector<double> threshold_grid;  // empty: automatic quantile grid
  std::uint64_t master_seed = 0;
  std::uint32_t bootstrap_rounds = 1000;
};

namespace detail_harness {

// Streams 0 .. 2R-1 feed the replicas; bootstrap and limit-law sampling use
// disjoint high stream blocks.
inline constexpr std::uint64_t kBootstrapStreamBase = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kLimitStreamBase = std::uint64_t{1} << 41;

inline void split_halves(const std::vector<double>& xs, std::vector<double>& sel,
                         std::vector<double>& est) {
  for (std::size_t i = 0; i < xs.size(); ++i) (i % 2 == 0 ? sel : est).push_back(xs[i]);
}

}  // namespace detail_harness

// Lower bound on TV(law_A, law_B) from replicated statistics, honest under the
// null.  Sample splitting: even-index replicas select the threshold and sign
// maximizing the survival gap; odd-index replicas produce the reported
// estimate, bootstrap SE, and percentile CI.  Reusing one sample for both
// selection and estimation would bias the null case upward (the maximum over
// the grid of a centered difference is positive), so identical seeds would
// fail |estimate| <= 2 SE far more often than the nominal rate.
inline TVLowerBoundResult estimate_tv_lower_bound(const ExperimentConfig& cfg,
                                                  unsigned threads = 1) {
  if (cfg.seed_trees.size() != 2)
    throw std::invalid_argument("tv lower bound: exactly two seed trees required");
  if (cfg.replicas < 4)
    throw std::invalid_argument("tv lower bound: need at least 4 replicas per side");

  TVLowerBoundResult res;
  res.samples_a = run_statistic_replicas(cfg.seed_trees[0], cfg.n, cfg.replicas,
                                         cfg.statistic, cfg.master_seed, 0, 2, threads);
  res.samples_b = run_statistic_replicas(cfg.seed_trees[1], cfg.n, cfg.replicas,
                                         cfg.statistic, cfg.master_seed, 1, 2, threads);

  std::vector<double> sel_a, est_a, sel_b, est_b;
  detail_harness::split_halves(res.samples_a, sel_a, est_a);
  detail_harness::split_halves(res.samples_b, sel_b, est_b);

  if (!cfg.threshold_grid.empty()) {
    res.grid = cfg.threshold_grid;
    std::sort(res.grid.begin(), res.grid.end());
    res.grid.erase(std::unique(res.grid.begin(), res.grid.end()), res.grid.end());
  } else {
    std::vector<double> pooled = sel_a;
    pooled.insert(pooled.end(), sel_b.begin(), sel_b.end());
    std::sort(pooled.begin(), pooled.end());
    if (pooled.front() == pooled.back())
      res.diagnostics = "degenerate: selection samples are constant";
    for (int i = 0; i < 64; ++i)
      res.grid.push_back(quantile_sorted(pooled, (i + 0.5) / 64.0));
    std::sort(res.grid.begin(), res.grid.end());
    res.grid.erase(std::unique(res.grid.begin(), res.grid.end()), res.grid.end());
  }

  double best_gap = -1.0;
  for (double t : res.grid) {
    double d = empirical_survival(sel_a, t) - empirical_survival(sel_b, t);
    if (std::abs(d) > best_gap) {
      best_gap = std::abs(d);
      res.threshold = t;
      res.direction = d >= 0.0 ? 1 : -1;
    }
  }

  auto signed_gap = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return res.direction *
           (empirical_survival(a, res.threshold) - empirical_survival(b, res.threshold));
  };
  res.estimate = signed_gap(est_a, est_b);
  res.clamped = std::clamp(res.estimate, 0.0, 1.0);

  if (cfg.bootstrap_rounds >= 2) {
    std::vector<double> reps(cfg.bootstrap_rounds);
    for (std::uint32_t b = 0; b < cfg.bootstrap_rounds; ++b) {
      RngStream rng(cfg.master_seed, detail_harness::kBootstrapStreamBase + b);
      reps[b] = signed_gap(bootstrap_resample(est_a, rng), bootstrap_resample(est_b, rng));
    }
    res.bootstrap_se = stddev_of(reps);
    std::sort(reps.begin(), reps.end());
    res.ci_low = quantile_sorted(reps, 0.025);
    res.ci_high = quantile_sorted(reps, 0.975);
  } else {
    res.ci_low = res.ci_high = res.estimate;
  }

  res.curve.reserve(res.grid.size());
  for (double t : res.grid)
    res.curve.push_back({t, empirical_survival(est_a, t), empirical_survival(est_b, t)});
  return res;
}

struct MomentRow {
  int r;
  double empirical;
  double exact;
};

struct LimitLawComparison {
  double ks = 0.0;                 // two-sample KS, finite-n vs limit-law draws
  std::vector<MomentRow> moments;  // empirical raw moments vs closed form
};

// Compare the scaled degree of one canonical seed vertex at finite n against
// the limit law (simulated via independent limit draws plus closed-form
// moments).  `vertex` is 0-based canonical.
inline LimitLawComparison compare_vertex_to_limit(const Tree& seed_in, int vertex,
                                                  std::uint64_t n, std::uint32_t replicas,
                                                  std::uint64_t master_seed, int max_r = 4) {
  Tree seed = canonical_relabel(seed_in);
  if (vertex < 0 || vertex >= seed.size())
    throw std::invalid_argument("compare_vertex_to_limit: vertex outside seed");
  StatisticSpec spec;
  spec.kind = StatisticSpec::Kind::VertexDegreeScaled;
  spec.vertices = {vertex};
  std::vector<double> finite =
      run_statistic_replicas(seed, n, replicas, spec, master_seed, 0, 1);

  int d = seed.degree(vertex);
  std::vector<double> limit(replicas);
  for (std::uint32_t i = 0; i < replicas; ++i) {
    RngStream rng(master_seed, detail_harness::kLimitStreamBase + i);
    limit[i] = sample_subset_sum_limit(seed.size(), d, rng);
  }

  LimitLawComparison cmp;
  cmp.ks = ks_two_sample(finite, limit);
  for (int r = 1; r <= max_r; ++r)
    cmp.moments.push_back({r, raw_moment(finite, r), moment_seed_vertex(seed.size(), d, r)});
  return cmp;
}

// Probability that the next vertex attaches to a leaf of the current tree, as
// an exact reduced fraction (#degree-1 vertices) / (total degree).
inline std::pair<long long, long long> leaf_attachment_probability(const Tree& t) {
  if (t.size() < 2 && t.total_degree() == 0)
    throw std::invalid_argument("leaf_attachment_probability: no attachment slots");
  long long leaves = 0;
  for (int v = 0; v < t.size(); ++v)
    if (t.degree(v) == 1) ++leaves;
  long long total = static_cast<long long>(t.total_degree());
  long long g = std::gcd(leaves, total);
  if (g == 0) return {0, total};
  return {leaves / g, total / g};
}

}  // namespace patree
