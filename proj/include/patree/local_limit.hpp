#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "patree/grow.hpp"
#include "patree/parallel.hpp"
#include "patree/quadrature.hpp"
#include "patree/rng.hpp"
#include "patree/tree.hpp"

namespace patree {

// Distribution over rooted-ball isomorphism codes.  Counts are exact; masses
// are count/total.  std::map keeps iteration (and CSV output) deterministic.
struct CodeDistribution {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const std::string& code, std::uint64_t k = 1) {
    counts[code] += k;
    total += k;
  }
  double mass(const std::string& code) const {
    auto it = counts.find(code);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
  }
};

// Total variation distance between two code distributions.
inline double tv_between(const CodeDistribution& a, const CodeDistribution& b) {
  if (a.total == 0 || b.total == 0)
    throw std::invalid_argument("tv_between: empty distribution");
  double tv = 0.0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    double pa = 0.0, pb = 0.0;
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      pa = static_cast<double>(ia->second) / a.total;
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      pb = static_cast<double>(ib->second) / b.total;
      ++ib;
    } else {
      pa = static_cast<double>(ia->second) / a.total;
      pb = static_cast<double>(ib->second) / b.total;
      ++ia;
      ++ib;
    }
    tv += std::abs(pa - pb);
  }
  return 0.5 * tv;
}

// Radius-r ball code around a uniformly chosen root, repeated over fresh
// trees: `replicas` trees PA(n, seed), `roots_per_tree` roots from each.
// Replica r uses stream (stream_base + r), so the result is independent of
// scheduling and reproducible from the master seed.
inline CodeDistribution empirical_ball_distribution(const Tree& seed, std::uint64_t n,
                                                    int radius, int roots_per_tree,
                                                    int replicas,
                                                    std::uint64_t master_seed,
                                                    std::uint64_t stream_base = 0,
                                                    unsigned threads = 1) {
  if (radius < 0) throw std::invalid_argument("ball distribution: radius < 0");
  if (roots_per_tree < 1 || replicas < 1)
    throw std::invalid_argument("ball distribution: need roots and replicas");
  std::vector<std::vector<std::string>> per_replica(replicas);
  parallel_replicas(static_cast<std::uint64_t>(replicas), threads, [&](std::uint64_t r) {
    RngStream rng(master_seed, stream_base + r);
    GrowthState st = grow(seed, n, rng);
    Tree t = to_tree(st);
    auto& codes = per_replica[r];
    codes.reserve(roots_per_tree);
    for (int k = 0; k < roots_per_tree; ++k) {
      int root = static_cast<int>(rng.uniform_below(st.size()));
      codes.push_back(ahu_code(t, root, radius));
    }
  });
  CodeDistribution dist;
  for (const auto& codes : per_replica)
    for (const auto& c : codes) dist.add(c);
  return dist;
}

// --- Polya-point tree, single-edge case -------------------------------------
//
// Local weak limit of PA(n, T).  Ages live in (0, 1]; the root's age is
// sqrt(uniform).  A node of age x with strength g spawns younger neighbors as
// a Poisson process of constant intensity g/x on (x, 1], and every node that
// was not itself discovered as a child points to one older neighbor of age
// x * uniform.  Strengths are Gamma(1) for fresh nodes (root and children)
// and Gamma(2) for nodes discovered as attachment targets (size-biased by the
// discovery).  Sanity anchors: P(root degree = k) = 4 / (k (k+1) (k+2)).

struct PolyaPointBall {
  Tree tree;
  int root = 0;
};

namespace detail_polya {

enum class NodeKind { Root, Older, Younger };

struct PendingNode {
  int id;
  int depth;
  double age;
  NodeKind kind;
};

}  // namespace detail_polya

inline PolyaPointBall sample_polya_point_ball(int radius, RngStream& rng,
                                              std::uint64_t node_cap = 2'000'000) {
  if (radius < 0) throw std::invalid_argument("polya_point: radius < 0");
  using detail_polya::NodeKind;
  using detail_polya::PendingNode;

  std::vector<std::vector<int>> adj(1);
  std::vector<PendingNode> queue;
  queue.push_back({0, 0, std::sqrt(rng.uniform01_pos()), NodeKind::Root});

  auto new_node = [&](int parent) {
    int id = static_cast<int>(adj.size());
    if (adj.size() >= node_cap)
      throw numerical_error("polya_point: ball exceeded node cap; not truncating");
    adj.emplace_back();
    adj[parent].push_back(id);
    adj[id].push_back(parent);
    return id;
  };

  for (std::size_t head = 0; head < queue.size(); ++head) {
    PendingNode cur = queue[head];
    if (cur.depth >= radius) continue;
    // One older neighbor unless this node was discovered as a child (its
    // older edge is the discovery edge itself).
    if (cur.kind != NodeKind::Younger) {
      double age = cur.age * rng.uniform01_pos();
      queue.push_back({new_node(cur.id), cur.depth + 1, age, NodeKind::Older});
    }
    // Younger children: Poisson process, exponential gaps at rate g/x.
    double g = rng.gamma(cur.kind == NodeKind::Older ? 2.0 : 1.0);
    double t = cur.age;
    for (;;) {
      t += cur.age * rng.exponential() / g;
      if (t >= 1.0) break;
      queue.push_back({new_node(cur.id), cur.depth + 1, t, NodeKind::Younger});
    }
  }

  PolyaPointBall ball;
  ball.tree = Tree(static_cast<int>(adj.size()));
  for (int v = 0; v < ball.tree.size(); ++v)
    for (int w : adj[v])
      if (v < w) ball.tree.add_edge(v, w);
  ball.root = 0;
  return ball;
}

inline CodeDistribution polya_point_ball_distribution(int radius, std::uint64_t samples,
                                                      std::uint64_t master_seed,
                                                      std::uint64_t stream_base = 0,
                                                      unsigned threads = 1) {
  std::vector<std::string> codes(samples);
  parallel_replicas(samples, threads, [&](std::uint64_t i) {
    RngStream rng(master_seed, stream_base + i);
    PolyaPointBall ball = sample_polya_point_ball(radius, rng);
    codes[i] = ahu_code(ball.tree, ball.root, radius);
  });
  CodeDistribution dist;
  for (const auto& c : codes) dist.add(c);
  return dist;
}

// --- tree vs looped-forest ball comparison ----------------------------------

// Uses the tree / looped-forest coupling: grow pairs to n, pick a uniform
// forest vertex, map it to its owning tree vertex, and compare rooted ball
// codes (loops are part of the code).  Returns the fraction of roots whose
// balls disagree.
inline double coupled_ball_disagreement_rate(const Tree& seed, std::uint64_t n,
                                             int radius, int pairs, int roots_per_pair,
                                             std::uint64_t master_seed,
                                             std::uint64_t stream_base = 0) {
  if (pairs < 1 || roots_per_pair < 1)
    throw std::invalid_argument("coupled_ball_disagreement_rate: bad counts");
  std::uint64_t disagreements = 0;
  for (int p = 0; p < pairs; ++p) {
    RngStream rng(master_seed, stream_base + p);
    TreeForestCoupling c = make_tree_forest_coupling(seed);
    while (c.tree.size() < n) coupled_forest_step(c, rng);
    Tree tree_side = to_tree(c.tree);
    Tree forest_side = to_tree(c.forest);
    for (int k = 0; k < roots_per_pair; ++k) {
      auto root_f = static_cast<int>(rng.uniform_below(c.forest.size()));
      int root_t = static_cast<int>(c.rep_owner[root_f]);
      if (ahu_code(forest_side, root_f, radius) != ahu_code(tree_side, root_t, radius))
        ++disagreements;
    }
  }
  return static_cast<double>(disagreements) /
         (static_cast<double>(pairs) * roots_per_pair);
}

}  // namespace patree
