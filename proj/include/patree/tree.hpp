#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "patree/rng.hpp"

namespace patree {

// Undirected tree (or looped forest, for the urn comparisons).  Vertices are
// 0-based internally; the text format is 1-based.  A self loop contributes 1
// to its vertex's degree.
struct Tree {
  std::vector<std::vector<int>> adj;
  std::vector<int> loops;

  Tree() = default;
  explicit Tree(int n) : adj(n), loops(n, 0) {}

  int size() const { return static_cast<int>(adj.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()) + loops[v]; }

  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  void add_loop(int v) { ++loops[v]; }

  int total_degree() const {
    int s = 0;
    for (int v = 0; v < size(); ++v) s += degree(v);
    return s;
  }
};

inline Tree make_single() { return Tree(1); }

// Path on k vertices, 0 - 1 - ... - k-1.
inline Tree make_path(int k) {
  if (k < 1) throw std::invalid_argument("make_path: k < 1");
  Tree t(k);
  for (int v = 0; v + 1 < k; ++v) t.add_edge(v, v + 1);
  return t;
}

// Star on k vertices with center 0.
inline Tree make_star(int k) {
  if (k < 1) throw std::invalid_argument("make_star: k < 1");
  Tree t(k);
  for (int v = 1; v < k; ++v) t.add_edge(0, v);
  return t;
}

// Looped forest of n isolated vertices, one self loop each.
inline Tree make_looped_forest(int n) {
  if (n < 1) throw std::invalid_argument("make_looped_forest: n < 1");
  Tree t(n);
  for (int v = 0; v < n; ++v) t.add_loop(v);
  return t;
}

// Parses a whitespace-separated list of 1-based edge endpoints
// ("1 2 2 3 ...").  The vertex count is the largest label; the edge set must
// form exactly one tree over labels 1..n.
inline Tree parse_tree(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<int, int>> edges;
  long long a, c;
  while (in >> a) {
    if (!(in >> c)) throw std::invalid_argument("parse_tree: odd endpoint count");
    if (a < 1 || c < 1) throw std::invalid_argument("parse_tree: label < 1");
    if (a == c) throw std::invalid_argument("parse_tree: self loop");
    edges.emplace_back(static_cast<int>(a), static_cast<int>(c));
  }
  if (!in.eof()) throw std::invalid_argument("parse_tree: malformed token");
  if (edges.empty()) throw std::invalid_argument("parse_tree: no edges");
  int n = 0;
  for (auto& [u, v] : edges) n = std::max({n, u, v});
  if (static_cast<int>(edges.size()) != n - 1)
    throw std::invalid_argument("parse_tree: edge count != n - 1");
  // Union-find cycle check; n-1 acyclic edges on labels 1..n span iff all
  // labels appear.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> seen(n, false);
  Tree t(n);
  for (auto& [u, v] : edges) {
    int ru = find(u - 1), rv = find(v - 1);
    if (ru == rv) throw std::invalid_argument("parse_tree: cycle");
    parent[ru] = rv;
    seen[u - 1] = seen[v - 1] = true;
    t.add_edge(u - 1, v - 1);
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) throw std::invalid_argument("parse_tree: missing label");
  return t;
}

// 1-based edge list, one edge per line, endpoints ascending, edges sorted.
inline std::string serialize_tree(const Tree& t) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < t.size(); ++v)
    for (int w : t.adj[v])
      if (v < w) edges.emplace_back(v + 1, w + 1);
  std::sort(edges.begin(), edges.end());
  std::ostringstream out;
  for (auto& [u, v] : edges) out << u << ' ' << v << '\n';
  return out.str();
}

// "star:k", "path:k", "file:PATH", or an inline edge list.
inline Tree parse_tree_spec(const std::string& spec) {
  if (spec.rfind("star:", 0) == 0) return make_star(std::stoi(spec.substr(5)));
  if (spec.rfind("path:", 0) == 0) return make_path(std::stoi(spec.substr(5)));
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw std::invalid_argument("parse_tree_spec: cannot open " + spec.substr(5));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tree(buf.str());
  }
  return parse_tree(spec);
}

// Non-increasing degree sequence.
inline std::vector<int> degree_profile(const Tree& t) {
  std::vector<int> d(t.size());
  for (int v = 0; v < t.size(); ++v) d[v] = t.degree(v);
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

inline int max_degree(const Tree& t) {
  int m = 0;
  for (int v = 0; v < t.size(); ++v) m = std::max(m, t.degree(v));
  return m;
}

inline int max_degree_multiplicity(const Tree& t) {
  int m = max_degree(t), c = 0;
  for (int v = 0; v < t.size(); ++v)
    if (t.degree(v) == m) ++c;
  return c;
}

// Relabels vertices in decreasing degree order (ties broken by original
// label), so vertex 0 always carries the maximum degree.
inline Tree canonical_relabel(const Tree& t) {
  int n = t.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return t.degree(x) > t.degree(y); });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  Tree out(n);
  for (int v = 0; v < n; ++v) {
    out.loops[pos[v]] = t.loops[v];
    for (int w : t.adj[v])
      if (v < w) out.add_edge(pos[v], pos[w]);
  }
  return out;
}

// Canonical code of the subtree of radius `radius` around root (whole tree
// when radius < 0): children codes sorted and concatenated between parens,
// loops marked with '*'.  Equal codes <=> rooted (truncated) isomorphism.
inline std::string ahu_code(const Tree& t, int root, int radius = -1) {
  int n = t.size();
  if (root < 0 || root >= n) throw std::invalid_argument("ahu_code: bad root");
  std::vector<int> order, parent(n, -1), depth(n, -1);
  order.reserve(64);
  std::queue<int> q;
  q.push(root);
  depth[root] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    if (radius >= 0 && depth[v] >= radius) continue;
    for (int w : t.adj[v]) {
      if (w == parent[v] || depth[w] >= 0) continue;
      parent[w] = v;
      depth[w] = depth[v] + 1;
      q.push(w);
    }
  }
  std::vector<std::string> code(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    std::vector<std::string> kids;
    for (int w : t.adj[v])
      if (parent[w] == v && !code[w].empty()) kids.push_back(code[w]);
    std::sort(kids.begin(), kids.end());
    std::string c = "(";
    c.append(t.loops[v], '*');
    for (auto& k : kids) c += k;
    c += ')';
    code[v] = std::move(c);
  }
  return code[root];
}

// One or two middle vertices from leaf peeling.
inline std::vector<int> center_vertices(const Tree& t) {
  int n = t.size();
  if (n == 1) return {0};
  std::vector<int> deg(n), layer, next;
  int remaining = n;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(t.adj[v].size());
    if (deg[v] <= 1) layer.push_back(v);
  }
  while (remaining > 2) {
    for (int v : layer) {
      --remaining;
      for (int w : t.adj[v])
        if (--deg[w] == 1) next.push_back(w);
    }
    layer.swap(next);
    next.clear();
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

// Unlabeled isomorphism invariant: smaller of the center-rooted codes.
inline std::string canonical_code(const Tree& t) {
  std::string best;
  for (int c : center_vertices(t)) {
    std::string code = ahu_code(t, c);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

inline bool trees_isomorphic(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  if (degree_profile(a) != degree_profile(b)) return false;
  return canonical_code(a) == canonical_code(b);
}

// Uniform labeled tree on k vertices via a random Prufer sequence.
inline Tree prufer_decode(const std::vector<int>& seq, int k) {
  Tree t(k);
  std::vector<int> deg(k, 1);
  for (int v : seq) ++deg[v];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < k; ++v)
    if (deg[v] == 1) leaves.push(v);
  for (int v : seq) {
    int leaf = leaves.top();
    leaves.pop();
    t.add_edge(leaf, v);
    if (--deg[v] == 1) leaves.push(v);
  }
  int u = leaves.top();
  leaves.pop();
  t.add_edge(u, leaves.top());
  return t;
}

inline Tree random_tree(int k, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("random_tree: k < 1");
  if (k == 1) return make_single();
  if (k == 2) return make_path(2);
  std::vector<int> seq(k - 2);
  for (int& v : seq) v = static_cast<int>(rng.uniform_below(k));
  return prufer_decode(seq, k);
}

}  // namespace patree
