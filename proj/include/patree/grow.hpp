#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "patree/errors.hpp"
#include "patree/rng.hpp"
#include "patree/tree.hpp"

namespace patree {

// Linear preferential attachment grower.  The endpoint list holds vertex v
// exactly degree(v) times (loops contribute one slot), so attaching to a
// uniform list entry is attachment with probability degree(v) / (2(n-1)) and
// each step appends (target, newcomer) in O(1).
//
// The list is initialized grouped by vertex in label order.  Two growths of
// equal-size seeds driven by the same index sequence therefore align
// positionally: any label-prefix with matching degrees keeps matching degrees
// forever, which is exactly the coupling the distinguishing bounds use.
struct GrowthState {
  Tree seed;
  std::vector<std::uint32_t> degrees;
  std::vector<std::uint32_t> endpoints;
  // Attachment target of vertex seed.size()+i.
  std::vector<std::uint32_t> growth_parents;
  std::uint32_t max_degree = 0;

  std::uint64_t size() const { return degrees.size(); }
};

inline GrowthState init_growth(const Tree& seed) {
  if (seed.size() < 1) throw std::invalid_argument("init_growth: empty seed");
  GrowthState st;
  st.seed = seed;
  int n = seed.size();
  st.degrees.resize(n);
  for (int v = 0; v < n; ++v) {
    int d = seed.degree(v);
    if (d < 1) throw std::invalid_argument("init_growth: isolated vertex");
    st.degrees[v] = static_cast<std::uint32_t>(d);
    st.max_degree = std::max(st.max_degree, st.degrees[v]);
    for (int k = 0; k < d; ++k) st.endpoints.push_back(static_cast<std::uint32_t>(v));
  }
  return st;
}

// One attachment driven by an explicit endpoint index; couplings share it.
inline void growth_step_at(GrowthState& st, std::uint64_t k) {
  std::uint32_t target = st.endpoints[k];
  auto newcomer = static_cast<std::uint32_t>(st.size());
  st.endpoints.push_back(target);
  st.endpoints.push_back(newcomer);
  st.growth_parents.push_back(target);
  st.degrees.push_back(1);
  std::uint32_t d = ++st.degrees[target];
  if (d > st.max_degree) st.max_degree = d;
}

inline void growth_step(GrowthState& st, RngStream& rng) {
  growth_step_at(st, rng.uniform_below(st.endpoints.size()));
}

inline void grow_to(GrowthState& st, std::uint64_t n, RngStream& rng) {
  if (n < st.size()) throw std::invalid_argument("grow_to: n below current size");
  if (n > (1ULL << 31)) throw std::invalid_argument("grow_to: n too large");
  st.endpoints.reserve(st.endpoints.size() + 2 * (n - st.size()));
  st.degrees.reserve(n);
  while (st.size() < n) growth_step(st, rng);
}

// PA(n, seed) for a loop-free tree seed with at least 2 vertices.
inline GrowthState grow(const Tree& seed, std::uint64_t n, RngStream& rng) {
  if (seed.size() < 2) throw std::invalid_argument("grow: |seed| < 2");
  for (int v = 0; v < seed.size(); ++v)
    if (seed.loops[v] != 0) throw std::invalid_argument("grow: seed has loops");
  GrowthState st = init_growth(seed);
  grow_to(st, n, rng);
  return st;
}

// Same dynamics started from a looped forest: new vertices attach by regular
// edges, loops only seed the initial attachment mass.
inline GrowthState grow_forest(const Tree& forest, std::uint64_t n, RngStream& rng) {
  if (forest.size() < 1) throw std::invalid_argument("grow_forest: empty forest");
  GrowthState st = init_growth(forest);
  grow_to(st, n, rng);
  return st;
}

inline Tree to_tree(const GrowthState& st) {
  Tree t(static_cast<int>(st.size()));
  int s = st.seed.size();
  for (int v = 0; v < s; ++v) {
    t.loops[v] = st.seed.loops[v];
    for (int w : st.seed.adj[v])
      if (v < w) t.add_edge(v, w);
  }
  for (std::size_t i = 0; i < st.growth_parents.size(); ++i)
    t.add_edge(s + static_cast<int>(i), static_cast<int>(st.growth_parents[i]));
  return t;
}

// --- coupled growth -------------------------------------------------------

// Grows both states with a shared uniform endpoint index each step.  Seeds of
// equal size keep aligned endpoint lists; equal degree profiles (after
// canonical relabeling) stay equal at every step, and an equal-degree label
// prefix stays equal forever.
inline void coupled_step(GrowthState& a, GrowthState& b, RngStream& rng) {
  if (a.endpoints.size() != b.endpoints.size())
    throw std::invalid_argument("coupled_step: misaligned states");
  std::uint64_t k = rng.uniform_below(a.endpoints.size());
  growth_step_at(a, k);
  growth_step_at(b, k);
}

inline std::pair<GrowthState, GrowthState> grow_coupled(const Tree& seed_a,
                                                        const Tree& seed_b,
                                                        std::uint64_t n,
                                                        RngStream& rng) {
  if (seed_a.size() != seed_b.size())
    throw std::invalid_argument("grow_coupled: seed sizes differ");
  GrowthState a = init_growth(canonical_relabel(seed_a));
  GrowthState b = init_growth(canonical_relabel(seed_b));
  while (a.size() < n) coupled_step(a, b, rng);
  return {std::move(a), std::move(b)};
}

// Tree vs looped-forest coupling: the forest starts as 2(|T|-1) looped
// vertices, d_T(v) of them standing for seed vertex v (rep_owner maps forest
// vertex -> owner).  Sharing the endpoint index preserves
//   deg_tree(v) = sum of deg_forest over v's representatives
// for every vertex at every step; each newcomer is its own representative.
struct TreeForestCoupling {
  GrowthState tree;
  GrowthState forest;
  std::vector<std::uint32_t> rep_owner;
};

inline TreeForestCoupling make_tree_forest_coupling(const Tree& seed) {
  if (seed.size() < 2) throw std::invalid_argument("tree_forest: |T| < 2");
  TreeForestCoupling c;
  Tree canon = canonical_relabel(seed);
  c.tree = init_growth(canon);
  c.forest = init_growth(make_looped_forest(2 * (seed.size() - 1)));
  for (int v = 0; v < canon.size(); ++v)
    for (int k = 0; k < canon.degree(v); ++k)
      c.rep_owner.push_back(static_cast<std::uint32_t>(v));
  return c;
}

inline void coupled_forest_step(TreeForestCoupling& c, RngStream& rng) {
  coupled_step(c.tree, c.forest, rng);
  c.rep_owner.push_back(static_cast<std::uint32_t>(c.tree.size() - 1));
}

// --- degree trajectories ---------------------------------------------------

struct TrajectoryRow {
  std::uint64_t n;
  std::vector<std::uint32_t> watched;
  std::uint32_t max_degree;
};

struct Trajectory {
  std::vector<int> vertices;
  std::vector<TrajectoryRow> rows;
};

// Continues growth to each checkpoint (ascending; the first may equal the
// current size) recording watched-vertex degrees and the running maximum.
inline Trajectory watch_degrees(GrowthState& st, const std::vector<int>& vertices,
                                const std::vector<std::uint64_t>& checkpoints,
                                RngStream& rng) {
  for (int v : vertices)
    if (v < 0 || static_cast<std::uint64_t>(v) >= st.size())
      throw std::invalid_argument("watch_degrees: vertex outside current tree");
  Trajectory tr;
  tr.vertices = vertices;
  std::uint64_t prev = 0;
  for (std::uint64_t cp : checkpoints) {
    if (cp < st.size() || cp < prev)
      throw std::invalid_argument("watch_degrees: checkpoint below current size");
    prev = cp;
    grow_to(st, cp, rng);
    TrajectoryRow row;
    row.n = cp;
    row.max_degree = st.max_degree;
    for (int v : vertices) row.watched.push_back(st.degrees[v]);
    tr.rows.push_back(std::move(row));
  }
  return tr;
}

// --- parent-array serialization ---------------------------------------------
//
// Binary layout: magic "PATR", u32 version (=1), u64 n, then n-1 u32 values;
// value i is the 1-based parent of vertex i+2 when the tree is rooted at
// vertex 1.  Loops are not representable; trees only.

inline void save_parent_array(const GrowthState& st, const std::string& path) {
  int s = st.seed.size();
  for (int v = 0; v < s; ++v)
    if (st.seed.loops[v] != 0) throw std::invalid_argument("save_parent_array: loops");
  // BFS parents inside the seed, rooted at vertex 0.
  std::vector<std::uint32_t> seed_parent(s, 0);
  std::vector<bool> vis(s, false);
  std::queue<int> q;
  q.push(0);
  vis[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : st.seed.adj[v])
      if (!vis[w]) {
        vis[w] = true;
        seed_parent[w] = static_cast<std::uint32_t>(v);
        q.push(w);
      }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("save_parent_array: cannot open " + path);
  std::uint64_t n = st.size();
  std::uint32_t version = 1;
  out.write("PATR", 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&n), 8);
  for (std::uint64_t i = 1; i < n; ++i) {
    std::uint32_t p;
    if (i < static_cast<std::uint64_t>(s))
      p = seed_parent[i] + 1;
    else
      p = st.growth_parents[i - s] + 1;
    out.write(reinterpret_cast<const char*>(&p), 4);
  }
  if (!out) throw io_error("save_parent_array: write failed: " + path);
}

inline Tree load_parent_array(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("load_parent_array: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&n), 8);
  if (!in || std::memcmp(magic, "PATR", 4) != 0)
    throw io_error("load_parent_array: bad magic: " + path);
  if (version != 1) throw io_error("load_parent_array: unsupported version");
  if (n < 1 || n > (1ULL << 31)) throw io_error("load_parent_array: bad size");
  Tree t(static_cast<int>(n));
  // Seed-part parents may point at higher labels, so tree-ness is validated
  // by union-find rather than by record order.
  std::vector<std::uint32_t> uf(n);
  for (std::uint64_t v = 0; v < n; ++v) uf[v] = static_cast<std::uint32_t>(v);
  auto find = [&](std::uint32_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (std::uint64_t i = 1; i < n; ++i) {
    std::uint32_t p = 0;
    in.read(reinterpret_cast<char*>(&p), 4);
    if (!in || p < 1 || p > n || p == i + 1)
      throw io_error("load_parent_array: bad parent record");
    std::uint32_t a = find(static_cast<std::uint32_t>(i)), b = find(p - 1);
    if (a == b) throw io_error("load_parent_array: cycle in records");
    uf[a] = b;
    t.add_edge(static_cast<int>(i), static_cast<int>(p - 1));
  }
  return t;
}

}  // namespace patree
