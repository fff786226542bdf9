#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "patree/tree.hpp"

namespace patree {

// Delta_U(T): maximum, over injective homomorphisms phi of the pattern tree U
// into the host tree T, of the total host degree collected by the image.
// Injective homomorphisms between trees are exactly embeddings of U as a
// subtree, so the DP can assign the children of a pattern node to distinct
// neighbor branches of its image.  std::nullopt means U does not embed.

namespace detail_umax {

inline constexpr double kNegInf = -1e18;

// Max-weight assignment of p rows to q >= p columns (Hungarian method on
// negated weights).  Forbidden cells carry kNegInf; returns kNegInf when no
// feasible full assignment of the rows exists.
inline double max_assignment(const std::vector<std::vector<double>>& w) {
  int p = static_cast<int>(w.size());
  if (p == 0) return 0.0;
  int q = static_cast<int>(w[0].size());
  if (p > q) return kNegInf;
  const double kBig = 1e15;
  // cost(i, j) = -w[i][j], forbidden -> kBig.
  std::vector<double> u(p + 1, 0.0), v(q + 1, 0.0);
  std::vector<int> matched(q + 1, 0), way(q + 1, 0);
  for (int i = 1; i <= p; ++i) {
    matched[0] = i;
    int j0 = 0;
    std::vector<double> minv(q + 1, std::numeric_limits<double>::infinity());
    std::vector<bool> used(q + 1, false);
    do {
      used[j0] = true;
      int i0 = matched[j0], j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= q; ++j) {
        if (used[j]) continue;
        double wij = w[i0 - 1][j - 1];
        double cost = (wij <= kNegInf / 2) ? kBig : -wij;
        double cur = cost - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= q; ++j) {
        if (used[j]) {
          u[matched[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (matched[j0] != 0);
    do {
      int j1 = way[j0];
      matched[j0] = matched[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= q; ++j) {
    if (matched[j] == 0) continue;
    double wij = w[matched[j] - 1][j - 1];
    if (wij <= kNegInf / 2) return kNegInf;  // forced onto a forbidden cell
    total += wij;
  }
  return total;
}

struct Rooted {
  std::vector<int> order;  // BFS order, root first
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
};

inline Rooted root_at(const Tree& t, int root) {
  Rooted r;
  int n = t.size();
  r.parent.assign(n, -1);
  r.children.assign(n, {});
  std::vector<bool> vis(n, false);
  std::queue<int> q;
  q.push(root);
  vis[root] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    r.order.push_back(v);
    for (int w : t.adj[v]) {
      if (vis[w]) continue;
      vis[w] = true;
      r.parent[w] = v;
      r.children[v].push_back(w);
      q.push(w);
    }
  }
  return r;
}

inline void check_pattern(const Tree& u) {
  if (u.size() < 1) throw std::invalid_argument("umax: empty pattern");
  for (int v = 0; v < u.size(); ++v)
    if (u.loops[v] != 0) throw std::invalid_argument("umax: pattern has loops");
}

}  // namespace detail_umax

// Reference implementation: backtracking over all injective homomorphisms.
// Pattern vertices are placed in BFS order so each newcomer anchors to an
// already-placed neighbor.
inline std::optional<long long> umax_bruteforce(const Tree& pattern, const Tree& host) {
  detail_umax::check_pattern(pattern);
  int nu = pattern.size(), nt = host.size();
  if (nu > nt) return std::nullopt;
  auto rooted = detail_umax::root_at(pattern, 0);
  std::vector<long long> host_deg(nt);
  for (int v = 0; v < nt; ++v) host_deg[v] = host.degree(v);

  std::vector<int> image(nu, -1);
  std::vector<bool> used(nt, false);
  long long best = -1;
  bool found = false;

  auto rec = [&](auto&& self, int idx, long long acc) -> void {
    if (idx == nu) {
      if (!found || acc > best) best = acc;
      found = true;
      return;
    }
    int u = rooted.order[idx];
    int up = rooted.parent[u];
    if (up < 0) {
      for (int t = 0; t < nt; ++t) {
        image[u] = t;
        used[t] = true;
        self(self, idx + 1, acc + host_deg[t]);
        used[t] = false;
      }
    } else {
      for (int t : host.adj[image[up]]) {
        if (used[t]) continue;
        image[u] = t;
        used[t] = true;
        self(self, idx + 1, acc + host_deg[t]);
        used[t] = false;
      }
    }
  };
  rec(rec, 0, 0);
  if (!found) return std::nullopt;
  return best;
}

// Tree DP over directed host edges.  For pattern node u and host vertex b,
// down[u][b] embeds u's subtree at b using only b's child branches, and
// up[u][b] embeds it at parent(b) with the b-branch forbidden; children are
// distributed over distinct branches by max-weight assignment.
inline std::optional<long long> umax_dp(const Tree& pattern, const Tree& host) {
  using detail_umax::kNegInf;
  detail_umax::check_pattern(pattern);
  int nu = pattern.size(), nt = host.size();
  if (nu > nt) return std::nullopt;
  if (host.size() < 1) throw std::invalid_argument("umax_dp: empty host");

  auto pu = detail_umax::root_at(pattern, 0);
  auto ht = detail_umax::root_at(host, 0);
  if (static_cast<int>(pu.order.size()) != nu)
    throw std::invalid_argument("umax_dp: pattern must be connected");
  if (static_cast<int>(ht.order.size()) != nt)
    throw std::invalid_argument("umax_dp: host must be connected");
  std::vector<double> host_deg(nt);
  for (int v = 0; v < nt; ++v) host_deg[v] = host.degree(v);

  // Tables indexed [pattern vertex][host vertex].
  std::vector<std::vector<double>> down(nu, std::vector<double>(nt, kNegInf));
  std::vector<std::vector<double>> up(nu, std::vector<double>(nt, kNegInf));

  // Weight of mapping pattern child c onto host neighbor w of vertex b.
  auto branch_weight = [&](int c, int b, int w) {
    return (ht.parent[b] == w) ? up[c][b] : down[c][w];
  };
  auto assemble = [&](int u, int b, int forbidden) {
    const auto& kids = pu.children[u];
    double base = host_deg[b];
    if (kids.empty()) return base;
    std::vector<int> branches;
    for (int w : host.adj[b])
      if (w != forbidden) branches.push_back(w);
    if (kids.size() > branches.size()) return kNegInf;
    if (kids.size() == 1) {
      double best = kNegInf;
      for (int w : branches) best = std::max(best, branch_weight(kids[0], b, w));
      return best <= kNegInf / 2 ? kNegInf : base + best;
    }
    std::vector<std::vector<double>> w(kids.size(),
                                       std::vector<double>(branches.size()));
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = 0; j < branches.size(); ++j)
        w[i][j] = branch_weight(kids[i], b, branches[j]);
    double m = detail_umax::max_assignment(w);
    return m <= kNegInf / 2 ? kNegInf : base + m;
  };

  // Pattern post-order: children's tables complete before the parent's.
  for (auto uit = pu.order.rbegin(); uit != pu.order.rend(); ++uit) {
    int u = *uit;
    // Host post-order for down (needs only children's down).
    for (auto bit = ht.order.rbegin(); bit != ht.order.rend(); ++bit) {
      int b = *bit;
      down[u][b] = assemble(u, b, ht.parent[b]);
    }
    // Host pre-order for up: up[u][b] evaluates at parent(b), and needs
    // up[child u'][parent(b)] which precedes b in BFS order.
    for (int b : ht.order) {
      int p = ht.parent[b];
      if (p < 0) continue;
      up[u][b] = assemble(u, p, b);
    }
  }

  double best = kNegInf;
  for (int b = 0; b < nt; ++b) best = std::max(best, assemble(0, b, -1));
  if (best <= kNegInf / 2) return std::nullopt;
  return std::llround(best);
}

}  // namespace patree
