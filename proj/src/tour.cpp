#include "maxtsp/tour.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include <omp.h>

namespace maxtsp {

Weight tour_weight(const Instance& inst, const std::vector<VertexId>& order) {
  Weight w(0);
  for (std::size_t i = 0; i < order.size(); ++i) w += inst.weight(order[i], order[(i + 1) % order.size()]);
  return w;
}

bool is_tour(int n, const std::vector<VertexId>& order) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (VertexId v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

namespace {

constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();

std::vector<std::int64_t> scaled_matrix(const Instance& inst) {
  const int n = inst.size();
  std::vector<Weight> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) flat.push_back(inst.weight(i, j));
  }
  return scale_to_integers(flat).values;
}

// Table over subsets of vertices 1..n-1 (bit v-1 for vertex v): best path
// from 0 through the subset ending at j.
class HeldKarp {
 public:
  explicit HeldKarp(const Instance& inst) : n_(inst.size()), w_(scaled_matrix(inst)) {
    m_ = n_ - 1;
    table_.assign((std::size_t{1} << m_) * n_, kUnset);
    for (int j = 1; j < n_; ++j) at(bit(j), j) = weight(0, j);
  }

  void fill_mask(std::uint32_t mask) {
    for (int j = 1; j < n_; ++j) {
      if (!(mask & bit(j))) continue;
      const std::uint32_t rest = mask & ~bit(j);
      std::int64_t best = kUnset;
      for (int k = 1; k < n_; ++k) {
        if (!(rest & bit(k))) continue;
        const std::int64_t cand = at(rest, k) + weight(k, j);
        if (cand > best) best = cand;
      }
      at(mask, j) = best;
    }
  }

  int m() const { return m_; }

  Tour finish(const Instance& inst) const {
    Tour t;
    if (n_ == 2) {
      t.order = {0, 1};
      t.weight = tour_weight(inst, t.order);
      return t;
    }
    const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
    int last = -1;
    std::int64_t best = kUnset;
    for (int j = 1; j < n_; ++j) {
      const std::int64_t cand = at(full, j) + weight(j, 0);
      if (cand > best) {
        best = cand;
        last = j;
      }
    }
    std::vector<VertexId> rev;
    std::uint32_t mask = full;
    int j = last;
    while (j > 0) {
      rev.push_back(j);
      const std::uint32_t rest = mask & ~bit(j);
      int prev = 0;
      for (int k = 1; k < n_ && rest; ++k) {
        if ((rest & bit(k)) && at(rest, k) + weight(k, j) == at(mask, j)) {
          prev = k;
          break;
        }
      }
      mask = rest;
      j = rest ? prev : 0;
    }
    t.order.push_back(0);
    t.order.insert(t.order.end(), rev.rbegin(), rev.rend());
    t.weight = tour_weight(inst, t.order);
    return t;
  }

 private:
  static std::uint32_t bit(int v) { return std::uint32_t{1} << (v - 1); }
  std::int64_t weight(int a, int b) const { return w_[static_cast<std::size_t>(a) * n_ + b]; }
  std::int64_t& at(std::uint32_t mask, int j) { return table_[static_cast<std::size_t>(mask) * n_ + j]; }
  std::int64_t at(std::uint32_t mask, int j) const { return table_[static_cast<std::size_t>(mask) * n_ + j]; }

  int n_;
  int m_ = 0;
  std::vector<std::int64_t> w_;
  std::vector<std::int64_t> table_;
};

void check_cap(const Instance& inst, int cap) {
  if (inst.size() > cap) {
    throw TooLarge("exact oracle limited to " + std::to_string(cap) + " vertices, got " +
                   std::to_string(inst.size()));
  }
}

}  // namespace

Tour oracle_opt(const Instance& inst, int cap) {
  check_cap(inst, cap);
  HeldKarp hk(inst);
  // increasing masks visit every subset after its subsets
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << hk.m()); ++mask) {
    if (std::popcount(mask) >= 2) hk.fill_mask(mask);
  }
  return hk.finish(inst);
}

Tour oracle_opt_parallel(const Instance& inst, int cap) {
  check_cap(inst, cap);
  HeldKarp hk(inst);
  std::vector<std::vector<std::uint32_t>> layers(hk.m() + 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << hk.m()); ++mask) layers[std::popcount(mask)].push_back(mask);
  for (int size = 2; size <= hk.m(); ++size) {
    const auto& layer = layers[size];
    const long count = static_cast<long>(layer.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) hk.fill_mask(layer[i]);
  }
  return hk.finish(inst);
}

SmallComponentPaths exact_small_component(const Multigraph& g, const std::vector<VertexId>& component) {
  std::vector<EdgeId> edges;
  for (VertexId v : component) {
    for (EdgeId e : g.incident(v)) {
      if (g.edge(e).u == v) edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end());
  if (edges.size() > 20) throw GraphError("exact_small_component: component too large");
  SmallComponentPaths best;
  best.weight = Weight(0);
  const std::uint32_t subsets = std::uint32_t{1} << edges.size();
  for (std::uint32_t s = 1; s < subsets; ++s) {
    DisjointSets dsu(g.vertex_capacity());
    std::vector<int> deg(g.vertex_capacity(), 0);
    bool ok = true;
    Weight w(0);
    for (std::size_t i = 0; i < edges.size() && ok; ++i) {
      if (!(s & (std::uint32_t{1} << i))) continue;
      const auto& ed = g.edge(edges[i]);
      ok = ++deg[ed.u] <= 2 && ++deg[ed.v] <= 2 && dsu.unite(ed.u, ed.v);
      w += ed.w;
    }
    if (ok && w > best.weight) {
      best.weight = w;
      best.edges.clear();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (s & (std::uint32_t{1} << i)) best.edges.push_back(edges[i]);
      }
    }
  }
  return best;
}

Tour patch_paths(const Instance& inst, const std::vector<VertexPair>& edges) {
  const int n = inst.size();
  std::vector<std::vector<VertexId>> adj(n);
  DisjointSets dsu(n);
  for (auto [u, v] : edges) {
    if (u == v || !dsu.unite(u, v)) throw NotPathCollection("chosen class contains a cycle");
    adj[u].push_back(v);
    adj[v].push_back(u);
    if (adj[u].size() > 2 || adj[v].size() > 2) throw NotPathCollection("chosen class has a vertex of degree three");
  }
  // pieces: paths walked from an end, isolated vertices on their own
  std::vector<std::vector<VertexId>> pieces;
  std::vector<bool> used(n, false);
  for (VertexId s = 0; s < n; ++s) {
    if (used[s] || adj[s].size() == 2) continue;
    std::vector<VertexId> path{s};
    used[s] = true;
    VertexId prev = -1, at = s;
    while (true) {
      VertexId next = -1;
      for (VertexId w : adj[at]) {
        if (w != prev) next = w;
      }
      if (next < 0) break;
      path.push_back(next);
      used[next] = true;
      prev = at;
      at = next;
    }
    pieces.push_back(std::move(path));
  }
  if (pieces.empty()) throw NotPathCollection("chosen class is a Hamiltonian cycle");

  const auto w = scaled_matrix(inst);
  auto weight = [&](VertexId a, VertexId b) { return w[static_cast<std::size_t>(a) * n + b]; };
  while (pieces.size() > 1) {
    std::int64_t best = kUnset;
    std::size_t bi = 0, bj = 0;
    int how = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        const VertexId ends_i[2] = {pieces[i].back(), pieces[i].front()};
        const VertexId ends_j[2] = {pieces[j].front(), pieces[j].back()};
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const std::int64_t cand = weight(ends_i[a], ends_j[b]);
            if (cand > best) {
              best = cand;
              bi = i;
              bj = j;
              how = 2 * a + b;
            }
          }
        }
      }
    }
    auto& first = pieces[bi];
    auto second = std::move(pieces[bj]);
    pieces.erase(pieces.begin() + static_cast<long>(bj));
    if (how / 2 == 1) std::reverse(first.begin(), first.end());  // join at first's front
    if (how % 2 == 1) std::reverse(second.begin(), second.end());  // join at second's back
    first.insert(first.end(), second.begin(), second.end());
  }
  Tour t;
  t.order = std::move(pieces.front());
  std::rotate(t.order.begin(), std::find(t.order.begin(), t.order.end(), 0), t.order.end());
  t.weight = tour_weight(inst, t.order);
  return t;
}

Tour extract_tour(const Instance& inst, const Multigraph& h, const EdgeColors& colors, const EdgeFlags& removed,
                  const std::vector<VertexPair>& extra, ExtractedClass* chosen) {
  ExtractedClass out;
  out.weight = out.red_weight = out.blue_weight = Weight(0);
  for (const auto& comp : h.components()) {
    Weight red(0), blue(0);
    std::vector<EdgeId> reds, blues;
    for (VertexId v : comp) {
      for (EdgeId e : h.incident(v)) {
        if (h.edge(e).u != v || removed[e]) continue;
        if (colors[e] == Color::Red) {
          red += h.edge(e).w;
          reds.push_back(e);
        } else if (colors[e] == Color::Blue) {
          blue += h.edge(e).w;
          blues.push_back(e);
        }
      }
    }
    out.red_weight += red;
    out.blue_weight += blue;
    const bool take_blue = blue > red;
    out.weight += take_blue ? blue : red;
    for (EdgeId e : take_blue ? blues : reds) out.edges.push_back(make_pair_key(h.edge(e).u, h.edge(e).v));
  }
  out.edges.insert(out.edges.end(), extra.begin(), extra.end());
  Tour t = patch_paths(inst, out.edges);
  if (chosen) *chosen = std::move(out);
  return t;
}

}  // namespace maxtsp
