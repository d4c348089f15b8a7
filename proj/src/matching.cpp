#include "maxtsp/matching.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace maxtsp {

std::vector<int> max_weight_perfect_matching(const MatchingProblem& p) {
  const int n = p.vertex_count;
  std::set<VertexPair> seen;
  std::vector<Weight> weights;
  weights.reserve(p.edges.size());
  for (const auto& e : p.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw GraphError("matching edge endpoint out of range");
    if (e.u == e.v) throw GraphError("loop in matching problem");
    if (!seen.insert(make_pair_key(e.u, e.v)).second) throw GraphError("parallel edge in matching problem");
    weights.push_back(e.w);
  }
  if (p.perfect && n % 2 != 0) throw Infeasible("odd vertex count has no perfect matching");
  if (n == 0) return {};

  // A perfect matching has n/2 edges, so shifting every weight by the same
  // constant does not change which one is heaviest. The shift makes all
  // weights positive, which keeps the blossom solver on its home ground.
  Weight shift = 0;
  if (p.perfect && !weights.empty()) {
    const Weight lowest = *std::min_element(weights.begin(), weights.end());
    shift = 1 - lowest;
    for (auto& w : weights) w += shift;
  }
  const ScaledWeights scaled = scale_to_integers(weights, 2);
  std::vector<blossom::IntEdge> int_edges;
  int_edges.reserve(p.edges.size());
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    const std::int64_t w = scaled.values[k];
    // Non-perfect mode: negative edges are never worth taking.
    if (!p.perfect && w <= 0) continue;
    int_edges.push_back({p.edges[k].u, p.edges[k].v, w});
  }
  std::vector<int> edge_index;
  edge_index.reserve(int_edges.size());
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    if (p.perfect || scaled.values[k] > 0) edge_index.push_back(static_cast<int>(k));
  }

  const std::vector<int> mate = blossom::max_weight_matching(n, int_edges, p.perfect);
  std::vector<int> chosen;
  for (std::size_t k = 0; k < int_edges.size(); ++k) {
    const auto& e = int_edges[k];
    if (mate[e.u] == e.v) chosen.push_back(edge_index[k]);
  }
  if (p.perfect) {
    for (int v = 0; v < n; ++v) {
      if (mate[v] == -1) throw Infeasible("graph has no perfect matching");
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

struct Reduction {
  MatchingProblem problem;
  // Matching-edge index -> original edge for clone/edge-node links, -1 for
  // the edge-node/edge-node link.
  std::vector<int> owner;
};

void check_b_problem(const BMatchingProblem& p) {
  const int n = static_cast<int>(p.b.size());
  std::vector<int> degree(n, 0);
  std::set<VertexPair> seen;
  long long total = 0;
  for (int v = 0; v < n; ++v) {
    if (p.b[v] < 1) throw std::invalid_argument("b(v) must be at least 1");
    total += p.b[v];
  }
  for (const auto& e : p.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw GraphError("b-matching edge endpoint out of range");
    if (e.u == e.v) throw GraphError("loop in b-matching problem");
    if (!seen.insert(make_pair_key(e.u, e.v)).second) throw GraphError("parallel edge in b-matching problem");
    ++degree[e.u];
    ++degree[e.v];
  }
  if (total % 2 != 0) throw Infeasible("sum of degree requirements is odd");
  for (int v = 0; v < n; ++v) {
    if (p.b[v] > degree[v]) throw Infeasible("vertex " + std::to_string(v) + " has fewer edges than b(v)");
  }
}

Reduction reduce(const BMatchingProblem& p) {
  const int n = static_cast<int>(p.b.size());
  std::vector<int> first_clone(n + 1, 0);
  for (int v = 0; v < n; ++v) first_clone[v + 1] = first_clone[v] + p.b[v];
  Reduction r;
  const int clones = first_clone[n];
  const int m = static_cast<int>(p.edges.size());
  r.problem.vertex_count = clones + 2 * m;
  r.problem.perfect = true;
  for (int k = 0; k < m; ++k) {
    const auto& e = p.edges[k];
    const int node_u = clones + 2 * k;
    const int node_v = node_u + 1;
    const Weight half = e.w / 2;
    r.problem.edges.push_back({node_u, node_v, Weight(0)});
    r.owner.push_back(-1);
    for (int c = first_clone[e.u]; c < first_clone[e.u + 1]; ++c) {
      r.problem.edges.push_back({c, node_u, half});
      r.owner.push_back(k);
    }
    for (int c = first_clone[e.v]; c < first_clone[e.v + 1]; ++c) {
      r.problem.edges.push_back({c, node_v, half});
      r.owner.push_back(k);
    }
  }
  return r;
}

}  // namespace

std::pair<int, int> b_matching_reduction_size(const BMatchingProblem& p) {
  int clones = 0;
  for (int b : p.b) clones += b;
  long long edges = 0;
  for (const auto& e : p.edges) edges += 1 + p.b[e.u] + p.b[e.v];
  return {clones + 2 * static_cast<int>(p.edges.size()), static_cast<int>(edges)};
}

std::vector<int> solve_b_matching(const BMatchingProblem& p) {
  check_b_problem(p);
  const Reduction r = reduce(p);
  const std::vector<int> matched = max_weight_perfect_matching(r.problem);
  // Each selected original edge shows up twice (once per edge-node).
  std::vector<int> count(p.edges.size(), 0);
  for (int idx : matched) {
    if (r.owner[idx] >= 0) ++count[r.owner[idx]];
  }
  std::vector<int> chosen;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    if (count[k] == 2) chosen.push_back(static_cast<int>(k));
    else if (count[k] != 0) throw std::logic_error("b-matching reduction decoded a half edge");
  }
  std::vector<int> degree(p.b.size(), 0);
  for (int k : chosen) {
    ++degree[p.edges[k].u];
    ++degree[p.edges[k].v];
  }
  for (std::size_t v = 0; v < p.b.size(); ++v) {
    if (degree[v] != p.b[v]) throw std::logic_error("b-matching reduction produced a wrong degree");
  }
  return chosen;
}

std::vector<std::vector<VertexId>> decompose_two_factor(int n, std::span<const VertexPair> edges) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() != 2) throw DegreeViolation("vertex " + std::to_string(v) + " is not of degree 2");
    std::sort(adj[v].begin(), adj[v].end());
  }
  std::vector<bool> used(n, false);
  std::vector<std::vector<VertexId>> cycles;
  for (int s = 0; s < n; ++s) {
    if (used[s]) continue;
    std::vector<VertexId> cyc{s};
    used[s] = true;
    VertexId prev = s;
    VertexId cur = adj[s][0];
    while (cur != s) {
      if (used[cur]) throw GraphError("edge list is not a union of cycles");
      used[cur] = true;
      cyc.push_back(cur);
      const VertexId next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

CycleCover max_weight_cycle_cover(const Instance& inst) {
  const int n = inst.size();
  if (n < 3) throw InstanceTooSmall("a cycle cover needs at least 3 vertices");
  BMatchingProblem p;
  p.b.assign(n, 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) p.edges.push_back({u, v, inst.weight(u, v)});
  }
  const std::vector<int> chosen = solve_b_matching(p);
  std::vector<VertexPair> pairs;
  for (int k : chosen) pairs.push_back(make_pair_key(p.edges[k].u, p.edges[k].v));
  return CycleCover(inst, decompose_two_factor(n, pairs));
}

}  // namespace maxtsp
