#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxtsp/instance.hpp"
#include "maxtsp/multigraph.hpp"
#include "maxtsp/weight.hpp"

namespace maxtsp {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstanceTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WeightedEdge {
  VertexId u = -1;
  VertexId v = -1;
  Weight w;
};

/// Simple graph for matching; weights may be negative.
struct MatchingProblem {
  int vertex_count = 0;
  std::vector<WeightedEdge> edges;
  bool perfect = true;
};

/// Graph with per-vertex degree requirements b(v) >= 1. Each edge may be
/// used at most once.
struct BMatchingProblem {
  std::vector<int> b;
  std::vector<WeightedEdge> edges;
};

namespace blossom {

struct IntEdge {
  int u = -1;
  int v = -1;
  std::int64_t w = 0;
};

/// Maximum-weight matching on integer weights in O(n^3) with the primal-dual
/// blossom method. With `max_cardinality` set, the result is of maximum
/// weight among maximum-cardinality matchings. Returns mate[v] (or -1).
std::vector<int> max_weight_matching(int vertex_count, std::span<const IntEdge> edges, bool max_cardinality);

}  // namespace blossom

/// Indices (into p.edges, ascending) of a maximum-weight matching; perfect
/// when p.perfect is set. Throws Infeasible if no perfect matching exists and
/// GraphError if the graph is not simple.
std::vector<int> max_weight_perfect_matching(const MatchingProblem& p);

/// Indices (into p.edges, ascending) of a maximum-weight perfect b-matching,
/// computed by the vertex-clone / edge-node reduction to perfect matching.
/// Throws Infeasible when no exact b-matching exists.
std::vector<int> solve_b_matching(const BMatchingProblem& p);

/// Size of the perfect-matching instance produced by the b-matching
/// reduction (vertices, edges); exposed for diagnostics and tests.
std::pair<int, int> b_matching_reduction_size(const BMatchingProblem& p);

/// Maximum-weight spanning 2-regular simple subgraph of the complete graph.
/// Throws InstanceTooSmall for n < 3.
CycleCover max_weight_cycle_cover(const Instance& inst);

/// Decomposes an edge list that is 2-regular on 0..n-1 into cycles; each
/// cycle starts at its smallest vertex and continues towards its smaller
/// neighbour. Cycles are ordered by their first vertex.
std::vector<std::vector<VertexId>> decompose_two_factor(int n, std::span<const VertexPair> edges);

}  // namespace maxtsp
