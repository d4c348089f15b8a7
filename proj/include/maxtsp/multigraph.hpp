#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxtsp/instance.hpp"
#include "maxtsp/weight.hpp"

namespace maxtsp {

using EdgeId = int;

class GraphError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an edge multiset does not leave every vertex with the
/// required degree.
class DegreeViolation : public GraphError {
 public:
  using GraphError::GraphError;
};

struct Edge {
  VertexId u = -1;
  VertexId v = -1;
  Weight w;
};

/// Loopless multigraph with at most two parallel edges per vertex pair.
/// Edge and vertex ids are stable: removal leaves a hole, so ids can be
/// shared between a graph and the graphs derived from it.
class Multigraph {
 public:
  explicit Multigraph(int vertex_count = 0, bool auxiliary = false);

  VertexId add_vertex();
  /// Throws GraphError on loops, a third parallel edge, or a negative weight
  /// on a non-auxiliary graph.
  EdgeId add_edge(VertexId u, VertexId v, Weight w);
  /// Same as add_edge but reuses a caller-chosen id (used when a derived
  /// graph must keep the id of the edge it replaces).
  void add_edge_with_id(EdgeId id, VertexId u, VertexId v, Weight w);
  void remove_edge(EdgeId e);
  /// Requires the vertex to be isolated.
  void remove_vertex(VertexId v);
  void set_weight(EdgeId e, Weight w);
  /// Moves endpoint `from` of `e` to `to`.
  void reattach(EdgeId e, VertexId from, VertexId to);

  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  VertexId other(EdgeId e, VertexId v) const;
  std::span<const EdgeId> incident(VertexId v) const { return incident_[v]; }
  int degree(VertexId v) const { return static_cast<int>(incident_[v].size()); }
  std::vector<EdgeId> edges_between(VertexId u, VertexId v) const;
  int multiplicity(VertexId u, VertexId v) const;

  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edges() const;
  int vertex_capacity() const { return static_cast<int>(vertex_alive_.size()); }
  int edge_capacity() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return edge_count_; }
  bool auxiliary() const { return auxiliary_; }
  Weight total_weight() const;

  /// Connected components, each sorted, ordered by smallest vertex.
  std::vector<std::vector<VertexId>> components() const;
  /// Subgraph on the given vertices, keeping vertex and edge ids.
  Multigraph induced(std::span<const VertexId> vertices) const;

 private:
  void check_new_edge(VertexId u, VertexId v, const Weight& w) const;

  std::vector<Edge> edges_;
  std::vector<bool> edge_alive_;
  std::vector<bool> vertex_alive_;
  std::vector<std::vector<EdgeId>> incident_;
  int vertex_count_ = 0;
  int edge_count_ = 0;
  bool auxiliary_ = false;
};

/// Unordered vertex pair, stored with first <= second.
using VertexPair = std::pair<VertexId, VertexId>;
inline VertexPair make_pair_key(VertexId u, VertexId v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

/// Spanning set of vertex-disjoint simple cycles of an instance.
class CycleCover {
 public:
  /// Throws GraphError unless `cycles` partitions 0..n-1 into cycles of
  /// length >= 3.
  CycleCover(const Instance& inst, std::vector<std::vector<VertexId>> cycles);

  const std::vector<std::vector<VertexId>>& cycles() const { return cycles_; }
  const Weight& weight() const { return weight_; }
  bool contains(VertexId u, VertexId v) const;
  /// Index of the cycle holding v.
  int cycle_of(VertexId v) const { return cycle_of_[v]; }
  std::vector<VertexPair> edges() const;

 private:
  std::vector<std::vector<VertexId>> cycles_;
  std::vector<int> cycle_of_;
  std::map<VertexPair, int> edge_set_;
  Weight weight_;
};

/// Multiset of vertex pairs (edges of the complete graph) with multiplicity.
class EdgeMultiset {
 public:
  void add(VertexId u, VertexId v, int count = 1);
  int count(VertexId u, VertexId v) const;
  const std::map<VertexPair, int>& items() const { return counts_; }
  int size() const;
  bool empty() const { return counts_.empty(); }
  EdgeMultiset operator+(const EdgeMultiset& other) const;
  bool operator==(const EdgeMultiset& other) const = default;

 private:
  std::map<VertexPair, int> counts_;
};

/// Symmetric difference of the edge sets of two covers.
EdgeMultiset symmetric_difference(const CycleCover& a, const CycleCover& b);

/// Sum over S (with multiplicity) of +w for edges outside C and -w for edges
/// of C.
Weight alternating_weight(const EdgeMultiset& s, const CycleCover& c, const Instance& inst);

/// C (+) S: removes the C-edges of S from C and adds its other edges. The
/// result is checked to be 2-regular on all n vertices.
Multigraph apply_alternating(const CycleCover& c, const EdgeMultiset& s, const Instance& inst);

struct StructureReport {
  bool regular = true;
  bool loopless = true;
  bool multiplicity_ok = true;
  bool components_ok = true;
  std::vector<int> component_sizes;
  std::vector<std::string> failures;
  bool ok() const { return regular && loopless && multiplicity_ok && components_ok; }
};

StructureReport validate_multigraph(const Multigraph& g, int degree, int min_component);

}  // namespace maxtsp
