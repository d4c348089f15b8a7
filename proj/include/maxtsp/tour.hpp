#pragma once

#include <vector>

#include "maxtsp/coloring.hpp"
#include "maxtsp/instance.hpp"
#include "maxtsp/multigraph.hpp"

namespace maxtsp {

class TooLarge : public InstanceError {
 public:
  using InstanceError::InstanceError;
};

class NotPathCollection : public GraphError {
 public:
  using GraphError::GraphError;
};

/// A Hamiltonian cycle as a cyclic vertex order starting at vertex 0.
struct Tour {
  std::vector<VertexId> order;
  Weight weight;
};

Weight tour_weight(const Instance& inst, const std::vector<VertexId>& order);
bool is_tour(int n, const std::vector<VertexId>& order);

inline constexpr int kOracleCap = 12;

/// Exact maximum tour by dynamic programming over subsets. Ties resolve to
/// the lowest predecessor, so both variants return the same tour.
/// Throws TooLarge when n exceeds `cap`.
Tour oracle_opt(const Instance& inst, int cap = kOracleCap);
/// Same table, one popcount layer at a time across OpenMP threads.
Tour oracle_opt_parallel(const Instance& inst, int cap = kOracleCap);

/// Heaviest linear forest (every vertex of degree at most two, no cycle)
/// among the edges of a component with fewer than five vertices, by
/// trying every edge subset.
struct SmallComponentPaths {
  std::vector<EdgeId> edges;
  Weight weight;
};
SmallComponentPaths exact_small_component(const Multigraph& g, const std::vector<VertexId>& component);

/// Joins the paths of a linear forest on the instance's vertices (plus the
/// vertices it does not touch) into one tour, each time adding the heaviest
/// edge between ends of two different pieces. Throws NotPathCollection if
/// `edges` is not a linear forest.
Tour patch_paths(const Instance& inst, const std::vector<VertexPair>& edges);

struct ExtractedClass {
  std::vector<VertexPair> edges;  // chosen class plus `extra`
  Weight weight;                  // of the chosen class in h alone
  Weight red_weight;              // before per-component swaps
  Weight blue_weight;
};

/// Per component of h, keeps the heavier colour class of the kept edges
/// (red on ties), adds `extra`, and patches the result into a tour.
Tour extract_tour(const Instance& inst, const Multigraph& h, const EdgeColors& colors, const EdgeFlags& removed,
                  const std::vector<VertexPair>& extra, ExtractedClass* chosen = nullptr);

}  // namespace maxtsp
