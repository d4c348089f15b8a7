#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxtsp/multigraph.hpp"

namespace maxtsp {

enum class Color : std::uint8_t { None, Red, Blue, Blank };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : c == Color::Blue ? Color::Red : c; }
const char* color_name(Color c);

/// Per-edge labels indexed by edge id (sized to the graph's edge capacity).
using EdgeColors = std::vector<Color>;
using EdgeFlags = std::vector<bool>;

int color_degree(const Multigraph& g, const EdgeColors& colors, VertexId v, Color c);

/// Disjoint-set forest with path halving; used for incremental cycle tests.
class DisjointSets {
 public:
  explicit DisjointSets(int n = 0);
  int find(int x);
  /// Returns false (and does nothing) when x and y are already joined.
  bool unite(int x, int y);

 private:
  std::vector<int> parent_;
};

struct PathCheck {
  bool ok = true;
  std::string reason;
};

/// Every live edge outside `removed` must be Red or Blue, and each colour
/// class must be a set of vertex-disjoint simple paths.
PathCheck check_path_coloring(const Multigraph& g, const EdgeColors& colors, const EdgeFlags& removed);

/// True if some path of at most `max_edges` edges of colour `c` joins u and
/// v, ignoring edge `skip`.
bool colored_path_within(const Multigraph& g, const EdgeColors& colors, VertexId u, VertexId v, Color c,
                         int max_edges, EdgeId skip = -1);

/// Monochromatic cycles of length < 5 among Red/Blue edges, each as a list
/// of edge ids (every such cycle is reported once).
std::vector<std::vector<EdgeId>> short_monochromatic_cycles(const Multigraph& g, const EdgeColors& colors);

/// Simple cycles of length 2..4 in the multigraph, as edge-id lists.
std::vector<std::vector<EdgeId>> short_cycles(const Multigraph& g, std::span<const VertexId> vertices);

struct LocalChoice {
  bool feasible = false;
  Weight removed_weight;
};

/// Reassigns the edges in `open` to Red, Blue or removed, keeping every
/// other edge as it is, so that the whole graph is 2-path-coloured with the
/// least removed weight among `open`. Ties go to the first assignment in
/// (Red, Blue, removed) lexicographic order. `colors`/`removed` are updated
/// only when a feasible assignment exists.
LocalChoice recolor_locally(const Multigraph& g, EdgeColors& colors, EdgeFlags& removed,
                            std::span<const EdgeId> open);

struct ExactColoring {
  bool feasible = false;
  EdgeColors colors;
  EdgeFlags removed;
  Weight removed_weight;
};

/// Minimum-weight removal set plus a 2-path-colouring of the remaining
/// edges of `edges` (a union of components), by branch and bound. Meant for
/// small components (up to ~20 edges).
ExactColoring exact_min_removal(const Multigraph& g, std::span<const EdgeId> edges);

}  // namespace maxtsp
