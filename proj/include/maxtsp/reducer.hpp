#pragma once

#include <stdexcept>
#include <vector>

#include "maxtsp/coloring.hpp"
#include "maxtsp/multigraph.hpp"

namespace maxtsp {

class PreconditionViolation : public GraphError {
 public:
  using GraphError::GraphError;
};

class InvalidInputColoring : public GraphError {
 public:
  using GraphError::GraphError;
};

enum class TransformKind { DoubleEdgeTriangleShrink, SingleEdgeTriangleRemove, CapEliminate };
const char* transform_name(TransformKind k);

/// One invertible shrinking step. `before` is the graph the step was applied
/// to; the graph after it shares every untouched vertex and edge id.
struct Transform {
  TransformKind kind = TransformKind::DoubleEdgeTriangleShrink;
  Multigraph before;

  // Triangle with one double edge: `absorbed` merges into `merged`, `tip`
  // is the third vertex. The double edge is (pair_first, pair_second); the
  // single sides run from merged and absorbed to the tip. The new parallel
  // edges merged-tip are pair_first+merged_side and pair_second+absorbed_side.
  VertexId merged = -1, absorbed = -1, tip = -1;
  EdgeId pair_first = -1, pair_second = -1, merged_side = -1, absorbed_side = -1;
  EdgeId joined_first = -1, joined_second = -1;

  // Triangle of single edges: `apex` is deleted. `light_end` is the base
  // vertex whose side to the apex is lighter; `near`/`far` are the apex's
  // outer neighbours through the lighter/heavier spoke. The base edge keeps
  // its id and becomes base+heavy_side; base_extra = light_side+far_spoke;
  // bridge joins near and far with the near spoke's weight.
  VertexId apex = -1, heavy_end = -1, light_end = -1, near = -1, far = -1;
  EdgeId base = -1, heavy_side = -1, light_side = -1, near_spoke = -1, far_spoke = -1;
  EdgeId base_extra = -1, bridge = -1;
  Weight base_before;

  // Cap: its vertices go away; the two ribbons are replaced by one link
  // edge carrying the ribbons' and the interior's weight (`set_aside`).
  // Lifting removes at most the interior's lightest edge beyond what the
  // reduced side removed.
  std::vector<VertexId> cap;
  std::vector<EdgeId> interior;
  EdgeId ribbon_first = -1, ribbon_second = -1, link = -1;
  Weight set_aside;
};

using TransformStack = std::vector<Transform>;

struct Triangle {
  VertexId a = -1, b = -1, c = -1;
};

/// Shrinks the endpoints of the triangle's double edge into one vertex.
Transform eliminate_double_edge_triangle(Multigraph& g, const Triangle& t);
/// Removes a vertex of an all-single triangle; `apex` must be one of t's
/// vertices meeting the elimination condition (see single_triangle_apex).
Transform eliminate_single_edge_triangle(Multigraph& g, const Triangle& t, VertexId apex);
/// The vertex of an all-single triangle that can be removed, or -1.
VertexId single_triangle_apex(const Multigraph& g, const Triangle& t);

struct Cap {
  std::vector<VertexId> vertices;  // v1, doubles chain..., v2
  EdgeId single = -1;              // the v1-v2 edge
  EdgeId ribbon_first = -1;        // at v1
  EdgeId ribbon_second = -1;       // at v2
};

std::vector<Cap> find_caps(const Multigraph& g);
bool cap_is_eliminable(const Multigraph& g, const Cap& cap);
Transform eliminate_cap(Multigraph& g, const Cap& cap);

struct LiftResult {
  EdgeColors colors;
  EdgeFlags removed;
  Weight removed_before;  // removed weight among the step's edges, reduced side
  Weight removed_after;   // same, original side
  bool used_fallback = false;
};

/// Maps a 2-path-colouring (with removal set) of the graph after `t` to the
/// graph before it. Throws InvalidInputColoring when the input is not a
/// valid 2-path-colouring, and GraphError if no valid lift exists.
LiftResult lift_coloring(const Transform& t, const Multigraph& after, const EdgeColors& colors,
                         const EdgeFlags& removed);

struct Reduction {
  Multigraph reduced;
  TransformStack stack;
  // Components kept out of the reduction because a step would leave them
  // with fewer than five vertices; they are solved exactly.
  std::vector<std::vector<VertexId>> exempt;
  // Components where the next step would cut off a piece of fewer than
  // five vertices; they go to the colorer with their triangles in place.
  std::vector<std::vector<VertexId>> frozen;
  int double_triangle_steps = 0;
  int single_triangle_steps = 0;
  int cap_steps = 0;
};

struct ReduceOptions {
  // Off by default: a cap's interior always needs a removal that the
  // reduced graph cannot pay for, so caps are left to the colorer.
  bool eliminate_caps = false;
};

/// Applies the eliminations to a fixpoint, always taking the first
/// applicable step in lowest-vertex-id scan order (double-edge triangles
/// before single-edge triangles before caps).
Reduction reduce_to_fixpoint(const Multigraph& g, const ReduceOptions& options = {});

struct LiftAllResult {
  EdgeColors colors;
  EdgeFlags removed;
  int fallbacks = 0;
  int weight_violations = 0;  // steps where the lift removed more than the reduced side
};

/// Replays the stack in reverse.
LiftAllResult lift_through(const TransformStack& stack, const Multigraph& reduced, EdgeColors colors,
                           EdgeFlags removed);

/// Remaining triangles that break the post-reduction shape outside the
/// exempt components (for tests and audits).
std::vector<Triangle> unreduced_triangles(const Multigraph& g, const std::vector<std::vector<VertexId>>& exempt);

}  // namespace maxtsp
