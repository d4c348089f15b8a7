#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxtsp/instance.hpp"
#include "maxtsp/matching.hpp"
#include "maxtsp/multigraph.hpp"
#include "maxtsp/weight.hpp"

namespace maxtsp {

class GadgetError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class NotNormalized : public GadgetError {
 public:
  using GadgetError::GadgetError;
};
/// d1 + d2 exceeded l1 + l3: the cover fed to the gadget was not maximum.
class DiagonalBoundViolated : public GadgetError {
 public:
  using GadgetError::GadgetError;
};
class ContractViolated : public GadgetError {
 public:
  using GadgetError::GadgetError;
};
class ExitCountViolation : public GadgetError {
 public:
  using GadgetError::GadgetError;
};

/// A cycle of C in which every edge weighs more than 2/9 of the cycle.
/// `vertices` is the normalized order v1..vk; side j joins v_j and v_{j+1}.
struct BadCycle {
  int cover_index = -1;
  std::vector<VertexId> vertices;
  std::vector<Weight> sides;
  Weight d1;  // w(v1, v3), squares only
  Weight d2;  // w(v2, v4), squares only
  Weight total;
  int rotation = 0;  // vertices[0] sits at this offset of the cover's cycle

  int size() const { return static_cast<int>(vertices.size()); }
  bool is_square() const { return vertices.size() == 4; }
};

bool is_bad_cycle(const Instance& inst, const std::vector<VertexId>& cycle);
std::vector<BadCycle> find_bad_cycles(const Instance& inst, const CycleCover& c);

/// Gadget edge between copy `copy` (index into the cycle) and anchor
/// `anchor` (0 or 1).
struct GadgetEdge {
  int copy = -1;
  int anchor = -1;
  Weight w;
};

struct GadgetSpec {
  BadCycle cycle;
  std::vector<VertexId> copies;   // ids in G', aligned with cycle.vertices
  std::vector<VertexId> anchors;  // ids in G'
  std::vector<GadgetEdge> edges;
};

/// Value the gadget must realize when copies x and y (cycle positions) are
/// the internally matched pair of a square.
Weight square_target(const BadCycle& sq, int x, int y);

/// Anchor weights for a normalized bad square. Throws NotNormalized or
/// DiagonalBoundViolated.
GadgetSpec square_gadget_weights(const BadCycle& sq);
GadgetSpec triangle_gadget_weights(const BadCycle& tri);

/// Alternating paths inside the cycle that start and end with cycle edges
/// and join positions x and y, as position sequences.
std::vector<std::vector<int>> cycle_fragments(const BadCycle& cyc, int x, int y);
/// Weight between two cycle positions (a side or a diagonal).
const Weight& position_weight(const BadCycle& cyc, int i, int j);
/// Alternating weight of a fragment given as positions.
Weight fragment_weight(const BadCycle& cyc, const std::vector<int>& fragment);
/// Best fragment for an exit pair (ties: lexicographically smallest).
std::vector<int> best_fragment(const BadCycle& cyc, int x, int y);

struct ExitAudit {
  int x = -1;  // exit positions
  int y = -1;
  Weight internal_optimum;
  Weight target;
  Weight fragment_weight;
  Weight error;  // internal_optimum - fragment_weight
};

struct GadgetReport {
  std::vector<ExitAudit> exits;
  Weight max_error;
  Weight error_bound;  // w(c)/18 for squares, 0 for triangles
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Enumerates every exit pair and every internal completion of the gadget.
GadgetReport verify_gadget(const GadgetSpec& g);

/// Normalized bad square with rational sides and diagonals satisfying
/// d1 + d2 <= min(l1 + l3, l2 + l4).
BadCycle random_bad_square(std::mt19937_64& rng);
BadCycle random_bad_triangle(std::mt19937_64& rng);

struct GadgetTrials {
  int squares = 0;
  int triangles = 0;
  int violations = 0;
  Weight worst_error_ratio;  // max over squares of error / w(c)
  std::vector<std::string> first_violations;  // at most five
};

/// `trials` random squares and as many triangles through verify_gadget;
/// a square also fails if its largest error differs from s/2, half the gap
/// between its two side pairs.
GadgetTrials run_gadget_trials(int trials, std::uint64_t seed);

enum class GPrimeEdgeKind { Original, Outward, Gadget };

struct GPrime {
  int original_count = 0;
  BMatchingProblem problem;
  std::vector<GadgetSpec> gadgets;
  std::vector<VertexId> original_of;   // G' vertex -> original vertex (-1 for anchors)
  std::vector<int> gadget_of;          // G' vertex -> gadget index (-1 for originals)
  std::vector<GPrimeEdgeKind> kind;    // per problem edge
  std::vector<int> edge_gadget;        // per problem edge, gadget index for Gadget edges
};

GPrime build_gprime(const Instance& inst, const CycleCover& c);

struct FragmentChoice {
  int gadget = -1;
  int exit_x = -1;  // positions in the normalized cycle
  int exit_y = -1;
  std::vector<VertexId> path;  // original vertex ids
  Weight internal_weight;      // weight of B inside the gadget
  Weight fragment_weight;      // alternating weight of the chosen fragment
};

struct QuasiAlternatingSet {
  EdgeMultiset edges;
  std::vector<FragmentChoice> fragments;
  int max_multiplicity = 0;
};

/// Decodes a b-matching of G' (edge indices into gp.problem.edges) into
/// S_B. Throws ExitCountViolation if a gadget does not have two exits.
QuasiAlternatingSet extract_SB(const GPrime& gp, const std::vector<int>& b_edges, const CycleCover& c);

}  // namespace maxtsp
