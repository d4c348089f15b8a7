#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxtsp/coloring.hpp"
#include "maxtsp/multigraph.hpp"

namespace maxtsp {

/// A 4-cycle on four distinct vertices; edges[i] joins verts[i] and
/// verts[(i+1)%4].
struct Square {
  EdgeId edges[4];
  VertexId verts[4];
};

std::vector<Square> find_squares(const Multigraph& g);

/// The colour in which every edge of `cycle` could still end up, given the
/// coloured edges around it (a necessary condition: each vertex of the
/// cycle must have room for its uncoloured cycle edges), or nullopt.
std::optional<Color> potential_monochrome(const Multigraph& g, const EdgeColors& colors,
                                          const std::vector<EdgeId>& cycle);

struct ColorerStats {
  int doubles = 0;
  int caps = 0;
  int caps_left_active = 0;
  int square_rounds = 0;
  int branch_two_active = 0;
  int branch_one_active = 0;
  int branch_all_blank = 0;
  int extra_disabled = 0;      // short cycles disabled after the square loop
  int undisabled_cycles = 0;   // short cycles no pass could disable
  int greedy_blanks = 0;
  bool completion_search = false;  // greedy result needed the search
  bool completion_search_failed = false;
  int completion_restarts = 0;  // search starts abandoned
  long completion_nodes = 0;
  int kwad_flips = 0;
  int cycle_moves = 0;
  int preprocess_rounds = 0;
  int safety_net_events = 0;
  std::vector<std::string> log;
};

/// Colours one copy of every double edge red (the lower id) and the other
/// blue.
EdgeColors disable_two_cycles(const Multigraph& g, ColorerStats* stats = nullptr);
/// Colours the two ribbons of every cap differently.
void disable_caps(const Multigraph& g, EdgeColors& colors, ColorerStats& stats);
/// The active-square loop.
void disable_squares(const Multigraph& g, EdgeColors& colors, ColorerStats& stats);
/// Disables any remaining 2-, 3- or 4-cycle that could still become
/// monochromatic by colouring one of its open edges the other way.
void disable_short_cycles(const Multigraph& g, EdgeColors& colors, ColorerStats& stats);
/// All disabling passes in order.
EdgeColors run_disabling(const Multigraph& g, ColorerStats& stats);

/// Colours every open edge (greedy by edge id, then a bounded search if the
/// greedy result leaves adjacent or one-sided blank edges); open edges that
/// stay uncoloured become Blank.
void complete_coloring(const Multigraph& g, EdgeColors& colors, ColorerStats& stats, long search_budget = 200000);

/// Flip and cycle eliminations to a fixpoint.
void preprocess(const Multigraph& g, EdgeColors& colors, ColorerStats& stats);

struct ColoringAudit {
  int degree_violations = 0;
  int short_monochromatic = 0;
  int adjacent_blanks = 0;
  int one_sided_blanks = 0;  // both ends short of the same colour
  int doubled_blanks = 0;    // a blank with a parallel copy, which is then one of its own heads
  int uncoloured = 0;
  bool ok() const {
    return degree_violations == 0 && short_monochromatic == 0 && adjacent_blanks == 0 && one_sided_blanks == 0 &&
           doubled_blanks == 0 && uncoloured == 0;
  }
};

ColoringAudit audit_coloring(const Multigraph& g, const EdgeColors& colors);

struct ColorerResult {
  EdgeColors colors;
  ColorerStats stats;
  ColoringAudit audit;
};

/// Full pipeline: disabling, completion, preprocessing, then the safety
/// net that blanks the lightest edge of any short monochromatic cycle left.
ColorerResult well_color(const Multigraph& g);

}  // namespace maxtsp
