#pragma once

#include <array>
#include <string>
#include <vector>

#include "maxtsp/coloring.hpp"
#include "maxtsp/multigraph.hpp"

namespace maxtsp {

inline constexpr int kPhases = 5;

/// A blank edge between a vertex with two red coloured edges (the red
/// heads) and one blue (the blue tail), and a vertex with two blue heads and
/// a red tail.
struct BlankEdgeRecord {
  EdgeId edge = -1;
  VertexId red_end = -1, blue_end = -1;
  std::array<EdgeId, 2> red_heads{-1, -1};
  std::array<EdgeId, 2> blue_heads{-1, -1};
  EdgeId red_tail = -1, blue_tail = -1;
  bool twinny = false;  // shares a head with another blank edge
  EdgeId comhead = -1;  // the shared head
};

/// Records for every blank edge whose ends are short of different colours
/// and touch no other blank edge. The others are returned in `irregular`.
std::vector<BlankEdgeRecord> blank_records(const Multigraph& g, const EdgeColors& colors,
                                           std::vector<EdgeId>* irregular = nullptr);

/// Phase labels: every edge carries the phase in which it is removed, or -1.
/// A blank edge and its four heads get five different labels; in phase p the
/// blank is removed if its own label is p and otherwise takes the colour of
/// its head labelled p.
using PhaseLabels = std::vector<int>;

/// Colour of every edge in `phase` (Color::None for removed edges). Edges
/// whose label is still undecided (`pending`) are left out as None too.
EdgeColors phase_coloring(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                          const PhaseLabels& labels, int phase, const EdgeFlags* pending = nullptr);

/// Monochromatic cycles of a colouring whose colour classes have maximum
/// degree two, each as a sorted edge list.
std::vector<std::vector<EdgeId>> monochromatic_cycles(const Multigraph& g, const EdgeColors& colors);

/// Edges that are a blank edge or a head of one.
EdgeFlags charged_edges(const Multigraph& g, const std::vector<BlankEdgeRecord>& records);

/// Labels the blanks and heads so that every phase's cycles can be broken
/// by distinct uncharged edges. Tries the usual split first (red heads in
/// phases 0 and 1, blue heads in 2 and 3, the blank itself removed in 4,
/// a shared head in the first phase of its colour) and backtracks over the
/// other labellings within `budget` search nodes. Returns false if none
/// was found; `labels` then holds the usual split without checks.
struct HeadAssignment {
  PhaseLabels labels;
  bool found = false;
  long nodes = 0;
  int backtracks = 0;
};
HeadAssignment assign_heads(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                            long budget = 100000);

/// Cycles without charged edges live in every phase; their five lightest
/// edges go to phases 0..4 in order of weight (ties by id). Returns the
/// number of such cycles.
int distribute_static_cycles(const Multigraph& g, const EdgeColors& colors,
                             const std::vector<BlankEdgeRecord>& records, PhaseLabels& labels);

struct DecycleResult {
  bool saturated = true;
  int cycles = 0;
  std::vector<std::pair<int, EdgeId>> additions;  // (phase, edge)
  std::vector<std::pair<int, std::vector<EdgeId>>> unmatched;
};

/// Gives every (phase, cycle) pair an unlabelled uncharged edge of the cycle,
/// no edge used twice, by augmenting paths. Matched edges are labelled.
DecycleResult decycle_phases(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                             PhaseLabels& labels);

struct PartitionResult {
  PhaseLabels labels;
  std::array<Weight, kPhases> set_weight{};
  int chosen_phase = 0;
  EdgeColors colors;  // final Red/Blue colouring of the kept edges
  EdgeFlags removed;  // E'
  Weight removed_weight;
  int blanks = 0;
  int static_cycles = 0;
  int decycled = 0;
  long search_nodes = 0;
  int search_backtracks = 0;
  int safety_net_events = 0;
  std::vector<std::string> log;
};

/// Full partition: records, head labels, static cycles, decycling, and the
/// lightest phase as E'.
PartitionResult partition_and_choose(const Multigraph& g, const EdgeColors& colors);

}  // namespace maxtsp
