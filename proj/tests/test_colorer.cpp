#include <gtest/gtest.h>

#include <iostream>
#include <random>

#include "maxtsp/colorer.hpp"
#include "maxtsp/reducer.hpp"
#include "oracles.hpp"

using namespace maxtsp;
using maxtsp::testing::perturbed_double_cycle;
using maxtsp::testing::random_four_regular;
using maxtsp::testing::CompletionOracle;

namespace {

Multigraph doubled_cycle(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n, i + 1);
    g.add_edge(i, (i + 1) % n, i + 1);
  }
  return g;
}

// Circulant C_n(1,2): simple 4-regular, every vertex in triangles and
// squares.
Multigraph circulant(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n, 1);
    g.add_edge(i, (i + 2) % n, 1);
  }
  return g;
}

// A vertex with exactly two coloured edges must have one of each colour.
int invariant_one_breaks(const Multigraph& g, const EdgeColors& col) {
  int bad = 0;
  for (VertexId v : g.vertices()) {
    const int r = color_degree(g, col, v, Color::Red), b = color_degree(g, col, v, Color::Blue);
    if (r + b == 2 && r != 1) ++bad;
  }
  return bad;
}

}  // namespace

TEST(Colorer, DoubledPentagonTwoCycles) {
  const Multigraph g = doubled_cycle(5);
  const EdgeColors col = disable_two_cycles(g);
  int red = 0, blue = 0;
  for (EdgeId e : g.edges()) {
    red += col[e] == Color::Red;
    blue += col[e] == Color::Blue;
  }
  EXPECT_EQ(red, 5);
  EXPECT_EQ(blue, 5);
  const auto r = well_color(g);
  EXPECT_TRUE(r.audit.ok());
  EXPECT_EQ(r.stats.safety_net_events, 0);
}

TEST(Colorer, SimpleGraphHasNothingToDisable) {
  const Multigraph g = circulant(9);
  const EdgeColors col = disable_two_cycles(g);
  for (EdgeId e : g.edges()) EXPECT_EQ(col[e], Color::None);
}

TEST(Colorer, DoublesAlwaysSplit) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Multigraph g = perturbed_double_cycle(6 + trial % 20, 1 + trial % 5, 30, rng);
    const EdgeColors col = disable_two_cycles(g);
    for (EdgeId e : g.edges()) {
      auto pair = g.edges_between(g.edge(e).u, g.edge(e).v);
      if (pair.size() == 2) EXPECT_NE(col[pair[0]], col[pair[1]]);
    }
  }
}

TEST(Colorer, CapRibbonsDiffer) {
  // triangle cap 5,6,7 hanging between 0 and 4 on a doubled path
  Multigraph g(8);
  g.add_edge(0, 1, 1);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 4, 1);
  g.add_edge(3, 4, 1);
  g.add_edge(0, 5, 1);
  g.add_edge(5, 6, 1);
  g.add_edge(5, 6, 1);
  g.add_edge(6, 7, 1);
  g.add_edge(6, 7, 1);
  g.add_edge(5, 7, 1);
  g.add_edge(7, 4, 1);
  g.add_edge(0, 4, 1);
  ASSERT_TRUE(validate_multigraph(g, 4, 5).ok());
  const auto caps = find_caps(g);
  ASSERT_EQ(caps.size(), 1u);
  ColorerStats stats;
  EdgeColors col = disable_two_cycles(g, &stats);
  disable_caps(g, col, stats);
  EXPECT_TRUE(col[caps[0].ribbon_first] == Color::Red || col[caps[0].ribbon_first] == Color::Blue);
  EXPECT_EQ(col[caps[0].ribbon_second], opposite(col[caps[0].ribbon_first]));
  EXPECT_EQ(invariant_one_breaks(g, col), 0);
}

TEST(Colorer, LoneSquareAlternates) {
  // a 4-cycle 0-1-2-3 whose vertices each have two more edges to a
  // pentagon-like rest; no doubles, so only the square loop colours it
  Multigraph g(8);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 0, 1);
  for (auto [u, v] : std::vector<VertexPair>{{0, 4}, {0, 5}, {1, 6}, {1, 7}, {2, 4}, {2, 5}, {3, 6}, {3, 7},
                                             {4, 6}, {4, 7}, {5, 6}, {5, 7}}) {
    g.add_edge(u, v, 1);
  }
  ASSERT_TRUE(validate_multigraph(g, 4, 5).ok());
  ColorerStats stats;
  EdgeColors col = disable_two_cycles(g, &stats);
  disable_squares(g, col, stats);
  EXPECT_GE(stats.branch_all_blank, 1);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NE(col[i], Color::None);
    EXPECT_NE(col[i], col[(i + 1) % 4]);
  }
}

// After the disabling passes no way of finishing the colouring can make a
// cycle of length below five monochromatic (graphs with at most 12 edges,
// every completion enumerated).
TEST(Colorer, DisablingDefeatsEveryCompletion) {
  std::mt19937_64 rng(99);
  int graphs = 0;
  long leaves = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 5 + trial % 2;
    const Multigraph g = random_four_regular(n, 20, rng);
    ColorerStats stats;
    const EdgeColors col = run_disabling(g, stats);
    EXPECT_EQ(stats.undisabled_cycles, 0);
    CompletionOracle oracle(g, col);
    EXPECT_FALSE(oracle.some_completion_is_bad()) << "trial " << trial;
    leaves += oracle.leaves();
    ++graphs;
  }
  EXPECT_EQ(graphs, 300);
  std::cout << "exhaustive completions checked: " << leaves << "\n";
}

TEST(Colorer, PotentialMonochromeMatchesOracleOnReducedShapes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    const Multigraph g = perturbed_double_cycle(5 + trial % 2, 1 + trial % 3, 20, rng);
    ColorerStats stats;
    const EdgeColors col = run_disabling(g, stats);
    CompletionOracle oracle(g, col);
    EXPECT_FALSE(oracle.some_completion_is_bad()) << "trial " << trial;
  }
}

TEST(Colorer, WellColoringOnReducedGraphs) {
  std::mt19937_64 rng(31);
  int runs = 0, searches = 0, blanks = 0, nets = 0, moves = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Multigraph g = perturbed_double_cycle(8 + trial % 40, 1 + trial % 6, 100, rng);
    const auto red = reduce_to_fixpoint(g);
    if (!red.exempt.empty()) continue;
    const auto r = well_color(red.reduced);
    ++runs;
    EXPECT_EQ(r.audit.short_monochromatic, 0);
    EXPECT_EQ(r.audit.degree_violations, 0);
    EXPECT_EQ(r.audit.uncoloured, 0);
    EXPECT_EQ(r.audit.adjacent_blanks, 0) << "trial " << trial;
    EXPECT_EQ(r.audit.one_sided_blanks, 0) << "trial " << trial;
    searches += r.stats.completion_search;
    nets += r.stats.safety_net_events;
    moves += r.stats.kwad_flips + r.stats.cycle_moves;
    for (EdgeId e : red.reduced.edges()) blanks += r.colors[e] == Color::Blank;
  }
  EXPECT_GT(runs, 200);
  std::cout << "well colorings: " << runs << " runs, " << blanks << " blanks, " << searches << " searches, " << moves
            << " preprocessing moves, " << nets << " safety-net events\n";
}

TEST(Colorer, WellColoringOnRandomFourRegular) {
  std::mt19937_64 rng(41);
  int nets = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Multigraph g = random_four_regular(10 + trial % 30, 50, rng);
    const auto r = well_color(g);
    EXPECT_EQ(r.audit.short_monochromatic, 0);
    EXPECT_EQ(r.audit.adjacent_blanks, 0) << "trial " << trial;
    EXPECT_EQ(r.audit.one_sided_blanks, 0) << "trial " << trial << " search " << r.stats.completion_search
                                            << " failed " << r.stats.completion_search_failed << " nodes "
                                            << r.stats.completion_nodes << " greedy " << r.stats.greedy_blanks;
    EXPECT_EQ(r.audit.doubled_blanks, 0) << "trial " << trial;
    nets += r.stats.safety_net_events;
  }
  std::cout << "random 4-regular safety-net events: " << nets << "\n";
}

// The parallel copy of a blank is one of its heads; the audit must see it.
TEST(Colorer, AuditCountsBlankOnDoubleEdge) {
  const Multigraph g = doubled_cycle(5);
  EdgeColors col = disable_two_cycles(g);
  EXPECT_EQ(audit_coloring(g, col).doubled_blanks, 0);
  col[0] = Color::Blank;
  EXPECT_EQ(audit_coloring(g, col).doubled_blanks, 1);
  EXPECT_FALSE(audit_coloring(g, col).ok());
}

TEST(Colorer, PreprocessWithoutBlanksIsIdentity) {
  const Multigraph g = doubled_cycle(6);
  ColorerStats stats;
  EdgeColors col = disable_two_cycles(g, &stats);
  const EdgeColors before = col;
  preprocess(g, col, stats);
  EXPECT_EQ(col, before);
  EXPECT_EQ(stats.kwad_flips + stats.cycle_moves, 0);
}

TEST(Colorer, PreprocessIterationsBounded) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const Multigraph g = random_four_regular(12 + trial % 20, 30, rng);
    ColorerStats stats;
    EdgeColors col = run_disabling(g, stats);
    complete_coloring(g, col, stats);
    int blanks = 0;
    for (EdgeId e : g.edges()) blanks += col[e] == Color::Blank;
    preprocess(g, col, stats);
    EXPECT_LE(stats.kwad_flips + stats.cycle_moves, blanks + g.edge_count());
  }
}
