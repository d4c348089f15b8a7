#include <gtest/gtest.h>

#include <iostream>
#include <random>
#include <set>

#include "maxtsp/colorer.hpp"
#include "maxtsp/partitioner.hpp"
#include "maxtsp/reducer.hpp"
#include "oracles.hpp"

using namespace maxtsp;
using maxtsp::testing::perturbed_double_cycle;
using maxtsp::testing::random_four_regular;

namespace {

// Doubled pentagon, the copies of edge i both weighing i+1.
Multigraph doubled_pentagon() {
  Multigraph g(5);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5, i + 1);
    g.add_edge(i, (i + 1) % 5, i + 1);
  }
  return g;
}

Weight class_weight(const Multigraph& g, const EdgeColors& col, Color c) {
  Weight w(0);
  for (EdgeId e : g.edges()) {
    if (col[e] == c) w += g.edge(e).w;
  }
  return w;
}

struct Run {
  Multigraph h;
  EdgeColors colors;
};

// Post-reduction graphs with their well colourings.
std::vector<Run> colored_runs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Run> runs;
  for (int trial = 0; static_cast<int>(runs.size()) < count; ++trial) {
    const Multigraph g = trial % 3 == 2 ? random_four_regular(10 + trial % 30, 100, rng)
                                        : perturbed_double_cycle(8 + trial % 40, 1 + trial % 6, 100, rng);
    auto red = reduce_to_fixpoint(g);
    if (!red.exempt.empty()) continue;
    auto wc = well_color(red.reduced);
    runs.push_back({std::move(red.reduced), std::move(wc.colors)});
  }
  return runs;
}

}  // namespace

TEST(Partitioner, DoubledPentagon) {
  const Multigraph g = doubled_pentagon();
  const auto wc = well_color(g);
  ASSERT_TRUE(wc.audit.ok());
  const auto r = partition_and_choose(g, wc.colors);
  EXPECT_EQ(r.static_cycles, 2);
  for (int p = 0; p < kPhases; ++p) EXPECT_EQ(r.set_weight[p], Weight(2 * (p + 1)));
  EXPECT_EQ(r.chosen_phase, 0);
  EXPECT_EQ(r.removed_weight, Weight(2));
  EXPECT_LE(r.removed_weight * 5, g.total_weight());
  EXPECT_EQ(class_weight(g, r.colors, Color::Red), Weight(14));
  EXPECT_EQ(class_weight(g, r.colors, Color::Blue), Weight(14));
  EXPECT_TRUE(check_path_coloring(g, r.colors, r.removed).ok);
}

TEST(Partitioner, ZeroWeights) {
  Multigraph g = doubled_pentagon();
  for (EdgeId e : g.edges()) g.set_weight(e, 0);
  const auto r = partition_and_choose(g, well_color(g).colors);
  EXPECT_EQ(r.removed_weight, Weight(0));
  EXPECT_TRUE(check_path_coloring(g, r.colors, r.removed).ok);
}

TEST(Partitioner, StaticSevenCycle) {
  Multigraph g(7);
  for (int i = 0; i < 7; ++i) {
    g.add_edge(i, (i + 1) % 7, 10 - i);
    g.add_edge(i, (i + 1) % 7, 10 - i);
  }
  const auto wc = well_color(g);
  PhaseLabels labels(g.edge_capacity(), -1);
  EXPECT_EQ(distribute_static_cycles(g, wc.colors, {}, labels), 2);
  for (int p = 0; p < kPhases; ++p) {
    EXPECT_TRUE(monochromatic_cycles(g, phase_coloring(g, wc.colors, {}, labels, p)).empty());
  }
}

TEST(Partitioner, NothingToDecycleWithoutCycles) {
  // the final colouring of the pentagon has paths only
  const Multigraph g = doubled_pentagon();
  const auto r = partition_and_choose(g, well_color(g).colors);
  PhaseLabels labels(g.edge_capacity(), -1);
  const auto dec = decycle_phases(g, r.colors, {}, labels);
  EXPECT_EQ(dec.cycles, 0);
  EXPECT_TRUE(dec.additions.empty());
}

TEST(Partitioner, RandomRunsSatisfyThePartitionInvariants) {
  int blanks = 0, twinny = 0, backtracks = 0, nets = 0, runs = 0;
  for (auto& run : colored_runs(400, 77)) {
    const Multigraph& g = run.h;
    ++runs;
    std::vector<EdgeId> irregular;
    const auto records = blank_records(g, run.colors, &irregular);
    EXPECT_TRUE(irregular.empty());
    const auto r = partition_and_choose(g, run.colors);
    blanks += r.blanks;
    backtracks += r.search_backtracks;
    nets += r.safety_net_events;

    // five different sets per blank
    for (const auto& rec : records) {
      twinny += rec.twinny;
      std::set<int> seen;
      for (EdgeId e : {rec.edge, rec.red_heads[0], rec.red_heads[1], rec.blue_heads[0], rec.blue_heads[1]}) {
        ASSERT_GE(r.labels[e], 0);
        seen.insert(r.labels[e]);
      }
      EXPECT_EQ(seen.size(), 5u);
    }
    // every phase acyclic, sets disjoint so their weights sum to at most w(H)
    Weight total(0);
    for (int p = 0; p < kPhases; ++p) {
      EXPECT_TRUE(monochromatic_cycles(g, phase_coloring(g, run.colors, records, r.labels, p)).empty());
      total += r.set_weight[p];
    }
    EXPECT_LE(total, g.total_weight());
    EXPECT_EQ(r.safety_net_events, 0);
    if (r.safety_net_events == 0) EXPECT_LE(r.removed_weight * 5, g.total_weight());
    const auto check = check_path_coloring(g, r.colors, r.removed);
    EXPECT_TRUE(check.ok) << check.reason;
  }
  std::cout << "partitions: " << runs << " runs, " << blanks << " blanks, " << twinny << " twinny, " << backtracks
            << " backtracks, " << nets << " safety-net events\n";
}

TEST(Partitioner, MatchedEdgesAreDistinctAndOnTheirCycles) {
  for (auto& run : colored_runs(100, 5)) {
    const auto records = blank_records(run.h, run.colors);
    auto labels = assign_heads(run.h, run.colors, records).labels;
    distribute_static_cycles(run.h, run.colors, records, labels);
    const PhaseLabels before = labels;
    std::vector<std::vector<std::vector<EdgeId>>> cycles(kPhases);
    for (int p = 0; p < kPhases; ++p) {
      cycles[p] = monochromatic_cycles(run.h, phase_coloring(run.h, run.colors, records, labels, p));
    }
    const auto dec = decycle_phases(run.h, run.colors, records, labels);
    EXPECT_TRUE(dec.saturated);
    std::set<EdgeId> used;
    const EdgeFlags charged = charged_edges(run.h, records);
    for (const auto& [p, e] : dec.additions) {
      EXPECT_TRUE(used.insert(e).second);
      EXPECT_FALSE(charged[e]);
      EXPECT_EQ(before[e], -1);
      bool on_cycle = false;
      for (const auto& cyc : cycles[p]) on_cycle |= std::find(cyc.begin(), cyc.end(), e) != cyc.end();
      EXPECT_TRUE(on_cycle);
    }
    EXPECT_EQ(static_cast<int>(dec.additions.size()), dec.cycles);
  }
}

TEST(Partitioner, SharedHeadGoesToTheFirstPhaseOfItsColour) {
  int checked = 0;
  for (auto& run : colored_runs(400, 123)) {
    const auto records = blank_records(run.h, run.colors);
    const auto heads = assign_heads(run.h, run.colors, records);
    if (!heads.found || heads.backtracks > 0) continue;
    for (const auto& rec : records) {
      if (!rec.twinny) continue;
      ++checked;
      const bool red = rec.comhead == rec.red_heads[0] || rec.comhead == rec.red_heads[1];
      EXPECT_EQ(heads.labels[rec.comhead], red ? 0 : 2);
    }
  }
  std::cout << "shared heads checked: " << checked << "\n";
}
