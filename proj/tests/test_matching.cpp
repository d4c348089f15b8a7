#include <gtest/gtest.h>

#include <random>

#include "maxtsp/matching.hpp"
#include "oracles.hpp"

using namespace maxtsp;
using maxtsp::testing::brute_force_b_matching;
using maxtsp::testing::brute_force_cycle_cover;
using maxtsp::testing::brute_force_perfect_matching;
using maxtsp::testing::random_instance;

namespace {

Weight matching_weight(const MatchingProblem& p, const std::vector<int>& chosen) {
  Weight sum = 0;
  for (int k : chosen) sum += p.edges[k].w;
  return sum;
}

void expect_perfect(const MatchingProblem& p, const std::vector<int>& chosen) {
  std::vector<int> deg(p.vertex_count, 0);
  for (int k : chosen) {
    ++deg[p.edges[k].u];
    ++deg[p.edges[k].v];
  }
  for (int d : deg) EXPECT_EQ(d, 1);
}

}  // namespace

TEST(PerfectMatching, SingleEdge) {
  MatchingProblem p{2, {{0, 1, 7}}, true};
  const auto m = max_weight_perfect_matching(p);
  ASSERT_EQ(m, std::vector<int>{0});
  EXPECT_EQ(matching_weight(p, m), 7);
}

TEST(PerfectMatching, K4UniqueOptimum) {
  MatchingProblem p{4, {}, true};
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      const bool heavy = (u == 0 && v == 1) || (u == 2 && v == 3);
      p.edges.push_back({u, v, heavy ? 5 : 1});
    }
  }
  const auto m = max_weight_perfect_matching(p);
  EXPECT_EQ(matching_weight(p, m), 10);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(p.edges[m[0]].u, 0);
  EXPECT_EQ(p.edges[m[0]].v, 1);
}

TEST(PerfectMatching, InfeasibleAndMalformed) {
  MatchingProblem path{4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, true};
  EXPECT_THROW(max_weight_perfect_matching(path), Infeasible);
  MatchingProblem odd{3, {{0, 1, 1}, {1, 2, 1}}, true};
  EXPECT_THROW(max_weight_perfect_matching(odd), Infeasible);
  MatchingProblem parallel{2, {{0, 1, 1}, {1, 0, 2}}, true};
  EXPECT_THROW(max_weight_perfect_matching(parallel), GraphError);
}

TEST(PerfectMatching, HeavyEdgeNotInAnyPerfectMatching) {
  // The 0-1 edge weighs 100 but leaves 2,3 unmatchable.
  MatchingProblem p{4, {{0, 1, 100}, {0, 2, 1}, {1, 3, 1}}, true};
  const auto m = max_weight_perfect_matching(p);
  EXPECT_EQ(matching_weight(p, m), 2);
}

TEST(PerfectMatching, RandomSignedAgainstEnumeration) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * std::uniform_int_distribution<int>(1, 5)(rng);
    const double density = std::uniform_real_distribution<double>(0.4, 1.0)(rng);
    MatchingProblem p{n, {}, true};
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (std::uniform_real_distribution<double>(0, 1)(rng) < density) {
          const int num = std::uniform_int_distribution<int>(-40, 40)(rng);
          p.edges.push_back({u, v, Weight(num, 4)});
        }
      }
    }
    const auto expected = brute_force_perfect_matching(p);
    if (!expected) {
      EXPECT_THROW(max_weight_perfect_matching(p), Infeasible);
      continue;
    }
    const auto m = max_weight_perfect_matching(p);
    expect_perfect(p, m);
    EXPECT_EQ(matching_weight(p, m), *expected) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(BMatching, SingleEdgeDegenerate) {
  BMatchingProblem p{{1, 1}, {{0, 1, 3}}};
  EXPECT_EQ(solve_b_matching(p), std::vector<int>{0});
}

TEST(BMatching, FiveCycleUnitWeights) {
  BMatchingProblem p{{2, 2, 2, 2, 2}, {}};
  for (int i = 0; i < 5; ++i) p.edges.push_back({i, (i + 1) % 5, 1});
  EXPECT_EQ(solve_b_matching(p).size(), 5u);
}

TEST(BMatching, InfeasibleRequirement) {
  BMatchingProblem p{{2, 2, 2}, {{0, 1, 1}, {1, 2, 1}}};
  EXPECT_THROW(solve_b_matching(p), Infeasible);
}

TEST(BMatching, RandomMixedDegreesAgainstEnumeration) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    BMatchingProblem p;
    for (int v = 0; v < n; ++v) p.b.push_back(std::uniform_int_distribution<int>(1, 2)(rng));
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (std::uniform_int_distribution<int>(0, 3)(rng) > 0) {
          p.edges.push_back({u, v, Weight(std::uniform_int_distribution<int>(-20, 20)(rng), 2)});
        }
      }
    }
    const auto expected = brute_force_b_matching(p);
    if (!expected) {
      EXPECT_THROW(solve_b_matching(p), Infeasible);
      continue;
    }
    const auto chosen = solve_b_matching(p);
    Weight total = 0;
    std::vector<int> deg(n, 0);
    for (int k : chosen) {
      total += p.edges[k].w;
      ++deg[p.edges[k].u];
      ++deg[p.edges[k].v];
    }
    for (int v = 0; v < n; ++v) EXPECT_EQ(deg[v], p.b[v]);
    EXPECT_EQ(total, *expected);
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(CycleCover, AllEqualWeights) {
  std::vector<std::vector<Weight>> m(5, std::vector<Weight>(5, 1));
  for (int i = 0; i < 5; ++i) m[i][i] = 0;
  const CycleCover c = max_weight_cycle_cover(Instance(m));
  EXPECT_EQ(c.weight(), 5);
}

TEST(CycleCover, TooSmall) {
  EXPECT_THROW(max_weight_cycle_cover(Instance({{0, 1}, {1, 0}})), InstanceTooSmall);
}

TEST(CycleCover, RandomAgainstEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 8)(rng);
    const Instance inst = random_instance(n, 100, rng);
    const CycleCover c = max_weight_cycle_cover(inst);
    EXPECT_EQ(c.weight(), brute_force_cycle_cover(inst)) << "trial " << trial;
  }
}

TEST(CycleCover, DecomposeOrdering) {
  const std::vector<VertexPair> edges{{0, 4}, {4, 2}, {2, 0}, {1, 3}, {3, 5}, {5, 1}};
  const auto cycles = decompose_two_factor(6, edges);
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0], (std::vector<VertexId>{0, 2, 4}));
  EXPECT_EQ(cycles[1], (std::vector<VertexId>{1, 3, 5}));
}
