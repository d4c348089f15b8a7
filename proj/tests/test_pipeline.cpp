#include <gtest/gtest.h>

#include <random>

#include "maxtsp/pipeline.hpp"
#include "maxtsp/tour.hpp"
#include "oracles.hpp"

using namespace maxtsp;

namespace {

Instance uniform_instance(int n, int w) {
  std::vector<std::vector<Weight>> m(n, std::vector<Weight>(n, Weight(w)));
  for (int i = 0; i < n; ++i) m[i][i] = 0;
  return Instance(std::move(m));
}

// Pentagon 0..4 with side i weighing i+1, every chord 0.
Instance pentagon_instance() {
  std::vector<std::vector<Weight>> m(5, std::vector<Weight>(5, Weight(0)));
  for (int i = 0; i < 5; ++i) m[i][(i + 1) % 5] = m[(i + 1) % 5][i] = i + 1;
  return Instance(std::move(m));
}

}  // namespace

TEST(Oracle, Triangle) {
  std::mt19937_64 rng(1);
  const Instance inst = maxtsp::testing::random_instance(3, 50, rng);
  const Tour t = oracle_opt(inst);
  EXPECT_TRUE(is_tour(3, t.order));
  EXPECT_EQ(t.weight, inst.weight(0, 1) + inst.weight(1, 2) + inst.weight(0, 2));
}

TEST(Oracle, AllEqualWeights) {
  EXPECT_EQ(oracle_opt(uniform_instance(7, 4)).weight, 28);
}

TEST(Oracle, MatchesEnumerationAndParallelTable) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    const Instance inst = maxtsp::testing::random_instance(n, 100, rng);
    const Tour serial = oracle_opt(inst);
    const Tour parallel = oracle_opt_parallel(inst);
    EXPECT_EQ(serial.weight, maxtsp::testing::brute_force_tour(inst));
    EXPECT_EQ(serial.order, parallel.order);
    EXPECT_EQ(serial.weight, tour_weight(inst, serial.order));
  }
}

TEST(Oracle, RejectsLargeInstances) {
  std::mt19937_64 rng(4);
  EXPECT_THROW(oracle_opt(maxtsp::testing::random_instance(13, 10, rng)), TooLarge);
}

TEST(Tour, SmallComponentsDoubledTriangleAndSquare) {
  Multigraph tri(3);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 3; ++i) tri.add_edge(i, (i + 1) % 3, 1);
  }
  EXPECT_EQ(exact_small_component(tri, {0, 1, 2}).weight, 2);
  Multigraph sq(4);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 4; ++i) sq.add_edge(i, (i + 1) % 4, 1);
  }
  EXPECT_EQ(exact_small_component(sq, {0, 1, 2, 3}).weight, 3);
  EXPECT_TRUE(exact_small_component(sq, {}).edges.empty());
}

TEST(Tour, PatchingRejectsCycles) {
  const Instance inst = uniform_instance(4, 1);
  EXPECT_THROW(patch_paths(inst, {{0, 1}, {1, 2}, {0, 2}}), NotPathCollection);
  EXPECT_THROW(patch_paths(inst, {{0, 1}, {0, 2}, {0, 3}}), NotPathCollection);
}

TEST(Tour, PatchingKeepsThePathsAndAddsHeaviestJoins) {
  std::vector<std::vector<Weight>> m(4, std::vector<Weight>(4, Weight(1)));
  for (int i = 0; i < 4; ++i) m[i][i] = 0;
  m[1][2] = m[2][1] = 9;
  const Instance inst(m);
  const Tour t = patch_paths(inst, {{0, 1}});
  EXPECT_TRUE(is_tour(4, t.order));
  EXPECT_EQ(t.weight, 1 + 9 + 1 + 1);
}

TEST(Tour, DoubledPentagonExtraction) {
  const Instance inst = pentagon_instance();
  Multigraph h(5);
  EdgeColors col;
  for (int i = 0; i < 5; ++i) {
    h.add_edge(i, (i + 1) % 5, i + 1);
    h.add_edge(i, (i + 1) % 5, i + 1);
  }
  col.assign(h.edge_capacity(), Color::None);
  EdgeFlags removed(h.edge_capacity(), false);
  for (EdgeId e : h.edges()) col[e] = e % 2 == 0 ? Color::Red : Color::Blue;
  removed[0] = removed[1] = true;  // both copies of the weight-1 side
  col[0] = col[1] = Color::None;
  ExtractedClass cls;
  const Tour t = extract_tour(inst, h, col, removed, {}, &cls);
  EXPECT_EQ(cls.weight, 14);
  EXPECT_EQ(t.weight, 15);
}

TEST(Pipeline, AllZeroWeights) {
  const auto r = run_pipeline(uniform_instance(8, 0), {true});
  EXPECT_TRUE(is_tour(8, r.tour.order));
  EXPECT_EQ(r.tour.weight, 0);
  EXPECT_TRUE(checks(r.certificate).all());
}

TEST(Pipeline, SmallInstancesAreExact) {
  std::mt19937_64 rng(5);
  const Instance inst = maxtsp::testing::random_instance(4, 30, rng);
  const auto r = run_pipeline(inst, {true});
  EXPECT_EQ(r.certificate.method, "exact");
  EXPECT_EQ(r.tour.weight, maxtsp::testing::brute_force_tour(inst));
}

TEST(Pipeline, RandomInstancesMeetTheRatio) {
  int approximations = 0;
  for (int i = 0; i < 150; ++i) {
    const int n = 5 + i % 8;
    const Instance inst = generate_instance(n, 100, 1000 + i);
    const auto r = run_pipeline(inst, {true, kOracleCap, 1000u + i});
    ASSERT_TRUE(is_tour(n, r.tour.order));
    EXPECT_EQ(r.tour.weight, tour_weight(inst, r.tour.order));
    const auto k = checks(r.certificate);
    EXPECT_TRUE(k.all()) << certificate_text(r.certificate);
    EXPECT_EQ(r.certificate.safety_net_events, 0);
    approximations += r.certificate.method == "approximation";
  }
  EXPECT_GT(approximations, 30);
}

TEST(Pipeline, ClusteredInstancesWithBadCycles) {
  std::mt19937_64 rng(21);
  int bad = 0;
  for (int i = 0; i < 80; ++i) {
    const Instance inst = maxtsp::testing::clustered_instance(6 + i % 5, rng);
    const auto r = run_pipeline(inst, {true});
    bad += r.certificate.bad_triangles + r.certificate.bad_squares;
    EXPECT_TRUE(checks(r.certificate).all()) << certificate_text(r.certificate);
    EXPECT_TRUE(r.certificate.small_components_doubled);
  }
  EXPECT_GT(bad, 20);
}

TEST(Pipeline, LargerInstancesStayValid) {
  for (int i = 0; i < 12; ++i) {
    const int n = 15 + 5 * i;
    const Instance inst = generate_instance(n, 100, 77 + i);
    const auto r = run_pipeline(inst);
    ASSERT_TRUE(is_tour(n, r.tour.order));
    const auto k = checks(r.certificate);
    EXPECT_TRUE(k.all()) << "n=" << n;
    EXPECT_GE(r.tour.weight, r.certificate.class_weight);
  }
}

TEST(Pipeline, CertificatesAreDeterministic) {
  const Instance inst = generate_instance(9, 100, 42);
  const auto a = certificate_text(run_pipeline(inst, {true, kOracleCap, 42}).certificate);
  const auto b = certificate_text(run_pipeline(inst, {true, kOracleCap, 42}).certificate);
  EXPECT_EQ(a, b);
}

TEST(Pipeline, SerialAndParallelBatchesAgree) {
  BatchOptions o;
  o.count = 40;
  o.seed = 9;
  o.parallel = false;
  const auto serial = run_batch(o);
  o.parallel = true;
  const auto parallel = run_batch(o);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(certificate_text(serial[i].certificate), certificate_text(parallel[i].certificate));
  }
}

// Caps whose ribbons must differ around an odd cycle (493, 12427), and a
// completion that put a blank on one copy of a double edge (773).
TEST(Pipeline, InstancesThatNeededCapReductionOrDoubledBlankFix) {
  const std::pair<int, std::uint64_t> cases[] = {
      {10, 4133503458153377615ull}, {9, 10696463952959265470ull}, {10, 3595449697946249265ull}};
  for (const auto& [n, seed] : cases) {
    const auto r = run_pipeline(generate_instance(n, 100, seed), {true, kOracleCap, seed});
    EXPECT_EQ(r.certificate.safety_net_events, 0) << "seed " << seed;
    EXPECT_TRUE(checks(r.certificate).all()) << certificate_text(r.certificate);
  }
}
