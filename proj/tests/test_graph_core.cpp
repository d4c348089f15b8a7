#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "maxtsp/multigraph.hpp"
#include "oracles.hpp"

using namespace maxtsp;

namespace {

// Vertices A..I = 0..8. Triangles ABC, DEF, GHI weigh 5 per edge; the cross
// weights are chosen so that the alternating cycles (AD,DF,FB,BA) and
// (DG,GI,IE,ED) have alternating weights -4 and -2.
enum { A, B, C, D, E, F, G, H, I };

Instance nine_vertex_instance() {
  std::vector<std::vector<Weight>> m(9, std::vector<Weight>(9, 1));
  for (int i = 0; i < 9; ++i) m[i][i] = 0;
  auto set = [&](int u, int v, int w) { m[u][v] = m[v][u] = w; };
  for (int t = 0; t < 9; t += 3) {
    set(t, t + 1, 5);
    set(t + 1, t + 2, 5);
    set(t, t + 2, 5);
  }
  set(A, D, 3);
  set(F, B, 3);
  set(D, G, 4);
  set(I, E, 4);
  return Instance(m);
}

CycleCover nine_vertex_cover(const Instance& inst) { return CycleCover(inst, {{A, B, C}, {D, E, F}, {G, H, I}}); }

}  // namespace

TEST(Weight, DecimalRoundTrip) {
  EXPECT_EQ(parse_decimal("2.30"), Weight(23, 10));
  EXPECT_EQ(parse_decimal("-0.25"), Weight(-1, 4));
  EXPECT_EQ(to_decimal_string(Weight(23, 10)), "2.3");
  EXPECT_EQ(to_decimal_string(Weight(-1, 4)), "-0.25");
  EXPECT_EQ(to_decimal_string(Weight(1, 3)), "1/3");
  EXPECT_EQ(to_decimal_string(Weight(0)), "0");
  EXPECT_THROW(parse_decimal("1e3"), std::invalid_argument);
  EXPECT_THROW(parse_decimal("."), std::invalid_argument);
}

TEST(Instance, ParserValidation) {
  std::istringstream good("3\n0 1 2\n1 0 3.5\n2 3.5 0\n");
  const Instance inst = parse_instance(good);
  EXPECT_EQ(inst.weight(1, 2), Weight(7, 2));
  std::istringstream asym("2\n0 1\n2 0\n");
  EXPECT_THROW(parse_instance(asym), InstanceError);
  std::istringstream neg("2\n0 -1\n-1 0\n");
  EXPECT_THROW(parse_instance(neg), InstanceError);
  std::istringstream diag("2\n1 1\n1 0\n");
  EXPECT_THROW(parse_instance(diag), InstanceError);
  std::istringstream tiny("1\n0\n");
  EXPECT_THROW(parse_instance(tiny), InstanceError);
  std::istringstream trailing("2\n0 1\n1 0\n5\n");
  EXPECT_THROW(parse_instance(trailing), InstanceError);
  std::ostringstream out;
  write_instance(out, inst);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_instance(back).matrix(), inst.matrix());
}

TEST(Multigraph, MultiplicityAndLoops) {
  Multigraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 0, 2);
  EXPECT_THROW(g.add_edge(0, 1, 3), GraphError);
  EXPECT_THROW(g.add_edge(2, 2, 1), GraphError);
  EXPECT_THROW(g.add_edge(1, 2, -1), GraphError);
  Multigraph aux(2, true);
  EXPECT_NO_THROW(aux.add_edge(0, 1, -4));
  EXPECT_EQ(g.multiplicity(0, 1), 2);
  EXPECT_EQ(g.edges_between(1, 0), (std::vector<EdgeId>{0, 1}));
}

TEST(AlternatingWeight, Definition) {
  // Triangle 0-1-2 with unit edges plus vertex 3 in its own triangle 3-4-5;
  // S = {(0,1), (0,3)} with w(0,3) = 5.
  std::vector<std::vector<Weight>> m(6, std::vector<Weight>(6, 1));
  for (int i = 0; i < 6; ++i) m[i][i] = 0;
  m[0][3] = m[3][0] = 5;
  const Instance inst(m);
  const CycleCover c(inst, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(alternating_weight(EdgeMultiset{}, c, inst), 0);
  EdgeMultiset s;
  s.add(0, 1);
  s.add(0, 3);
  EXPECT_EQ(alternating_weight(s, c, inst), 4);
  EdgeMultiset doubled;
  doubled.add(0, 3, 2);
  EXPECT_EQ(alternating_weight(doubled, c, inst), 10);
}

TEST(AlternatingWeight, NineVertexExample) {
  const Instance inst = nine_vertex_instance();
  const CycleCover c = nine_vertex_cover(inst);
  EdgeMultiset first;
  first.add(A, D);
  first.add(D, F);
  first.add(F, B);
  first.add(B, A);
  EdgeMultiset second;
  second.add(D, G);
  second.add(G, I);
  second.add(I, E);
  second.add(E, D);
  EXPECT_EQ(alternating_weight(first, c, inst), -4);
  EXPECT_EQ(alternating_weight(second, c, inst), -2);
  EXPECT_EQ(alternating_weight(first + second, c, inst), -6);

  const Multigraph applied = apply_alternating(c, first, inst);
  EXPECT_TRUE(validate_multigraph(applied, 2, 3).ok());
  EXPECT_EQ(applied.multiplicity(A, D), 1);
  EXPECT_EQ(applied.multiplicity(F, B), 1);
  EXPECT_EQ(applied.multiplicity(A, B), 0);
  EXPECT_EQ(applied.multiplicity(D, F), 0);
  EXPECT_EQ(applied.total_weight(), c.weight() - 4);
}

TEST(ApplyAlternating, EmptyAndViolations) {
  const Instance inst = nine_vertex_instance();
  const CycleCover c = nine_vertex_cover(inst);
  const Multigraph same = apply_alternating(c, {}, inst);
  EXPECT_EQ(same.edge_count(), 9);
  EXPECT_EQ(same.total_weight(), c.weight());
  EdgeMultiset odd;
  odd.add(A, D);
  EXPECT_THROW(apply_alternating(c, odd, inst), DegreeViolation);
}

TEST(ApplyAlternating, RandomAlternatingCyclesKeepDegreeTwo) {
  std::mt19937_64 rng(21);
  int applied = 0;
  for (int trial = 0; trial < 200 && applied < 50; ++trial) {
    const Instance inst = maxtsp::testing::random_instance(7, 20, rng);
    std::vector<int> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const CycleCover c(inst, {{perm[0], perm[1], perm[2]}, {perm[3], perm[4], perm[5], perm[6]}});
    // Alternating 4-cycle: remove two C-edges (a,b) and (x,y), add (a,x), (b,y).
    const int a = perm[0], b = perm[1], x = perm[3], y = perm[4];
    EdgeMultiset s;
    s.add(a, b);
    s.add(x, y);
    s.add(a, x);
    s.add(b, y);
    const Multigraph g = apply_alternating(c, s, inst);
    std::vector<int> deg(7, 0);
    for (EdgeId e : g.edges()) {
      ++deg[g.edge(e).u];
      ++deg[g.edge(e).v];
    }
    for (int d : deg) EXPECT_EQ(d, 2);
    EXPECT_EQ(g.total_weight(), c.weight() + alternating_weight(s, c, inst));
    ++applied;
  }
  EXPECT_EQ(applied, 50);
}

TEST(AlternatingWeight, CoverDifferenceIdentity) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = maxtsp::testing::random_instance(7, 50, rng);
    std::vector<int> p1(7), p2(7);
    std::iota(p1.begin(), p1.end(), 0);
    std::iota(p2.begin(), p2.end(), 0);
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    const CycleCover c1(inst, {p1});
    const CycleCover c2(inst, {{p2[0], p2[1], p2[2]}, {p2[3], p2[4], p2[5], p2[6]}});
    EXPECT_EQ(c2.weight(), c1.weight() + alternating_weight(symmetric_difference(c1, c2), c1, inst));
  }
}

TEST(ValidateMultigraph, DoubledCycles) {
  Multigraph pent(5);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 5; ++i) pent.add_edge(i, (i + 1) % 5, 1);
  }
  EXPECT_TRUE(validate_multigraph(pent, 4, 5).ok());
  Multigraph tri(3);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 3; ++i) tri.add_edge(i, (i + 1) % 3, 1);
  }
  const auto report = validate_multigraph(tri, 4, 5);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.regular);
  EXPECT_FALSE(report.components_ok);
}

TEST(CycleCoverType, RejectsBadCovers) {
  const Instance inst = nine_vertex_instance();
  EXPECT_THROW(CycleCover(inst, {{A, B}, {C, D, E, F, G, H, I}}), GraphError);
  EXPECT_THROW(CycleCover(inst, {{A, B, C}, {D, E, F}}), GraphError);
  EXPECT_THROW(CycleCover(inst, {{A, B, C}, {C, D, E, F, G, H, I}}), GraphError);
}
