#include "maxtsp/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace maxtsp {

bool is_bad_cycle(const Instance& inst, const std::vector<VertexId>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 3 || k > 4) return false;
  Weight total = 0;
  for (std::size_t i = 0; i < k; ++i) total += inst.weight(cycle[i], cycle[(i + 1) % k]);
  for (std::size_t i = 0; i < k; ++i) {
    if (inst.weight(cycle[i], cycle[(i + 1) % k]) * 9 <= total * 2) return false;
  }
  return true;
}

std::vector<BadCycle> find_bad_cycles(const Instance& inst, const CycleCover& c) {
  std::vector<BadCycle> out;
  for (std::size_t ci = 0; ci < c.cycles().size(); ++ci) {
    const auto& cyc = c.cycles()[ci];
    if (!is_bad_cycle(inst, cyc)) continue;
    const int k = static_cast<int>(cyc.size());
    int rotation = 0;
    if (k == 4) {
      const Weight odd = inst.weight(cyc[0], cyc[1]) + inst.weight(cyc[2], cyc[3]);
      const Weight even = inst.weight(cyc[1], cyc[2]) + inst.weight(cyc[3], cyc[0]);
      if (odd > even) rotation = 1;
    }
    BadCycle bad;
    bad.cover_index = static_cast<int>(ci);
    bad.rotation = rotation;
    for (int i = 0; i < k; ++i) bad.vertices.push_back(cyc[(i + rotation) % k]);
    bad.total = 0;
    for (int i = 0; i < k; ++i) {
      bad.sides.push_back(inst.weight(bad.vertices[i], bad.vertices[(i + 1) % k]));
      bad.total += bad.sides.back();
    }
    if (k == 4) {
      bad.d1 = inst.weight(bad.vertices[0], bad.vertices[2]);
      bad.d2 = inst.weight(bad.vertices[1], bad.vertices[3]);
    }
    out.push_back(std::move(bad));
  }
  return out;
}

const Weight& position_weight(const BadCycle& cyc, int i, int j) {
  const int k = cyc.size();
  if (i == j) throw GadgetError("position_weight on a single position");
  if ((i + 1) % k == j) return cyc.sides[i];
  if ((j + 1) % k == i) return cyc.sides[j];
  // Only squares have non-adjacent positions.
  return (std::min(i, j) == 0) ? cyc.d1 : cyc.d2;
}

Weight square_target(const BadCycle& sq, int x, int y) {
  if (x > y) std::swap(x, y);
  const Weight& l1 = sq.sides[0];
  const Weight& l2 = sq.sides[1];
  const Weight& l3 = sq.sides[2];
  const Weight& l4 = sq.sides[3];
  const Weight m = l1 + l3;
  const Weight s = (l2 + l4) - m;
  // Positions are 0-based: v1 = 0, ..., v4 = 3.
  if (x == 2 && y == 3) return -l1;
  if (x == 0 && y == 1) return -l3;
  if (x == 0 && y == 2) return sq.d1 - m;
  if (x == 1 && y == 3) return sq.d2 - m;
  if (x == 0 && y == 3) return -l2 + s / 2;
  if (x == 1 && y == 2) return -l4 + s / 2;
  throw GadgetError("square_target: bad position pair");
}

GadgetSpec square_gadget_weights(const BadCycle& sq) {
  if (!sq.is_square()) throw NotNormalized("square gadget requested for a non-square");
  const Weight& l1 = sq.sides[0];
  const Weight& l2 = sq.sides[1];
  const Weight& l3 = sq.sides[2];
  const Weight& l4 = sq.sides[3];
  const Weight m = l1 + l3;
  const Weight s = (l2 + l4) - m;
  if (s < 0) throw NotNormalized("square is not normalized: l1+l3 > l2+l4");
  const Weight delta = m - (sq.d1 + sq.d2);
  if (delta < 0) throw DiagonalBoundViolated("diagonals outweigh l1+l3; cover is not maximum");

  // A_j = phi_j + psi_j to the first anchor, B_j = phi_j - psi_j to the
  // second. Then max(A_x+B_y, A_y+B_x) = phi_x + phi_y + |psi_x - psi_y|,
  // and psi only differs across the two diagonals.
  const Weight half_delta = delta / 2;
  const Weight psi[4] = {0, half_delta, 0, half_delta};
  const Weight pair13 = square_target(sq, 0, 2);
  const Weight pair24 = square_target(sq, 1, 3);
  const Weight pair12 = square_target(sq, 0, 1) - half_delta;
  const Weight pair14 = square_target(sq, 0, 3) - half_delta;
  Weight phi[4];
  phi[0] = (pair12 + pair14 - pair24) / 2;
  phi[1] = pair12 - phi[0];
  phi[2] = pair13 - phi[0];
  phi[3] = pair14 - phi[0];

  GadgetSpec g;
  g.cycle = sq;
  for (int j = 0; j < 4; ++j) {
    g.edges.push_back({j, 0, phi[j] + psi[j]});
    g.edges.push_back({j, 1, phi[j] - psi[j]});
  }
  return g;
}

GadgetSpec triangle_gadget_weights(const BadCycle& tri) {
  if (tri.size() != 3) throw GadgetError("triangle gadget requested for a non-triangle");
  GadgetSpec g;
  g.cycle = tri;
  // Copy j pairs with the anchor when the other two copies exit, so it
  // carries minus the side between them.
  for (int j = 0; j < 3; ++j) g.edges.push_back({j, 0, -tri.sides[(j + 1) % 3]});
  return g;
}

std::vector<std::vector<int>> cycle_fragments(const BadCycle& cyc, int x, int y) {
  const int k = cyc.size();
  std::vector<std::vector<int>> out;
  std::vector<int> path{x};
  std::vector<bool> used(k, false);
  used[x] = true;
  auto is_cycle_edge = [k](int a, int b) { return (a + 1) % k == b || (b + 1) % k == a; };
  std::function<void(bool)> extend = [&](bool next_in_cycle) {
    const int at = path.back();
    for (int nxt = 0; nxt < k; ++nxt) {
      if (used[nxt] || is_cycle_edge(at, nxt) != next_in_cycle) continue;
      path.push_back(nxt);
      used[nxt] = true;
      if (nxt == y) {
        if (next_in_cycle) out.push_back(path);
      } else {
        extend(!next_in_cycle);
      }
      used[nxt] = false;
      path.pop_back();
    }
  };
  extend(true);
  std::sort(out.begin(), out.end());
  return out;
}

Weight fragment_weight(const BadCycle& cyc, const std::vector<int>& fragment) {
  Weight sum = 0;
  const int k = cyc.size();
  for (std::size_t i = 0; i + 1 < fragment.size(); ++i) {
    const int a = fragment[i];
    const int b = fragment[i + 1];
    const bool in_cycle = (a + 1) % k == b || (b + 1) % k == a;
    if (in_cycle) sum -= position_weight(cyc, a, b);
    else sum += position_weight(cyc, a, b);
  }
  return sum;
}

std::vector<int> best_fragment(const BadCycle& cyc, int x, int y) {
  const auto all = cycle_fragments(cyc, x, y);
  if (all.empty()) throw GadgetError("no fragment joins the exit pair");
  std::size_t best = 0;
  Weight best_w = fragment_weight(cyc, all[0]);
  for (std::size_t i = 1; i < all.size(); ++i) {
    const Weight w = fragment_weight(cyc, all[i]);
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  return all[best];
}

namespace {

std::string pair_name(int x, int y) { return "{" + std::to_string(x + 1) + "," + std::to_string(y + 1) + "}"; }

}  // namespace

GadgetReport verify_gadget(const GadgetSpec& g) {
  const BadCycle& cyc = g.cycle;
  const int k = cyc.size();
  const int anchors = k == 4 ? 2 : 1;
  // weight[j][a], absent edges marked by `present`.
  std::vector<std::vector<Weight>> weight(k, std::vector<Weight>(anchors));
  std::vector<std::vector<bool>> present(k, std::vector<bool>(anchors, false));
  for (const auto& e : g.edges) {
    weight[e.copy][e.anchor] = e.w;
    present[e.copy][e.anchor] = true;
  }
  GadgetReport report;
  report.error_bound = k == 4 ? Weight(cyc.total / 18) : Weight(0);
  report.max_error = 0;
  bool first = true;
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      std::vector<int> internal;
      for (int j = 0; j < k; ++j) {
        if (j != x && j != y) internal.push_back(j);
      }
      // Every assignment of the internal copies to distinct anchors.
      std::vector<int> anchor_order(anchors);
      std::iota(anchor_order.begin(), anchor_order.end(), 0);
      bool any = false;
      Weight best;
      do {
        Weight sum = 0;
        bool ok = true;
        for (std::size_t i = 0; i < internal.size(); ++i) {
          if (!present[internal[i]][anchor_order[i]]) {
            ok = false;
            break;
          }
          sum += weight[internal[i]][anchor_order[i]];
        }
        if (ok && (!any || sum > best)) {
          best = sum;
          any = true;
        }
      } while (std::next_permutation(anchor_order.begin(), anchor_order.end()));
      if (!any) {
        report.violations.push_back("exit pair " + pair_name(x, y) + " has no internal completion");
        continue;
      }
      ExitAudit audit;
      audit.x = x;
      audit.y = y;
      audit.internal_optimum = best;
      audit.target = k == 4 ? square_target(cyc, internal[0], internal[1]) : -cyc.sides[x == 0 && y == 2 ? 2 : x];
      audit.fragment_weight = fragment_weight(cyc, best_fragment(cyc, x, y));
      audit.error = audit.internal_optimum - audit.fragment_weight;
      if (audit.internal_optimum != audit.target) {
        report.violations.push_back("exit pair " + pair_name(x, y) + ": internal optimum " +
                                    to_decimal_string(audit.internal_optimum) + " differs from target " +
                                    to_decimal_string(audit.target));
      }
      if (audit.error < 0 || audit.error > report.error_bound) {
        report.violations.push_back("exit pair " + pair_name(x, y) + ": error " + to_decimal_string(audit.error) +
                                    " outside [0, " + to_decimal_string(report.error_bound) + "]");
      }
      if (first || audit.error > report.max_error) report.max_error = audit.error;
      first = false;
      report.exits.push_back(std::move(audit));
    }
  }
  return report;
}

GPrime build_gprime(const Instance& inst, const CycleCover& c) {
  const int n = inst.size();
  GPrime gp;
  gp.original_count = n;
  gp.problem.b.assign(n, 2);
  gp.original_of.resize(n);
  std::iota(gp.original_of.begin(), gp.original_of.end(), 0);
  gp.gadget_of.assign(n, -1);

  auto add_edge = [&gp](VertexId u, VertexId v, Weight w, GPrimeEdgeKind kind, int gadget) {
    gp.problem.edges.push_back({u, v, std::move(w)});
    gp.kind.push_back(kind);
    gp.edge_gadget.push_back(gadget);
  };

  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) add_edge(u, v, inst.weight(u, v), GPrimeEdgeKind::Original, -1);
  }

  // copy_id[v]: the copy of original v, or -1 if v is on no bad cycle.
  std::vector<VertexId> copy_id(n, -1);
  for (const BadCycle& bad : find_bad_cycles(inst, c)) {
    GadgetSpec g = bad.is_square() ? square_gadget_weights(bad) : triangle_gadget_weights(bad);
    const int gi = static_cast<int>(gp.gadgets.size());
    for (VertexId v : bad.vertices) {
      const auto id = static_cast<VertexId>(gp.problem.b.size());
      g.copies.push_back(id);
      copy_id[v] = id;
      gp.problem.b.push_back(1);
      gp.original_of.push_back(v);
      gp.gadget_of.push_back(gi);
    }
    for (int a = 0; a < (bad.is_square() ? 2 : 1); ++a) {
      g.anchors.push_back(static_cast<VertexId>(gp.problem.b.size()));
      gp.problem.b.push_back(1);
      gp.original_of.push_back(-1);
      gp.gadget_of.push_back(gi);
    }
    for (const auto& e : g.edges) add_edge(g.copies[e.copy], g.anchors[e.anchor], e.w, GPrimeEdgeKind::Gadget, gi);
    gp.gadgets.push_back(std::move(g));
  }

  for (VertexId v = 0; v < n; ++v) {
    if (copy_id[v] == -1) continue;
    const int cycle = c.cycle_of(v);
    for (VertexId x = 0; x < n; ++x) {
      if (c.cycle_of(x) == cycle) continue;
      add_edge(copy_id[v], x, inst.weight(v, x), GPrimeEdgeKind::Outward, -1);
      // Copy-to-copy edges are listed once, from the smaller original.
      if (copy_id[x] != -1 && v < x) {
        add_edge(copy_id[v], copy_id[x], inst.weight(v, x), GPrimeEdgeKind::Outward, -1);
      }
    }
  }
  return gp;
}

QuasiAlternatingSet extract_SB(const GPrime& gp, const std::vector<int>& b_edges, const CycleCover& c) {
  QuasiAlternatingSet out;
  std::set<VertexPair> b_originals;
  std::vector<std::vector<bool>> exits(gp.gadgets.size());
  std::vector<Weight> internal(gp.gadgets.size(), Weight(0));
  for (std::size_t g = 0; g < gp.gadgets.size(); ++g) exits[g].assign(gp.gadgets[g].cycle.size(), false);
  std::map<VertexId, int> copy_position;
  for (const auto& g : gp.gadgets) {
    for (int j = 0; j < g.cycle.size(); ++j) copy_position[g.copies[j]] = j;
  }

  for (int idx : b_edges) {
    const auto& e = gp.problem.edges[idx];
    if (gp.kind[idx] == GPrimeEdgeKind::Gadget) {
      internal[gp.edge_gadget[idx]] += e.w;
      continue;
    }
    const VertexId a = gp.original_of[e.u];
    const VertexId b = gp.original_of[e.v];
    for (VertexId end : {e.u, e.v}) {
      if (gp.gadget_of[end] != -1) exits[gp.gadget_of[end]][copy_position.at(end)] = true;
    }
    if (gp.kind[idx] == GPrimeEdgeKind::Original) {
      b_originals.insert(make_pair_key(a, b));
      if (c.contains(a, b)) continue;
    }
    out.edges.add(a, b);
  }
  for (const auto& [u, v] : c.edges()) {
    if (!b_originals.count({u, v})) out.edges.add(u, v);
  }
  for (std::size_t g = 0; g < gp.gadgets.size(); ++g) {
    const BadCycle& cyc = gp.gadgets[g].cycle;
    std::vector<int> ex;
    for (int j = 0; j < cyc.size(); ++j) {
      if (exits[g][j]) ex.push_back(j);
    }
    if (ex.size() != 2) {
      throw ExitCountViolation("gadget " + std::to_string(g) + " has " + std::to_string(ex.size()) + " exits");
    }
    FragmentChoice choice;
    choice.gadget = static_cast<int>(g);
    choice.exit_x = ex[0];
    choice.exit_y = ex[1];
    const std::vector<int> frag = best_fragment(cyc, ex[0], ex[1]);
    for (int pos : frag) choice.path.push_back(cyc.vertices[pos]);
    for (std::size_t i = 0; i + 1 < choice.path.size(); ++i) out.edges.add(choice.path[i], choice.path[i + 1]);
    choice.internal_weight = internal[g];
    choice.fragment_weight = fragment_weight(cyc, frag);
    out.fragments.push_back(std::move(choice));
  }
  for (const auto& [pair, count] : out.edges.items()) out.max_multiplicity = std::max(out.max_multiplicity, count);
  return out;
}

BadCycle random_bad_square(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> side(50, 100);
  std::uniform_int_distribution<int> denom(1, 4);
  std::uniform_int_distribution<int> percent(0, 100);
  while (true) {
    Weight l[4];
    for (auto& x : l) x = Weight(side(rng), denom(rng));
    const Weight total = l[0] + l[1] + l[2] + l[3];
    if (!std::all_of(std::begin(l), std::end(l), [&](const Weight& x) { return x * 9 > total * 2; })) continue;
    const int r = l[0] + l[2] > l[1] + l[3] ? 1 : 0;
    const Weight m = std::min(l[0] + l[2], l[1] + l[3]);
    const Weight d1 = m * percent(rng) / 200;
    const Weight d2 = (m - d1) * percent(rng) / 100;
    BadCycle sq;
    sq.vertices = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) sq.sides.push_back(l[(r + i) % 4]);
    sq.d1 = r ? d2 : d1;
    sq.d2 = r ? d1 : d2;
    sq.total = total;
    return sq;
  }
}

BadCycle random_bad_triangle(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> side(50, 100);
  std::uniform_int_distribution<int> denom(1, 4);
  while (true) {
    BadCycle tri;
    tri.vertices = {0, 1, 2};
    tri.total = 0;
    for (int i = 0; i < 3; ++i) {
      tri.sides.push_back(Weight(side(rng), denom(rng)));
      tri.total += tri.sides.back();
    }
    if (std::all_of(tri.sides.begin(), tri.sides.end(), [&](const Weight& x) { return x * 9 > tri.total * 2; })) {
      return tri;
    }
  }
}

GadgetTrials run_gadget_trials(int trials, std::uint64_t seed) {
  GadgetTrials out;
  out.worst_error_ratio = 0;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& what) {
    ++out.violations;
    if (out.first_violations.size() < 5) out.first_violations.push_back(what);
  };
  for (int t = 0; t < trials; ++t) {
    const BadCycle sq = random_bad_square(rng);
    const GadgetReport report = verify_gadget(square_gadget_weights(sq));
    ++out.squares;
    const Weight half_gap = (sq.sides[1] + sq.sides[3] - sq.sides[0] - sq.sides[2]) / 2;
    if (!report.ok()) fail("square " + std::to_string(t) + ": " + report.violations.front());
    else if (report.max_error != half_gap) fail("square " + std::to_string(t) + ": largest error is not s/2");
    out.worst_error_ratio = std::max(out.worst_error_ratio, Weight(report.max_error / sq.total));

    const BadCycle tri = random_bad_triangle(rng);
    const GadgetReport tri_report = verify_gadget(triangle_gadget_weights(tri));
    ++out.triangles;
    if (!tri_report.ok()) fail("triangle " + std::to_string(t) + ": " + tri_report.violations.front());
    else if (tri_report.max_error != 0) fail("triangle " + std::to_string(t) + ": nonzero error");
  }
  return out;
}

}  // namespace maxtsp
