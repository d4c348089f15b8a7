#include "maxtsp/reducer.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace maxtsp {

const char* transform_name(TransformKind k) {
  switch (k) {
    case TransformKind::DoubleEdgeTriangleShrink: return "double_edge_triangle";
    case TransformKind::SingleEdgeTriangleRemove: return "single_edge_triangle";
    case TransformKind::CapEliminate: return "cap";
  }
  return "?";
}

namespace {

std::vector<VertexId> neighbours(const Multigraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (EdgeId e : g.incident(v)) out.push_back(g.other(e, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool adjacent_to_double(const Multigraph& g, VertexId v) {
  for (VertexId x : neighbours(g, v)) {
    if (g.multiplicity(v, x) == 2) return true;
  }
  return false;
}

EdgeId only_edge(const Multigraph& g, VertexId u, VertexId v) {
  const auto es = g.edges_between(u, v);
  if (es.size() != 1) throw PreconditionViolation("expected a single edge");
  return es.front();
}

/// Incident edges of v that are not in `skip`.
std::vector<EdgeId> other_edges(const Multigraph& g, VertexId v, std::initializer_list<EdgeId> skip) {
  std::vector<EdgeId> out;
  for (EdgeId e : g.incident(v)) {
    if (std::find(skip.begin(), skip.end(), e) == skip.end()) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int double_count(const Multigraph& g, const Triangle& t) {
  return (g.multiplicity(t.a, t.b) == 2) + (g.multiplicity(t.b, t.c) == 2) + (g.multiplicity(t.a, t.c) == 2);
}

bool all_single(const Multigraph& g, const Triangle& t) {
  return g.multiplicity(t.a, t.b) == 1 && g.multiplicity(t.b, t.c) == 1 && g.multiplicity(t.a, t.c) == 1;
}

/// Triangles in scan order: smallest vertex first, then the other two in
/// increasing order. Stops early when `visit` returns true.
void for_each_triangle(const Multigraph& g, const std::function<bool(const Triangle&)>& visit) {
  for (VertexId x : g.vertices()) {
    const auto nx = neighbours(g, x);
    for (std::size_t i = 0; i < nx.size(); ++i) {
      if (nx[i] < x) continue;
      for (std::size_t j = i + 1; j < nx.size(); ++j) {
        if (g.multiplicity(nx[i], nx[j]) == 0) continue;
        if (visit(Triangle{x, nx[i], nx[j]})) return;
      }
    }
  }
}

struct ApexRoles {
  VertexId heavy_end = -1, light_end = -1, near = -1, far = -1;
  EdgeId base = -1, heavy_side = -1, light_side = -1, near_spoke = -1, far_spoke = -1;
};

// Fills the roles for removing `apex`; returns false if the apex does not
// qualify.
bool apex_roles(const Multigraph& g, const Triangle& t, VertexId apex, ApexRoles& r) {
  if (!all_single(g, t) || adjacent_to_double(g, apex) || g.degree(apex) != 4) return false;
  std::vector<VertexId> rest;
  for (VertexId x : {t.a, t.b, t.c}) {
    if (x != apex) rest.push_back(x);
  }
  std::sort(rest.begin(), rest.end());
  const EdgeId s0 = only_edge(g, rest[0], apex);
  const EdgeId s1 = only_edge(g, rest[1], apex);
  const bool second_lighter = g.edge(s1).w < g.edge(s0).w;
  r.light_end = second_lighter ? rest[1] : rest[0];
  r.heavy_end = second_lighter ? rest[0] : rest[1];
  r.light_side = second_lighter ? s1 : s0;
  r.heavy_side = second_lighter ? s0 : s1;
  r.base = only_edge(g, rest[0], rest[1]);
  const bool base_heavy_enough = g.edge(r.base).w >= g.edge(r.light_side).w;
  if (!base_heavy_enough && !(adjacent_to_double(g, rest[0]) && adjacent_to_double(g, rest[1]))) return false;
  const auto spokes = other_edges(g, apex, {s0, s1});
  if (spokes.size() != 2) return false;
  const bool swap = g.edge(spokes[1]).w < g.edge(spokes[0]).w;
  r.near_spoke = swap ? spokes[1] : spokes[0];
  r.far_spoke = swap ? spokes[0] : spokes[1];
  r.near = g.other(r.near_spoke, apex);
  r.far = g.other(r.far_spoke, apex);
  if (r.near == r.far || g.multiplicity(r.near, r.far) >= 2) return false;
  return true;
}

}  // namespace

Transform eliminate_double_edge_triangle(Multigraph& g, const Triangle& t) {
  if (double_count(g, t) != 1 || g.multiplicity(t.a, t.b) == 0 || g.multiplicity(t.b, t.c) == 0 ||
      g.multiplicity(t.a, t.c) == 0) {
    throw PreconditionViolation("triangle does not have exactly one double edge");
  }
  VertexId x = t.a, y = t.b, z = t.c;
  if (g.multiplicity(t.a, t.b) == 2) {
    x = t.a, y = t.c, z = t.b;
  } else if (g.multiplicity(t.b, t.c) == 2) {
    x = t.b, y = t.a, z = t.c;
  }
  // now x-z is the double pair, y the tip
  Transform tr;
  tr.kind = TransformKind::DoubleEdgeTriangleShrink;
  tr.before = g;
  tr.merged = std::min(x, z);
  tr.absorbed = std::max(x, z);
  tr.tip = y;
  auto pair = g.edges_between(tr.merged, tr.absorbed);
  std::sort(pair.begin(), pair.end());
  tr.pair_first = pair[0];
  tr.pair_second = pair[1];
  tr.merged_side = only_edge(g, tr.merged, tr.tip);
  tr.absorbed_side = only_edge(g, tr.absorbed, tr.tip);
  const auto moved = other_edges(g, tr.absorbed, {tr.pair_first, tr.pair_second, tr.absorbed_side});
  if (g.degree(tr.merged) != 4 || moved.size() != 1) throw PreconditionViolation("triangle vertices must have degree 4");

  const Weight w_first = g.edge(tr.pair_first).w + g.edge(tr.merged_side).w;
  const Weight w_second = g.edge(tr.pair_second).w + g.edge(tr.absorbed_side).w;
  for (EdgeId e : {tr.pair_first, tr.pair_second, tr.merged_side, tr.absorbed_side}) g.remove_edge(e);
  g.reattach(moved[0], tr.absorbed, tr.merged);
  g.remove_vertex(tr.absorbed);
  tr.joined_first = g.add_edge(tr.merged, tr.tip, w_first);
  tr.joined_second = g.add_edge(tr.merged, tr.tip, w_second);
  return tr;
}

VertexId single_triangle_apex(const Multigraph& g, const Triangle& t) {
  std::vector<VertexId> order{t.a, t.b, t.c};
  std::sort(order.begin(), order.end());
  ApexRoles r;
  for (VertexId v : order) {
    if (apex_roles(g, t, v, r)) return v;
  }
  return -1;
}

Transform eliminate_single_edge_triangle(Multigraph& g, const Triangle& t, VertexId apex) {
  ApexRoles r;
  if (!apex_roles(g, t, apex, r)) throw PreconditionViolation("triangle vertex cannot be removed");
  Transform tr;
  tr.kind = TransformKind::SingleEdgeTriangleRemove;
  tr.before = g;
  tr.apex = apex;
  tr.heavy_end = r.heavy_end;
  tr.light_end = r.light_end;
  tr.near = r.near;
  tr.far = r.far;
  tr.base = r.base;
  tr.heavy_side = r.heavy_side;
  tr.light_side = r.light_side;
  tr.near_spoke = r.near_spoke;
  tr.far_spoke = r.far_spoke;
  tr.base_before = g.edge(r.base).w;

  const Weight bridge_w = g.edge(r.near_spoke).w;
  const Weight extra_w = g.edge(r.light_side).w + g.edge(r.far_spoke).w;
  const Weight base_w = g.edge(r.base).w + g.edge(r.heavy_side).w;
  for (EdgeId e : {r.heavy_side, r.light_side, r.near_spoke, r.far_spoke}) g.remove_edge(e);
  g.remove_vertex(apex);
  tr.bridge = g.add_edge(r.near, r.far, bridge_w);
  tr.base_extra = g.add_edge(r.heavy_end, r.light_end, extra_w);
  g.set_weight(r.base, base_w);
  return tr;
}

std::vector<Cap> find_caps(const Multigraph& g) {
  std::vector<Cap> caps;
  auto ribbon = [&](VertexId v, EdgeId single, VertexId inner) {
    std::vector<EdgeId> out;
    for (EdgeId e : g.incident(v)) {
      if (e != single && g.other(e, v) != inner) out.push_back(e);
    }
    return out.size() == 1 ? out[0] : -1;
  };
  auto finish = [&](std::vector<VertexId> verts) {
    const VertexId v1 = verts.front(), v2 = verts.back();
    Cap cap;
    cap.single = only_edge(g, v1, v2);
    cap.ribbon_first = ribbon(v1, cap.single, verts[1]);
    cap.ribbon_second = ribbon(v2, cap.single, verts[verts.size() - 2]);
    if (cap.ribbon_first < 0 || cap.ribbon_second < 0) return;
    cap.vertices = std::move(verts);
    caps.push_back(std::move(cap));
  };
  for (VertexId w : g.vertices()) {
    const auto nw = neighbours(g, w);
    if (nw.size() != 2 || g.multiplicity(w, nw[0]) != 2 || g.multiplicity(w, nw[1]) != 2) continue;
    const VertexId v1 = nw[0], v2 = nw[1];
    if (g.multiplicity(v1, v2) == 1) {
      finish({v1, w, v2});
      continue;
    }
    // Square cap with w as the lower middle vertex; the other middle vertex
    // is the double-neighbour of w whose own other neighbour is doubled too.
    for (int side = 0; side < 2; ++side) {
      const VertexId w2 = nw[side], v1s = nw[1 - side];
      if (w2 < w) continue;
      const auto n2 = neighbours(g, w2);
      if (n2.size() != 2) continue;
      const VertexId v2s = n2[0] == w ? n2[1] : n2[0];
      if (g.multiplicity(w2, v2s) != 2 || v2s == v1s) continue;
      if (g.multiplicity(v1s, v2s) != 1) continue;
      if (v1s < v2s) {
        finish({v1s, w, w2, v2s});
      } else {
        finish({v2s, w2, w, v1s});
      }
    }
  }
  std::sort(caps.begin(), caps.end(), [](const Cap& x, const Cap& y) {
    return *std::min_element(x.vertices.begin(), x.vertices.end()) <
           *std::min_element(y.vertices.begin(), y.vertices.end());
  });
  return caps;
}

bool cap_is_eliminable(const Multigraph& g, const Cap& cap) {
  const VertexId x = g.other(cap.ribbon_first, cap.vertices.front());
  const VertexId y = g.other(cap.ribbon_second, cap.vertices.back());
  const auto inside = [&](VertexId v) { return std::find(cap.vertices.begin(), cap.vertices.end(), v) != cap.vertices.end(); };
  return x != y && !inside(x) && !inside(y) && g.multiplicity(x, y) < 2;
}

Transform eliminate_cap(Multigraph& g, const Cap& cap) {
  if (!cap_is_eliminable(g, cap)) throw PreconditionViolation("cap ribbons share a vertex or a double edge");
  Transform tr;
  tr.kind = TransformKind::CapEliminate;
  tr.before = g;
  tr.cap = cap.vertices;
  tr.ribbon_first = cap.ribbon_first;
  tr.ribbon_second = cap.ribbon_second;
  const VertexId x = g.other(cap.ribbon_first, cap.vertices.front());
  const VertexId y = g.other(cap.ribbon_second, cap.vertices.back());
  std::set<EdgeId> inner;
  for (VertexId v : cap.vertices) {
    for (EdgeId e : g.incident(v)) {
      if (e != cap.ribbon_first && e != cap.ribbon_second) inner.insert(e);
    }
  }
  tr.interior.assign(inner.begin(), inner.end());
  tr.set_aside = 0;
  for (EdgeId e : tr.interior) tr.set_aside += g.edge(e).w;
  const Weight link_w = g.edge(cap.ribbon_first).w + g.edge(cap.ribbon_second).w + tr.set_aside;
  for (EdgeId e : tr.interior) g.remove_edge(e);
  g.remove_edge(cap.ribbon_first);
  g.remove_edge(cap.ribbon_second);
  for (VertexId v : cap.vertices) g.remove_vertex(v);
  tr.link = g.add_edge(x, y, link_w);
  return tr;
}

namespace {

Color state_of(const EdgeColors& colors, const EdgeFlags& removed, EdgeId e) {
  return removed[e] ? Color::None : colors[e];
}

void put(LiftResult& r, EdgeId e, Color c) {
  r.colors[e] = c;
  r.removed[e] = c == Color::None;
}

int count_color(const Multigraph& g, const EdgeColors& colors, const EdgeFlags& removed, VertexId v, Color c,
                std::initializer_list<EdgeId> skip) {
  int d = 0;
  for (EdgeId e : g.incident(v)) {
    if (std::find(skip.begin(), skip.end(), e) != skip.end()) continue;
    d += !removed[e] && colors[e] == c;
  }
  return d;
}

void lift_double_triangle(const Transform& t, const EdgeColors& kc, const EdgeFlags& kr, LiftResult& r) {
  const Color first = state_of(kc, kr, t.joined_first);
  const Color second = state_of(kc, kr, t.joined_second);
  if (first != Color::None && second != Color::None) {
    // The merged vertex's outer edge decides which side each colour runs
    // along, so that no vertex collects three edges of one colour.
    const auto outer = other_edges(t.before, t.merged, {t.pair_first, t.pair_second, t.merged_side});
    const bool swapped = !outer.empty() && state_of(r.colors, r.removed, outer[0]) == first;
    put(r, t.pair_first, first);
    put(r, t.pair_second, second);
    put(r, swapped ? t.absorbed_side : t.merged_side, first);
    put(r, swapped ? t.merged_side : t.absorbed_side, second);
    return;
  }
  put(r, t.pair_first, first);
  put(r, t.merged_side, first);
  put(r, t.pair_second, second);
  put(r, t.absorbed_side, second);
}

void lift_single_triangle(const Transform& t, const Multigraph& after, const EdgeColors& kc, const EdgeFlags& kr,
                          LiftResult& r) {
  const Multigraph& j = t.before;
  const Color base = state_of(kc, kr, t.base);
  const Color extra = state_of(kc, kr, t.base_extra);
  const Color bridge = state_of(kc, kr, t.bridge);
  constexpr Color kGone = Color::None;
  for (EdgeId e : {t.base, t.heavy_side, t.light_side, t.near_spoke, t.far_spoke}) put(r, e, kGone);

  // Colour-q connectivity in the lifted graph before the apex edges are
  // placed (all of them are currently marked removed).
  auto joined = [&](VertexId x, VertexId y, Color q) {
    std::vector<bool> seen(j.vertex_capacity(), false);
    std::vector<VertexId> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      if (v == y) return true;
      for (EdgeId e : j.incident(v)) {
        if (r.removed[e] || r.colors[e] != q) continue;
        const VertexId w = j.other(e, v);
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return false;
  };

  if (base != kGone && extra != kGone && bridge != kGone) {
    put(r, t.base, bridge);
    put(r, t.heavy_side, opposite(bridge));
    put(r, t.light_side, opposite(bridge));
    put(r, t.near_spoke, bridge);
    put(r, t.far_spoke, bridge);
    return;
  }
  if (base != kGone && extra != kGone && bridge == kGone) {
    // The far end keeps three edges; the apex hangs off it in the colour it
    // has room for, and the base pair's colours are split over AB and the
    // path through the apex.
    const int reds = count_color(after, kc, kr, t.far, Color::Red, {t.bridge});
    const Color y = reds == 2 ? Color::Red : Color::Blue;
    put(r, t.far_spoke, opposite(y));
    put(r, t.heavy_side, y);
    put(r, t.light_side, y);
    put(r, t.base, opposite(y));
    return;
  }
  if (base == kGone && extra == kGone) {
    put(r, t.near_spoke, bridge);
    put(r, t.far_spoke, bridge);
    return;
  }
  if (extra == kGone && base != kGone && bridge != kGone) {
    put(r, t.base, base);
    const int heavy_end_other = count_color(after, kc, kr, t.heavy_end, opposite(bridge), {t.base});
    if (base != bridge) {
      const int heavy_end_base_colour = count_color(after, kc, kr, t.heavy_end, base, {});
      if (heavy_end_base_colour == 1) {
        put(r, t.heavy_side, base);
        put(r, t.near_spoke, bridge);
      } else if (!joined(t.heavy_end, t.near, bridge)) {
        put(r, t.heavy_side, bridge);
        put(r, t.near_spoke, bridge);
      } else {
        put(r, t.heavy_side, bridge);
        put(r, t.far_spoke, bridge);
      }
    } else if (heavy_end_other <= 1) {
      put(r, t.heavy_side, opposite(bridge));
      put(r, t.near_spoke, bridge);
    } else {
      put(r, t.heavy_side, bridge);
      if (!joined(t.heavy_end, t.near, bridge)) {
        put(r, t.near_spoke, bridge);
      } else {
        put(r, t.far_spoke, bridge);
      }
    }
    return;
  }
  if (base == kGone && extra != kGone && bridge != kGone) {
    put(r, t.base, extra);
    put(r, t.near_spoke, bridge);
    put(r, t.far_spoke, bridge);
    if (j.edge(t.light_side).w > j.edge(t.base).w) put(r, t.light_side, opposite(bridge));
    return;
  }
  // Remaining combinations have no dedicated rule; the caller's local
  // search places these five edges.
}

Weight removed_weight(const Multigraph& g, const EdgeFlags& removed, std::span<const EdgeId> es) {
  Weight w = 0;
  for (EdgeId e : es) {
    if (removed[e]) w += g.edge(e).w;
  }
  return w;
}

}  // namespace

LiftResult lift_coloring(const Transform& t, const Multigraph& after, const EdgeColors& colors,
                         const EdgeFlags& removed) {
  EdgeColors kc = colors;
  EdgeFlags kr = removed;
  kc.resize(std::max<int>(kc.size(), after.edge_capacity()), Color::None);
  kr.resize(std::max<int>(kr.size(), after.edge_capacity()), false);
  if (const auto check = check_path_coloring(after, kc, kr); !check.ok) throw InvalidInputColoring(check.reason);

  const Multigraph& j = t.before;
  LiftResult r;
  r.colors.assign(j.edge_capacity(), Color::None);
  r.removed.assign(j.edge_capacity(), false);
  for (EdgeId e : j.edges()) {
    if (after.has_edge(e)) {
      r.colors[e] = kc[e];
      r.removed[e] = kr[e];
    }
  }

  std::vector<EdgeId> involved;
  std::vector<EdgeId> reduced_side;
  Weight allowance = 0;
  switch (t.kind) {
    case TransformKind::DoubleEdgeTriangleShrink:
      involved = {t.pair_first, t.pair_second, t.merged_side, t.absorbed_side};
      reduced_side = {t.joined_first, t.joined_second};
      lift_double_triangle(t, kc, kr, r);
      break;
    case TransformKind::SingleEdgeTriangleRemove:
      involved = {t.base, t.heavy_side, t.light_side, t.near_spoke, t.far_spoke};
      reduced_side = {t.base, t.base_extra, t.bridge};
      lift_single_triangle(t, after, kc, kr, r);
      break;
    case TransformKind::CapEliminate: {
      reduced_side = {t.link};
      const Color link = state_of(kc, kr, t.link);
      put(r, t.ribbon_first, link);
      put(r, t.ribbon_second, link);
      // The interior always loses at least its lightest edge, even when the
      // link survives; the local search keeps that loss minimal.
      for (EdgeId e : t.interior) put(r, e, Color::None);
      recolor_locally(j, r.colors, r.removed, t.interior);
      involved = t.interior;
      involved.push_back(t.ribbon_first);
      involved.push_back(t.ribbon_second);
      allowance = t.set_aside / 5;
      break;
    }
  }

  r.removed_before = removed_weight(after, kr, reduced_side);
  auto acceptable = [&] {
    return check_path_coloring(j, r.colors, r.removed).ok &&
           removed_weight(j, r.removed, involved) <= r.removed_before + allowance;
  };
  if (!acceptable()) {
    r.used_fallback = true;
    const auto choice = recolor_locally(j, r.colors, r.removed, involved);
    if (!choice.feasible) throw GraphError(std::string("no valid lift for ") + transform_name(t.kind));
  }
  r.removed_after = removed_weight(j, r.removed, involved);
  return r;
}

namespace {

// After a step on triangle t: does some component around it now have fewer
// than five vertices?
bool cuts_small_piece(const Multigraph& after, const Multigraph& before, const Triangle& t) {
  std::vector<VertexId> around;
  for (VertexId v : {t.a, t.b, t.c}) {
    around.push_back(v);
    for (EdgeId e : before.incident(v)) around.push_back(before.other(e, v));
  }
  for (VertexId s : around) {
    if (!after.has_vertex(s)) continue;
    std::vector<VertexId> seen{s};
    for (std::size_t i = 0; i < seen.size() && seen.size() < 5; ++i) {
      for (EdgeId e : after.incident(seen[i])) {
        const VertexId w = after.other(e, seen[i]);
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) seen.push_back(w);
      }
    }
    if (seen.size() < 5) return true;
  }
  return false;
}

}  // namespace

Reduction reduce_to_fixpoint(const Multigraph& g, const ReduceOptions& options) {
  Reduction red;
  red.reduced = g;
  Multigraph& k = red.reduced;
  std::vector<bool> exempt(k.vertex_capacity(), false);
  std::vector<bool> frozen(k.vertex_capacity(), false);

  while (true) {
    const auto comps = k.components();
    std::vector<int> comp_size(k.vertex_capacity(), 0);
    std::vector<int> comp_of(k.vertex_capacity(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (VertexId v : comps[i]) {
        comp_of[v] = static_cast<int>(i);
        comp_size[v] = static_cast<int>(comps[i].size());
      }
    }
    auto mark_exempt = [&](VertexId v) {
      for (VertexId x : comps[comp_of[v]]) exempt[x] = true;
    };
    auto mark_frozen = [&](VertexId v) {
      for (VertexId x : comps[comp_of[v]]) frozen[x] = true;
    };

    bool applied = false;
    for_each_triangle(k, [&](const Triangle& t) {
      if (exempt[t.a] || frozen[t.a] || double_count(k, t) != 1) return false;
      if (comp_size[t.a] <= 5) {
        mark_exempt(t.a);
        return false;
      }
      auto step = eliminate_double_edge_triangle(k, t);
      if (cuts_small_piece(k, step.before, t)) {
        k = std::move(step.before);
        mark_frozen(t.a);
        return false;
      }
      red.stack.push_back(std::move(step));
      ++red.double_triangle_steps;
      applied = true;
      return true;
    });
    if (applied) continue;

    for_each_triangle(k, [&](const Triangle& t) {
      if (exempt[t.a] || frozen[t.a] || !all_single(k, t)) return false;
      const VertexId apex = single_triangle_apex(k, t);
      if (apex < 0) return false;
      if (comp_size[t.a] <= 5) {
        mark_exempt(t.a);
        return false;
      }
      auto step = eliminate_single_edge_triangle(k, t, apex);
      if (cuts_small_piece(k, step.before, t)) {
        k = std::move(step.before);
        mark_frozen(t.a);
        return false;
      }
      red.stack.push_back(std::move(step));
      ++red.single_triangle_steps;
      applied = true;
      return true;
    });
    if (applied) continue;

    if (!options.eliminate_caps) break;
    for (const Cap& cap : find_caps(k)) {
      const VertexId v = cap.vertices.front();
      // frozen components may still lose caps: the link keeps the rest in one piece
      if (exempt[v] || !cap_is_eliminable(k, cap)) continue;
      if (comp_size[v] - static_cast<int>(cap.vertices.size()) < 5) continue;
      red.stack.push_back(eliminate_cap(k, cap));
      ++red.cap_steps;
      applied = true;
      break;
    }
    if (!applied) break;
  }

  for (const auto& comp : k.components()) {
    if (exempt[comp.front()]) red.exempt.push_back(comp);
    if (frozen[comp.front()]) red.frozen.push_back(comp);
  }
  return red;
}

LiftAllResult lift_through(const TransformStack& stack, const Multigraph& reduced, EdgeColors colors,
                           EdgeFlags removed) {
  LiftAllResult out;
  for (std::size_t i = stack.size(); i-- > 0;) {
    const Multigraph& after = i + 1 < stack.size() ? stack[i + 1].before : reduced;
    auto step = lift_coloring(stack[i], after, colors, removed);
    out.fallbacks += step.used_fallback;
    const Weight allowance = stack[i].kind == TransformKind::CapEliminate ? Weight(stack[i].set_aside / 5) : Weight(0);
    if (step.removed_after > step.removed_before + allowance) ++out.weight_violations;
    colors = std::move(step.colors);
    removed = std::move(step.removed);
  }
  out.colors = std::move(colors);
  out.removed = std::move(removed);
  return out;
}

std::vector<Triangle> unreduced_triangles(const Multigraph& g, const std::vector<std::vector<VertexId>>& exempt) {
  std::vector<bool> skip(g.vertex_capacity(), false);
  for (const auto& comp : exempt) {
    for (VertexId v : comp) skip[v] = true;
  }
  std::vector<Triangle> out;
  for_each_triangle(g, [&](const Triangle& t) {
    if (skip[t.a]) return false;
    const int doubles = double_count(g, t);
    if (doubles == 1) out.push_back(t);
    if (doubles == 0 &&
        (!adjacent_to_double(g, t.a) || !adjacent_to_double(g, t.b) || !adjacent_to_double(g, t.c))) {
      out.push_back(t);
    }
    return false;
  });
  return out;
}

}  // namespace maxtsp
