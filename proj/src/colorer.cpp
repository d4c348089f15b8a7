#include "maxtsp/colorer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "maxtsp/reducer.hpp"

namespace maxtsp {

namespace {

bool painted(Color c) { return c == Color::Red || c == Color::Blue; }

int painted_count(const Multigraph& g, const EdgeColors& col, VertexId v) {
  int k = 0;
  for (EdgeId e : g.incident(v)) k += painted(col[e]);
  return k;
}

/// Degree room at both ends, no short cycle closed, and (optionally) the
/// rule that a vertex's first two coloured edges differ.
bool can_color(const Multigraph& g, const EdgeColors& col, EdgeId e, Color c, bool keep_invariant) {
  const auto& ed = g.edge(e);
  for (VertexId x : {ed.u, ed.v}) {
    if (color_degree(g, col, x, c) >= 2) return false;
    if (keep_invariant && painted_count(g, col, x) == 1 && color_degree(g, col, x, c) == 1) return false;
  }
  return !colored_path_within(g, col, ed.u, ed.v, c, 3, e);
}

bool try_color(const Multigraph& g, EdgeColors& col, EdgeId e, Color c, bool keep_invariant = true) {
  if (col[e] != Color::None) return false;
  if (!can_color(g, col, e, c, keep_invariant)) return false;
  col[e] = c;
  return true;
}

std::vector<VertexId> cycle_vertices(const Multigraph& g, const std::vector<EdgeId>& cycle) {
  std::vector<VertexId> vs;
  for (EdgeId e : cycle) {
    vs.push_back(g.edge(e).u);
    vs.push_back(g.edge(e).v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool has_open(const EdgeColors& col, const std::vector<EdgeId>& cycle) {
  return std::any_of(cycle.begin(), cycle.end(), [&](EdgeId e) { return col[e] == Color::None; });
}

bool blank_free(const Multigraph& g, const EdgeColors& col, VertexId v) {
  for (EdgeId e : g.incident(v)) {
    if (col[e] == Color::Blank) return false;
  }
  return true;
}

std::vector<EdgeId> square_edges(const Square& s) { return {s.edges[0], s.edges[1], s.edges[2], s.edges[3]}; }

}  // namespace

std::vector<Square> find_squares(const Multigraph& g) {
  const auto vs = g.vertices();
  std::vector<Square> out;
  for (const auto& cyc : short_cycles(g, vs)) {
    if (cyc.size() != 4) continue;
    Square s{};
    const auto& e0 = g.edge(cyc[0]);
    const auto& e1 = g.edge(cyc[1]);
    const VertexId shared = (e0.u == e1.u || e0.u == e1.v) ? e0.u : e0.v;
    s.verts[0] = g.other(cyc[0], shared);
    s.verts[1] = shared;
    for (int i = 0; i < 4; ++i) s.edges[i] = cyc[i];
    s.verts[2] = g.other(cyc[1], s.verts[1]);
    s.verts[3] = g.other(cyc[2], s.verts[2]);
    if (g.other(cyc[3], s.verts[3]) != s.verts[0]) continue;
    std::set<VertexId> distinct(s.verts, s.verts + 4);
    if (distinct.size() == 4) out.push_back(s);
  }
  return out;
}

std::optional<Color> potential_monochrome(const Multigraph& g, const EdgeColors& colors,
                                          const std::vector<EdgeId>& cycle) {
  bool red = false, blue = false;
  for (EdgeId e : cycle) {
    red |= colors[e] == Color::Red;
    blue |= colors[e] == Color::Blue;
    if (colors[e] == Color::Blank) return std::nullopt;
  }
  if (red && blue) return std::nullopt;
  std::vector<Color> candidates;
  if (red) candidates = {Color::Red};
  else if (blue) candidates = {Color::Blue};
  else candidates = {Color::Red, Color::Blue};
  const auto vs = cycle_vertices(g, cycle);
  for (Color c : candidates) {
    bool fits = true;
    for (VertexId x : vs) {
      int open_here = 0;
      for (EdgeId e : cycle) {
        if (colors[e] == Color::None && (g.edge(e).u == x || g.edge(e).v == x)) ++open_here;
      }
      if (color_degree(g, colors, x, c) + open_here > 2) fits = false;
    }
    if (fits) return c;
  }
  return std::nullopt;
}

EdgeColors disable_two_cycles(const Multigraph& g, ColorerStats* stats) {
  EdgeColors col(g.edge_capacity(), Color::None);
  for (EdgeId e : g.edges()) {
    const auto& ed = g.edge(e);
    auto pair = g.edges_between(ed.u, ed.v);
    if (pair.size() != 2) continue;
    std::sort(pair.begin(), pair.end());
    col[pair[0]] = Color::Red;
    col[pair[1]] = Color::Blue;
    if (stats && e == pair[0]) ++stats->doubles;
  }
  return col;
}

void disable_caps(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  for (const Cap& cap : find_caps(g)) {
    ++stats.caps;
    const EdgeId r1 = cap.ribbon_first, r2 = cap.ribbon_second;
    if (painted(col[r1]) && painted(col[r2]) && col[r1] != col[r2]) continue;
    bool done = false;
    if (painted(col[r1]) || painted(col[r2])) {
      const EdgeId set = painted(col[r1]) ? r1 : r2;
      const EdgeId open = set == r1 ? r2 : r1;
      done = try_color(g, col, open, opposite(col[set]));
    } else {
      for (Color c : {Color::Red, Color::Blue}) {
        const EdgeColors saved = col;
        if (try_color(g, col, r1, c) && try_color(g, col, r2, opposite(c))) {
          done = true;
          break;
        }
        col = saved;
      }
    }
    if (!done) {
      ++stats.caps_left_active;
      stats.log.push_back("cap at vertex " + std::to_string(cap.vertices.front()) + " left to later passes");
    }
  }
}

void disable_squares(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  const auto squares = find_squares(g);
  std::vector<bool> stuck(squares.size(), false);

  auto activity = [&](std::size_t i, Color& c, int& painted_edges) {
    const auto es = square_edges(squares[i]);
    if (stuck[i] || !has_open(col, es)) return false;
    const auto pc = potential_monochrome(g, col, es);
    if (!pc) return false;
    c = *pc;
    painted_edges = 0;
    for (EdgeId e : es) painted_edges += painted(col[e]);
    return true;
  };
  // Colours the edges of square j around the (already coloured) edge e:
  // both neighbours of e get `side`, the opposite edge the other colour.
  auto color_around = [&](std::size_t j, EdgeId e, Color side) {
    const Square& s = squares[j];
    int k = 0;
    while (s.edges[k] != e) ++k;
    bool any = false;
    any |= try_color(g, col, s.edges[(k + 1) % 4], side);
    any |= try_color(g, col, s.edges[(k + 3) % 4], side);
    any |= try_color(g, col, s.edges[(k + 2) % 4], opposite(side));
    return any;
  };
  auto contains = [&](std::size_t j, EdgeId e) {
    const Square& s = squares[j];
    return std::find(s.edges, s.edges + 4, e) != s.edges + 4;
  };

  const int limit = g.edge_count() + static_cast<int>(squares.size()) + 4;
  for (int round = 0; round < limit; ++round) {
    ++stats.square_rounds;
    bool progress = false;

    for (std::size_t i = 0; i < squares.size() && !progress; ++i) {
      Color c;
      int pe;
      if (!activity(i, c, pe) || pe != 2) continue;
      std::vector<EdgeId> open;
      for (EdgeId e : squares[i].edges) {
        if (col[e] == Color::None) open.push_back(e);
      }
      for (int order = 0; order < 2 && !progress; ++order) {
        const EdgeColors saved = col;
        const Color first = order == 0 ? opposite(c) : c;
        if (try_color(g, col, open[0], first) && try_color(g, col, open[1], opposite(first))) {
          progress = true;
        } else {
          col = saved;
        }
      }
      for (std::size_t k = 0; k < open.size() && !progress; ++k) progress = try_color(g, col, open[k], opposite(c));
      if (progress) ++stats.branch_two_active;
      else stuck[i] = true;
    }
    if (progress) continue;

    for (std::size_t i = 0; i < squares.size() && !progress; ++i) {
      Color c;
      int pe;
      if (!activity(i, c, pe) || pe != 1) continue;
      const Square& s = squares[i];
      int k = 0;
      while (!painted(col[s.edges[k]])) ++k;
      const EdgeId e = s.edges[k];
      progress = color_around(i, e, c);
      if (!progress) {
        stuck[i] = true;
        continue;
      }
      ++stats.branch_one_active;
      if (g.multiplicity(s.verts[k], s.verts[(k + 1) % 4]) == 2) {
        for (std::size_t j = 0; j < squares.size(); ++j) {
          if (j == i || !contains(j, e)) continue;
          bool shares_more = false;
          for (EdgeId f : squares[j].edges) shares_more |= f != e && contains(i, f);
          Color cj;
          int pj;
          if (shares_more || !activity(j, cj, pj)) continue;
          color_around(j, e, opposite(c));
          break;
        }
      }
    }
    if (progress) continue;

    for (std::size_t i = 0; i < squares.size() && !progress; ++i) {
      Color c;
      int pe;
      if (!activity(i, c, pe) || pe != 0) continue;
      const Square& s = squares[i];
      for (Color start : {Color::Red, Color::Blue}) {
        const EdgeColors saved = col;
        bool all = true;
        for (int k = 0; k < 4; ++k) all &= try_color(g, col, s.edges[k], k % 2 == 0 ? start : opposite(start));
        if (all) {
          progress = true;
          break;
        }
        col = saved;
      }
      if (!progress) {
        for (int k = 0; k < 4; ++k) {
          progress |= try_color(g, col, s.edges[k], k % 2 == 0 ? Color::Red : Color::Blue);
        }
      }
      if (!progress) {
        stuck[i] = true;
        continue;
      }
      ++stats.branch_all_blank;
      // Spread to the active squares hanging off each edge, the edges of
      // the starting colour first.
      const Color start = col[s.edges[0]];
      for (int k : {0, 2, 1, 3}) {
        const EdgeId e = s.edges[k];
        if (!painted(col[e])) continue;
        for (std::size_t j = 0; j < squares.size(); ++j) {
          Color cj;
          int pj;
          if (j == i || !contains(j, e) || !activity(j, cj, pj)) continue;
          color_around(j, e, col[e]);
          break;
        }
        (void)start;
      }
    }
    if (!progress) break;
  }
}

void disable_short_cycles(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  const auto cycles = short_cycles(g, g.vertices());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& cyc : cycles) {
      if (!has_open(col, cyc)) continue;
      const auto c = potential_monochrome(g, col, cyc);
      if (!c) continue;
      bool done = false;
      for (bool invariant : {true, false}) {
        for (EdgeId e : cyc) {
          if (done) break;
          if (col[e] == Color::None) done = try_color(g, col, e, opposite(*c), invariant);
        }
      }
      // No cycle edge can take the other colour: use up the colour's room
      // at a cycle vertex with an edge off the cycle instead.
      for (EdgeId e : cyc) {
        for (VertexId x : {g.edge(e).u, g.edge(e).v}) {
          for (EdgeId f : g.incident(x)) {
            if (done) break;
            if (col[f] != Color::None || std::find(cyc.begin(), cyc.end(), f) != cyc.end()) continue;
            const EdgeColors saved = col;
            if (try_color(g, col, f, *c, false) && potential_monochrome(g, col, cyc) != c) done = true;
            else col = saved;
          }
        }
      }
      // Last resort: leave one of its edges blank for good.
      for (EdgeId e : cyc) {
        if (done) break;
        const auto& ed = g.edge(e);
        if (col[e] == Color::None && g.multiplicity(ed.u, ed.v) == 1 && blank_free(g, col, ed.u) &&
            blank_free(g, col, ed.v)) {
          col[e] = Color::Blank;
          done = true;
        }
      }
      if (done) {
        ++stats.extra_disabled;
        changed = true;
      }
    }
  }
  stats.undisabled_cycles = 0;
  for (const auto& cyc : cycles) {
    if (has_open(col, cyc) && potential_monochrome(g, col, cyc)) ++stats.undisabled_cycles;
  }
}

EdgeColors run_disabling(const Multigraph& g, ColorerStats& stats) {
  EdgeColors col = disable_two_cycles(g, &stats);
  disable_caps(g, col, stats);
  disable_squares(g, col, stats);
  disable_short_cycles(g, col, stats);
  return col;
}

ColoringAudit audit_coloring(const Multigraph& g, const EdgeColors& col) {
  ColoringAudit a;
  std::vector<int> blanks_at(g.vertex_capacity(), 0);
  for (EdgeId e : g.edges()) {
    if (col[e] == Color::None) ++a.uncoloured;
    if (col[e] == Color::Blank) {
      ++blanks_at[g.edge(e).u];
      ++blanks_at[g.edge(e).v];
    }
  }
  for (VertexId v : g.vertices()) {
    if (color_degree(g, col, v, Color::Red) > 2 || color_degree(g, col, v, Color::Blue) > 2) ++a.degree_violations;
    if (blanks_at[v] > 1) ++a.adjacent_blanks;
  }
  for (EdgeId e : g.edges()) {
    if (col[e] != Color::Blank) continue;
    const auto& ed = g.edge(e);
    if (g.multiplicity(ed.u, ed.v) > 1) ++a.doubled_blanks;
    if (blanks_at[ed.u] > 1 || blanks_at[ed.v] > 1) continue;
    const int ru = color_degree(g, col, ed.u, Color::Red), rv = color_degree(g, col, ed.v, Color::Red);
    // standard: one end has two red edges, the other two blue (so one red)
    if (!((ru == 2 && rv == 1) || (ru == 1 && rv == 2))) ++a.one_sided_blanks;
  }
  a.short_monochromatic = static_cast<int>(short_monochromatic_cycles(g, col).size());
  return a;
}

namespace {

// Depth-first completion of the open edges: every vertex ends with two red
// and two blue edges, or one blank edge and a 2+1 split, blanks are
// pairwise apart, each blank's ends are short of different colours, and no
// monochromatic cycle shorter than five appears.
class CompletionSearch {
 public:
  CompletionSearch(const Multigraph& g, EdgeColors& col, std::vector<EdgeId> open, long budget)
      : g_(g), col_(col), open_(std::move(open)), budget_(budget), undecided_(g.vertex_capacity(), 0) {
    for (EdgeId e : open_) {
      ++undecided_[g.edge(e).u];
      ++undecided_[g.edge(e).v];
    }
  }

  bool run() { return step(0); }
  long nodes() const { return nodes_; }

 private:
  int blanks_at(VertexId v) const {
    int k = 0;
    for (EdgeId e : g_.incident(v)) k += col_[e] == Color::Blank;
    return k;
  }

  bool vertex_ok(VertexId v) const {
    const int r = color_degree(g_, col_, v, Color::Red);
    const int b = color_degree(g_, col_, v, Color::Blue);
    const int k = blanks_at(v);
    if (r > 2 || b > 2 || k > 1) return false;
    if (undecided_[v] > (2 - r) + (2 - b)) return false;
    return true;
  }

  // Both ends of a blank decided: the ends must be short of different
  // colours.
  bool blank_ok(EdgeId e) const {
    const auto& ed = g_.edge(e);
    if (undecided_[ed.u] || undecided_[ed.v]) return true;
    const int ru = color_degree(g_, col_, ed.u, Color::Red), rv = color_degree(g_, col_, ed.v, Color::Red);
    return (ru == 2 && rv == 1) || (ru == 1 && rv == 2);
  }

  bool blanks_around_ok(VertexId v) const {
    for (EdgeId e : g_.incident(v)) {
      if (col_[e] == Color::Blank && !blank_ok(e)) return false;
    }
    return true;
  }

  bool step(std::size_t i) {
    if (++nodes_ > budget_) return false;
    if (i == open_.size()) {
      // blanks fixed before the search never had their ends re-checked
      const auto audit = audit_coloring(g_, col_);
      return audit.adjacent_blanks == 0 && audit.one_sided_blanks == 0 && audit.doubled_blanks == 0 &&
             audit.short_monochromatic == 0;
    }
    const EdgeId e = open_[i];
    const auto& ed = g_.edge(e);
    const int red_room = 4 - color_degree(g_, col_, ed.u, Color::Red) - color_degree(g_, col_, ed.v, Color::Red);
    const int blue_room = 4 - color_degree(g_, col_, ed.u, Color::Blue) - color_degree(g_, col_, ed.v, Color::Blue);
    const Color first = blue_room > red_room ? Color::Blue : Color::Red;
    --undecided_[ed.u];
    --undecided_[ed.v];
    for (Color c : {first, opposite(first), Color::Blank}) {
      if (c != Color::Blank && colored_path_within(g_, col_, ed.u, ed.v, c, 3, e)) continue;
      if (c == Color::Blank && g_.multiplicity(ed.u, ed.v) > 1) continue;
      col_[e] = c;
      if (vertex_ok(ed.u) && vertex_ok(ed.v) && blanks_around_ok(ed.u) && blanks_around_ok(ed.v) && step(i + 1)) {
        return true;
      }
      col_[e] = Color::None;
      if (nodes_ > budget_) break;
    }
    ++undecided_[ed.u];
    ++undecided_[ed.v];
    return false;
  }

  const Multigraph& g_;
  EdgeColors& col_;
  std::vector<EdgeId> open_;
  long budget_;
  long nodes_ = 0;
  std::vector<int> undecided_;
};

// Open edges ordered so that each vertex's edges are decided close
// together: breadth-first from the smallest vertex of each component.
std::vector<EdgeId> search_order(const Multigraph& g, const std::vector<EdgeId>& open) {
  std::vector<int> rank(g.vertex_capacity(), -1);
  int next = 0;
  for (VertexId s : g.vertices()) {
    if (rank[s] >= 0) continue;
    std::deque<VertexId> q{s};
    rank[s] = next++;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop_front();
      std::vector<VertexId> nb;
      for (EdgeId e : g.incident(v)) nb.push_back(g.other(e, v));
      std::sort(nb.begin(), nb.end());
      for (VertexId w : nb) {
        if (rank[w] < 0) {
          rank[w] = next++;
          q.push_back(w);
        }
      }
    }
  }
  std::vector<EdgeId> order = open;
  auto key = [&](EdgeId e) {
    const int a = rank[g.edge(e).u], b = rank[g.edge(e).v];
    return std::pair{std::max(a, b), std::min(a, b)};
  };
  std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) { return key(x) < key(y); });
  return order;
}

}  // namespace

void complete_coloring(const Multigraph& g, EdgeColors& col, ColorerStats& stats, long search_budget) {
  std::vector<EdgeId> open;
  for (EdgeId e : g.edges()) {
    if (col[e] == Color::None) open.push_back(e);
  }
  const EdgeColors before = col;
  for (EdgeId e : open) {
    const auto& ed = g.edge(e);
    const int red_load = color_degree(g, col, ed.u, Color::Red) + color_degree(g, col, ed.v, Color::Red);
    const int blue_load = color_degree(g, col, ed.u, Color::Blue) + color_degree(g, col, ed.v, Color::Blue);
    const Color first = blue_load < red_load ? Color::Blue : Color::Red;
    if (!try_color(g, col, e, first, false) && !try_color(g, col, e, opposite(first), false)) {
      col[e] = Color::Blank;
      ++stats.greedy_blanks;
    }
  }
  const auto audit = audit_coloring(g, col);
  if (audit.adjacent_blanks == 0 && audit.one_sided_blanks == 0 && audit.doubled_blanks == 0) return;

  stats.completion_search = true;
  // Start from the disabled colouring; if that is a dead end, keep only the
  // double-edge split, and finally start from nothing. The search itself
  // rules out short monochromatic cycles, so each start is sound.
  std::vector<EdgeColors> starts{before, disable_two_cycles(g)};
  starts.emplace_back(g.edge_capacity(), Color::None);
  for (EdgeColors& trial : starts) {
    std::vector<EdgeId> free_edges;
    for (EdgeId e : g.edges()) {
      if (trial[e] == Color::None) free_edges.push_back(e);
    }
    CompletionSearch search(g, trial, search_order(g, free_edges), search_budget);
    const bool found = search.run();
    stats.completion_nodes += search.nodes();
    if (found) {
      col = std::move(trial);
      return;
    }
    ++stats.completion_restarts;
  }
  stats.completion_search_failed = true;
  stats.log.push_back("completion search found nothing within its budget; keeping the greedy colouring");
}

namespace {

// Colour with two edges at v (the ends of a blank have three coloured
// edges: two of one colour, one of the other).
Color majority(const Multigraph& g, const EdgeColors& col, VertexId v) {
  return color_degree(g, col, v, Color::Red) == 2 ? Color::Red : Color::Blue;
}

EdgeId blank_at(const Multigraph& g, const EdgeColors& col, VertexId v) {
  for (EdgeId e : g.incident(v)) {
    if (col[e] == Color::Blank) return e;
  }
  return -1;
}

bool no_worse(const ColoringAudit& after, const ColoringAudit& before) {
  return after.degree_violations <= before.degree_violations &&
         after.short_monochromatic <= before.short_monochromatic && after.adjacent_blanks <= before.adjacent_blanks &&
         after.one_sided_blanks <= before.one_sided_blanks && after.doubled_blanks <= before.doubled_blanks;
}

// A coloured edge that is a head of a blank edge at each of its ends.
bool kwad_step(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  const auto base = audit_coloring(g, col);
  for (EdgeId e : g.edges()) {
    if (!painted(col[e])) continue;
    const auto& ed = g.edge(e);
    if (g.multiplicity(ed.u, ed.v) != 1) continue;
    const EdgeId bu = blank_at(g, col, ed.u), bv = blank_at(g, col, ed.v);
    if (bu < 0 || bv < 0 || bu == bv) continue;
    const Color c = col[e];
    if (majority(g, col, ed.u) != c || majority(g, col, ed.v) != c) continue;
    // roofs: the flipped edge must not close a short cycle of its new
    // colour, nor the two blanks one of the old colour
    const EdgeColors saved = col;
    col[e] = opposite(c);
    col[bu] = c;
    col[bv] = c;
    const auto after = audit_coloring(g, col);
    if (no_worse(after, base) && after.short_monochromatic == base.short_monochromatic) {
      ++stats.kwad_flips;
      return true;
    }
    col = saved;
  }
  return false;
}

// Walks the c-coloured path from v through `first`; returns the edges if it
// comes back to v (a cycle), else empty.
std::vector<EdgeId> colored_cycle_through(const Multigraph& g, const EdgeColors& col, VertexId v, EdgeId first,
                                          Color c) {
  std::vector<EdgeId> path{first};
  VertexId at = g.other(first, v);
  EdgeId last = first;
  for (int guard = 0; guard < g.edge_count(); ++guard) {
    if (at == v) return path;
    EdgeId next = -1;
    for (EdgeId f : g.incident(at)) {
      if (f != last && col[f] == c) next = f;
    }
    if (next < 0) return {};
    path.push_back(next);
    last = next;
    at = g.other(next, at);
  }
  return {};
}

bool cycle_step(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  const auto base = audit_coloring(g, col);
  for (EdgeId b : g.edges()) {
    if (col[b] != Color::Blank) continue;
    for (VertexId v : {g.edge(b).u, g.edge(b).v}) {
      const Color c = majority(g, col, v);
      std::vector<EdgeId> heads;
      for (EdgeId f : g.incident(v)) {
        if (col[f] == c) heads.push_back(f);
      }
      if (heads.size() != 2 || colored_cycle_through(g, col, v, heads[0], c).empty()) continue;
      for (EdgeId h : heads) {
        const VertexId z = g.other(h, v);
        if (g.multiplicity(v, z) != 1) continue;
        const EdgeId other_blank = blank_at(g, col, z);
        if (other_blank >= 0 && majority(g, col, z) == c) continue;  // charged twice
        const EdgeColors saved = col;
        col[b] = c;
        col[h] = Color::Blank;
        if (no_worse(audit_coloring(g, col), base)) {
          ++stats.cycle_moves;
          return true;
        }
        col = saved;
      }
    }
  }
  return false;
}

}  // namespace

void preprocess(const Multigraph& g, EdgeColors& col, ColorerStats& stats) {
  const int limit = 2 * g.edge_count() + 4;
  for (int round = 0; round < limit; ++round) {
    ++stats.preprocess_rounds;
    bool any = false;
    while (kwad_step(g, col, stats)) any = true;
    if (cycle_step(g, col, stats)) any = true;
    if (!any) break;
  }
}

ColorerResult well_color(const Multigraph& g) {
  ColorerResult r;
  r.colors = run_disabling(g, r.stats);
  complete_coloring(g, r.colors, r.stats);
  preprocess(g, r.colors, r.stats);
  while (true) {
    const auto cycles = short_monochromatic_cycles(g, r.colors);
    if (cycles.empty()) break;
    const auto& cyc = cycles.front();
    EdgeId lightest = cyc.front();
    for (EdgeId e : cyc) {
      if (g.edge(e).w < g.edge(lightest).w || (g.edge(e).w == g.edge(lightest).w && e < lightest)) lightest = e;
    }
    r.stats.log.push_back("safety net: blanked edge " + std::to_string(lightest) + " of a short " +
                          color_name(r.colors[lightest]) + " cycle");
    r.colors[lightest] = Color::Blank;
    ++r.stats.safety_net_events;
  }
  r.audit = audit_coloring(g, r.colors);
  return r;
}

}  // namespace maxtsp
