#include "maxtsp/coloring.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace maxtsp {

const char* color_name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Blue: return "blue";
    case Color::Blank: return "blank";
    case Color::None: break;
  }
  return "none";
}

int color_degree(const Multigraph& g, const EdgeColors& colors, VertexId v, Color c) {
  int d = 0;
  for (EdgeId e : g.incident(v)) d += colors[e] == c;
  return d;
}

DisjointSets::DisjointSets(int n) : parent_(n) {
  for (int i = 0; i < n; ++i) parent_[i] = i;
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  parent_[std::max(x, y)] = std::min(x, y);
  return true;
}

PathCheck check_path_coloring(const Multigraph& g, const EdgeColors& colors, const EdgeFlags& removed) {
  PathCheck out;
  const int n = g.vertex_capacity();
  DisjointSets red(n), blue(n);
  std::vector<int> red_deg(n, 0), blue_deg(n, 0);
  for (EdgeId e : g.edges()) {
    if (e < static_cast<int>(removed.size()) && removed[e]) continue;
    const Color c = e < static_cast<int>(colors.size()) ? colors[e] : Color::None;
    const auto& ed = g.edge(e);
    if (c != Color::Red && c != Color::Blue) {
      out.ok = false;
      out.reason = "edge " + std::to_string(e) + " is kept but not coloured";
      return out;
    }
    auto& deg = c == Color::Red ? red_deg : blue_deg;
    if (++deg[ed.u] > 2 || ++deg[ed.v] > 2) {
      out.ok = false;
      out.reason = std::string(color_name(c)) + " degree exceeds 2 at edge " + std::to_string(e);
      return out;
    }
    if (!(c == Color::Red ? red : blue).unite(ed.u, ed.v)) {
      out.ok = false;
      out.reason = std::string(color_name(c)) + " cycle closed by edge " + std::to_string(e);
      return out;
    }
  }
  return out;
}

bool colored_path_within(const Multigraph& g, const EdgeColors& colors, VertexId u, VertexId v, Color c,
                         int max_edges, EdgeId skip) {
  std::vector<VertexId> on_path{u};
  std::function<bool(VertexId, int)> walk = [&](VertexId x, int left) {
    if (x == v) return true;
    if (left == 0) return false;
    for (EdgeId e : g.incident(x)) {
      if (e == skip || colors[e] != c) continue;
      const VertexId y = g.other(e, x);
      if (std::find(on_path.begin(), on_path.end(), y) != on_path.end()) continue;
      on_path.push_back(y);
      const bool found = walk(y, left - 1);
      on_path.pop_back();
      if (found) return true;
    }
    return false;
  };
  return walk(u, max_edges);
}

namespace {

// Enumerates simple cycles of length <= 4 starting from each allowed edge
// as the smallest id; `allowed(e)` filters edges, `same` requires a single
// shared label.
void enumerate_short_cycles(const Multigraph& g, std::span<const EdgeId> starts,
                            const std::function<bool(EdgeId, EdgeId)>& compatible,
                            std::vector<std::vector<EdgeId>>& out) {
  std::set<std::vector<EdgeId>> seen;
  for (EdgeId e0 : starts) {
    const auto& ed = g.edge(e0);
    std::vector<EdgeId> path{e0};
    std::vector<VertexId> verts{ed.u, ed.v};
    std::function<void(VertexId)> extend = [&](VertexId x) {
      for (EdgeId e : g.incident(x)) {
        if (e <= e0 || !compatible(e0, e)) continue;
        if (std::find(path.begin(), path.end(), e) != path.end()) continue;
        const VertexId y = g.other(e, x);
        if (y == ed.u) {
          std::vector<EdgeId> cyc = path;
          cyc.push_back(e);
          std::vector<EdgeId> key = cyc;
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) out.push_back(std::move(cyc));
          continue;
        }
        if (path.size() >= 3) continue;
        if (std::find(verts.begin(), verts.end(), y) != verts.end()) continue;
        path.push_back(e);
        verts.push_back(y);
        extend(y);
        path.pop_back();
        verts.pop_back();
      }
    };
    extend(ed.v);
  }
}

}  // namespace

std::vector<std::vector<EdgeId>> short_monochromatic_cycles(const Multigraph& g, const EdgeColors& colors) {
  std::vector<EdgeId> starts;
  for (EdgeId e : g.edges()) {
    if (colors[e] == Color::Red || colors[e] == Color::Blue) starts.push_back(e);
  }
  std::vector<std::vector<EdgeId>> out;
  enumerate_short_cycles(
      g, starts, [&](EdgeId a, EdgeId b) { return colors[a] == colors[b]; }, out);
  return out;
}

std::vector<std::vector<EdgeId>> short_cycles(const Multigraph& g, std::span<const VertexId> vertices) {
  std::set<EdgeId> starts;
  for (VertexId v : vertices) {
    for (EdgeId e : g.incident(v)) starts.insert(e);
  }
  const std::vector<EdgeId> ordered(starts.begin(), starts.end());
  std::vector<std::vector<EdgeId>> out;
  enumerate_short_cycles(
      g, ordered, [](EdgeId, EdgeId) { return true; }, out);
  return out;
}

namespace {

// Union-find with an undo log, for depth-first searches over edge states.
class RollbackSets {
 public:
  explicit RollbackSets(int n) : parent_(n), size_(n, 1) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    log_.push_back(y);
    return true;
  }
  std::size_t mark() const { return log_.size(); }
  void undo(std::size_t mark) {
    while (log_.size() > mark) {
      const int y = log_.back();
      log_.pop_back();
      size_[parent_[y]] -= size_[y];
      parent_[y] = y;
    }
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> log_;
};

struct SearchState {
  const Multigraph& g;
  std::vector<EdgeId> open;
  RollbackSets red;
  RollbackSets blue;
  std::vector<int> red_deg;
  std::vector<int> blue_deg;
  std::vector<Color> current;  // per open index; None means removed
  std::vector<Color> best;
  Weight removed;
  Weight best_removed;
  bool found = false;
  // Open edges that share both endpoints with an earlier open edge get a
  // symmetry cut only in exact mode (all edges open); kept simple here.
  bool fix_first_red = false;

  SearchState(const Multigraph& graph, std::vector<EdgeId> edges)
      : g(graph),
        open(std::move(edges)),
        red(graph.vertex_capacity()),
        blue(graph.vertex_capacity()),
        red_deg(graph.vertex_capacity(), 0),
        blue_deg(graph.vertex_capacity(), 0),
        current(open.size(), Color::None) {}

  bool add_fixed(EdgeId e, Color c) {
    const auto& ed = g.edge(e);
    auto& deg = c == Color::Red ? red_deg : blue_deg;
    if (++deg[ed.u] > 2 || ++deg[ed.v] > 2) return false;
    return (c == Color::Red ? red : blue).unite(ed.u, ed.v);
  }

  void run(std::size_t i) {
    if (found && removed >= best_removed) return;
    if (i == open.size()) {
      found = true;
      best_removed = removed;
      best = current;
      return;
    }
    const auto& ed = g.edge(open[i]);
    for (Color c : {Color::Red, Color::Blue}) {
      if (i == 0 && fix_first_red && c == Color::Blue) continue;
      auto& deg = c == Color::Red ? red_deg : blue_deg;
      auto& sets = c == Color::Red ? red : blue;
      if (deg[ed.u] >= 2 || deg[ed.v] >= 2) continue;
      const auto mark = sets.mark();
      if (!sets.unite(ed.u, ed.v)) continue;
      ++deg[ed.u];
      ++deg[ed.v];
      current[i] = c;
      run(i + 1);
      --deg[ed.u];
      --deg[ed.v];
      sets.undo(mark);
    }
    current[i] = Color::None;
    removed += ed.w;
    if (!(found && removed >= best_removed)) run(i + 1);
    removed -= ed.w;
  }
};

}  // namespace

LocalChoice recolor_locally(const Multigraph& g, EdgeColors& colors, EdgeFlags& removed,
                            std::span<const EdgeId> open) {
  if (static_cast<int>(colors.size()) < g.edge_capacity()) colors.resize(g.edge_capacity(), Color::None);
  if (static_cast<int>(removed.size()) < g.edge_capacity()) removed.resize(g.edge_capacity(), false);
  SearchState s(g, std::vector<EdgeId>(open.begin(), open.end()));
  const std::set<EdgeId> open_set(open.begin(), open.end());
  LocalChoice out;
  for (EdgeId e : g.edges()) {
    if (open_set.count(e) || removed[e]) continue;
    if (colors[e] != Color::Red && colors[e] != Color::Blue) return out;
    if (!s.add_fixed(e, colors[e])) return out;
  }
  s.run(0);
  if (!s.found) return out;
  for (std::size_t i = 0; i < s.open.size(); ++i) {
    const EdgeId e = s.open[i];
    removed[e] = s.best[i] == Color::None;
    colors[e] = s.best[i];
  }
  out.feasible = true;
  out.removed_weight = s.best_removed;
  return out;
}

ExactColoring exact_min_removal(const Multigraph& g, std::span<const EdgeId> edges) {
  std::vector<EdgeId> order(edges.begin(), edges.end());
  // Heavy edges first: good incumbents early make the bound bite.
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a).w > g.edge(b).w; });
  SearchState s(g, order);
  s.fix_first_red = true;
  s.run(0);
  ExactColoring out;
  out.colors.assign(g.edge_capacity(), Color::None);
  out.removed.assign(g.edge_capacity(), false);
  if (!s.found) return out;
  out.feasible = true;
  out.removed_weight = s.best_removed;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.colors[order[i]] = s.best[i];
    out.removed[order[i]] = s.best[i] == Color::None;
  }
  return out;
}

}  // namespace maxtsp
