#include "maxtsp/partitioner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace maxtsp {

namespace {

// Slot order inside a blank's labelling: the blank, its red heads, its blue
// heads.
using Slots = std::array<EdgeId, 5>;
using Option = std::array<int, 5>;

Slots slots_of(const BlankEdgeRecord& r) {
  return {r.edge, r.red_heads[0], r.red_heads[1], r.blue_heads[0], r.blue_heads[1]};
}

std::vector<int> blank_index(const Multigraph& g, const std::vector<BlankEdgeRecord>& records) {
  std::vector<int> idx(g.edge_capacity(), -1);
  for (std::size_t i = 0; i < records.size(); ++i) idx[records[i].edge] = static_cast<int>(i);
  return idx;
}

bool lighter(const Multigraph& g, EdgeId a, EdgeId b) {
  const Weight& wa = g.edge(a).w;
  const Weight& wb = g.edge(b).w;
  return wa < wb || (wa == wb && a < b);
}

// Kuhn's augmenting-path matching of (phase, cycle) pairs to unlabelled
// uncharged edges on the cycle, lighter edges tried first.
struct CycleMatching {
  std::vector<std::pair<int, std::vector<EdgeId>>> left;
  std::vector<std::vector<EdgeId>> options;
  std::map<EdgeId, int> owner;
  std::vector<int> mark;
  int stamp = 0;

  bool augment(int i) {
    mark[i] = stamp;
    for (EdgeId e : options[i]) {
      auto it = owner.find(e);
      if (it == owner.end()) {
        owner[e] = i;
        return true;
      }
      const int j = it->second;
      if (mark[j] == stamp) continue;
      if (augment(j)) {
        owner[e] = i;
        return true;
      }
    }
    return false;
  }

  // Returns the indices of pairs left unmatched.
  std::vector<int> run() {
    mark.assign(left.size(), -1);
    std::vector<int> missed;
    for (std::size_t i = 0; i < left.size(); ++i) {
      ++stamp;
      if (!augment(static_cast<int>(i))) missed.push_back(static_cast<int>(i));
    }
    return missed;
  }
};

CycleMatching build_matching(const Multigraph& g, const EdgeColors& colors,
                             const std::vector<BlankEdgeRecord>& records, const PhaseLabels& labels,
                             const EdgeFlags& charged, const EdgeFlags* pending) {
  CycleMatching m;
  for (int p = 0; p < kPhases; ++p) {
    for (auto& cyc : monochromatic_cycles(g, phase_coloring(g, colors, records, labels, p, pending))) {
      std::vector<EdgeId> free_edges;
      for (EdgeId e : cyc) {
        if (!charged[e] && labels[e] < 0) free_edges.push_back(e);
      }
      std::sort(free_edges.begin(), free_edges.end(), [&](EdgeId a, EdgeId b) { return lighter(g, a, b); });
      m.left.emplace_back(p, std::move(cyc));
      m.options.push_back(std::move(free_edges));
    }
  }
  return m;
}

// All labellings of a blank's five slots: the usual split first, then the
// remaining permutations in lexicographic order.
std::vector<Option> options_for(const BlankEdgeRecord& r) {
  const int red_first = r.comhead == r.red_heads[0] ? 0 : 1;
  const int blue_first = r.comhead == r.blue_heads[0] ? 0 : 1;
  std::vector<Option> out;
  for (int rs = 0; rs < 2; ++rs) {
    for (int bs = 0; bs < 2; ++bs) {
      Option o{};
      o[0] = 4;
      o[1 + ((red_first + rs) % 2)] = 0;
      o[1 + ((red_first + rs + 1) % 2)] = 1;
      o[3 + ((blue_first + bs) % 2)] = 2;
      o[3 + ((blue_first + bs + 1) % 2)] = 3;
      out.push_back(o);
    }
  }
  Option perm{0, 1, 2, 3, 4};
  do {
    if (std::find(out.begin(), out.end(), perm) == out.end()) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

std::vector<BlankEdgeRecord> blank_records(const Multigraph& g, const EdgeColors& colors,
                                           std::vector<EdgeId>* irregular) {
  std::vector<BlankEdgeRecord> out;
  auto blanks_at = [&](VertexId v) {
    int k = 0;
    for (EdgeId e : g.incident(v)) k += colors[e] == Color::Blank;
    return k;
  };
  auto edges_of = [&](VertexId v, Color c) {
    std::vector<EdgeId> es;
    for (EdgeId e : g.incident(v)) {
      if (colors[e] == c) es.push_back(e);
    }
    std::sort(es.begin(), es.end());
    return es;
  };
  for (EdgeId e : g.edges()) {
    if (colors[e] != Color::Blank) continue;
    const VertexId u = g.edge(e).u, v = g.edge(e).v;
    BlankEdgeRecord r;
    r.edge = e;
    if (edges_of(u, Color::Red).size() == 2 && edges_of(v, Color::Blue).size() == 2) {
      r.red_end = u;
      r.blue_end = v;
    } else if (edges_of(v, Color::Red).size() == 2 && edges_of(u, Color::Blue).size() == 2) {
      r.red_end = v;
      r.blue_end = u;
    }
    const bool ok = r.red_end >= 0 && blanks_at(u) == 1 && blanks_at(v) == 1 &&
                    edges_of(r.red_end, Color::Blue).size() == 1 && edges_of(r.blue_end, Color::Red).size() == 1;
    if (!ok) {
      if (irregular) irregular->push_back(e);
      continue;
    }
    const auto rh = edges_of(r.red_end, Color::Red), bh = edges_of(r.blue_end, Color::Blue);
    r.red_heads = {rh[0], rh[1]};
    r.blue_heads = {bh[0], bh[1]};
    r.blue_tail = edges_of(r.red_end, Color::Blue)[0];
    r.red_tail = edges_of(r.blue_end, Color::Red)[0];
    out.push_back(r);
  }
  std::map<EdgeId, int> head_uses;
  for (const auto& r : out) {
    for (EdgeId h : {r.red_heads[0], r.red_heads[1], r.blue_heads[0], r.blue_heads[1]}) ++head_uses[h];
  }
  for (auto& r : out) {
    for (EdgeId h : {r.red_heads[0], r.red_heads[1], r.blue_heads[0], r.blue_heads[1]}) {
      if (head_uses[h] > 1 && !r.twinny) {
        r.twinny = true;
        r.comhead = h;
      }
    }
  }
  return out;
}

EdgeColors phase_coloring(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                          const PhaseLabels& labels, int phase, const EdgeFlags* pending) {
  const auto idx = blank_index(g, records);
  EdgeColors out(g.edge_capacity(), Color::None);
  for (EdgeId e : g.edges()) {
    if ((pending && (*pending)[e]) || labels[e] == phase) continue;
    if (colors[e] != Color::Blank) {
      out[e] = colors[e];
      continue;
    }
    if (idx[e] < 0) continue;
    const auto& r = records[idx[e]];
    for (EdgeId h : r.red_heads) {
      if (labels[h] == phase) out[e] = Color::Red;
    }
    for (EdgeId h : r.blue_heads) {
      if (labels[h] == phase) out[e] = Color::Blue;
    }
  }
  return out;
}

std::vector<std::vector<EdgeId>> monochromatic_cycles(const Multigraph& g, const EdgeColors& colors) {
  std::vector<std::vector<EdgeId>> out;
  for (Color c : {Color::Red, Color::Blue}) {
    std::vector<int> seen(g.vertex_capacity(), 0);
    for (VertexId s : g.vertices()) {
      if (seen[s]) continue;
      std::vector<VertexId> stack{s};
      std::vector<EdgeId> comp_edges;
      bool all_two = true;
      bool any = false;
      seen[s] = 1;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        int deg = 0;
        for (EdgeId e : g.incident(v)) {
          if (colors[e] != c) continue;
          ++deg;
          any = true;
          const VertexId w = g.other(e, v);
          if (v < w || (v == w)) comp_edges.push_back(e);
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
        if (deg > 2) throw GraphError("colour class has a vertex of degree above two");
        if (deg != 2) all_two = false;
      }
      if (any && all_two) {
        std::sort(comp_edges.begin(), comp_edges.end());
        out.push_back(std::move(comp_edges));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeFlags charged_edges(const Multigraph& g, const std::vector<BlankEdgeRecord>& records) {
  EdgeFlags charged(g.edge_capacity(), false);
  for (const auto& r : records) {
    for (EdgeId e : slots_of(r)) charged[e] = true;
  }
  return charged;
}

HeadAssignment assign_heads(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                            long budget) {
  HeadAssignment out;
  PhaseLabels labels(g.edge_capacity(), -1);
  const EdgeFlags charged = charged_edges(g, records);
  std::vector<int> undecided_charges(g.edge_capacity(), 0);
  for (const auto& r : records) {
    for (EdgeId e : slots_of(r)) ++undecided_charges[e];
  }
  std::vector<std::vector<Option>> options;
  for (const auto& r : records) options.push_back(options_for(r));

  auto pending_now = [&] {
    EdgeFlags pending(g.edge_capacity(), false);
    for (EdgeId e : g.edges()) pending[e] = labels[e] < 0 && undecided_charges[e] > 0;
    return pending;
  };
  auto feasible = [&] {
    const EdgeFlags pending = pending_now();
    auto m = build_matching(g, colors, records, labels, charged, &pending);
    return m.run().empty();
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (++out.nodes > budget) return false;
    if (i == records.size()) return feasible();
    const Slots slots = slots_of(records[i]);
    for (const Option& o : options[i]) {
      bool consistent = true;
      for (int k = 0; k < 5; ++k) consistent &= labels[slots[k]] < 0 || labels[slots[k]] == o[k];
      if (!consistent) continue;
      std::vector<EdgeId> newly;
      for (int k = 0; k < 5; ++k) {
        if (labels[slots[k]] < 0) {
          labels[slots[k]] = o[k];
          newly.push_back(slots[k]);
        }
        --undecided_charges[slots[k]];
      }
      if (feasible() && search(i + 1)) return true;
      for (EdgeId e : newly) labels[e] = -1;
      for (EdgeId e : slots) ++undecided_charges[e];
      ++out.backtracks;
      if (out.nodes > budget) return false;
    }
    return false;
  };

  if (feasible() && search(0)) {
    out.found = true;
    out.labels = std::move(labels);
    return out;
  }
  // Nothing within budget: the first consistent labelling per blank.
  labels.assign(g.edge_capacity(), -1);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Slots slots = slots_of(records[i]);
    for (const Option& o : options[i]) {
      bool consistent = true;
      for (int k = 0; k < 5; ++k) consistent &= labels[slots[k]] < 0 || labels[slots[k]] == o[k];
      if (!consistent) continue;
      for (int k = 0; k < 5; ++k) labels[slots[k]] = o[k];
      break;
    }
  }
  out.labels = std::move(labels);
  return out;
}

int distribute_static_cycles(const Multigraph& g, const EdgeColors& colors,
                             const std::vector<BlankEdgeRecord>& records, PhaseLabels& labels) {
  const EdgeFlags charged = charged_edges(g, records);
  int count = 0;
  for (auto cyc : monochromatic_cycles(g, phase_coloring(g, colors, records, labels, 0))) {
    const bool untouched =
        std::all_of(cyc.begin(), cyc.end(), [&](EdgeId e) { return !charged[e] && labels[e] < 0; });
    if (!untouched) continue;
    ++count;
    std::sort(cyc.begin(), cyc.end(), [&](EdgeId a, EdgeId b) { return lighter(g, a, b); });
    for (int p = 0; p < kPhases && p < static_cast<int>(cyc.size()); ++p) labels[cyc[p]] = p;
  }
  return count;
}

DecycleResult decycle_phases(const Multigraph& g, const EdgeColors& colors, const std::vector<BlankEdgeRecord>& records,
                             PhaseLabels& labels) {
  DecycleResult out;
  auto m = build_matching(g, colors, records, labels, charged_edges(g, records), nullptr);
  const auto missed = m.run();
  out.cycles = static_cast<int>(m.left.size());
  out.saturated = missed.empty();
  for (const auto& [e, i] : m.owner) {
    labels[e] = m.left[i].first;
    out.additions.emplace_back(m.left[i].first, e);
  }
  std::sort(out.additions.begin(), out.additions.end());
  for (int i : missed) out.unmatched.push_back(m.left[i]);
  return out;
}

PartitionResult partition_and_choose(const Multigraph& g, const EdgeColors& colors) {
  PartitionResult out;
  std::vector<EdgeId> irregular;
  const auto records = blank_records(g, colors, &irregular);
  out.blanks = static_cast<int>(records.size() + irregular.size());
  for (EdgeId e : irregular) out.log.push_back("blank edge " + std::to_string(e) + " is not a standard blank");

  const auto heads = assign_heads(g, colors, records);
  out.search_nodes = heads.nodes;
  out.search_backtracks = heads.backtracks;
  if (!heads.found) out.log.push_back("head labelling search found no decyclable labelling");
  out.labels = heads.labels;
  out.static_cycles = distribute_static_cycles(g, colors, records, out.labels);
  const auto dec = decycle_phases(g, colors, records, out.labels);
  out.decycled = static_cast<int>(dec.additions.size());

  // Whatever the partition could not break is paid for separately: the
  // lightest edge of each unmatched cycle and every irregular blank.
  std::array<std::vector<EdgeId>, kPhases> extra;
  for (const auto& [p, cyc] : dec.unmatched) {
    extra[p].push_back(*std::min_element(cyc.begin(), cyc.end(), [&](EdgeId a, EdgeId b) { return lighter(g, a, b); }));
  }
  for (int p = 0; p < kPhases; ++p) {
    extra[p].insert(extra[p].end(), irregular.begin(), irregular.end());
    out.set_weight[p] = Weight(0);
  }
  for (EdgeId e : g.edges()) {
    if (out.labels[e] >= 0) out.set_weight[out.labels[e]] += g.edge(e).w;
  }
  auto cost = [&](int p) {
    Weight w = out.set_weight[p];
    for (EdgeId e : extra[p]) w += g.edge(e).w;
    return w;
  };
  out.chosen_phase = 0;
  for (int p = 1; p < kPhases; ++p) {
    if (cost(p) < cost(out.chosen_phase)) out.chosen_phase = p;
  }
  const int p = out.chosen_phase;
  out.colors = phase_coloring(g, colors, records, out.labels, p);
  out.removed.assign(g.edge_capacity(), false);
  for (EdgeId e : g.edges()) {
    if (out.labels[e] == p) out.removed[e] = true;
  }
  for (EdgeId e : extra[p]) {
    out.removed[e] = true;
    out.colors[e] = Color::None;
    ++out.safety_net_events;
  }
  for (EdgeId e : g.edges()) {
    if (!out.removed[e] && out.colors[e] == Color::None) {
      out.removed[e] = true;
      ++out.safety_net_events;
      out.log.push_back("edge " + std::to_string(e) + " had no colour in the chosen phase and was removed");
    }
  }
  // Last guard: any cycle still standing loses its lightest edge.
  while (true) {
    std::vector<std::vector<EdgeId>> left;
    try {
      left = monochromatic_cycles(g, out.colors);
    } catch (const GraphError&) {
      throw GraphError("partition left a vertex with three edges of one colour");
    }
    if (left.empty()) break;
    const EdgeId e =
        *std::min_element(left[0].begin(), left[0].end(), [&](EdgeId a, EdgeId b) { return lighter(g, a, b); });
    out.removed[e] = true;
    out.colors[e] = Color::None;
    ++out.safety_net_events;
    out.log.push_back("safety net: removed edge " + std::to_string(e) + " to break a cycle");
  }
  out.removed_weight = Weight(0);
  for (EdgeId e : g.edges()) {
    if (out.removed[e]) out.removed_weight += g.edge(e).w;
  }
  return out;
}

}  // namespace maxtsp
