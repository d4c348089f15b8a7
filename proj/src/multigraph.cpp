#include "maxtsp/multigraph.hpp"

#include <algorithm>
#include <numeric>

namespace maxtsp {

Multigraph::Multigraph(int vertex_count, bool auxiliary)
    : vertex_alive_(vertex_count, true), incident_(vertex_count), vertex_count_(vertex_count),
      auxiliary_(auxiliary) {}

VertexId Multigraph::add_vertex() {
  vertex_alive_.push_back(true);
  incident_.emplace_back();
  ++vertex_count_;
  return static_cast<VertexId>(vertex_alive_.size()) - 1;
}

void Multigraph::check_new_edge(VertexId u, VertexId v, const Weight& w) const {
  if (!has_vertex(u) || !has_vertex(v)) throw GraphError("edge endpoint is not a vertex");
  if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
  if (multiplicity(u, v) >= 2) {
    throw GraphError("third parallel edge between " + std::to_string(u) + " and " + std::to_string(v));
  }
  if (!auxiliary_ && w < 0) throw GraphError("negative weight on a non-auxiliary graph");
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v, Weight w) {
  check_new_edge(u, v, w);
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{u, v, std::move(w)});
  edge_alive_.push_back(true);
  incident_[u].push_back(id);
  incident_[v].push_back(id);
  ++edge_count_;
  return id;
}

void Multigraph::add_edge_with_id(EdgeId id, VertexId u, VertexId v, Weight w) {
  if (id < 0) throw GraphError("negative edge id");
  if (has_edge(id)) throw GraphError("edge id already in use");
  check_new_edge(u, v, w);
  if (id >= edge_capacity()) {
    edges_.resize(id + 1);
    edge_alive_.resize(id + 1, false);
  }
  edges_[id] = Edge{u, v, std::move(w)};
  edge_alive_[id] = true;
  incident_[u].push_back(id);
  incident_[v].push_back(id);
  ++edge_count_;
}

void Multigraph::remove_edge(EdgeId e) {
  if (!has_edge(e)) throw GraphError("removing a missing edge");
  const Edge& ed = edges_[e];
  for (VertexId x : {ed.u, ed.v}) {
    auto& inc = incident_[x];
    inc.erase(std::find(inc.begin(), inc.end(), e));
  }
  edge_alive_[e] = false;
  --edge_count_;
}

void Multigraph::remove_vertex(VertexId v) {
  if (!has_vertex(v)) throw GraphError("removing a missing vertex");
  if (!incident_[v].empty()) throw GraphError("removing a vertex that still has edges");
  vertex_alive_[v] = false;
  --vertex_count_;
}

void Multigraph::set_weight(EdgeId e, Weight w) {
  if (!has_edge(e)) throw GraphError("reweighting a missing edge");
  if (!auxiliary_ && w < 0) throw GraphError("negative weight on a non-auxiliary graph");
  edges_[e].w = std::move(w);
}

void Multigraph::reattach(EdgeId e, VertexId from, VertexId to) {
  if (!has_edge(e)) throw GraphError("reattaching a missing edge");
  Edge& ed = edges_[e];
  if (ed.u != from && ed.v != from) throw GraphError("reattach: vertex is not an endpoint");
  const VertexId keep = ed.u == from ? ed.v : ed.u;
  if (keep == to) throw GraphError("reattach would create a loop");
  if (multiplicity(keep, to) >= 2) throw GraphError("reattach would create a third parallel edge");
  auto& inc = incident_[from];
  inc.erase(std::find(inc.begin(), inc.end(), e));
  incident_[to].push_back(e);
  if (ed.u == from) ed.u = to; else ed.v = to;
}

bool Multigraph::has_vertex(VertexId v) const {
  return v >= 0 && v < vertex_capacity() && vertex_alive_[v];
}

bool Multigraph::has_edge(EdgeId e) const { return e >= 0 && e < edge_capacity() && edge_alive_[e]; }

VertexId Multigraph::other(EdgeId e, VertexId v) const {
  const Edge& ed = edges_[e];
  return ed.u == v ? ed.v : ed.u;
}

std::vector<EdgeId> Multigraph::edges_between(VertexId u, VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e : incident_[u]) {
    if (other(e, u) == v) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Multigraph::multiplicity(VertexId u, VertexId v) const {
  int count = 0;
  for (EdgeId e : incident_[u]) count += other(e, u) == v;
  return count;
}

std::vector<VertexId> Multigraph::vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_capacity(); ++v) {
    if (vertex_alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<EdgeId> Multigraph::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_capacity(); ++e) {
    if (edge_alive_[e]) out.push_back(e);
  }
  return out;
}

Weight Multigraph::total_weight() const {
  Weight sum = 0;
  for (EdgeId e = 0; e < edge_capacity(); ++e) {
    if (edge_alive_[e]) sum += edges_[e].w;
  }
  return sum;
}

std::vector<std::vector<VertexId>> Multigraph::components() const {
  std::vector<int> seen(vertex_capacity(), 0);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < vertex_capacity(); ++s) {
    if (!vertex_alive_[s] || seen[s]) continue;
    std::vector<VertexId> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (EdgeId e : incident_[comp[i]]) {
        const VertexId w = other(e, comp[i]);
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Multigraph Multigraph::induced(std::span<const VertexId> vertices) const {
  Multigraph g(vertex_capacity(), auxiliary_);
  std::vector<bool> keep(vertex_capacity(), false);
  for (VertexId v : vertices) keep[v] = true;
  for (VertexId v = 0; v < vertex_capacity(); ++v) {
    if (!keep[v]) g.remove_vertex(v);
  }
  for (EdgeId e = 0; e < edge_capacity(); ++e) {
    if (edge_alive_[e] && keep[edges_[e].u] && keep[edges_[e].v]) {
      g.add_edge_with_id(e, edges_[e].u, edges_[e].v, edges_[e].w);
    }
  }
  return g;
}

CycleCover::CycleCover(const Instance& inst, std::vector<std::vector<VertexId>> cycles)
    : cycles_(std::move(cycles)), cycle_of_(inst.size(), -1) {
  const int n = inst.size();
  for (std::size_t i = 0; i < cycles_.size(); ++i) {
    const auto& cyc = cycles_[i];
    if (cyc.size() < 3) throw GraphError("cycle shorter than 3");
    for (VertexId v : cyc) {
      if (v < 0 || v >= n) throw GraphError("cycle vertex out of range");
      if (cycle_of_[v] != -1) throw GraphError("vertex " + std::to_string(v) + " covered twice");
      cycle_of_[v] = static_cast<int>(i);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const VertexId a = cyc[k];
      const VertexId b = cyc[(k + 1) % cyc.size()];
      edge_set_[make_pair_key(a, b)] += 1;
      weight_ += inst.weight(a, b);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (cycle_of_[v] == -1) throw GraphError("vertex " + std::to_string(v) + " not covered");
  }
}

bool CycleCover::contains(VertexId u, VertexId v) const { return edge_set_.count(make_pair_key(u, v)) > 0; }

std::vector<VertexPair> CycleCover::edges() const {
  std::vector<VertexPair> out;
  for (const auto& [pair, count] : edge_set_) out.push_back(pair);
  return out;
}

void EdgeMultiset::add(VertexId u, VertexId v, int count) {
  if (u == v) throw GraphError("loop in edge multiset");
  if (count == 0) return;
  const auto key = make_pair_key(u, v);
  const int updated = counts_[key] + count;
  if (updated < 0) throw GraphError("negative multiplicity in edge multiset");
  if (updated == 0) counts_.erase(key); else counts_[key] = updated;
}

int EdgeMultiset::count(VertexId u, VertexId v) const {
  const auto it = counts_.find(make_pair_key(u, v));
  return it == counts_.end() ? 0 : it->second;
}

int EdgeMultiset::size() const {
  int total = 0;
  for (const auto& [pair, count] : counts_) total += count;
  return total;
}

EdgeMultiset EdgeMultiset::operator+(const EdgeMultiset& other) const {
  EdgeMultiset out = *this;
  for (const auto& [pair, count] : other.counts_) out.add(pair.first, pair.second, count);
  return out;
}

EdgeMultiset symmetric_difference(const CycleCover& a, const CycleCover& b) {
  EdgeMultiset out;
  for (const auto& [u, v] : a.edges()) {
    if (!b.contains(u, v)) out.add(u, v);
  }
  for (const auto& [u, v] : b.edges()) {
    if (!a.contains(u, v)) out.add(u, v);
  }
  return out;
}

Weight alternating_weight(const EdgeMultiset& s, const CycleCover& c, const Instance& inst) {
  Weight sum = 0;
  for (const auto& [pair, count] : s.items()) {
    const Weight& w = inst.weight(pair.first, pair.second);
    if (c.contains(pair.first, pair.second)) sum -= w * count; else sum += w * count;
  }
  return sum;
}

Multigraph apply_alternating(const CycleCover& c, const EdgeMultiset& s, const Instance& inst) {
  std::map<VertexPair, int> counts;
  for (const auto& pair : c.edges()) counts[pair] = 1;
  for (const auto& [pair, count] : s.items()) {
    if (c.contains(pair.first, pair.second)) counts[pair] -= count; else counts[pair] += count;
  }
  const int n = inst.size();
  Multigraph g(n);
  std::vector<int> degree(n, 0);
  for (const auto& [pair, count] : counts) {
    if (count < 0) {
      throw DegreeViolation("edge (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                            ") removed more often than present");
    }
    if (count > 2) throw DegreeViolation("pair multiplicity above 2");
    for (int k = 0; k < count; ++k) g.add_edge(pair.first, pair.second, inst.weight(pair.first, pair.second));
    degree[pair.first] += count;
    degree[pair.second] += count;
  }
  for (int v = 0; v < n; ++v) {
    if (degree[v] != 2) throw DegreeViolation("vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
  }
  return g;
}

StructureReport validate_multigraph(const Multigraph& g, int degree, int min_component) {
  StructureReport report;
  for (VertexId v : g.vertices()) {
    if (g.degree(v) != degree) {
      report.regular = false;
      report.failures.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
    }
  }
  for (EdgeId e : g.edges()) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) {
      report.loopless = false;
      report.failures.push_back("loop edge " + std::to_string(e));
    } else if (g.multiplicity(ed.u, ed.v) > 2) {
      report.multiplicity_ok = false;
      report.failures.push_back("pair multiplicity above 2 at edge " + std::to_string(e));
    }
  }
  for (const auto& comp : g.components()) {
    report.component_sizes.push_back(static_cast<int>(comp.size()));
    if (static_cast<int>(comp.size()) < min_component) {
      report.components_ok = false;
      report.failures.push_back("component of " + std::to_string(comp.size()) + " vertices starting at " +
                                std::to_string(comp.front()));
    }
  }
  return report;
}

}  // namespace maxtsp
