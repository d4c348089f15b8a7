#include "maxtsp/hgraph.hpp"

#include <algorithm>
#include <map>

namespace maxtsp {

namespace {

// Replaces one copy of an over-full pair (u,v) and some other edge (x,y)
// by (u,x) and (v,y), picking the swap that loses the least weight.
void reduce_triple(std::map<VertexPair, int>& count, const VertexPair& triple, const Instance& inst) {
  const auto [u, v] = triple;
  bool found = false;
  Weight best_gain;
  VertexPair best_remove;
  VertexPair best_a;
  VertexPair best_b;
  auto after = [&count](const VertexPair& p) {
    const auto it = count.find(p);
    return it == count.end() ? 0 : it->second;
  };
  for (const auto& [pair, c] : count) {
    if (c <= 0) continue;
    const auto [x, y] = pair;
    if (x == u || x == v || y == u || y == v) continue;
    for (int flip = 0; flip < 2; ++flip) {
      const VertexId to_u = flip ? y : x;
      const VertexId to_v = flip ? x : y;
      const VertexPair a = make_pair_key(u, to_u);
      const VertexPair b = make_pair_key(v, to_v);
      if (after(a) >= 2 || after(b) >= 2) continue;
      const Weight gain = inst.weight(u, to_u) + inst.weight(v, to_v) - inst.weight(u, v) - inst.weight(x, y);
      if (!found || gain > best_gain) {
        found = true;
        best_gain = gain;
        best_remove = pair;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (!found) throw NotFourRegular("no exchange removes the third edge on a pair");
  count[triple] -= 1;
  count[best_remove] -= 1;
  count[best_a] += 1;
  count[best_b] += 1;
}

}  // namespace

HGraph build_H(const Instance& inst, const CycleCover& c, const EdgeMultiset& s_b) {
  const int n = inst.size();
  // Both copies of C form one multiset; a cycle edge listed twice in S_B
  // (once as C \ B, once inside a fragment) leaves both copies.
  std::map<VertexPair, int> count;
  for (const auto& pair : c.edges()) count[pair] = 2;
  for (const auto& [pair, k] : s_b.items()) {
    if (c.contains(pair.first, pair.second)) count[pair] -= k;
    else count[pair] += k;
  }
  for (const auto& [pair, k] : count) {
    if (k < 0) {
      throw NotFourRegular("cycle edge (" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                           ") removed more often than present");
    }
  }
  HGraph h{Multigraph(n), {}, 0};
  while (true) {
    const auto over = std::find_if(count.begin(), count.end(), [](const auto& item) { return item.second > 2; });
    if (over == count.end()) break;
    reduce_triple(count, over->first, inst);
    ++h.multiplicity_repairs;
  }
  std::vector<int> degree(n, 0);
  for (const auto& [pair, k] : count) {
    const bool in_cover = c.contains(pair.first, pair.second);
    for (int i = 0; i < k; ++i) {
      h.graph.add_edge(pair.first, pair.second, inst.weight(pair.first, pair.second));
      h.source.push_back(!in_cover ? HEdgeSource::Added : i == 0 ? HEdgeSource::FirstCopy : HEdgeSource::SecondCopy);
      ++degree[pair.first];
      ++degree[pair.second];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (degree[v] != 4) throw NotFourRegular("vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
  }
  return h;
}

HBoundReport check_h_bound(const HGraph& h, const Instance& inst, const CycleCover& c, const EdgeMultiset& s_b,
                          const Weight& opt_lower_bound) {
  HBoundReport r;
  r.weight = h.graph.total_weight();
  r.bound = opt_lower_bound * 35 / 18;
  r.weight_ok = r.weight >= r.bound;
  r.identity_rhs = c.weight() * 2 + alternating_weight(s_b, c, inst);
  // A multiplicity repair changes the weight on purpose.
  r.identity_ok = h.multiplicity_repairs > 0 || r.identity_rhs == r.weight;
  r.structure = validate_multigraph(h.graph, 4, 5);
  return r;
}

ComponentSplit split_small_components(const Multigraph& h, int min_size) {
  ComponentSplit out;
  std::vector<VertexId> keep;
  for (auto& comp : h.components()) {
    if (static_cast<int>(comp.size()) < min_size) out.small.push_back(std::move(comp));
    else keep.insert(keep.end(), comp.begin(), comp.end());
  }
  out.core = h.induced(keep);
  return out;
}

}  // namespace maxtsp
