#pragma once

#include <vector>

#include "maxtsp/gadgets.hpp"
#include "maxtsp/multigraph.hpp"

namespace maxtsp {

class NotFourRegular : public GraphError {
 public:
  using GraphError::GraphError;
};

enum class HEdgeSource { FirstCopy, SecondCopy, Added };

/// The 4-regular multigraph built from two copies of C with S_B applied.
/// Edge ids index `source`; when a cycle edge survives once it is tagged
/// as the first copy.
struct HGraph {
  Multigraph graph;
  std::vector<HEdgeSource> source;
  // S_B can put three edges on one pair; each such pair is fixed by a
  // weight-optimal exchange with another edge, counted here.
  int multiplicity_repairs = 0;
};

/// Throws NotFourRegular when S_B does not leave every vertex with degree
/// 4.
HGraph build_H(const Instance& inst, const CycleCover& c, const EdgeMultiset& s_b);

struct HBoundReport {
  Weight weight;
  Weight bound;  // 35/18 of the optimum lower bound
  bool weight_ok = false;
  Weight identity_rhs;  // 2 w(C) + w'(S_B)
  bool identity_ok = false;
  StructureReport structure;
};

HBoundReport check_h_bound(const HGraph& h, const Instance& inst, const CycleCover& c, const EdgeMultiset& s_b,
                          const Weight& opt_lower_bound);

struct ComponentSplit {
  Multigraph core;
  std::vector<std::vector<VertexId>> small;  // each sorted
};

/// Components with fewer than `min_size` vertices are taken out of the
/// graph; the core keeps the original vertex and edge ids.
ComponentSplit split_small_components(const Multigraph& h, int min_size = 5);

}  // namespace maxtsp
