#pragma once

#include <vector>

#include "dynexp/dyn_graph.h"

namespace dynexp {

// Quotient multigraph: part i becomes supervertex i. Edges between different
// parts keep their multiplicity and origin ids; edges inside a part vanish.
struct ContractedGraph {
  DynGraph graph;
  std::vector<int> part_of;  // by base vertex id, -1 for absent ids
};

ContractedGraph Contract(const DynGraph& g, const std::vector<std::vector<int>>& partition);

}  // namespace dynexp
