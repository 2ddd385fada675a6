#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dynexp/decomposition.h"
#include "dynexp/dyn_graph.h"
#include "dynexp/rational.h"

namespace dynexp {

// Levels G^0..G^t with G^t edgeless; part_of[i][v] is the vertex of G^{i+1}
// containing vertex v of G^i (-1 for unused ids). The tree has one node per
// (level, vertex); the edge from u_i to its parent has capacity deg_{G^i}(u_i).
struct Hierarchy {
  std::vector<DynGraph> graphs;
  std::vector<std::vector<int>> part_of;
  std::vector<Decomposition> decomps;  // per level, empty for snapshots of a dynamic run
  Rational alpha;
  Rational phi;
  Rational slack{1};

  int depth() const { return static_cast<int>(graphs.size()) - 1; }
  int Parent(int level, int v) const { return part_of[level][v]; }
  int64_t Capacity(int level, int v) const { return graphs[level].Degree(v); }
  // (level, vertex) pairs from the leaf v up to its root.
  std::vector<std::pair<int, int>> Path(int v) const;
};

struct HierarchyConfig {
  DecompConfig decomp;
  int max_depth = 64;
};

Hierarchy BuildStaticHierarchy(const DynGraph& g, const HierarchyConfig& cfg);

// Lines "tree <level>:<child> <level+1>:<parent> cap <c>", after the clusters of each level.
void WriteHierarchy(std::ostream& out, const Hierarchy& h);

}  // namespace dynexp
