#include "dynexp/hierarchy.h"

#include <ostream>
#include <string>

#include "dynexp/contract.h"
#include "dynexp/error.h"

namespace dynexp {

std::vector<std::pair<int, int>> Hierarchy::Path(int v) const {
  if (graphs.empty() || !graphs[0].HasVertex(v)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(v));
  std::vector<std::pair<int, int>> path{{0, v}};
  for (int i = 0; i < depth(); ++i) {
    v = part_of[i][v];
    path.push_back({i + 1, v});
  }
  return path;
}

Hierarchy BuildStaticHierarchy(const DynGraph& g, const HierarchyConfig& cfg) {
  Hierarchy h;
  h.alpha = cfg.decomp.alpha;
  h.phi = cfg.decomp.phi;
  h.graphs.push_back(g);
  while (h.graphs.back().NumEdges() > 0) {
    if (h.depth() >= cfg.max_depth) {
      Fail(ErrorKind::kInternal, "hierarchy depth exceeds the cap of " + std::to_string(cfg.max_depth) +
                                     "; phi is probably too large for contraction to make progress");
    }
    const DynGraph& top = h.graphs.back();
    Decomposition d = Decompose(top, top.Vertices(), cfg.decomp);
    ContractedGraph c = Contract(top, d.Partition());
    h.decomps.push_back(std::move(d));
    h.part_of.push_back(std::move(c.part_of));
    h.graphs.push_back(std::move(c.graph));
  }
  return h;
}

void WriteHierarchy(std::ostream& out, const Hierarchy& h) {
  for (int i = 0; i < static_cast<int>(h.decomps.size()); ++i) WriteDecomposition(out, h.decomps[i], i);
  for (int i = 0; i < h.depth(); ++i) {
    for (int v : h.graphs[i].Vertices()) {
      out << "tree " << i << ':' << v << ' ' << i + 1 << ':' << h.part_of[i][v] << " cap " << h.Capacity(i, v)
          << '\n';
    }
  }
}

}  // namespace dynexp
