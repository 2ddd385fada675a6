#include "dynexp/contract.h"

#include <string>

#include "dynexp/error.h"

namespace dynexp {

ContractedGraph Contract(const DynGraph& g, const std::vector<std::vector<int>>& partition) {
  ContractedGraph out;
  out.part_of.assign(g.NumVertexSlots(), -1);
  int covered = 0;
  for (int i = 0; i < static_cast<int>(partition.size()); ++i) {
    for (int v : partition[i]) {
      if (!g.HasVertex(v)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(v));
      if (out.part_of[v] >= 0) {
        Fail(ErrorKind::kInvalidArgument, "vertex " + std::to_string(v) + " in two parts");
      }
      out.part_of[v] = i;
      ++covered;
    }
  }
  if (covered != g.NumVertices()) {
    Fail(ErrorKind::kInvalidArgument, "partition does not cover the vertex set");
  }
  out.graph = DynGraph(static_cast<int>(partition.size()));
  g.ForEachEdge([&](const Edge& e) {
    int a = out.part_of[e.u], b = out.part_of[e.v];
    if (a != b) out.graph.InsertEdgeWithOrigin(a, b, e.origin);
  });
  return out;
}

}  // namespace dynexp
