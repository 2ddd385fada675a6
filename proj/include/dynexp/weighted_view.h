#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynexp/dyn_graph.h"
#include "dynexp/rational.h"

namespace dynexp {

struct Arc {
  int to;
  int64_t mult;
};

// The graph G[S]^w: the subgraph induced by S where every boundary edge of a
// vertex is replaced by ceil(w) self-loops at that vertex. Vertices are
// addressed by local index 0..Size()-1; parallel internal edges are merged
// into one arc with a multiplicity.
class WeightedView {
 public:
  WeightedView() = default;
  WeightedView(const DynGraph& g, const std::vector<int>& s, const Rational& w);

  // H[A]^w for local vertices A of an existing view H. Loops of H stay loops.
  static WeightedView Sub(const WeightedView& h, const std::vector<int>& local,
                          const Rational& w);

  int Size() const { return static_cast<int>(global_.size()); }
  int Global(int i) const { return global_[i]; }
  const std::vector<int>& GlobalIds() const { return global_; }
  // Local index of a vertex id of the base graph, or -1.
  int Local(int v) const;

  const Rational& weight() const { return w_; }
  int64_t CeilW() const { return ceil_w_; }
  int64_t Degree(int i) const { return deg_[i]; }
  int64_t Loops(int i) const { return loops_[i]; }
  int64_t Border(int i) const { return border_[i]; }
  const std::vector<Arc>& Neighbors(int i) const { return adj_[i]; }
  int64_t Volume() const { return volume_; }
  int64_t Volume(const std::vector<int>& local) const;
  int64_t NumInternalEdges() const { return internal_edges_; }

  // Edges of the view crossing the bipartition given by side[i] in {0,1}.
  int64_t Cut(const std::vector<char>& side) const;
  // Connected components by internal edges, as sorted local index lists.
  std::vector<std::vector<int>> Components() const;

 private:
  void Finish();

  std::vector<int> global_;
  std::unordered_map<int, int> local_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<int64_t> loops_;
  std::vector<int64_t> border_;
  std::vector<int64_t> deg_;
  Rational w_;
  int64_t ceil_w_ = 0;
  int64_t volume_ = 0;
  int64_t internal_edges_ = 0;
};

}  // namespace dynexp
