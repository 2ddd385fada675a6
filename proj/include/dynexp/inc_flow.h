#pragma once

#include <cstdint>
#include <vector>

#include "dynexp/weighted_view.h"

namespace dynexp {

// Incremental flow problem on a fixed view: every vertex absorbs up to
// scale * deg(v), every edge carries up to c (scaled units, c * multiplicity
// for merged parallel edges), and source mass arrives through Inject. Mass
// that cannot be routed is cut off by growing a pruned set P, so that the
// flow problem on the rest, with each edge into P turned into c units of
// source mass, stays feasible.
//
// Mass is pushed along shortest augmenting paths from the injection point;
// when no vertex with spare capacity is reachable, the residual-reachable set
// is added to P. This keeps vol(P) * scale <= sum(Delta) and
// c * |E(P, V \ P)| <= sum(Delta), half of the slack the contract allows.
class IncFlow {
 public:
  IncFlow(const WeightedView& view, int64_t c, int64_t scale);

  // Adds amount units of source mass at local vertex v and returns the
  // vertices pruned by this call.
  std::vector<int> Inject(int v, int64_t amount);

  const WeightedView& view() const { return view_; }
  int64_t capacity() const { return c_; }
  int64_t scale() const { return scale_; }
  int64_t TotalSource() const { return total_source_; }
  int64_t Sink(int v) const { return sink_[v]; }
  int64_t Source(int v) const { return source_[v]; }
  // sum(Delta) > vol * scale / 3: the size bounds are no longer promised.
  bool GuaranteeVoid() const { return 3 * total_source_ > view_.Volume() * scale_; }
  bool IsPruned(int v) const { return pruned_[v]; }
  const std::vector<int>& Pruned() const { return pruned_list_; }
  int64_t PrunedVolume() const { return pruned_volume_; }
  int64_t PrunedBoundary() const { return pruned_boundary_; }
  uint64_t work() const { return work_; }

  struct Certificate {
    bool feasible = false;
    int64_t demanded = 0;
    int64_t routed = 0;
    std::vector<int64_t> absorbed;  // per vertex in the witness flow
  };
  // Solves the residual problem on the unpruned vertices from scratch.
  Certificate CertifyResidualFeasible() const;

 private:
  struct FlowArc {
    int to;
    int rev;
    int64_t cap;
    int64_t flow;
  };

  int64_t Residual(const FlowArc& a) const { return a.cap - a.flow; }
  void Prune(const std::vector<int>& set);

  WeightedView view_;
  int64_t c_;
  int64_t scale_;
  std::vector<std::vector<FlowArc>> arcs_;
  std::vector<int64_t> sink_;
  std::vector<int64_t> absorbed_;
  std::vector<int64_t> source_;
  std::vector<char> pruned_;
  std::vector<int> pruned_list_;
  int64_t total_source_ = 0;
  int64_t pruned_volume_ = 0;
  int64_t pruned_boundary_ = 0;
  uint64_t work_ = 0;

  // BFS scratch space.
  std::vector<int> stamp_;
  std::vector<int> parent_arc_;  // index into arcs_[parent] of the tree arc
  std::vector<int> parent_;
  int epoch_ = 0;
};

}  // namespace dynexp
