#pragma once

#include <cstdint>
#include <vector>

#include "dynexp/dyn_graph.h"
#include "dynexp/inc_flow.h"
#include "dynexp/rational.h"
#include "dynexp/weighted_view.h"

namespace dynexp {

// Dynamic expander pruning on a cluster U of G whose G[U]^w is a
// phi-expander. Each update touching U injects 8/phi units at its endpoints in
// U into an incremental flow on the initial G[U]^w with edge capacity 2/phi;
// the flow's pruned set is P. At most k_max = floor(phi vol(G[U]^w) / 120)
// updates are accepted, after which the pruner reports expiry.
class Pruner {
 public:
  Pruner(const DynGraph& g, const std::vector<int>& u, const Rational& alpha, const Rational& phi,
         const Rational& w);

  struct Step {
    bool relevant = false;
    bool expired = false;  // budget exhausted; nothing was changed
    std::vector<int> newly_pruned;  // vertex ids
  };
  // Feeds the insertion or deletion of edge (a, b).
  Step Apply(int a, int b);

  bool Contains(int v) const;
  bool IsPruned(int v) const;
  // Drops v from U (v left the cluster); its flow state stays behind.
  void Forget(int v);

  // Current members of U and of P, as vertex ids.
  std::vector<int> Members() const;
  std::vector<int> PrunedSet() const;

  int64_t updates() const { return updates_; }
  int64_t budget() const { return k_max_; }
  bool Exhausted() const { return updates_ >= k_max_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& phi() const { return phi_; }
  const Rational& w() const { return w_; }
  const WeightedView& view() const { return flow_.view(); }
  const IncFlow& flow() const { return flow_; }

 private:
  Rational alpha_, phi_, w_;
  IncFlow flow_;
  std::vector<char> forgotten_;
  int64_t k_max_ = 0;
  int64_t updates_ = 0;
};

}  // namespace dynexp
