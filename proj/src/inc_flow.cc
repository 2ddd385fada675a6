#include "dynexp/inc_flow.h"

#include <algorithm>
#include <limits>

#include "dynexp/error.h"
#include "dynexp/max_flow.h"

namespace dynexp {

namespace {

int64_t CheckedMul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) Fail(ErrorKind::kOverflow, "flow capacity overflow");
  return r;
}

}  // namespace

IncFlow::IncFlow(const WeightedView& view, int64_t c, int64_t scale)
    : view_(view), c_(c), scale_(scale) {
  Require(c >= 1, ErrorKind::kInvalidArgument, "edge capacity must be positive");
  Require(scale >= 1, ErrorKind::kInvalidArgument, "scale must be positive");
  int n = view_.Size();
  arcs_.assign(n, {});
  for (int x = 0; x < n; ++x) {
    for (const Arc& a : view_.Neighbors(x)) {
      if (a.to < x) continue;
      int64_t cap = CheckedMul(c_, a.mult);
      int rx = static_cast<int>(arcs_[x].size());
      int ry = static_cast<int>(arcs_[a.to].size());
      arcs_[x].push_back({a.to, ry, cap, 0});
      arcs_[a.to].push_back({x, rx, cap, 0});
    }
  }
  sink_.resize(n);
  for (int x = 0; x < n; ++x) sink_[x] = CheckedMul(view_.Degree(x), scale_);
  absorbed_.assign(n, 0);
  source_.assign(n, 0);
  pruned_.assign(n, 0);
  stamp_.assign(n, 0);
  parent_arc_.assign(n, -1);
  parent_.assign(n, -1);
}

std::vector<int> IncFlow::Inject(int v, int64_t amount) {
  Require(v >= 0 && v < view_.Size(), ErrorKind::kNotFound, "injection vertex not in view");
  Require(amount >= 0, ErrorKind::kInvalidArgument, "negative injection");
  if (__builtin_add_overflow(total_source_, amount, &total_source_)) {
    Fail(ErrorKind::kOverflow, "source mass overflow");
  }
  source_[v] += amount;
  if (pruned_[v]) return {};

  int64_t excess = amount;
  int64_t take = std::min(excess, sink_[v] - absorbed_[v]);
  absorbed_[v] += take;
  excess -= take;

  std::vector<int> queue;
  while (excess > 0) {
    ++epoch_;
    queue.clear();
    queue.push_back(v);
    stamp_[v] = epoch_;
    parent_[v] = -1;
    bool pushed_any = false;
    for (size_t head = 0; head < queue.size() && excess > 0; ++head) {
      int x = queue[head];
      for (int k = 0; k < static_cast<int>(arcs_[x].size()) && excess > 0; ++k) {
        ++work_;
        const FlowArc& a = arcs_[x][k];
        int y = a.to;
        if (pruned_[y] || stamp_[y] == epoch_ || Residual(a) <= 0) continue;
        stamp_[y] = epoch_;
        parent_[y] = x;
        parent_arc_[y] = k;
        queue.push_back(y);
        int64_t spare = sink_[y] - absorbed_[y];
        if (spare <= 0) continue;
        int64_t amt = std::min(excess, spare);
        for (int z = y; z != v; z = parent_[z]) {
          ++work_;
          amt = std::min(amt, Residual(arcs_[parent_[z]][parent_arc_[z]]));
        }
        if (amt <= 0) continue;
        for (int z = y; z != v; z = parent_[z]) {
          FlowArc& fwd = arcs_[parent_[z]][parent_arc_[z]];
          fwd.flow += amt;
          arcs_[z][fwd.rev].flow -= amt;
        }
        absorbed_[y] += amt;
        excess -= amt;
        pushed_any = true;
      }
    }
    if (!pushed_any) {
      // Nothing reachable has spare capacity: the whole search tree is stuck.
      std::vector<int> newly(queue.begin(), queue.end());
      Prune(newly);
      std::sort(newly.begin(), newly.end());
      return newly;
    }
  }
  return {};
}

void IncFlow::Prune(const std::vector<int>& set) {
  for (int x : set) {
    pruned_[x] = 1;
    pruned_list_.push_back(x);
    pruned_volume_ += view_.Degree(x);
    for (const Arc& a : view_.Neighbors(x)) {
      pruned_boundary_ += pruned_[a.to] ? -a.mult : a.mult;
    }
  }
}

IncFlow::Certificate IncFlow::CertifyResidualFeasible() const {
  int n = view_.Size();
  int s = n, t = n + 1;
  MaxFlow net(n + 2);
  Certificate cert;
  std::vector<int> sink_arc(n, -1);
  for (int x = 0; x < n; ++x) {
    if (pruned_[x]) continue;
    int64_t delta = source_[x];
    for (const Arc& a : view_.Neighbors(x)) {
      if (pruned_[a.to]) delta += c_ * a.mult;
      else if (a.to > x) net.AddArc(x, a.to, c_ * a.mult, c_ * a.mult);
    }
    if (delta > 0) net.AddArc(s, x, delta);
    sink_arc[x] = net.AddArc(x, t, sink_[x]);
    cert.demanded += delta;
  }
  cert.routed = net.Run(s, t);
  cert.feasible = cert.routed == cert.demanded;
  cert.absorbed.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    if (sink_arc[x] >= 0) cert.absorbed[x] = net.Flow(sink_arc[x]);
  }
  return cert;
}

}  // namespace dynexp
