#pragma once

#include <cstdint>
#include <vector>

namespace dynexp {

// Dinic's algorithm on an explicit arc list.
class MaxFlow {
 public:
  explicit MaxFlow(int n);

  // Adds arc a->b with capacity cap and the reverse arc with rev_cap.
  // Returns the id of the forward arc.
  int AddArc(int a, int b, int64_t cap, int64_t rev_cap = 0);
  int64_t Run(int s, int t);

  // Net flow on a forward arc.
  int64_t Flow(int arc) const { return original_[arc] - cap_[arc]; }
  int Head(int arc) const { return to_[arc]; }
  int Tail(int arc) const { return to_[arc ^ 1]; }
  // Vertices reachable from s in the residual network after Run.
  std::vector<char> SourceSide(int s) const;
  uint64_t work() const { return work_; }

 private:
  bool Levels(int s, int t);
  int64_t Augment(int x, int t, int64_t limit);

  int n_;
  std::vector<int> head_, next_, to_;
  std::vector<int64_t> cap_, original_;
  std::vector<int> level_, iter_;
  uint64_t work_ = 0;
};

}  // namespace dynexp
