#include "dynexp/max_flow.h"

#include <algorithm>
#include <limits>

namespace dynexp {

MaxFlow::MaxFlow(int n) : n_(n), head_(n, -1) {}

int MaxFlow::AddArc(int a, int b, int64_t cap, int64_t rev_cap) {
  int id = static_cast<int>(to_.size());
  to_.push_back(b);
  cap_.push_back(cap);
  original_.push_back(cap);
  next_.push_back(head_[a]);
  head_[a] = id;
  to_.push_back(a);
  cap_.push_back(rev_cap);
  original_.push_back(rev_cap);
  next_.push_back(head_[b]);
  head_[b] = id + 1;
  return id;
}

bool MaxFlow::Levels(int s, int t) {
  level_.assign(n_, -1);
  std::vector<int> queue{s};
  level_[s] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (int e = head_[x]; e >= 0; e = next_[e]) {
      ++work_;
      if (cap_[e] > 0 && level_[to_[e]] < 0) {
        level_[to_[e]] = level_[x] + 1;
        queue.push_back(to_[e]);
      }
    }
  }
  return level_[t] >= 0;
}

int64_t MaxFlow::Augment(int x, int t, int64_t limit) {
  if (x == t) return limit;
  for (int& e = iter_[x]; e >= 0; e = next_[e]) {
    ++work_;
    int y = to_[e];
    if (cap_[e] <= 0 || level_[y] != level_[x] + 1) continue;
    int64_t pushed = Augment(y, t, std::min(limit, cap_[e]));
    if (pushed > 0) {
      cap_[e] -= pushed;
      cap_[e ^ 1] += pushed;
      return pushed;
    }
  }
  return 0;
}

int64_t MaxFlow::Run(int s, int t) {
  int64_t total = 0;
  while (Levels(s, t)) {
    iter_ = head_;
    while (int64_t f = Augment(s, t, std::numeric_limits<int64_t>::max())) total += f;
  }
  return total;
}

std::vector<char> MaxFlow::SourceSide(int s) const {
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int e = head_[x]; e >= 0; e = next_[e]) {
      if (cap_[e] > 0 && !seen[to_[e]]) {
        seen[to_[e]] = 1;
        stack.push_back(to_[e]);
      }
    }
  }
  return seen;
}

}  // namespace dynexp
