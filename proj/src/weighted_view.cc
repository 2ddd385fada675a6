#include "dynexp/weighted_view.h"

#include <algorithm>
#include <string>

#include "dynexp/error.h"

namespace dynexp {

namespace {

void MergeArcs(std::vector<Arc>& arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  size_t out = 0;
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (out > 0 && arcs[out - 1].to == arcs[i].to) {
      arcs[out - 1].mult += arcs[i].mult;
    } else {
      arcs[out++] = arcs[i];
    }
  }
  arcs.resize(out);
}

}  // namespace

WeightedView::WeightedView(const DynGraph& g, const std::vector<int>& s, const Rational& w)
    : global_(s), w_(w) {
  Require(w >= Rational(0), ErrorKind::kInvalidArgument, "view weight must be non-negative");
  ceil_w_ = w.Ceil();
  int n = Size();
  local_.reserve(n * 2);
  for (int i = 0; i < n; ++i) {
    if (!g.HasVertex(s[i])) {
      Fail(ErrorKind::kNotFound, "view vertex " + std::to_string(s[i]) + " not in graph");
    }
    if (!local_.emplace(s[i], i).second) {
      Fail(ErrorKind::kInvalidArgument, "duplicate view vertex " + std::to_string(s[i]));
    }
  }
  adj_.assign(n, {});
  loops_.assign(n, 0);
  border_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    g.ForEachIncident(s[i], [&](const Edge& e) {
      if (e.IsLoop()) {
        ++loops_[i];
        return;
      }
      int j = Local(e.Other(s[i]));
      if (j < 0) {
        ++border_[i];
      } else {
        adj_[i].push_back({j, 1});
      }
    });
  }
  for (int i = 0; i < n; ++i) loops_[i] += ceil_w_ * border_[i];
  Finish();
}

WeightedView WeightedView::Sub(const WeightedView& h, const std::vector<int>& local,
                               const Rational& w) {
  Require(w >= Rational(0), ErrorKind::kInvalidArgument, "view weight must be non-negative");
  WeightedView out;
  out.w_ = w;
  out.ceil_w_ = w.Ceil();
  int n = static_cast<int>(local.size());
  std::vector<int> index(h.Size(), -1);
  for (int i = 0; i < n; ++i) {
    Require(local[i] >= 0 && local[i] < h.Size() && index[local[i]] < 0,
            ErrorKind::kInvalidArgument, "bad sub-view vertex list");
    index[local[i]] = i;
  }
  out.global_.resize(n);
  out.local_.reserve(n * 2);
  out.adj_.assign(n, {});
  out.loops_.assign(n, 0);
  out.border_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int x = local[i];
    out.global_[i] = h.Global(x);
    out.local_.emplace(h.Global(x), i);
    out.loops_[i] = h.Loops(x);
    for (const Arc& a : h.Neighbors(x)) {
      if (index[a.to] < 0) {
        out.border_[i] += a.mult;
      } else {
        out.adj_[i].push_back({index[a.to], a.mult});
      }
    }
    out.loops_[i] += out.ceil_w_ * out.border_[i];
  }
  out.Finish();
  return out;
}

void WeightedView::Finish() {
  int n = Size();
  deg_.assign(n, 0);
  volume_ = 0;
  internal_edges_ = 0;
  for (int i = 0; i < n; ++i) {
    MergeArcs(adj_[i]);
    int64_t d = loops_[i];
    for (const Arc& a : adj_[i]) d += a.mult;
    deg_[i] = d;
    volume_ += d;
    for (const Arc& a : adj_[i]) {
      if (a.to > i) internal_edges_ += a.mult;
    }
  }
}

int WeightedView::Local(int v) const {
  auto it = local_.find(v);
  return it == local_.end() ? -1 : it->second;
}

int64_t WeightedView::Volume(const std::vector<int>& local) const {
  int64_t vol = 0;
  for (int i : local) vol += deg_[i];
  return vol;
}

int64_t WeightedView::Cut(const std::vector<char>& side) const {
  int64_t cut = 0;
  for (int i = 0; i < Size(); ++i) {
    if (!side[i]) continue;
    for (const Arc& a : adj_[i]) {
      if (!side[a.to]) cut += a.mult;
    }
  }
  return cut;
}

std::vector<std::vector<int>> WeightedView::Components() const {
  int n = Size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out[id].push_back(x);
      for (const Arc& a : adj_[x]) {
        if (comp[a.to] < 0) {
          comp[a.to] = id;
          stack.push_back(a.to);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

}  // namespace dynexp
