#include "dynexp/pruner.h"

#include <algorithm>

#include "dynexp/error.h"

namespace dynexp {

namespace {

const Rational& CheckedPhi(const Rational& alpha, const Rational& phi, const Rational& w) {
  Require(phi > Rational(0) && phi <= Rational(1), ErrorKind::kInvalidArgument, "pruner phi must lie in (0, 1]");
  Require(alpha >= Rational(0) && alpha <= Rational(1), ErrorKind::kInvalidArgument,
          "pruner alpha must lie in [0, 1]");
  if (alpha / phi > w) {
    Fail(ErrorKind::kInvalidArgument,
         "pruner weight " + w.ToString() + " is below alpha/phi = " + (alpha / phi).ToString());
  }
  Rational top = Rational(3) / (Rational(5) * phi);
  if (w > top) {
    Fail(ErrorKind::kInvalidArgument, "pruner weight " + w.ToString() + " exceeds 3/(5 phi) = " + top.ToString());
  }
  // The view carries ceil(w) loops per boundary edge, so that is the weight in force.
  if (Rational(w.Ceil()) > top) {
    Fail(ErrorKind::kInvalidArgument, "pruner weight rounds up past 3/(5 phi) = " + top.ToString());
  }
  return phi;
}

}  // namespace

Pruner::Pruner(const DynGraph& g, const std::vector<int>& u, const Rational& alpha, const Rational& phi,
               const Rational& w)
    : alpha_(alpha),
      phi_(CheckedPhi(alpha, phi, w)),
      w_(w),
      flow_(WeightedView(g, u, w), 2 * phi.den(), phi.num()) {
  forgotten_.assign(u.size(), 0);
  // floor(phi * vol / 120)
  k_max_ = static_cast<int64_t>(static_cast<__int128>(phi.num()) * flow_.view().Volume() / (120 * static_cast<__int128>(phi.den())));
}

bool Pruner::Contains(int v) const {
  int i = flow_.view().Local(v);
  return i >= 0 && !forgotten_[i];
}

bool Pruner::IsPruned(int v) const {
  int i = flow_.view().Local(v);
  return i >= 0 && !forgotten_[i] && flow_.IsPruned(i);
}

void Pruner::Forget(int v) {
  int i = flow_.view().Local(v);
  if (i >= 0) forgotten_[i] = 1;
}

std::vector<int> Pruner::Members() const {
  std::vector<int> out;
  const WeightedView& h = flow_.view();
  for (int i = 0; i < h.Size(); ++i) {
    if (!forgotten_[i]) out.push_back(h.Global(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Pruner::PrunedSet() const {
  std::vector<int> out;
  for (int i : flow_.Pruned()) {
    if (!forgotten_[i]) out.push_back(flow_.view().Global(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pruner::Step Pruner::Apply(int a, int b) {
  Step step;
  int ia = Contains(a) ? flow_.view().Local(a) : -1;
  int ib = Contains(b) ? flow_.view().Local(b) : -1;
  if (ia < 0 && ib < 0) return step;
  step.relevant = true;
  if (updates_ >= k_max_) {
    step.expired = true;
    return step;
  }
  ++updates_;
  const int64_t mass = 8 * phi_.den();  // 8/phi scaled by phi.num()
  auto inject = [&](int i) {
    for (int x : flow_.Inject(i, mass)) {
      if (!forgotten_[x]) step.newly_pruned.push_back(flow_.view().Global(x));
    }
  };
  if (ia >= 0) inject(ia);
  if (ib >= 0 && ib != ia) inject(ib);
  std::sort(step.newly_pruned.begin(), step.newly_pruned.end());
  return step;
}

}  // namespace dynexp
