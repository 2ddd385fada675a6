#include "dynexp/decomposition.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>

#include "dynexp/error.h"
#include "dynexp/inc_flow.h"

namespace dynexp {

namespace {

uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<int> ToGlobal(const WeightedView& h, const std::vector<int>& local) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int i : local) out.push_back(h.Global(i));
  std::sort(out.begin(), out.end());
  return out;
}

int64_t VolumeIn(const DynGraph& g, const std::vector<int>& s) {
  int64_t vol = 0;
  for (int v : s) vol += g.Degree(v);
  return vol;
}

}  // namespace

double Log2(int64_t m) { return std::log2(static_cast<double>(std::max<int64_t>(m, 2))); }

int64_t DefaultGammaKrv(int64_t m) {
  double l = Log2(m);
  return std::max<int64_t>(8, static_cast<int64_t>(std::ceil(10.0 * l * l)));
}

Rational MaxAdmissibleAlpha(int64_t m, int64_t gamma_krv) {
  double bound = 4.0 * 2.0 * static_cast<double>(gamma_krv) * Log2(m);
  return Rational(1, static_cast<int64_t>(std::ceil(bound)));
}

std::vector<std::vector<int>> Decomposition::Partition() const {
  std::vector<std::vector<int>> out;
  out.reserve(clusters.size());
  for (const Cluster& c : clusters) out.push_back(c.members);
  return out;
}

TrimResult Trim(const WeightedView& h, const std::vector<int>& a, const Rational& phi) {
  Require(phi > Rational(0) && phi < Rational(1, 2), ErrorKind::kInvalidArgument, "phi must lie in (0, 1/2)");
  TrimResult r;
  WeightedView sub = WeightedView::Sub(h, a, Rational(1));
  // Scaled by p for phi = p/q: capacity 2/phi -> 2q, sink deg -> p deg.
  const int64_t p = phi.num(), q = phi.den();
  IncFlow flow(sub, 2 * q, p);
  for (int i = 0; i < sub.Size(); ++i) r.boundary_before += sub.Border(i);
  for (int i = 0; i < sub.Size(); ++i) {
    if (sub.Border(i) > 0) flow.Inject(i, 2 * q * sub.Border(i));
  }
  r.guarantee_void = flow.GuaranteeVoid();
  std::vector<char> pruned(sub.Size(), 0);
  for (int i : flow.Pruned()) pruned[i] = 1;
  for (int i = 0; i < sub.Size(); ++i) {
    (pruned[i] ? r.pruned : r.kept).push_back(a[i]);
  }
  std::sort(r.pruned.begin(), r.pruned.end());
  std::sort(r.kept.begin(), r.kept.end());
  r.pruned_volume = flow.PrunedVolume();
  std::vector<char> in_kept(h.Size(), 0);
  for (int x : r.kept) in_kept[x] = 1;
  r.boundary_after = h.Cut(in_kept);
  // Lemma bounds, checked on every call.
  if (!r.guarantee_void) {
    if (static_cast<__int128>(r.pruned_volume) * p > static_cast<__int128>(4) * q * r.boundary_before ||
        r.boundary_after > 2 * r.boundary_before) {
      Fail(ErrorKind::kInternal, "trim exceeded its volume or boundary bound");
    }
  }
  return r;
}

CmtResult CutMatchTrim(const WeightedView& h, const Rational& phi, const Rational& w, int64_t gamma_krv,
                       uint64_t seed, const CutPlayerOptions& opts) {
  Require(w * phi * Rational(8) < Rational(1), ErrorKind::kInvalidArgument, "cut-match-trim needs w < 1/(8 phi)");
  CutMatchResult cm = CutOrCertify(h, phi, gamma_krv, seed, opts);
  CmtResult r;
  r.source_case = cm.kind;
  r.crossing_free = cm.crossing_free;
  if (cm.kind == CutMatchCase::kCertified) {
    r.kind = CmtKind::kSmallCut;
    r.a = cm.a;
    return r;
  }
  r.a = cm.a;
  r.a_bar = cm.a_bar;
  if (cm.kind == CutMatchCase::kBalanced || cm.crossing_free) {
    r.kind = CmtKind::kBalancedCut;
    return r;
  }
  TrimResult t = Trim(h, cm.a, phi);
  if (t.guarantee_void || t.kept.empty()) {
    // Trimming promises nothing here; the sparse cut itself still splits.
    r.kind = CmtKind::kBalancedCut;
    return r;
  }
  r.kind = CmtKind::kSmallCut;
  r.a = t.kept;
  r.a_bar = cm.a_bar;
  r.a_bar.insert(r.a_bar.end(), t.pruned.begin(), t.pruned.end());
  std::sort(r.a_bar.begin(), r.a_bar.end());
  return r;
}

Decomposition Decompose(const DynGraph& g, const std::vector<int>& u, const DecompConfig& cfg) {
  Decomposition d;
  d.parent = u;
  std::sort(d.parent.begin(), d.parent.end());
  Require(std::adjacent_find(d.parent.begin(), d.parent.end()) == d.parent.end(), ErrorKind::kInvalidArgument,
          "duplicate vertex in decomposed set");
  for (int v : d.parent) {
    if (!g.HasVertex(v)) Fail(ErrorKind::kNotFound, "vertex " + std::to_string(v) + " not in graph");
  }
  Require(cfg.phi > Rational(0) && cfg.phi < Rational(1, 2), ErrorKind::kInvalidArgument, "phi must lie in (0, 1/2)");
  Require(cfg.alpha > Rational(0), ErrorKind::kInvalidArgument, "alpha must be positive");
  d.alpha = cfg.alpha;
  d.phi = cfg.phi;
  d.m = std::max<int64_t>(VolumeIn(g, d.parent), 2);
  d.gamma_krv = cfg.gamma_krv > 0 ? cfg.gamma_krv : DefaultGammaKrv(d.m);
  Require(d.gamma_krv >= 8, ErrorKind::kInvalidArgument, "gamma_krv must be at least 8");
  const double log_m = Log2(d.m);
  const int64_t gamma_cmp = d.gamma_cmp();
  if (cfg.check_alpha) {
    double bound = 1.0 / (4.0 * gamma_cmp * log_m);
    if (cfg.alpha.ToDouble() > bound) {
      Fail(ErrorKind::kPrecondition, "alpha " + cfg.alpha.ToString() + " exceeds 1/(4 gamma_cmp log m) = " +
                                         std::to_string(bound) + "; try alpha " +
                                         MaxAdmissibleAlpha(d.m, d.gamma_krv).ToString());
    }
  }
  if (d.parent.empty()) return d;

  const int64_t phi_den_factor = static_cast<int64_t>(std::ceil(8.0 * gamma_cmp * log_m * log_m));
  const double theta3 = cfg.theta3_multiplier * gamma_cmp * std::pow(log_m, 4);
  const int max_rounds = static_cast<int>(std::ceil(log_m)) + 2;
  uint64_t calls = 0;

  std::vector<std::vector<int>> active{d.parent};
  while (!active.empty()) {
    if (++d.rounds > max_rounds) {
      Fail(ErrorKind::kInternal, "decomposition exceeded " + std::to_string(max_rounds) + " rounds");
    }
    int64_t out_sum = 0, vol_sum = 0;
    for (const auto& c : active) {
      out_sum += CountOut(g, c);
      vol_sum += VolumeIn(g, c);
    }
    Rational phi_hat = cfg.phi;
    if (vol_sum > 0) phi_hat = Max(Rational(out_sum, vol_sum) * Rational(1, phi_den_factor), cfg.phi);
    Rational w = cfg.alpha / phi_hat;
    Rational w_cap = Rational(1) / (Rational(8) * phi_hat);
    if (w >= w_cap) {
      w = w_cap * Rational(1023, 1024);
      ++d.w_clamps;
    }

    std::deque<std::vector<int>> queue(active.begin(), active.end());
    std::vector<std::vector<int>> certified;
    while (!queue.empty()) {
      std::vector<int> c = std::move(queue.front());
      queue.pop_front();
      if (c.size() == 1) {  // vacuously an expander
        certified.push_back(std::move(c));
        continue;
      }
      WeightedView h(g, c, w);
      std::vector<std::vector<int>> comps = h.Components();
      if (comps.size() > 1) {
        for (const auto& comp : comps) queue.push_back(ToGlobal(h, comp));
        continue;
      }
      CmtResult r = CutMatchTrim(h, phi_hat, w, d.gamma_krv, Mix(cfg.seed ^ Mix(++calls)), cfg.player);
      if (r.kind == CmtKind::kBalancedCut) {
        queue.push_back(ToGlobal(h, r.a));
        queue.push_back(ToGlobal(h, r.a_bar));
        continue;
      }
      if (!r.a_bar.empty()) queue.push_back(ToGlobal(h, r.a_bar));
      if (cfg.recheck_small && static_cast<int>(r.a.size()) <= cfg.player.exact_threshold) {
        WeightedView ha = WeightedView::Sub(h, r.a, w);
        SparsestCut sc = ExactSparsestCutSmall(ha);
        if (sc.bounded && sc.conductance < phi_hat) {
          // The certificate does not hold; split on the witness instead.
          ++d.rejected_certificates;
          std::vector<int> other;
          std::vector<char> in(ha.Size(), 0);
          for (int x : sc.side) in[x] = 1;
          for (int i = 0; i < ha.Size(); ++i) {
            if (!in[i]) other.push_back(i);
          }
          queue.push_back(ToGlobal(ha, sc.side));
          queue.push_back(ToGlobal(ha, other));
          continue;
        }
      }
      certified.push_back(ToGlobal(h, r.a));
    }

    active.clear();
    double phi_hat_d = phi_hat.ToDouble();
    for (auto& c : certified) {
      double limit = theta3 * phi_hat_d * static_cast<double>(VolumeIn(g, c));
      if (static_cast<double>(CountOut(g, c)) <= limit) {
        d.clusters.push_back({std::move(c), phi_hat});
      } else {
        active.push_back(std::move(c));
      }
    }
  }
  std::sort(d.clusters.begin(), d.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.members.front() < b.members.front(); });
  return d;
}

void WriteDecomposition(std::ostream& out, const Decomposition& d, int level) {
  for (size_t i = 0; i < d.clusters.size(); ++i) {
    if (level >= 0) out << "level " << level << ' ';
    out << "cluster " << i << " phi " << d.clusters[i].phi.num() << '/' << d.clusters[i].phi.den() << " members";
    for (int v : d.clusters[i].members) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace dynexp
