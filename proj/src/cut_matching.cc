#include "dynexp/cut_matching.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/max_flow.h"

namespace dynexp {

namespace {

constexpr int kEnumerationLimit = 20;

using i128 = __int128;

// cut <= ratio * den, with ratio = num/q
bool AtMost(int64_t cut, i128 num, i128 q, int64_t den) { return i128(cut) * q <= num * den; }

// Gray-code walk over all subsets of the given local vertices. f(in, cut,
// vol) sees the cut of the current subset against everything else in h.
// With skip_last the last vertex never enters the subset.
template <typename F>
void WalkSubsets(const WeightedView& h, const std::vector<int>& verts, bool skip_last, F&& f) {
  int k = static_cast<int>(verts.size()) - (skip_last ? 1 : 0);
  if (k <= 0) return;
  std::vector<char> in(h.Size(), 0);
  int64_t cut = 0, vol = 0;
  uint64_t total = uint64_t{1} << k;
  for (uint64_t i = 1; i < total; ++i) {
    int x = verts[__builtin_ctzll(i)];
    int64_t delta = 0;
    for (const Arc& a : h.Neighbors(x)) delta += in[a.to] ? -a.mult : a.mult;
    if (in[x]) {
      in[x] = 0;
      cut -= delta;
      vol -= h.Degree(x);
    } else {
      in[x] = 1;
      cut += delta;
      vol += h.Degree(x);
    }
    f(in, cut, vol);
  }
}

std::vector<int> Members(const std::vector<char>& in) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(in.size()); ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;
}

std::vector<int> Complement(int n, const std::vector<int>& side) {
  std::vector<char> in(n, 0);
  for (int x : side) in[x] = 1;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

void OrientAndClassify(const WeightedView& h, std::vector<int> side, int64_t gamma, CutMatchResult& r) {
  int64_t vs = h.Volume(side);
  std::vector<int> other = Complement(h.Size(), side);
  if (vs > h.Volume() - vs) std::swap(side, other);
  // side is now the smaller-volume part.
  int64_t small = h.Volume(side);
  std::vector<char> mask(h.Size(), 0);
  for (int x : side) mask[x] = 1;
  r.cut = h.Cut(mask);
  r.a = std::move(other);
  r.a_bar = std::move(side);
  r.kind = i128(small) * 100 * gamma >= i128(h.Volume()) ? CutMatchCase::kBalanced : CutMatchCase::kUnbalanced;
}

// Every S inside a with vol(S) <= vol(a)/2 has cut_h(S) >= 8 phi vol(S).
bool NearExpander(const WeightedView& h, const std::vector<int>& a, const Rational& phi) {
  int64_t vol_a = h.Volume(a);
  bool ok = true;
  i128 num = i128(8) * phi.num(), q = phi.den();
  WalkSubsets(h, a, false, [&](const std::vector<char>&, int64_t cut, int64_t vol) {
    if (!ok || 2 * vol > vol_a) return;
    if (i128(cut) * q < num * vol) ok = false;
  });
  return ok;
}

CutMatchResult ExactPlayer(const WeightedView& h, const Rational& phi, int64_t gamma) {
  int n = h.Size();
  int64_t vol = h.Volume();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  i128 q = phi.den();
  i128 eight = i128(8) * phi.num();
  i128 sparse = i128(gamma) * phi.num();
  bool certified = true;
  // Case 2 takes the sparsest balanced cut; Case 3 needs the sparse cut of
  // largest small side, which is unbalanced exactly when no balanced one exists.
  int64_t best_minvol = -1;
  std::vector<char> best_side;
  int64_t bal_cut = 0, bal_minvol = 0;
  std::vector<char> bal_side;
  WalkSubsets(h, all, true, [&](const std::vector<char>& in, int64_t cut, int64_t vs) {
    int64_t minvol = std::min(vs, vol - vs);
    if (minvol <= 0) return;
    if (i128(cut) * q < eight * minvol) certified = false;
    if (!AtMost(cut, sparse, q, minvol)) return;
    if (minvol > best_minvol) {
      best_minvol = minvol;
      best_side = in;
    }
    bool balanced = i128(minvol) * 100 * gamma >= vol;
    if (balanced && (bal_side.empty() || i128(cut) * bal_minvol < i128(bal_cut) * minvol)) {
      bal_cut = cut;
      bal_minvol = minvol;
      bal_side = in;
    }
  });
  CutMatchResult r;
  r.exact = true;
  if (certified) {
    r.kind = CutMatchCase::kCertified;
    r.a = all;
    return r;
  }
  if (!bal_side.empty()) {
    OrientAndClassify(h, Members(bal_side), gamma, r);
    return r;
  }
  OrientAndClassify(h, Members(best_side), gamma, r);
  if (r.kind == CutMatchCase::kUnbalanced && !NearExpander(h, r.a, phi)) {
    Fail(ErrorKind::kInternal, "exact cut player: maximal sparse cut leaves a non near-expander");
  }
  return r;
}

double Gaussian(Rng& rng) {
  double u1 = UniformReal(rng), u2 = UniformReal(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

struct MatchPair {
  int a;
  int b;
  double weight;
};

// Cut-matching game: a random projection of the mixing embedding splits the
// remaining vertices, and a flow with edge capacity 1/phi either matches the
// halves (added to the embedding) or exposes a sparse cut that is removed.
CutMatchResult RandomizedPlayer(const WeightedView& h, const Rational& phi, int64_t gamma, uint64_t seed,
                                const CutPlayerOptions& opts) {
  int n = h.Size();
  int64_t vol = h.Volume();
  double log_m = std::log2(static_cast<double>(std::max<int64_t>(vol, 2)));
  int rounds = std::max(1, static_cast<int>(std::ceil(opts.gamma0 * log_m * log_m)));
  Rng rng(seed);
  std::vector<char> alive(n, 1);
  std::vector<std::vector<MatchPair>> matchings;
  std::vector<std::vector<int>> removed;  // cuts found, in order
  int64_t removed_vol = 0;
  const int64_t p = phi.num(), q = phi.den();
  int played = 0;
  std::vector<double> x(n);
  for (int round = 0; round < rounds; ++round) {
    std::vector<int> live;
    for (int i = 0; i < n; ++i) {
      if (alive[i]) live.push_back(i);
    }
    if (live.size() < 2) break;
    ++played;
    for (int i = 0; i < n; ++i) x[i] = Gaussian(rng);
    for (const auto& m : matchings) {
      for (const MatchPair& e : m) {
        double xa = x[e.a], xb = x[e.b];
        x[e.a] = xa + e.weight / (2.0 * h.Degree(e.a)) * (xb - xa);
        x[e.b] = xb + e.weight / (2.0 * h.Degree(e.b)) * (xa - xb);
      }
    }
    std::stable_sort(live.begin(), live.end(), [&](int a, int b) { return x[a] < x[b]; });
    int64_t live_vol = 0;
    for (int v : live) live_vol += h.Degree(v);
    std::vector<char> source(n, 0);
    int64_t acc = 0;
    for (size_t i = 0; i + 1 < live.size(); ++i) {
      if (i > 0 && 2 * (acc + h.Degree(live[i])) > live_vol) break;
      source[live[i]] = 1;
      acc += h.Degree(live[i]);
    }
    int s = n, t = n + 1;
    MaxFlow net(n + 2);
    std::vector<int> supply_arc(n, -1), sink_arc(n, -1);
    std::vector<std::vector<std::pair<int, int>>> edge_arcs(n);
    for (int v : live) {
      for (const Arc& a : h.Neighbors(v)) {
        if (a.to > v && alive[a.to]) {
          int id = net.AddArc(v, a.to, q * a.mult, q * a.mult);
          edge_arcs[v].push_back({id, a.to});
          edge_arcs[a.to].push_back({id ^ 1, v});
        }
      }
      if (source[v]) supply_arc[v] = net.AddArc(s, v, p * h.Degree(v));
      else sink_arc[v] = net.AddArc(v, t, p * h.Degree(v));
    }
    int64_t flow = net.Run(s, t);
    if (flow == p * acc) {
      // Decompose the flow into source-sink paths to form the matching.
      std::vector<int64_t> left_sink(n, 0);
      std::unordered_map<int, int64_t> arc_left;
      for (int v : live) {
        if (sink_arc[v] >= 0) left_sink[v] = net.Flow(sink_arc[v]);
        for (auto [id, to] : edge_arcs[v]) {
          int64_t f = (id & 1) ? -net.Flow(id ^ 1) : net.Flow(id);
          if (f > 0) arc_left[id] = f;
        }
      }
      std::vector<MatchPair> matching;
      for (int v : live) {
        if (!source[v]) continue;
        int64_t supply = net.Flow(supply_arc[v]);
        int guard = 0;
        while (supply > 0 && guard++ < 4 * n) {
          std::vector<int> path_arcs;
          int y = v;
          int64_t amt = supply;
          std::vector<char> on_path(n, 0);
          on_path[v] = 1;
          while (left_sink[y] == 0) {
            int chosen = -1;
            for (auto [id, to] : edge_arcs[y]) {
              auto it = arc_left.find(id);
              if (it != arc_left.end() && it->second > 0 && !on_path[to]) {
                chosen = id;
                amt = std::min(amt, it->second);
                y = to;
                break;
              }
            }
            if (chosen < 0) break;
            on_path[y] = 1;
            path_arcs.push_back(chosen);
          }
          if (left_sink[y] == 0) break;
          amt = std::min(amt, left_sink[y]);
          for (int id : path_arcs) arc_left[id] -= amt;
          left_sink[y] -= amt;
          supply -= amt;
          matching.push_back({v, y, static_cast<double>(amt) / p});
        }
      }
      matchings.push_back(std::move(matching));
      continue;
    }
    std::vector<char> reach = net.SourceSide(s);
    std::vector<int> cut_side;
    for (int v : live) {
      if (reach[v]) cut_side.push_back(v);
    }
    for (int v : cut_side) {
      alive[v] = 0;
      removed_vol += h.Degree(v);
    }
    removed.push_back(std::move(cut_side));
    if (i128(removed_vol) * 100 * gamma >= vol) break;
  }

  CutMatchResult r;
  r.rounds = played;
  if (removed.empty()) {
    r.kind = CutMatchCase::kCertified;
    r.a.resize(n);
    std::iota(r.a.begin(), r.a.end(), 0);
    return r;
  }
  // Use the largest prefix union of removed cuts that passes its checks.
  std::vector<std::vector<int>> prefixes;
  std::vector<int> acc;
  for (const auto& c : removed) {
    acc.insert(acc.end(), c.begin(), c.end());
    prefixes.push_back(acc);
  }
  for (int k = static_cast<int>(prefixes.size()) - 1; k >= 0; --k) {
    CutMatchResult cand;
    cand.rounds = played;
    std::vector<int> side = prefixes[k];
    std::sort(side.begin(), side.end());
    OrientAndClassify(h, side, gamma, cand);
    if (CaseInequalitiesHold(h, cand, phi, gamma)) return cand;
  }
  Fail(ErrorKind::kInternal, "randomized cut player produced no valid cut");
}

}  // namespace

SparsestCut ExactSparsestCutSmall(const WeightedView& h) {
  int n = h.Size();
  if (n > kEnumerationLimit) {
    Fail(ErrorKind::kTooLarge, "view has " + std::to_string(n) + " vertices; use the randomized cut player");
  }
  SparsestCut best;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  int64_t vol = h.Volume();
  WalkSubsets(h, all, true, [&](const std::vector<char>& in, int64_t cut, int64_t vs) {
    int64_t minvol = std::min(vs, vol - vs);
    if (minvol <= 0) return;
    if (!best.bounded || i128(cut) * best.min_volume < i128(best.cut) * minvol) {
      best.bounded = true;
      best.cut = cut;
      best.min_volume = minvol;
      best.side = Members(in);
    }
  });
  if (best.bounded) best.conductance = Rational(best.cut, best.min_volume);
  return best;
}

CutMatchResult CutOrCertify(const WeightedView& h, const Rational& phi, int64_t gamma_krv, uint64_t seed,
                            const CutPlayerOptions& opts) {
  Require(phi > Rational(0) && phi < Rational(1, 2), ErrorKind::kInvalidArgument, "phi must lie in (0, 1/2)");
  Require(gamma_krv >= 8, ErrorKind::kInvalidArgument, "gamma_krv must be at least 8");
  int n = h.Size();
  CutMatchResult r;
  if (n <= 1) {
    r.exact = true;
    r.a.resize(n);
    std::iota(r.a.begin(), r.a.end(), 0);
    return r;
  }
  std::vector<std::vector<int>> comps = h.Components();
  if (comps.size() > 1) {
    // Split off everything but the component of largest volume.
    size_t keep = 0;
    for (size_t i = 1; i < comps.size(); ++i) {
      if (h.Volume(comps[i]) > h.Volume(comps[keep])) keep = i;
    }
    std::vector<int> rest;
    for (size_t i = 0; i < comps.size(); ++i) {
      if (i != keep) rest.insert(rest.end(), comps[i].begin(), comps[i].end());
    }
    std::sort(rest.begin(), rest.end());
    r.exact = true;
    r.crossing_free = true;
    r.a = comps[keep];
    r.a_bar = rest;
    r.cut = 0;
    int64_t small = std::min(h.Volume(r.a), h.Volume(r.a_bar));
    r.kind = i128(small) * 100 * gamma_krv >= h.Volume() ? CutMatchCase::kBalanced : CutMatchCase::kUnbalanced;
    return r;
  }
  if (n <= std::min(opts.exact_threshold, kEnumerationLimit)) return ExactPlayer(h, phi, gamma_krv);
  return RandomizedPlayer(h, phi, gamma_krv, seed, opts);
}

bool CaseInequalitiesHold(const WeightedView& h, const CutMatchResult& r, const Rational& phi, int64_t gamma_krv) {
  if (r.kind == CutMatchCase::kCertified) return r.a_bar.empty();
  if (r.a.empty() || r.a_bar.empty()) return false;
  std::vector<char> mask(h.Size(), 0);
  for (int x : r.a_bar) mask[x] = 1;
  int64_t cut = h.Cut(mask);
  int64_t va = h.Volume(r.a), vb = h.Volume(r.a_bar);
  int64_t minvol = std::min(va, vb);
  int64_t vol = h.Volume();
  bool sparse = i128(cut) * phi.den() <= i128(gamma_krv) * phi.num() * minvol;
  if (r.kind == CutMatchCase::kBalanced) {
    return sparse && i128(va) * 100 * gamma_krv >= vol && i128(vb) * 100 * gamma_krv >= vol;
  }
  return sparse && i128(vb) * 100 * gamma_krv <= vol;
}

}  // namespace dynexp
