#include "dynexp/battery.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "dynexp/apps.h"
#include "dynexp/decomposition.h"
#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/hierarchy.h"
#include "dynexp/inc_flow.h"
#include "dynexp/pruner.h"

namespace dynexp::battery {

namespace {

using oracle::Check;
using oracle::Status;
using oracle::VerificationReport;

// Counts instances and violations of one property; keeps the first witness.
class Tally {
 public:
  Tally(std::string name, std::string threshold) : name_(std::move(name)), threshold_(std::move(threshold)) {}
  void Instance() { ++instances_; }
  void Violation(nlohmann::json witness) {
    if (violations_++ == 0) witness_ = std::move(witness);
  }
  void Expect(bool ok, const std::function<nlohmann::json()>& witness) {
    ++checks_;
    if (!ok) Violation(witness());
  }
  int64_t violations() const { return violations_; }
  Check Done(const std::string& extra = "") const {
    Check c(name_);
    c.status = violations_ == 0 ? Status::kPass : Status::kFail;
    std::ostringstream m;
    m << "violations " << violations_ << " instances " << instances_ << " checks " << checks_;
    if (!extra.empty()) m << ' ' << extra;
    c.measured = m.str();
    c.threshold = threshold_;
    c.witness = witness_;
    return c;
  }

 private:
  std::string name_, threshold_;
  int64_t instances_ = 0, violations_ = 0, checks_ = 0;
  nlohmann::json witness_;
};

int Count(const Options& o, int base) { return std::max(1, base * o.scale_percent / 100); }

Rng RngFor(const Options& o, uint64_t salt) { return Rng(o.seed * 0x9e3779b97f4a7c15ULL + salt); }

std::vector<int> Range(int lo, int hi) {
  std::vector<int> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

nlohmann::json EdgeList(const DynGraph& g) {
  nlohmann::json out = nlohmann::json::array();
  g.ForEachEdge([&](const Edge& e) { out.push_back({e.u, e.v}); });
  return out;
}

std::string Fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Hierarchy StaticHierarchy(const DynGraph& g, const Rational& phi) {
  HierarchyConfig cfg;
  int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
  cfg.decomp.alpha = MaxAdmissibleAlpha(m, DefaultGammaKrv(m));
  cfg.decomp.phi = phi;
  return BuildStaticHierarchy(g, cfg);
}

std::vector<int> NodesOf(const CapTree& t, const std::vector<int>& vertices) {
  std::vector<int> out;
  for (int v : vertices) out.push_back(t.LeafNode(v));
  return out;
}

// vol of P in G[U]^w, read off the graph directly.
int64_t VolumeInView(const DynGraph& g, const std::vector<char>& in_u, const std::vector<int>& p, int64_t ceil_w) {
  int64_t vol = 0;
  for (int v : p) {
    g.ForEachIncident(v, [&](const Edge& e) { vol += (e.IsLoop() || in_u[e.Other(v)]) ? 1 : ceil_w; });
  }
  return vol;
}

}  // namespace

VerificationReport IncFlowBattery(const Options& o) {
  Rng rng = RngFor(o, 1);
  Tally vol("incflow.volume", "vol(P) <= 2 sum(Delta)");
  Tally cut("incflow.boundary", "|E(P, V \\ P)| <= 2 sum(Delta) / c");
  Tally feas("incflow.residual_feasible", "certificate and independent max-flow both feasible");
  Tally mono("incflow.monotone", "P only grows");
  int injections = 0;
  for (int trial = 0; trial < Count(o, 200); ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 40));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, n, 3 * n)));
    int64_t c = UniformInt(rng, 1, 8);
    IncFlow f(WeightedView(g, g.Vertices(), Rational(1)), c, 1);
    int64_t vol_g = g.Volume(g.Vertices());
    std::vector<int64_t> injected(n, 0);
    std::vector<char> before(n, 0);
    int64_t total = 0;
    for (Tally* t : {&vol, &cut, &feas, &mono}) t->Instance();
    while (true) {
      int v = static_cast<int>(UniformInt(rng, 0, n - 1));
      int64_t amount = UniformInt(rng, 1, 4);
      if (3 * (total + amount) > vol_g) break;
      total += amount;
      injected[v] += amount;
      f.Inject(v, amount);
      ++injections;
      std::vector<char> pruned(n, 0);
      std::vector<int> p;
      for (int x = 0; x < n; ++x) {
        if (f.IsPruned(x)) {
          pruned[x] = 1;
          p.push_back(x);
        }
      }
      auto witness = [&] { return nlohmann::json{{"trial", trial}, {"c", c}, {"pruned", p}, {"sum_delta", total}}; };
      bool grew = true;
      for (int x = 0; x < n; ++x) grew = grew && (!before[x] || pruned[x]);
      mono.Expect(grew, witness);
      before = pruned;
      vol.Expect(g.Volume(p) <= 2 * total, witness);
      cut.Expect(c * CountOut(g, p) <= 2 * total, witness);
      feas.Expect(f.CertifyResidualFeasible().feasible && oracle::ResidualFeasible(g, pruned, injected, c, 1),
                  witness);
    }
  }
  VerificationReport r;
  r.Add(vol.Done("injections " + std::to_string(injections)));
  r.Add(cut.Done());
  r.Add(feas.Done());
  r.Add(mono.Done());
  return r;
}

VerificationReport TrimBattery(const Options& o) {
  Rng rng = RngFor(o, 2);
  Tally vol("trimming.volume", "vol(P) <= 4 |E(A, A-bar)| / phi");
  Tally bnd("trimming.boundary", "|E(A', A'-bar)| <= 2 |E(A, A-bar)|");
  int resampled = 0, pruned_nonempty = 0;
  for (int trial = 0; trial < Count(o, 100); ++trial) {
    // A dense set A = 0..k-1 with a few boundary edges, kept only when it is
    // a near 8 phi-expander with sum(Delta) inside the flow lemma's range.
    DynGraph g;
    int k = 0;
    Rational phi;
    std::vector<int> a;
    while (true) {
      k = static_cast<int>(UniformInt(rng, 4, 12));
      int outside = static_cast<int>(UniformInt(rng, 2, 6));
      g = DynGraph(k + outside);
      int inner = static_cast<int>(UniformInt(rng, 4, 50)) * k;
      for (int i = 0; i < inner; ++i) {
        int x = static_cast<int>(UniformInt(rng, 0, k - 1));
        int y = static_cast<int>(UniformInt(rng, 0, k - 2));
        g.InsertEdge(x, y >= x ? y + 1 : y);
      }
      for (int i = 0; i < outside; ++i) {
        g.InsertEdge(static_cast<int>(UniformInt(rng, k, k + outside - 1)),
                     static_cast<int>(UniformInt(rng, k, k + outside - 1)));
      }
      int border = static_cast<int>(UniformInt(rng, 1, std::max(1, k / 2)));
      for (int i = 0; i < border; ++i) {
        g.InsertEdge(static_cast<int>(UniformInt(rng, 0, k - 1)),
                     static_cast<int>(UniformInt(rng, k, k + outside - 1)));
      }
      // Satellites of A: one or two edges into A, several out of it. These
      // are what trimming has to cut off.
      int satellites = static_cast<int>(UniformInt(rng, 0, 2));
      for (int s = 0; s < satellites; ++s) {
        int x = g.AddVertex();
        for (int64_t i = UniformInt(rng, 1, 2); i > 0; --i) g.InsertEdge(x, static_cast<int>(UniformInt(rng, 0, k - 1)));
        int out = static_cast<int>(UniformInt(rng, 3, 5));
        for (int i = 0; i < out; ++i) g.InsertEdge(x, static_cast<int>(UniformInt(rng, k, k + outside - 1)));
        border += out;
      }
      a = Range(0, k);
      for (int x = k + outside; x < g.NumVertexSlots(); ++x) a.push_back(x);
      oracle::ConductanceResult x = oracle::NearExpansion(g, a);
      if (x.bounded && x.value > Rational(0)) {
        int64_t q = std::max<int64_t>(3, (Rational(8) / x.value).Ceil());
        phi = Rational(1, q);
        if (6 * q * border <= g.Volume(a)) break;
      }
      ++resampled;
    }
    vol.Instance();
    bnd.Instance();
    auto witness = [&] { return nlohmann::json{{"trial", trial}, {"phi", phi.ToString()}, {"edges", EdgeList(g)}}; };
    try {
      TrimResult t = Trim(WeightedView(g, g.Vertices(), Rational(1)), a, phi);
      int64_t before = CountOut(g, a);
      vol.Expect(!t.guarantee_void && Rational(g.Volume(t.pruned)) <= Rational(4 * before) / phi, witness);
      bnd.Expect(CountOut(g, t.kept) <= 2 * before, witness);
      pruned_nonempty += !t.pruned.empty();
    } catch (const Error& e) {
      vol.Violation({{"trial", trial}, {"error", e.what()}});
    }
  }
  VerificationReport r;
  r.Add(vol.Done("resampled " + std::to_string(resampled) + " nonempty_prunes " + std::to_string(pruned_nonempty)));
  r.Add(bnd.Done());
  return r;
}

VerificationReport DecompBattery(const Options& o) {
  Rng rng = RngFor(o, 3);
  Tally props("decomposition.properties", "properties 1-3 with C_1 = 16 gamma_cmp, Theta_3 = 80 gamma_cmp log^4 m");
  Tally rounds("decomposition.rounds", "rounds <= ceil(log2 m) + 2");
  int max_rounds = 0, clusters = 0;
  const Rational phis[] = {Rational(1, 8), Rational(1, 16), Rational(1, 64)};
  for (int trial = 0; trial < Count(o, 200); ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 24));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 0, 60)));
    DecompConfig cfg;
    int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
    cfg.alpha = MaxAdmissibleAlpha(m, DefaultGammaKrv(m));
    cfg.phi = phis[UniformInt(rng, 0, 2)];
    cfg.seed = static_cast<uint64_t>(trial) + o.seed;
    props.Instance();
    rounds.Instance();
    auto witness = [&] { return nlohmann::json{{"trial", trial}, {"phi", cfg.phi.ToString()}, {"edges", EdgeList(g)}}; };
    try {
      Decomposition d = Decompose(g, g.Vertices(), cfg);
      VerificationReport rep = oracle::VerifyDecomposition(g, g.Vertices(), d);
      props.Expect(rep.AllPass(), [&] {
        nlohmann::json w = witness();
        w["report"] = rep.ToJson();
        return w;
      });
      int cap = static_cast<int>(std::ceil(std::log2(static_cast<double>(d.m)))) + 2;
      rounds.Expect(d.rounds <= cap, witness);
      max_rounds = std::max(max_rounds, d.rounds);
      clusters += static_cast<int>(d.clusters.size());
    } catch (const Error& e) {
      props.Violation({{"trial", trial}, {"error", e.what()}});
    }
  }
  VerificationReport r;
  r.Add(props.Done("clusters " + std::to_string(clusters)));
  r.Add(rounds.Done("max_rounds " + std::to_string(max_rounds)));
  return r;
}

VerificationReport PruneBattery(const Options& o) {
  Rng rng = RngFor(o, 4);
  Tally mono("prune.monotone", "P_{i-1} within P_i");
  Tally vol("prune.volume_and_inner", "vol_{G[U]^w}(P_i) <= 32 i / phi and |E(P_i, U \\ P_i)| <= 16 i");
  Tally outer("prune.outer", "|E(P_i, V \\ U)| <= 16 i / alpha");
  Tally expander("prune.expansion", "G_i[U \\ P_i]^w is a phi/38-expander (exhaustive)");
  int64_t updates = 0, max_pruned = 0;
  for (int trial = 0; trial < Count(o, 100); ++trial) {
    int k = 0;
    DynGraph g;
    Rational phi, w(1);
    bool satellite = false;
    while (true) {
      k = static_cast<int>(UniformInt(rng, 6, 14));
      g = DynGraph(k + 4);
      int inner = static_cast<int>(UniformInt(rng, 30, 40)) * k;
      for (int i = 0; i < inner; ++i) {
        int a = static_cast<int>(UniformInt(rng, 0, k - 1));
        int b = static_cast<int>(UniformInt(rng, 0, k - 2));
        g.InsertEdge(a, b >= a ? b + 1 : b);
      }
      int border = static_cast<int>(UniformInt(rng, 2, 12));
      for (int i = 0; i < border; ++i) {
        g.InsertEdge(static_cast<int>(UniformInt(rng, 0, k - 1)), static_cast<int>(UniformInt(rng, k, k + 3)));
      }
      // Half the clusters get a satellite k-1 hanging on a few edges, which
      // the update sequence below tends to cut loose.
      satellite = UniformInt(rng, 0, 1) == 1;
      if (satellite) {
        std::vector<Edge> edges = g.Edges();
        for (const Edge& e : edges) {
          if (e.u == k - 1 || e.v == k - 1) g.DeleteEdge(e.u, e.v);
        }
        for (int64_t i = UniformInt(rng, 2, 4); i > 0; --i) {
          g.InsertEdge(k - 1, static_cast<int>(UniformInt(rng, 0, k - 2)));
        }
        g.InsertEdge(k - 1, static_cast<int>(UniformInt(rng, k, k + 3)));
      }
      w = Rational(UniformInt(rng, 1, 2));
      oracle::ConductanceResult c = oracle::BruteConductance(g, Range(0, k), w);
      if (!c.bounded || c.value == Rational(0)) continue;
      // Largest 1/q not above the conductance, at most 1/2.
      phi = Min(Rational(1, c.value.den() / c.value.num() + 1), Rational(1, 2));
      if (Rational(w.Ceil()) <= Rational(3) / (Rational(5) * phi)) break;
    }
    Rational alpha = phi;  // alpha/phi = 1 <= w
    const DynGraph g0 = g;
    std::vector<int> u = Range(0, k);
    std::vector<char> in_u = MaskOf(g0.NumVertexSlots(), u);
    Pruner p(g, u, alpha, phi, w);
    for (Tally* t : {&mono, &vol, &outer, &expander}) t->Instance();
    std::vector<int> prev;
    nlohmann::json ops = nlohmann::json::array();
    for (int64_t i = 1; i <= p.budget(); ++i) {
      int a = static_cast<int>(UniformInt(rng, 0, k - 1));
      int b = static_cast<int>(UniformInt(rng, 0, k + 3));
      if (satellite && UniformInt(rng, 0, 1) == 1) {
        // Strip the satellite's edges into U.
        a = k - 1;
        for (int x = 0; x < k - 1; ++x) {
          if (g.Multiplicity(a, x) > 0) b = x;
        }
      }
      bool del = UniformInt(rng, 0, 1) == 0 && g.Multiplicity(a, b) > 0;
      if (a == k - 1 && satellite && b < k - 1 && g.Multiplicity(a, b) > 0) del = true;
      if (del) {
        g.DeleteEdge(a, b);
      } else {
        g.InsertEdge(a, b);
      }
      ops.push_back({del ? "D" : "I", a, b});
      ++updates;
      Pruner::Step st = p.Apply(a, b);
      std::vector<int> pr = p.PrunedSet();
      max_pruned = std::max<int64_t>(max_pruned, static_cast<int64_t>(pr.size()));
      auto witness = [&] {
        return nlohmann::json{{"trial", trial}, {"step", i}, {"phi", phi.ToString()}, {"w", w.ToString()},
                              {"pruned", pr}, {"ops", ops}, {"initial_edges", EdgeList(g0)}};
      };
      mono.Expect(!st.expired && std::includes(pr.begin(), pr.end(), prev.begin(), prev.end()), witness);
      prev = pr;
      std::vector<int> rest;
      std::set_difference(u.begin(), u.end(), pr.begin(), pr.end(), std::back_inserter(rest));
      std::vector<char> in_p = MaskOf(g0.NumVertexSlots(), pr);
      int64_t inner_cut = CountEdgesBetween(g0, in_p, MaskOf(g0.NumVertexSlots(), rest));
      int64_t border_cut = CountEdgesBetween(g0, in_p, MaskOf(g0.NumVertexSlots(), Range(k, k + 4)));
      vol.Expect(Rational(VolumeInView(g0, in_u, pr, w.Ceil())) <= Rational(32 * i) / phi && inner_cut <= 16 * i,
                 witness);
      outer.Expect(Rational(border_cut) <= Rational(16 * i) / alpha, witness);
      if (!rest.empty() && rest.size() <= 16) {
        oracle::ExpanderCheck ex = oracle::CheckWeightedExpander(g, rest, w, phi / Rational(38));
        expander.Expect(ex.ok, [&] {
          nlohmann::json j = witness();
          j["cut_side"] = ex.witness;
          return j;
        });
      }
    }
  }
  VerificationReport r;
  r.Add(mono.Done("updates " + std::to_string(updates) + " max_pruned " + std::to_string(max_pruned)));
  r.Add(vol.Done());
  r.Add(outer.Done());
  r.Add(expander.Done());
  return r;
}

VerificationReport SparsifierBattery(const Options& o) {
  Rng rng = RngFor(o, 5);
  Tally one("sparsifier.one_sided", "mincut_T(A,B) >= mincut_G(A,B)");
  Tally ceiling("sparsifier.ratio", "mincut_T / mincut_G <= " + Fmt(o.ratio_ceiling));
  Tally dp("sparsifier.tree_mincut", "tree dynamic program equals max-flow on the tree");
  double max_ratio = 1.0;
  for (int trial = 0; trial < Count(o, 100); ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 20));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 1, 4 * n)));
    CapTree t = CapTree::Build(StaticHierarchy(g, o.phi));
    for (Tally* x : {&one, &ceiling, &dp}) x->Instance();
    for (int pair = 0; pair < 50; ++pair) {
      std::vector<int> order = Range(0, n);
      for (int i = n - 1; i > 0; --i) std::swap(order[i], order[UniformInt(rng, 0, i)]);
      int sa = static_cast<int>(UniformInt(rng, 1, n - 1));
      int sb = static_cast<int>(UniformInt(rng, 1, n - sa));
      std::vector<int> a(order.begin(), order.begin() + sa);
      std::vector<int> b(order.begin() + sa, order.begin() + sa + sb);
      int64_t cut_g = oracle::ExactMincutSets(g, a, b).value;
      int64_t cut_t = TreeMincutSets(t, a, b);
      auto witness = [&] {
        return nlohmann::json{{"trial", trial}, {"a", a}, {"b", b}, {"mincut_g", cut_g}, {"mincut_t", cut_t},
                              {"edges", EdgeList(g)}};
      };
      one.Expect(cut_t >= cut_g, witness);
      dp.Expect(cut_t == oracle::TreeMincutByFlow(t.Parents(), t.Capacities(), NodesOf(t, a), NodesOf(t, b)),
                witness);
      double ratio = cut_g > 0 ? static_cast<double>(cut_t) / static_cast<double>(cut_g)
                               : (cut_t > 0 ? std::numeric_limits<double>::infinity() : 1.0);
      max_ratio = std::max(max_ratio, ratio);
      ceiling.Expect(ratio <= o.ratio_ceiling, witness);
    }
  }
  VerificationReport r;
  r.Add(one.Done());
  r.Add(ceiling.Done("max_ratio " + Fmt(max_ratio)));
  r.Add(dp.Done());
  return r;
}

VerificationReport TreeQueryBattery(const Options& o) {
  Rng rng = RngFor(o, 6);
  Tally st("tree.st_cut", "st_cut_estimate >= exact s-t mincut");
  Tally sparse("tree.sparsest_cut", "tree_sparsest_cut equals brute force over tree edges");
  Tally multi("tree.multiway_cut", "tree_multiway_cut equals exhaustive edge-subset search");
  int st_pairs = 0, multi_audited = 0;
  for (int trial = 0; trial < Count(o, 100); ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 20));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 1, 3 * n)));
    CapTree t = CapTree::Build(StaticHierarchy(g, o.phi));
    for (Tally* x : {&st, &sparse, &multi}) x->Instance();
    for (int pair = 0; pair < 30; ++pair) {
      int s = static_cast<int>(UniformInt(rng, 0, n - 1));
      int u = static_cast<int>(UniformInt(rng, 0, n - 2));
      if (u >= s) ++u;
      int64_t est = StCutEstimate(t, s, u);
      int64_t exact = oracle::ExactMincutSets(g, {s}, {u}).value;
      st.Expect(est >= exact, [&] {
        return nlohmann::json{{"trial", trial}, {"s", s}, {"t", u}, {"estimate", est}, {"exact", exact}};
      });
      ++st_pairs;
    }
    std::vector<char> leaf;
    for (const CapNode& x : t.nodes()) leaf.push_back(x.level == 0);
    Rational want = oracle::BruteTreeSparsestCut(t.Parents(), t.Capacities(), leaf);
    Rational got = TreeSparsestCut(t).sparsity;
    sparse.Expect(got == want, [&] {
      return nlohmann::json{{"trial", trial}, {"got", got.ToString()}, {"brute", want.ToString()}};
    });
    // Multiway cuts on terminal subtrees small enough to enumerate.
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<int> order = Range(0, n);
      for (int i = n - 1; i > 0; --i) std::swap(order[i], order[UniformInt(rng, 0, i)]);
      int k = static_cast<int>(UniformInt(rng, 2, std::min(n, 5)));
      std::vector<int> term(order.begin(), order.begin() + k);
      CapTree sub = VertexSparsifier(t, term);
      if (sub.NumNodes() - static_cast<int>(sub.Roots().size()) > 12) continue;
      MultiwayCut full = TreeMultiwayCut(t, term);
      MultiwayCut small = TreeMultiwayCut(sub, term);
      int64_t brute = oracle::BruteTreeMultiwayCut(sub.Parents(), sub.Capacities(), NodesOf(sub, term));
      multi.Expect(small.value == brute && full.value == brute, [&] {
        return nlohmann::json{{"trial", trial}, {"terminals", term}, {"dp", small.value}, {"full_tree", full.value},
                              {"brute", brute}};
      });
      ++multi_audited;
    }
  }
  VerificationReport r;
  r.Add(st.Done("pairs " + std::to_string(st_pairs)));
  r.Add(sparse.Done());
  r.Add(multi.Done("audited " + std::to_string(multi_audited)));
  return r;
}

VerificationReport TreewidthBattery(const Options& o) {
  Rng rng = RngFor(o, 7);
  Tally valid("treewidth.axioms", "edge coverage and connected occurrences");
  int max_width = 0, exact_runs = 0, max_gap = 0;
  double ratio_sum = 0;
  for (int trial = 0; trial < Count(o, 100); ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 30));
    DynGraph g = RandomBoundedDegree(rng, n, 4, 3 * n);
    Hierarchy h = StaticHierarchy(g, o.phi);
    CapTree t = CapTree::Build(h);
    std::vector<std::vector<int>> bags = TreewidthBags(h);
    oracle::VerificationReport rep = oracle::VerifyTreeDecomposition(g, t.Parents(), bags);
    valid.Instance();
    valid.Expect(rep.AllPass(), [&] {
      return nlohmann::json{{"trial", trial}, {"edges", EdgeList(g)}, {"report", rep.ToJson()}};
    });
    int width = 0;
    for (const auto& b : bags) width = std::max(width, static_cast<int>(b.size()) - 1);
    max_width = std::max(max_width, width);
    if (n <= 10) {
      int tw = oracle::ExactTreewidth(g);
      ++exact_runs;
      max_gap = std::max(max_gap, width - tw);
      ratio_sum += static_cast<double>(width + 1) / (tw + 1);
    }
  }
  VerificationReport r;
  r.Add(valid.Done("max_width " + std::to_string(max_width) + " exact_compared " + std::to_string(exact_runs) +
                   " max_width_minus_tw " + std::to_string(max_gap) + " mean_bag_ratio " +
                   Fmt(exact_runs ? ratio_sum / exact_runs : 0.0)));
  return r;
}

namespace {

bool LevelsConsistent(const DynHierarchy& h, VerificationReport& rep) {
  for (int i = 0; i < h.depth(); ++i) {
    rep.Merge(oracle::VerifyContraction(h.graph(i), h.level_ed(i).PartOf(), h.graph(i + 1)),
              "level" + std::to_string(i) + ".");
  }
  Check top("top_edgeless");
  top.measured = std::to_string(h.graph(h.depth()).NumEdges());
  top.threshold = "0";
  if (h.graph(h.depth()).NumEdges() != 0) top.status = Status::kFail;
  rep.Add(top);
  return rep.AllPass();
}

// Returns the number of clusters checked.
int64_t CheckSmallClusters(const DynHierarchy& h, int threshold, Tally& slack) {
  int64_t checked = 0;
  for (int i = 0; i < h.depth(); ++i) {
    for (const ClusterInfo& c : h.level_ed(i).Clusters()) {
      if (c.members.size() < 2 || static_cast<int>(c.members.size()) > threshold) continue;
      Rational s(1);
      for (int k = 0; k < c.hbar; ++k) s = s * Rational(h.params().sigma);
      oracle::ExpanderCheck ex = oracle::CheckWeightedExpander(h.graph(i), c.members, h.alpha() / c.phi, c.phi / s);
      slack.Instance();
      ++checked;
      slack.Expect(ex.ok, [&] {
        return nlohmann::json{{"level", i}, {"members", c.members}, {"phi", c.phi.ToString()}, {"hbar", c.hbar},
                              {"side", ex.witness}};
      });
    }
  }
  return checked;
}

std::string SlackThreshold(int threshold) {
  return "G[C]^{alpha/phi_C} is a phi_C / sigma^hbar expander for |C| <= " + std::to_string(threshold);
}

}  // namespace

VerificationReport AuditDynHierarchy(const DynHierarchy& h, int threshold) {
  VerificationReport rep;
  LevelsConsistent(h, rep);
  Tally slack("small_cluster_expansion", SlackThreshold(threshold));
  CheckSmallClusters(h, threshold, slack);
  rep.Add(slack.Done());
  return rep;
}

HierarchyRunResult DynamicHierarchyRun(const Options& o, const HierarchyRunOptions& r) {
  auto start = std::chrono::steady_clock::now();
  Rng rng = RngFor(o, 5);
  auto random_pair = [&]() {
    int lo = 0, size = r.n;
    if (r.blocks > 0 && UniformReal(rng) < r.inside) {
      size = r.n / r.blocks;
      lo = size * static_cast<int>(UniformInt(rng, 0, r.blocks - 1));
    }
    int a = static_cast<int>(UniformInt(rng, 0, size - 1));
    int b = static_cast<int>(UniformInt(rng, 0, size - 2));
    if (b >= a) ++b;
    return std::make_pair(lo + a, lo + b);
  };
  DynGraph g(r.n);
  std::vector<std::pair<int, int>> edges;
  if (r.blocks > 0) {
    for (int i = 0; i < r.m; ++i) edges.push_back(random_pair());
    for (auto [a, b] : edges) g.InsertEdge(a, b);
  } else {
    g = RandomMultigraph(rng, r.n, r.m);
    g.ForEachEdge([&](const Edge& e) { edges.push_back({e.u, e.v}); });
  }
  DynParams p = r.params;
  p.seed = o.seed;
  DynHierarchy h(g, p);
  std::vector<int64_t> initial;
  for (int i = 0; i < h.depth(); ++i) initial.push_back(h.graph(i + 1).NumEdges());

  HierarchyRunResult res;
  Tally consistent("checkpoint_consistency", "contract-consistent levels and edgeless top at every checkpoint");
  Tally slack("checkpoint_slack", SlackThreshold(16));
  Tally conn("connectivity_replay", "Connected(u, v) equals union-find on the current graph");
  std::vector<int> root(r.n);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  bool stale = true;
  int64_t recourse = 0;
  for (int step = 1; step <= r.updates; ++step) {
    if (step % 2 == 1 && !edges.empty()) {
      size_t k = static_cast<size_t>(UniformInt(rng, 0, static_cast<int64_t>(edges.size()) - 1));
      std::swap(edges[k], edges.back());
      recourse += h.Delete(edges.back().first, edges.back().second).recourse;
      edges.pop_back();
    } else {
      auto [a, b] = random_pair();
      recourse += h.Insert(a, b).recourse;
      edges.push_back({a, b});
    }
    ++res.updates;
    stale = true;

    int a = static_cast<int>(UniformInt(rng, 0, r.n - 1));
    int b = static_cast<int>(UniformInt(rng, 0, r.n - 1));
    if (stale) {
      std::iota(root.begin(), root.end(), 0);
      for (auto [x, y] : edges) root[find(x)] = find(y);
      stale = false;
    }
    bool want = find(a) == find(b);
    bool got = h.Connected(a, b);
    conn.Instance();
    ++res.queries;
    conn.Expect(got == want, [&] {
      return nlohmann::json{{"step", step}, {"u", a}, {"v", b}, {"answer", got}, {"oracle", want}};
    });

    if (step % r.checkpoint == 0) {
      ++res.checkpoints;
      VerificationReport levels;
      bool ok = LevelsConsistent(h, levels);
      consistent.Instance();
      consistent.Expect(ok, [&] { return nlohmann::json{{"step", step}, {"report", levels.ToJson()}}; });
      res.slack_clusters += CheckSmallClusters(h, 16, slack);
    }
  }
  res.avg_recourse = res.updates > 0 ? static_cast<double>(recourse) / res.updates : 0.0;

  for (int i = 0; i < h.depth(); ++i) {
    LevelBoundary lb;
    lb.level = i;
    lb.initial_edges = i < static_cast<int>(initial.size()) ? initial[i] : 0;
    lb.final_edges = h.graph(i + 1).NumEdges();
    int64_t m = std::max<int64_t>(h.graph(i).NumEdges(), 2);
    int64_t gamma = p.gamma_krv > 0 ? p.gamma_krv : DefaultGammaKrv(std::max<int64_t>(2 * m, 2));
    double c1 = 16.0 * 2.0 * static_cast<double>(gamma);
    double l = std::log2(static_cast<double>(m));
    lb.bound = c1 * l * l * l * h.params().phi.ToDouble() * static_cast<double>(m) + 4.0 * lb.initial_edges;
    res.boundary_ok = res.boundary_ok && lb.final_edges <= lb.bound;
    res.boundary.push_back(lb);
  }
  res.report.Add(consistent.Done());
  res.report.Add(slack.Done());
  res.report.Add(conn.Done());
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

const std::vector<std::string>& BatteryNames() {
  static const std::vector<std::string> names{"decomp", "prune", "sparsifier", "treewidth", "all"};
  return names;
}

VerificationReport RunBattery(const std::string& name, const Options& o) {
  VerificationReport r;
  bool all = name == "all";
  bool known = false;
  if (all || name == "decomp") {
    r.Merge(IncFlowBattery(o), "");
    r.Merge(TrimBattery(o), "");
    r.Merge(DecompBattery(o), "");
    known = true;
  }
  if (all || name == "prune") {
    r.Merge(PruneBattery(o), "");
    known = true;
  }
  if (all || name == "sparsifier") {
    r.Merge(SparsifierBattery(o), "");
    r.Merge(TreeQueryBattery(o), "");
    known = true;
  }
  if (all || name == "treewidth") {
    r.Merge(TreewidthBattery(o), "");
    known = true;
  }
  if (!known) Fail(ErrorKind::kInvalidArgument, "unknown battery '" + name + "'");
  return r;
}

}  // namespace dynexp::battery
