#include "dynexp/oracle.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "dynexp/error.h"

namespace dynexp::oracle {

namespace {

constexpr int kEnumerationLimit = 20;

// Dense copy of G[S]^w built straight from the graph accessors.
struct Dense {
  std::vector<int> ids;
  std::vector<int64_t> deg;
  std::vector<std::vector<int64_t>> mult;  // off-diagonal multiplicities
  std::vector<int64_t> loops;
};

Dense BuildDense(const DynGraph& g, const std::vector<int>& s, const Rational& w) {
  Dense d;
  d.ids = s;
  int n = static_cast<int>(s.size());
  std::vector<int> index(g.NumVertexSlots(), -1);
  for (int i = 0; i < n; ++i) {
    if (!g.HasVertex(s[i])) Fail(ErrorKind::kNotFound, "oracle: unknown vertex");
    index[s[i]] = i;
  }
  int64_t cw = w.Ceil();
  d.deg.assign(n, 0);
  d.loops.assign(n, 0);
  d.mult.assign(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    g.ForEachIncident(s[i], [&](const Edge& e) {
      if (e.IsLoop()) {
        ++d.loops[i];
        ++d.deg[i];
        return;
      }
      int j = index[e.Other(s[i])];
      if (j < 0) {
        d.loops[i] += cw;
        d.deg[i] += cw;
      } else {
        ++d.mult[i][j];
        ++d.deg[i];
      }
    });
  }
  return d;
}

// Visits every bipartition (S, V \ S) with the last vertex outside S by Gray
// code order; f(in_s, cut, vol_s) returns false to stop.
template <typename F>
void Enumerate(const Dense& d, F&& f) {
  int n = static_cast<int>(d.ids.size());
  if (n < 2) return;
  if (n > kEnumerationLimit) Fail(ErrorKind::kTooLarge, "oracle enumeration limited to 20 vertices");
  std::vector<char> in(n, 0);
  int64_t cut = 0, vol = 0;
  uint64_t total = uint64_t{1} << (n - 1);
  for (uint64_t i = 1; i < total; ++i) {
    int x = __builtin_ctzll(i);
    int64_t delta = 0;
    for (int j = 0; j < n; ++j) {
      if (j == x || d.mult[x][j] == 0) continue;
      delta += in[j] ? -d.mult[x][j] : d.mult[x][j];
    }
    if (in[x]) {
      in[x] = 0;
      cut -= delta;
      vol -= d.deg[x];
    } else {
      in[x] = 1;
      cut += delta;
      vol += d.deg[x];
    }
    if (!f(in, cut, vol)) return;
  }
}

std::vector<int> SideIds(const Dense& d, const std::vector<char>& in) {
  std::vector<int> out;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(d.ids[i]);
  }
  return out;
}

struct FlowNet {
  struct ArcF {
    int to;
    int64_t cap;
    int rev;
  };
  std::vector<std::vector<ArcF>> adj;
  explicit FlowNet(int n) : adj(n) {}
  void Add(int a, int b, int64_t cap_ab, int64_t cap_ba) {
    adj[a].push_back({b, cap_ab, static_cast<int>(adj[b].size())});
    adj[b].push_back({a, cap_ba, static_cast<int>(adj[a].size()) - 1});
  }
  // Shortest augmenting paths.
  int64_t MaxFlow(int s, int t) {
    int64_t total = 0;
    int n = static_cast<int>(adj.size());
    while (true) {
      std::vector<std::pair<int, int>> prev(n, {-1, -1});
      std::deque<int> queue{s};
      prev[s] = {s, -1};
      while (!queue.empty() && prev[t].first < 0) {
        int x = queue.front();
        queue.pop_front();
        for (int k = 0; k < static_cast<int>(adj[x].size()); ++k) {
          const ArcF& a = adj[x][k];
          if (a.cap > 0 && prev[a.to].first < 0) {
            prev[a.to] = {x, k};
            queue.push_back(a.to);
          }
        }
      }
      if (prev[t].first < 0) return total;
      int64_t bottleneck = std::numeric_limits<int64_t>::max();
      for (int x = t; x != s; x = prev[x].first) {
        bottleneck = std::min(bottleneck, adj[prev[x].first][prev[x].second].cap);
      }
      for (int x = t; x != s; x = prev[x].first) {
        ArcF& a = adj[prev[x].first][prev[x].second];
        a.cap -= bottleneck;
        adj[x][a.rev].cap += bottleneck;
      }
      total += bottleneck;
    }
  }
  std::vector<char> Reachable(int s) const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const ArcF& a : adj[x]) {
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }
};

std::string Fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

}  // namespace

void VerificationReport::Merge(const VerificationReport& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

bool VerificationReport::AllPass() const { return Failures() == 0; }

int VerificationReport::Failures() const {
  int f = 0;
  for (const Check& c : checks_) f += c.status == Status::kFail;
  return f;
}

nlohmann::json VerificationReport::ToJson() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : checks_) {
    nlohmann::json j;
    j["name"] = c.name;
    j["status"] = c.status == Status::kPass ? "pass" : (c.status == Status::kFail ? "fail" : "inconclusive");
    if (!c.measured.empty()) j["measured"] = c.measured;
    if (!c.threshold.empty()) j["threshold"] = c.threshold;
    if (!c.witness.is_null()) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  return {{"pass", AllPass()}, {"failures", Failures()}, {"checks", checks}};
}

ConductanceResult BruteConductance(const DynGraph& g, const std::vector<int>& s, const Rational& w) {
  if (s.size() > kEnumerationLimit) Fail(ErrorKind::kTooLarge, "oracle enumeration limited to 20 vertices");
  Dense d = BuildDense(g, s, w);
  int64_t vol = 0;
  for (int64_t x : d.deg) vol += x;
  ConductanceResult best;
  int64_t best_cut = 0, best_den = 1;
  Enumerate(d, [&](const std::vector<char>& in, int64_t cut, int64_t vol_s) {
    int64_t den = std::min(vol_s, vol - vol_s);
    if (den <= 0) return true;
    if (!best.bounded || static_cast<__int128>(cut) * best_den < static_cast<__int128>(best_cut) * den) {
      best.bounded = true;
      best_cut = cut;
      best_den = den;
      best.witness = SideIds(d, in);
    }
    return true;
  });
  if (best.bounded) best.value = Rational(best_cut, best_den);
  return best;
}

ExpanderCheck CheckWeightedExpander(const DynGraph& g, const std::vector<int>& s, const Rational& w,
                                    const Rational& target) {
  if (s.size() > kEnumerationLimit) Fail(ErrorKind::kTooLarge, "oracle enumeration limited to 20 vertices");
  Dense d = BuildDense(g, s, w);
  int64_t vol = 0;
  for (int64_t x : d.deg) vol += x;
  ExpanderCheck result;
  Enumerate(d, [&](const std::vector<char>& in, int64_t cut, int64_t vol_s) {
    int64_t den = std::min(vol_s, vol - vol_s);
    if (den <= 0) return true;
    // cut >= target * den
    if (static_cast<__int128>(cut) * target.den() < static_cast<__int128>(target.num()) * den) {
      result.ok = false;
      result.witness = SideIds(d, in);
      result.cut = cut;
      result.min_volume = den;
      return false;
    }
    return true;
  });
  return result;
}

MincutResult ExactMincutSets(const DynGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) Fail(ErrorKind::kInvalidArgument, "mincut sets must be nonempty");
  int slots = g.NumVertexSlots();
  std::vector<char> side(slots, 0);
  for (int v : a) {
    if (!g.HasVertex(v)) Fail(ErrorKind::kNotFound, "oracle: unknown vertex");
    side[v] = 1;
  }
  for (int v : b) {
    if (!g.HasVertex(v)) Fail(ErrorKind::kNotFound, "oracle: unknown vertex");
    if (side[v] == 1) Fail(ErrorKind::kInvalidArgument, "mincut sets overlap");
    side[v] = 2;
  }
  int s = slots, t = slots + 1;
  FlowNet net(slots + 2);
  const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
  g.ForEachEdge([&](const Edge& e) {
    if (!e.IsLoop()) net.Add(e.u, e.v, 1, 1);
  });
  for (int v : a) net.Add(s, v, inf, 0);
  for (int v : b) net.Add(v, t, inf, 0);
  MincutResult r;
  r.value = net.MaxFlow(s, t);
  std::vector<char> reach = net.Reachable(s);
  for (int v = 0; v < slots; ++v) {
    if (reach[v] && g.HasVertex(v)) r.source_side.push_back(v);
  }
  return r;
}

SparsestCutResult BruteSparsestCut(const DynGraph& g) {
  std::vector<int> vs = g.Vertices();
  if (vs.size() > kEnumerationLimit) Fail(ErrorKind::kTooLarge, "oracle enumeration limited to 20 vertices");
  if (vs.size() < 2) Fail(ErrorKind::kInvalidArgument, "sparsest cut needs two vertices");
  Dense d = BuildDense(g, vs, Rational(0));
  int n = static_cast<int>(vs.size());
  SparsestCutResult best;
  bool have = false;
  int64_t best_cut = 0, best_den = 1;
  Enumerate(d, [&](const std::vector<char>& in, int64_t cut, int64_t) {
    int size = 0;
    for (char c : in) size += c;
    int64_t den = std::min(size, n - size);
    if (!have || static_cast<__int128>(cut) * best_den < static_cast<__int128>(best_cut) * den) {
      have = true;
      best_cut = cut;
      best_den = den;
      best.side = SideIds(d, in);
    }
    return true;
  });
  best.value = Rational(best_cut, best_den);
  return best;
}

double CheegerLowerBound(const DynGraph& g, const std::vector<int>& s, const Rational& w) {
  Dense d = BuildDense(g, s, w);
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(d.ids.size()); ++i) {
    if (d.deg[i] > 0) keep.push_back(i);
  }
  int n = static_cast<int>(keep.size());
  if (n < 2) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    int i = keep[a];
    lap(a, a) -= static_cast<double>(d.loops[i]) / d.deg[i];
    for (int b = 0; b < n; ++b) {
      int j = keep[b];
      if (a != b && d.mult[i][j] > 0) {
        lap(a, b) -= d.mult[i][j] / std::sqrt(static_cast<double>(d.deg[i]) * d.deg[j]);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  double lambda2 = solver.eigenvalues()(1);
  // Guard against rounding in the certificate.
  return std::max(0.0, lambda2 / 2.0 - 1e-9);
}

VerificationReport VerifyDecomposition(const DynGraph& g, const std::vector<int>& u, const Decomposition& d,
                                       const DecompConstants& k) {
  VerificationReport report;
  int slots = g.NumVertexSlots();
  std::vector<int> owner(slots, -1);
  std::vector<char> in_u(slots, 0);
  for (int v : u) in_u[v] = 1;
  Check partition{"partition"};
  for (int i = 0; i < static_cast<int>(d.clusters.size()) && partition.status == Status::kPass; ++i) {
    if (d.clusters[i].members.empty()) {
      partition.status = Status::kFail;
      partition.witness = {{"empty_cluster", i}};
    }
    for (int v : d.clusters[i].members) {
      if (v < 0 || v >= slots || !in_u[v] || owner[v] >= 0) {
        partition.status = Status::kFail;
        partition.witness = {{"vertex", v}, {"cluster", i}};
        break;
      }
      owner[v] = i;
    }
  }
  for (int v : u) {
    if (partition.status == Status::kPass && owner[v] < 0) {
      partition.status = Status::kFail;
      partition.witness = {{"uncovered_vertex", v}};
    }
  }
  report.Add(partition);
  if (partition.status == Status::kFail) return report;

  double log_m = std::log2(static_cast<double>(std::max<int64_t>(d.m, 2)));
  double gamma_cmp = 2.0 * static_cast<double>(d.gamma_krv);
  double vol_u = static_cast<double>(g.Volume(u));
  double out_u = static_cast<double>(CountOut(g, u));

  std::vector<int64_t> outs, vols;
  double total_out = 0;
  for (const Cluster& c : d.clusters) {
    outs.push_back(CountOut(g, c.members));
    vols.push_back(g.Volume(c.members));
    total_out += static_cast<double>(outs.back());
  }

  Check p1{"property1"};
  double bound1 = 4.0 * out_u + k.c1_multiplier * gamma_cmp * std::pow(log_m, 3) * d.phi.ToDouble() * vol_u;
  p1.measured = Fmt(total_out);
  p1.threshold = Fmt(bound1);
  if (total_out > bound1) p1.status = Status::kFail;
  report.Add(p1);

  Check p3{"property3"};
  int worst = -1;
  double worst_ratio = 0;
  for (size_t i = 0; i < d.clusters.size(); ++i) {
    double bound = k.theta3_multiplier * gamma_cmp * std::pow(log_m, 4) * d.clusters[i].phi.ToDouble() *
                   static_cast<double>(vols[i]);
    double ratio = bound > 0 ? outs[i] / bound : (outs[i] > 0 ? INFINITY : 0);
    if (ratio > worst_ratio || worst < 0) {
      worst_ratio = ratio;
      worst = static_cast<int>(i);
    }
  }
  p3.measured = "max out/threshold = " + Fmt(worst_ratio);
  p3.threshold = "1";
  if (worst_ratio > 1.0) {
    p3.status = Status::kFail;
    p3.witness = {{"cluster", worst}, {"out", outs[worst]}, {"volume", vols[worst]}};
  }
  report.Add(p3);

  Check p2{"property2"};
  int exhaustive = 0, spectral = 0, open = 0;
  for (size_t i = 0; i < d.clusters.size(); ++i) {
    const Cluster& c = d.clusters[i];
    Rational w = d.alpha / c.phi;
    Rational target = c.phi / d.slack;
    int size = static_cast<int>(c.members.size());
    if (size <= k.enumeration_threshold) {
      ++exhaustive;
      ExpanderCheck e = CheckWeightedExpander(g, c.members, w, target);
      if (!e.ok) {
        p2.status = Status::kFail;
        p2.witness = {{"cluster", i}, {"side", e.witness}, {"cut", e.cut}, {"min_volume", e.min_volume},
                      {"target", target.ToString()}};
        break;
      }
    } else if (size <= k.spectral_threshold) {
      if (CheegerLowerBound(g, c.members, w) >= target.ToDouble()) {
        ++spectral;
      } else {
        ++open;
      }
    } else {
      ++open;
    }
  }
  p2.measured = std::to_string(exhaustive) + " exhaustive, " + std::to_string(spectral) + " spectral, " +
                std::to_string(open) + " inconclusive";
  if (p2.status == Status::kPass && open > 0) p2.status = Status::kInconclusive;
  report.Add(p2);
  return report;
}

VerificationReport VerifyTreeDecomposition(const DynGraph& g, const std::vector<int>& parent,
                                           const std::vector<std::vector<int>>& bags) {
  VerificationReport report;
  int nodes = static_cast<int>(parent.size());
  Check shape{"tree_shape"};
  if (static_cast<int>(bags.size()) != nodes) {
    shape.status = Status::kFail;
    shape.witness = {{"nodes", nodes}, {"bags", bags.size()}};
  }
  for (int x = 0; x < nodes && shape.status == Status::kPass; ++x) {
    // Walk up; a cycle would exceed the node count.
    int steps = 0;
    for (int y = x; y >= 0; y = parent[y]) {
      if (y >= nodes || ++steps > nodes + 1) {
        shape.status = Status::kFail;
        shape.witness = {{"node", x}};
        break;
      }
    }
  }
  report.Add(shape);
  if (shape.status == Status::kFail) return report;

  int slots = g.NumVertexSlots();
  std::vector<std::vector<int>> occurs(slots);
  int width = -1;
  for (int x = 0; x < nodes; ++x) {
    std::vector<int> bag = bags[x];
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    width = std::max(width, static_cast<int>(bag.size()) - 1);
    for (int v : bag) {
      if (v >= 0 && v < slots) occurs[v].push_back(x);
    }
  }
  auto in_bag = [&](int x, int v) {
    return std::find(bags[x].begin(), bags[x].end(), v) != bags[x].end();
  };

  Check vertices{"vertex_coverage"};
  for (int v : g.Vertices()) {
    if (occurs[v].empty()) {
      vertices.status = Status::kFail;
      vertices.witness = {{"vertex", v}};
      break;
    }
  }
  report.Add(vertices);

  Check edges{"edge_coverage"};
  g.ForEachEdge([&](const Edge& e) {
    if (edges.status == Status::kFail) return;
    bool found = false;
    for (int x : occurs[e.u]) {
      if (in_bag(x, e.v)) {
        found = true;
        break;
      }
    }
    if (!found) {
      edges.status = Status::kFail;
      edges.witness = {{"edge", {e.u, e.v}}};
    }
  });
  report.Add(edges);

  Check connected{"connected_occurrences"};
  for (int v : g.Vertices()) {
    const std::vector<int>& occ = occurs[v];
    if (occ.empty()) continue;
    // In a forest the occurrence set is connected iff it spans |occ|-1 tree edges.
    int links = 0;
    for (int x : occ) {
      if (parent[x] >= 0 && in_bag(parent[x], v)) ++links;
    }
    if (links != static_cast<int>(occ.size()) - 1) {
      connected.status = Status::kFail;
      // Report the topmost node of two different pieces.
      std::vector<int> tops;
      for (int x : occ) {
        if (parent[x] < 0 || !in_bag(parent[x], v)) tops.push_back(x);
      }
      connected.witness = {{"vertex", v}, {"piece_tops", tops}};
      break;
    }
  }
  report.Add(connected);

  Check w{"width"};
  w.measured = std::to_string(width);
  report.Add(w);
  return report;
}

VerificationReport VerifyContraction(const DynGraph& g, const std::vector<int>& part_of,
                                     const DynGraph& contracted) {
  VerificationReport report;
  Check vertices{"contracted_vertices"};
  std::vector<int> image;
  for (int v : g.Vertices()) {
    int p = v < static_cast<int>(part_of.size()) ? part_of[v] : -1;
    if (p < 0) {
      vertices.status = Status::kFail;
      vertices.witness = {{"unmapped_vertex", v}};
      break;
    }
    image.push_back(p);
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (vertices.status == Status::kPass && image != contracted.Vertices()) {
    vertices.status = Status::kFail;
    vertices.witness = {{"expected", image}, {"found", contracted.Vertices()}};
  }
  vertices.measured = std::to_string(contracted.NumVertices());
  report.Add(vertices);

  Check edges{"contracted_edges"};
  int64_t crossing = 0;
  g.ForEachEdge([&](const Edge& e) {
    if (edges.status == Status::kFail || vertices.status == Status::kFail) return;
    int a = part_of[e.u], b = part_of[e.v];
    if (a == b) {
      if (contracted.HasOrigin(e.origin)) {
        edges.status = Status::kFail;
        edges.witness = {{"internal_origin_kept", e.origin}};
      }
      return;
    }
    ++crossing;
    if (!contracted.HasOrigin(e.origin)) {
      edges.status = Status::kFail;
      edges.witness = {{"missing_origin", e.origin}};
      return;
    }
    const Edge& c = contracted.EdgeByOrigin(e.origin);
    if (!((c.u == a && c.v == b) || (c.u == b && c.v == a))) {
      edges.status = Status::kFail;
      edges.witness = {{"origin", e.origin}, {"expected", {a, b}}, {"found", {c.u, c.v}}};
    }
  });
  if (edges.status == Status::kPass && crossing != contracted.NumEdges()) {
    edges.status = Status::kFail;
    edges.witness = {{"crossing", crossing}, {"contracted_edges", contracted.NumEdges()}};
  }
  edges.measured = std::to_string(contracted.NumEdges());
  report.Add(edges);
  return report;
}

int ExactTreewidth(const DynGraph& g) {
  std::vector<int> vs = g.Vertices();
  int n = static_cast<int>(vs.size());
  if (n > 16) Fail(ErrorKind::kTooLarge, "exact treewidth limited to 16 vertices");
  if (n == 0) return -1;
  std::vector<int> index(g.NumVertexSlots(), -1);
  for (int i = 0; i < n; ++i) index[vs[i]] = i;
  std::vector<uint32_t> nbr(n, 0);
  g.ForEachEdge([&](const Edge& e) {
    if (e.IsLoop()) return;
    nbr[index[e.u]] |= 1u << index[e.v];
    nbr[index[e.v]] |= 1u << index[e.u];
  });
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](uint32_t s, int v) {
    uint32_t seen = 1u << v, frontier = 1u << v, reach = 0;
    while (frontier) {
      int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      uint32_t next = nbr[x] & ~seen;
      seen |= next;
      reach |= next & ~s;
      frontier |= next & s;
    }
    return __builtin_popcount(reach);
  };
  uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  std::vector<int8_t> tw(size_t{1} << n, 0);
  tw[0] = -1;
  for (uint32_t s = 1; s <= full; ++s) {
    int best = 1 << 20;
    for (uint32_t rest = s; rest; rest &= rest - 1) {
      int v = __builtin_ctz(rest);
      uint32_t t = s & ~(1u << v);
      best = std::min(best, std::max<int>(tw[t], q(t, v)));
    }
    tw[s] = static_cast<int8_t>(best);
  }
  return std::max<int>(tw[full], 0);
}

ConductanceResult NearExpansion(const DynGraph& g, const std::vector<int>& a) {
  int k = static_cast<int>(a.size());
  if (k > kEnumerationLimit) Fail(ErrorKind::kTooLarge, "oracle enumeration limited to 20 vertices");
  std::vector<int> index(g.NumVertexSlots(), -1);
  for (int i = 0; i < k; ++i) {
    if (!g.HasVertex(a[i])) Fail(ErrorKind::kNotFound, "oracle: unknown vertex");
    index[a[i]] = i;
  }
  std::vector<int64_t> deg(k, 0), border(k, 0);
  std::vector<std::vector<int64_t>> mult(k, std::vector<int64_t>(k, 0));
  int64_t vol_a = 0;
  for (int i = 0; i < k; ++i) {
    deg[i] = g.Degree(a[i]);
    vol_a += deg[i];
    g.ForEachIncident(a[i], [&](const Edge& e) {
      if (e.IsLoop()) return;
      int j = index[e.Other(a[i])];
      if (j < 0) {
        ++border[i];
      } else {
        ++mult[i][j];
      }
    });
  }
  ConductanceResult r;
  std::vector<char> in(k, 0);
  int64_t out = 0, vol = 0;
  for (uint64_t step = 1; step < (uint64_t{1} << k); ++step) {
    int x = __builtin_ctzll(step);
    int64_t delta = border[x];
    for (int j = 0; j < k; ++j) {
      if (j != x) delta += in[j] ? -mult[x][j] : mult[x][j];
    }
    in[x] = !in[x];
    out += in[x] ? delta : -delta;
    vol += in[x] ? deg[x] : -deg[x];
    if (vol == 0 || 2 * vol > vol_a) continue;
    Rational ratio(out, vol);
    if (!r.bounded || ratio < r.value) {
      r.bounded = true;
      r.value = ratio;
      r.witness.clear();
      for (int j = 0; j < k; ++j) {
        if (in[j]) r.witness.push_back(a[j]);
      }
    }
  }
  return r;
}

bool ResidualFeasible(const DynGraph& g, const std::vector<char>& pruned, const std::vector<int64_t>& source,
                      int64_t c, int64_t scale) {
  int slots = g.NumVertexSlots();
  int s = slots, t = slots + 1;
  FlowNet net(slots + 2);
  std::vector<int64_t> supply(slots, 0);
  for (int v : g.Vertices()) {
    if (!pruned[v]) supply[v] += source[v];
  }
  g.ForEachEdge([&](const Edge& e) {
    if (e.IsLoop() || (pruned[e.u] && pruned[e.v])) return;
    if (pruned[e.u]) {
      supply[e.v] += c;
    } else if (pruned[e.v]) {
      supply[e.u] += c;
    } else {
      net.Add(e.u, e.v, c, c);
    }
  });
  int64_t total = 0;
  for (int v : g.Vertices()) {
    if (pruned[v]) continue;
    total += supply[v];
    if (supply[v] > 0) net.Add(s, v, supply[v], 0);
    net.Add(v, t, scale * g.Degree(v), 0);
  }
  return net.MaxFlow(s, t) == total;
}

int64_t TreeMincutByFlow(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                         const std::vector<int>& a, const std::vector<int>& b) {
  int n = static_cast<int>(parent.size());
  FlowNet net(n + 2);
  const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
  for (int x = 0; x < n; ++x) {
    if (parent[x] >= 0) net.Add(x, parent[x], cap[x], cap[x]);
  }
  for (int x : a) net.Add(n, x, inf, 0);
  for (int x : b) net.Add(x, n + 1, inf, 0);
  return net.MaxFlow(n, n + 1);
}

Rational BruteTreeSparsestCut(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                              const std::vector<char>& leaf) {
  int n = static_cast<int>(parent.size());
  auto root_of = [&](int x) {
    while (parent[x] >= 0) x = parent[x];
    return x;
  };
  std::vector<int> leaves;
  std::vector<char> nonempty_root(n, 0);
  for (int x = 0; x < n; ++x) {
    if (!leaf[x]) continue;
    leaves.push_back(x);
    nonempty_root[root_of(x)] = 1;
  }
  int total = static_cast<int>(leaves.size());
  if (total < 2) Fail(ErrorKind::kPrecondition, "oracle: sparsest cut needs two leaves");
  if (std::count(nonempty_root.begin(), nonempty_root.end(), 1) > 1) return Rational(0);
  bool have = false;
  Rational best(0);
  for (int e = 0; e < n; ++e) {
    if (parent[e] < 0) continue;
    int below = 0;
    for (int y : leaves) {
      for (int z = y; z >= 0; z = parent[z]) {
        if (z == e) {
          ++below;
          break;
        }
      }
    }
    int den = std::min(below, total - below);
    if (den == 0) continue;
    Rational r(cap[e], den);
    if (!have || r < best) best = r;
    have = true;
  }
  return best;
}

int64_t BruteTreeMultiwayCut(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                             const std::vector<int>& terminals) {
  int n = static_cast<int>(parent.size());
  std::vector<int> edges;
  for (int x = 0; x < n; ++x) {
    if (parent[x] >= 0) edges.push_back(x);
  }
  int k = static_cast<int>(edges.size());
  if (k > 20) Fail(ErrorKind::kTooLarge, "oracle: multiway cut enumeration limited to 20 edges");
  int64_t best = std::numeric_limits<int64_t>::max();
  std::vector<int> comp(n);
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    int64_t cost = 0;
    for (int j = 0; j < k; ++j) {
      if (mask >> j & 1) cost += cap[edges[j]];
    }
    if (cost >= best) continue;
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int j = 0; j < k; ++j) {
      if (!(mask >> j & 1)) comp[find(edges[j])] = find(parent[edges[j]]);
    }
    std::vector<int> seen;
    bool ok = true;
    for (int t : terminals) {
      int r = find(t);
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) {
        ok = false;
        break;
      }
      seen.push_back(r);
    }
    if (ok) best = cost;
  }
  return best;
}

}  // namespace dynexp::oracle
