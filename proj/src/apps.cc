#include "dynexp/apps.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "dynexp/dyn_hierarchy.h"
#include "dynexp/error.h"

namespace dynexp {

namespace {

constexpr int64_t kBig = std::numeric_limits<int64_t>::max() / 8;

int64_t Sat(int64_t x) { return std::min(x, kBig); }

// Node id of every (level, vertex), numbered level by level.
std::vector<std::vector<int>> NodeIds(const Hierarchy& h) {
  std::vector<std::vector<int>> id(h.graphs.size());
  int next = 0;
  for (size_t i = 0; i < h.graphs.size(); ++i) {
    id[i].assign(h.graphs[i].NumVertexSlots(), -1);
    for (int v : h.graphs[i].Vertices()) id[i][v] = next++;
  }
  return id;
}

int RequireLeaf(const CapTree& t, int v) {
  int x = t.LeafNode(v);
  if (x < 0) Fail(ErrorKind::kNotFound, "vertex " + std::to_string(v) + " is not a leaf of the tree");
  return x;
}

std::vector<int> Dedup(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CapTree CapTree::Build(const Hierarchy& h) {
  CapTree t;
  if (h.graphs.empty()) return t;
  std::vector<std::vector<int>> id = NodeIds(h);
  for (int i = 0; i <= h.depth(); ++i) {
    for (int v : h.graphs[i].Vertices()) {
      CapNode n;
      n.level = i;
      n.vertex = v;
      n.cap = h.graphs[i].Degree(v);
      if (i < h.depth()) n.parent = id[i + 1][h.part_of[i][v]];
      t.nodes_.push_back(n);
    }
  }
  t.leaf_node_ = id[0];
  t.Finish();
  return t;
}

CapTree CapTree::Build(const DynHierarchy& h) { return Build(h.Snapshot()); }

void CapTree::Finish() {
  num_leaves_ = 0;
  for (CapNode& n : nodes_) {
    n.leaves = n.level == 0 ? 1 : 0;
    num_leaves_ += n.leaves;
  }
  for (const CapNode& n : nodes_) {
    if (n.parent >= 0) nodes_[n.parent].leaves += n.leaves;
  }
}

int CapTree::LeafNode(int v) const {
  if (v < 0 || v >= static_cast<int>(leaf_node_.size())) return -1;
  return leaf_node_[v];
}

std::vector<int> CapTree::LeafVertices() const {
  std::vector<int> out;
  for (const CapNode& n : nodes_) {
    if (n.level == 0) out.push_back(n.vertex);
  }
  return out;
}

std::vector<int> CapTree::Roots() const {
  std::vector<int> out;
  for (int x = 0; x < NumNodes(); ++x) {
    if (nodes_[x].parent < 0) out.push_back(x);
  }
  return out;
}

std::vector<int> CapTree::Parents() const {
  std::vector<int> out;
  for (const CapNode& n : nodes_) out.push_back(n.parent);
  return out;
}

std::vector<int64_t> CapTree::Capacities() const {
  std::vector<int64_t> out;
  for (const CapNode& n : nodes_) out.push_back(n.cap);
  return out;
}

bool CapTree::LeafCountsConsistent() const {
  std::vector<int> count(nodes_.size(), 0);
  for (int x = 0; x < NumNodes(); ++x) {
    if (nodes_[x].level != 0) continue;
    for (int y = x; y >= 0; y = nodes_[y].parent) ++count[y];
  }
  for (int x = 0; x < NumNodes(); ++x) {
    if (count[x] != nodes_[x].leaves) return false;
  }
  return true;
}

CapTree VertexSparsifier(const CapTree& t, const std::vector<int>& terminals) {
  if (terminals.empty()) Fail(ErrorKind::kInvalidArgument, "vertex sparsifier needs at least one terminal");
  std::vector<char> keep(t.NumNodes(), 0);
  for (int v : terminals) {
    for (int x = RequireLeaf(t, v); x >= 0 && !keep[x]; x = t.node(x).parent) keep[x] = 1;
  }
  std::vector<int> remap(t.NumNodes(), -1);
  CapTree r;
  for (int x = 0; x < t.NumNodes(); ++x) {
    if (!keep[x]) continue;
    remap[x] = static_cast<int>(r.nodes_.size());
    r.nodes_.push_back(t.node(x));
  }
  for (CapNode& n : r.nodes_) {
    if (n.parent >= 0) n.parent = remap[n.parent];
  }
  r.leaf_node_.assign(t.leaf_node_.size(), -1);
  for (int v : terminals) r.leaf_node_[v] = remap[t.LeafNode(v)];
  r.Finish();
  return r;
}

int64_t StCutEstimate(const CapTree& t, int s, int u) {
  int a = RequireLeaf(t, s);
  int b = RequireLeaf(t, u);
  if (a == b) return kInfiniteCapacity;
  int64_t best = kInfiniteCapacity;
  // All leaves sit on level 0 and every parent is one level up, so the two
  // walks stay in step.
  while (a != b) {
    if (a < 0 || b < 0) return 0;
    best = std::min({best, t.node(a).cap, t.node(b).cap});
    a = t.node(a).parent;
    b = t.node(b).parent;
  }
  return best;
}

int64_t StCutEstimate(const DynHierarchy& h, int s, int u) {
  std::vector<std::pair<int, int>> ps = h.Path(s), pu = h.Path(u);
  if (s == u) return kInfiniteCapacity;
  int64_t best = kInfiniteCapacity;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] == pu[i]) return best;
    const DynGraph& g = h.graph(ps[i].first);
    best = std::min<int64_t>({best, g.Degree(ps[i].second), g.Degree(pu[i].second)});
  }
  return 0;  // different roots
}

int64_t TreeMincutSets(const CapTree& t, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) Fail(ErrorKind::kInvalidArgument, "tree mincut sets must be nonempty");
  int n = t.NumNodes();
  // no_a[x]: cheapest cuts below x leaving x's component without A leaves.
  std::vector<int64_t> no_a(n, 0), no_b(n, 0);
  for (int v : a) no_a[RequireLeaf(t, v)] = kBig;
  for (int v : b) {
    int x = RequireLeaf(t, v);
    if (no_a[x] == kBig) Fail(ErrorKind::kInvalidArgument, "tree mincut sets overlap");
    no_b[x] = kBig;
  }
  int64_t total = 0;
  for (int x = 0; x < n; ++x) {
    int p = t.node(x).parent;
    if (p < 0) {
      total = Sat(total + std::min(no_a[x], no_b[x]));
      continue;
    }
    int64_t cut = Sat(std::min(no_a[x], no_b[x]) + t.node(x).cap);
    no_a[p] = Sat(no_a[p] + std::min(no_a[x], cut));
    no_b[p] = Sat(no_b[p] + std::min(no_b[x], cut));
  }
  return total;
}

Congestion TreeCongestion(const CapTree& t, const std::vector<Demand>& demands) {
  std::vector<Rational> load(t.NumNodes(), Rational(0));
  Congestion out;
  for (const Demand& d : demands) {
    if (d.amount < Rational(0)) Fail(ErrorKind::kInvalidArgument, "demand amounts must be non-negative");
    int a = RequireLeaf(t, d.s);
    int b = RequireLeaf(t, d.t);
    if (d.amount == Rational(0)) continue;
    while (a != b) {
      if (a < 0 || b < 0) {
        out.infinite = true;  // no route between different trees
        break;
      }
      load[a] = load[a] + d.amount;
      load[b] = load[b] + d.amount;
      a = t.node(a).parent;
      b = t.node(b).parent;
    }
  }
  for (int x = 0; x < t.NumNodes(); ++x) {
    if (load[x] == Rational(0)) continue;
    if (t.node(x).cap == 0) {
      out.infinite = true;
      continue;
    }
    out.value = Max(out.value, load[x] / Rational(t.node(x).cap));
  }
  return out;
}

SparseEdge TreeSparsestCut(const CapTree& t) {
  int n = t.NumLeaves();
  if (n < 2) Fail(ErrorKind::kPrecondition, "sparsest cut needs at least two leaves");
  SparseEdge best;
  if (t.Roots().size() > 1) return best;  // disconnected: sparsity 0
  for (int x = 0; x < t.NumNodes(); ++x) {
    const CapNode& c = t.node(x);
    int den = std::min(c.leaves, n - c.leaves);
    if (c.parent < 0 || den == 0) continue;
    Rational s(c.cap, den);
    if (best.node < 0 || s < best.sparsity) {
      best.node = x;
      best.sparsity = s;
    }
  }
  return best;
}

MultiwayCut TreeMultiwayCut(const CapTree& t, const std::vector<int>& terminals) {
  std::vector<int> term = Dedup(terminals);
  if (term.size() < 2) Fail(ErrorKind::kPrecondition, "multiway cut needs at least two terminals");
  int n = t.NumNodes();
  std::vector<char> is_term(n, 0);
  for (int v : term) is_term[RequireLeaf(t, v)] = 1;
  std::vector<std::vector<int>> children(n);
  for (int x = 0; x < n; ++x) {
    if (t.node(x).parent >= 0) children[t.node(x).parent].push_back(x);
  }
  // dp0: x's component holds no terminal; dp1: exactly one. Cutting the edge
  // above c costs cap + the better state of c.
  std::vector<int64_t> dp0(n), dp1(n), cut(n);
  std::vector<int> pick(n, -1);
  for (int x = 0; x < n; ++x) {
    int64_t free_sum = 0;
    for (int c : children[x]) free_sum = Sat(free_sum + std::min(dp0[c], cut[c]));
    if (is_term[x]) {
      dp0[x] = kBig;
      dp1[x] = free_sum;
    } else {
      dp0[x] = free_sum;
      dp1[x] = kBig;
      for (int c : children[x]) {
        if (dp1[c] >= kBig) continue;
        int64_t v = free_sum - std::min(dp0[c], cut[c]) + dp1[c];
        if (v < dp1[x]) {
          dp1[x] = v;
          pick[x] = c;
        }
      }
    }
    cut[x] = Sat(std::min(dp0[x], dp1[x]) + t.node(x).cap);
  }
  MultiwayCut out;
  std::vector<std::pair<int, int>> stack;
  for (int r : t.Roots()) {
    out.value = Sat(out.value + std::min(dp0[r], dp1[r]));
    stack.push_back({r, dp0[r] <= dp1[r] ? 0 : 1});
  }
  while (!stack.empty()) {
    auto [x, state] = stack.back();
    stack.pop_back();
    for (int c : children[x]) {
      if (state == 1 && c == pick[x]) {
        stack.push_back({c, 1});
      } else if (dp0[c] <= cut[c]) {
        stack.push_back({c, 0});
      } else {
        out.edges.push_back(c);
        stack.push_back({c, dp0[c] <= dp1[c] ? 0 : 1});
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<std::vector<int>> TreewidthBags(const Hierarchy& h) {
  std::vector<std::vector<int>> id = NodeIds(h);
  int total = 0;
  for (const DynGraph& g : h.graphs) total += g.NumVertices();
  std::vector<std::vector<int>> bags(total);
  if (h.graphs.empty()) return bags;
  const DynGraph& g0 = h.graphs[0];
  for (int v : g0.Vertices()) bags[id[0][v]].push_back(v);
  g0.ForEachEdge([&](const Edge& e) {
    for (int x : {e.u, e.v}) {
      bags[id[0][x]].push_back(e.u);
      bags[id[0][x]].push_back(e.v);
    }
  });
  for (int i = 1; i <= h.depth(); ++i) {
    const std::vector<int>& up = h.part_of[i - 1];
    h.graphs[i - 1].ForEachEdge([&](const Edge& e) {
      const Edge& orig = g0.EdgeByOrigin(e.origin);
      for (int x : {e.u, e.v}) {
        std::vector<int>& bag = bags[id[i][up[x]]];
        bag.push_back(orig.u);
        bag.push_back(orig.v);
      }
    });
  }
  for (std::vector<int>& b : bags) b = Dedup(std::move(b));
  return bags;
}

double QualityFormula(const QualityReport& r) {
  double inv = std::max(1.0 / r.alpha.ToDouble(), 1.0 / r.phi.ToDouble());
  return std::pow(r.c_q * r.slack.ToDouble() * r.log_m, r.depth) * inv / std::pow(r.alpha.ToDouble(), r.depth - 1);
}

QualityReport MakeQualityReport(const Hierarchy& h, double c_q) {
  QualityReport r;
  r.alpha = h.alpha;
  r.phi = h.phi;
  r.slack = h.slack;
  r.depth = h.depth();
  r.c_q = c_q;
  int64_t m = h.graphs.empty() ? 0 : h.graphs[0].NumEdges();
  r.log_m = std::log2(static_cast<double>(std::max<int64_t>(m, 2)));
  r.value = QualityFormula(r);
  return r;
}

void WriteCapTree(std::ostream& out, const CapTree& t) {
  for (int x = 0; x < t.NumNodes(); ++x) {
    const CapNode& n = t.node(x);
    out << "node " << x << " level " << n.level << " parent ";
    if (n.parent < 0) {
      out << '-';
    } else {
      out << n.parent;
    }
    out << " cap " << n.cap << '\n';
  }
}

void WriteBags(std::ostream& out, const std::vector<std::vector<int>>& bags) {
  for (size_t x = 0; x < bags.size(); ++x) {
    out << "bag " << x << ':';
    for (int v : bags[x]) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace dynexp
