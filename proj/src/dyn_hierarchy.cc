#include "dynexp/dyn_hierarchy.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>

#include "dynexp/decomposition.h"
#include "dynexp/error.h"

namespace dynexp {

namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rational Power(int64_t base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * Rational(base);
  return r;
}

bool SameEnds(int a, int b, int c, int d) { return (a == c && b == d) || (a == d && b == c); }

}  // namespace

int64_t RecourseDelta::EdgeOps() const {
  int64_t n = 0;
  for (const DeltaOp& op : ops) {
    if (op.kind == DeltaOp::kDeleteEdge || op.kind == DeltaOp::kInsertEdge) ++n;
  }
  return n;
}

void DeltaBuilder::InsertEdge(int a, int b, OriginId o) {
  auto [it, fresh] = edges_.try_emplace(o);
  EdgeState& e = it->second;
  if (fresh) {
    edge_order_.push_back(o);
  } else if (e.cur) {
    Fail(ErrorKind::kInternal, "delta inserts origin " + std::to_string(o) + " twice");
  }
  e.cur = true;
  e.ca = a;
  e.cb = b;
}

void DeltaBuilder::DeleteEdge(int a, int b, OriginId o) {
  auto [it, fresh] = edges_.try_emplace(o);
  EdgeState& e = it->second;
  if (fresh) {
    edge_order_.push_back(o);
    e.init = true;
    e.ia = a;
    e.ib = b;
  } else if (!e.cur) {
    Fail(ErrorKind::kInternal, "delta deletes absent origin " + std::to_string(o));
  }
  e.cur = false;
}

void DeltaBuilder::AddVertex(int x) {
  auto [it, fresh] = vertices_.try_emplace(x, false, false);
  if (fresh) vertex_order_.push_back(x);
  it->second.second = true;
}

void DeltaBuilder::RemoveVertex(int x) {
  auto [it, fresh] = vertices_.try_emplace(x, true, true);
  if (fresh) vertex_order_.push_back(x);
  it->second.second = false;
}

RecourseDelta DeltaBuilder::Finish() {
  RecourseDelta d;
  std::vector<DeltaOp> inserts;
  for (OriginId o : edge_order_) {
    const EdgeState& e = edges_[o];
    bool same = e.init && e.cur && SameEnds(e.ia, e.ib, e.ca, e.cb);
    if (same) continue;
    if (e.init) d.ops.push_back({DeltaOp::kDeleteEdge, e.ia, e.ib, o});
    if (e.cur) inserts.push_back({DeltaOp::kInsertEdge, e.ca, e.cb, o});
  }
  for (int x : vertex_order_) {
    auto [init, cur] = vertices_[x];
    if (init && !cur) d.ops.push_back({DeltaOp::kRemoveVertex, x, -1, -1});
  }
  for (int x : vertex_order_) {
    auto [init, cur] = vertices_[x];
    if (!init && cur) d.ops.push_back({DeltaOp::kAddVertex, x, -1, -1});
  }
  d.ops.insert(d.ops.end(), inserts.begin(), inserts.end());
  edges_.clear();
  edge_order_.clear();
  vertices_.clear();
  vertex_order_.clear();
  return d;
}

// ---------------------------------------------------------------------------

struct LevelEd::Ed {
  Cd* parent = nullptr;
  int s = 0;
  Rational phi;
  std::vector<std::unique_ptr<Cd>> cds;
};

struct LevelEd::MlpLevel {
  std::unique_ptr<Pruner> pruner;
  std::vector<int> snap;  // P^s, sorted
  std::unique_ptr<Ed> child;
};

struct LevelEd::Cd {
  Ed* parent = nullptr;
  int index = 0;  // position in parent->cds
  std::vector<int> u;  // sorted
  Rational phi;
  int64_t limit = 0;  // N
  int hbar = 0;
  int64_t t = 0;
  std::vector<int64_t> ell;      // 0..hbar
  std::vector<MlpLevel> levels;  // 1..hbar, slot 0 unused
  int leaf = -1;
};

LevelEd::LevelEd(DynGraph& g, const DynParams& p, uint64_t seed) : g_(g), p_(p), seed_(seed) {
  owner_.assign(g_.NumVertexSlots(), nullptr);
  root_ = NewEd(nullptr, 0, p_.phi);
  // Isolated vertices are singleton clusters; only the rest is decomposed.
  std::vector<int> busy;
  for (int v : g_.Vertices()) {
    if (g_.Degree(v) > 0) {
      busy.push_back(v);
    } else {
      NewCd(root_.get(), {v}, p_.phi, next_leaf_++);
    }
  }
  if (!busy.empty()) PopulateEd(root_.get(), busy, -1);
  leaf_size_.reserve(g_.NumVertices());
  for (int v : g_.Vertices()) ++leaf_size_[Leaf(v)];
}

LevelEd::~LevelEd() = default;

uint64_t LevelEd::NextSeed() { return SplitMix(seed_ ^ SplitMix(++calls_)); }

int LevelEd::Leaf(int v) const {
  if (v < 0 || v >= static_cast<int>(owner_.size()) || owner_[v] == nullptr) return -1;
  return owner_[v]->leaf;
}

int LevelEd::ClusterOf(int v) const {
  if (!g_.HasVertex(v)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(v));
  return Leaf(v);
}

std::unique_ptr<LevelEd::Ed> LevelEd::NewEd(Cd* parent, int s, const Rational& phi) {
  auto ed = std::make_unique<Ed>();
  ed->parent = parent;
  ed->s = s;
  ed->phi = phi;
  return ed;
}

void LevelEd::PopulateEd(Ed* ed, const std::vector<int>& set, int reuse_leaf) {
  if (set.size() == 1) {
    NewCd(ed, set, ed->phi, reuse_leaf >= 0 ? reuse_leaf : next_leaf_++);
    return;
  }
  DecompConfig cfg;
  cfg.alpha = p_.alpha;
  cfg.phi = ed->phi;
  cfg.seed = NextSeed();
  cfg.gamma_krv = p_.gamma_krv;
  cfg.player = p_.player;
  Decomposition d = Decompose(g_, set, cfg);

  // Leaves must induce connected subgraphs for connectivity queries; split
  // anything the decomposition left disconnected.
  std::vector<std::pair<std::vector<int>, Rational>> parts;
  for (Cluster& c : d.clusters) {
    if (c.members.size() == 1) {
      parts.push_back({std::move(c.members), c.phi});
      continue;
    }
    WeightedView h(g_, c.members, Rational(0));
    auto comps = h.Components();
    for (auto& comp : comps) {
      std::vector<int> members;
      for (int i : comp) members.push_back(h.Global(i));
      std::sort(members.begin(), members.end());
      parts.push_back({std::move(members), c.phi});
    }
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& x, const auto& y) { return x.first.size() > y.first.size(); });
  for (size_t i = 0; i < parts.size(); ++i) {
    int leaf = (i == 0 && reuse_leaf >= 0) ? reuse_leaf : next_leaf_++;
    NewCd(ed, std::move(parts[i].first), parts[i].second, leaf);
  }
}

LevelEd::Cd* LevelEd::NewCd(Ed* ed, std::vector<int> u, const Rational& phi, int leaf) {
  auto owned = std::make_unique<Cd>();
  Cd* cd = owned.get();
  cd->parent = ed;
  cd->index = static_cast<int>(ed->cds.size());
  cd->u = std::move(u);
  cd->phi = phi;
  cd->leaf = leaf;
  ed->cds.push_back(std::move(owned));
  for (int v : cd->u) {
    if (v >= static_cast<int>(owner_.size())) owner_.resize(v + 1, nullptr);
    owner_[v] = cd;
  }

  __int128 lim = static_cast<__int128>(phi.num()) * g_.Volume(cd->u) / (static_cast<__int128>(phi.den()) * p_.rho);
  cd->limit = static_cast<int64_t>(lim);
  if (cd->limit >= 1) {
    int h = 0;
    for (__int128 x = 1; x < cd->limit; x *= p_.psi) ++h;
    cd->hbar = std::max(1, h);
    cd->ell.assign(cd->hbar + 1, 1);
    for (int s = 1; s < cd->hbar; ++s) cd->ell[s] = cd->ell[s - 1] * p_.psi;
    cd->ell[cd->hbar] = cd->limit;
    cd->levels.resize(cd->hbar + 1);
    for (int s = cd->hbar; s >= 1; --s) StartPruner(cd, s);
  }
  return cd;
}

void LevelEd::RemoveCd(Cd* cd) {
  Ed* ed = cd->parent;
  int i = cd->index;
  int last = static_cast<int>(ed->cds.size()) - 1;
  if (i != last) {
    std::swap(ed->cds[i], ed->cds[last]);
    ed->cds[i]->index = i;
  }
  ed->cds.pop_back();
}

void LevelEd::StartPruner(Cd* cd, int s) {
  std::unordered_set<int> q;
  for (int r = s + 1; r <= cd->hbar; ++r) q.insert(cd->levels[r].snap.begin(), cd->levels[r].snap.end());
  std::vector<int> members;
  for (int v : cd->u) {
    if (!q.count(v)) members.push_back(v);
  }
  Rational scale = Power(p_.sigma, cd->hbar - s);
  Rational w = p_.alpha / cd->phi;
  cd->levels[s].pruner = std::make_unique<Pruner>(g_, members, p_.alpha / scale, cd->phi / scale, w);
}

std::vector<LevelEd::Cd*> LevelEd::Chain(int x) const {
  std::vector<Cd*> chain;
  for (Cd* cd = owner_[x]; cd != nullptr; cd = cd->parent->parent) chain.push_back(cd);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

LevelEd::Cd* LevelEd::CdIn(Ed* ed, int x) const {
  if (x < 0 || x >= static_cast<int>(owner_.size())) return nullptr;
  for (Cd* cd = owner_[x]; cd != nullptr; cd = cd->parent->parent) {
    if (cd->parent == ed) return cd;
  }
  return nullptr;
}

std::unordered_map<int, int> LevelEd::Record(const std::vector<int>& xs) const {
  std::unordered_map<int, int> old;
  old.reserve(xs.size());
  for (int v : xs) old[v] = Leaf(v);
  return old;
}

void LevelEd::Repartition(const std::vector<int>& xs, const std::unordered_map<int, int>& old_leaf,
                          DeltaBuilder& out) {
  auto before = [&](int v) {
    auto it = old_leaf.find(v);
    return it == old_leaf.end() ? Leaf(v) : it->second;
  };
  for (const auto& [v, o] : old_leaf) {
    int n = Leaf(v);
    if (o == n) continue;
    if (o >= 0) {
      auto it = leaf_size_.find(o);
      if (--it->second == 0) {
        leaf_size_.erase(it);
        out.RemoveVertex(o);
      }
    }
    if (n >= 0 && leaf_size_[n]++ == 0) out.AddVertex(n);
  }
  std::unordered_set<OriginId> seen;
  for (int v : xs) {
    if (!g_.HasVertex(v)) continue;
    g_.ForEachIncident(v, [&](const Edge& e) {
      if (e.IsLoop() || !seen.insert(e.origin).second) return;
      int ou = before(e.u), ov = before(e.v);
      int nu = Leaf(e.u), nv = Leaf(e.v);
      if (SameEnds(ou, ov, nu, nv)) return;
      if (ou != ov) out.DeleteEdge(ou, ov, e.origin);
      if (nu != nv) out.InsertEdge(nu, nv, e.origin);
    });
  }
}

void LevelEd::FixLeaf(Cd* cd) {
  bool core = false;
  for (int v : cd->u) {
    if (owner_[v] == cd) {
      core = true;
      break;
    }
  }
  if (!core) {
    cd->leaf = -1;
  } else if (cd->leaf < 0) {
    cd->leaf = next_leaf_++;
  }
}

bool LevelEd::InsideConnected(int leaf, int from, int to) const {
  if (from == to) return true;
  std::unordered_set<int> seen{from};
  std::deque<int> queue{from};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    bool found = false;
    g_.ForEachIncident(x, [&](const Edge& e) {
      int y = e.Other(x);
      if (found || Leaf(y) != leaf || !seen.insert(y).second) return;
      if (y == to) found = true;
      queue.push_back(y);
    });
    if (found) return true;
  }
  return false;
}

bool LevelEd::CheckCore(Cd* cd, DeltaBuilder& out) {
  if (cd->leaf < 0) return false;
  int first = -1;
  int64_t size = 0;
  for (int v : cd->u) {
    if (owner_[v] != cd) continue;
    if (first < 0) first = v;
    ++size;
  }
  std::unordered_set<int> seen{first};
  std::vector<int> stack{first};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    g_.ForEachIncident(x, [&](const Edge& e) {
      int y = e.Other(x);
      if (owner_[y] == cd && seen.insert(y).second) stack.push_back(y);
    });
  }
  if (static_cast<int64_t>(seen.size()) == size) return false;
  ++counters_.split_restarts;
  Restart(cd, out);
  return true;
}

void LevelEd::Restart(Cd* cd, DeltaBuilder& out) {
  ++counters_.restarts;
  std::vector<int> xs = cd->u;
  auto old = Record(xs);
  Ed* ed = cd->parent;
  int reuse = cd->leaf;
  RemoveCd(cd);
  PopulateEd(ed, xs, reuse);
  Repartition(xs, old, out);
}

bool LevelEd::SetSnapshot(Cd* cd, int s, std::vector<int> p, DeltaBuilder& out) {
  MlpLevel& lv = cd->levels[s];
  if (p == lv.snap) return false;
  ++counters_.snapshots;
  std::vector<int> xs = lv.snap;
  xs.insert(xs.end(), p.begin(), p.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto old = Record(xs);
  lv.child.reset();
  for (int v : lv.snap) owner_[v] = cd;
  lv.snap = std::move(p);
  if (!lv.snap.empty()) {
    lv.child = NewEd(cd, s, cd->phi);
    PopulateEd(lv.child.get(), lv.snap, -1);
  }
  FixLeaf(cd);
  Repartition(xs, old, out);
  return CheckCore(cd, out);
}

void LevelEd::CdApply(Cd* cd, int a, int b, DeltaBuilder& out) {
  if (cd->hbar == 0 || cd->t >= cd->limit) {
    ++counters_.expiries;
    Restart(cd, out);
    return;
  }
  ++cd->t;
  for (int s = 1; s <= cd->hbar; ++s) {
    if (cd->levels[s].pruner->Apply(a, b).expired) {
      ++counters_.budget_failures;
      Restart(cd, out);
      return;
    }
  }
  // Highest level first, so a level that resets sees the snapshots above it.
  const int64_t t = cd->t;
  const bool last = t == cd->limit;
  std::vector<char> fresh(cd->hbar + 1, 0);
  for (int s = cd->hbar; s >= 1; --s) {
    MlpLevel& lv = cd->levels[s];
    if (s < cd->hbar && (t % cd->ell[s] == 0 || last)) {
      if (SetSnapshot(cd, s, {}, out)) return;
      StartPruner(cd, s);
      fresh[s] = 1;
    } else if (t % cd->ell[s - 1] == 0 || last) {
      if (SetSnapshot(cd, s, lv.pruner->PrunedSet(), out)) {
        return;
      }
      fresh[s] = 1;
    }
  }
  for (int s = 1; s <= cd->hbar; ++s) {
    // A fresh child was built on the current graph and has nothing to catch up on.
    Ed* child = cd->levels[s].child.get();
    if (child != nullptr && !fresh[s]) RouteToEd(child, a, b, out);
  }
}

void LevelEd::RouteToEd(Ed* ed, int a, int b, DeltaBuilder& out) {
  Cd* ca = CdIn(ed, a);
  Cd* cb = CdIn(ed, b);
  if (ca != nullptr) CdApply(ca, a, b, out);
  if (cb != nullptr && cb != ca) CdApply(cb, a, b, out);
}

void LevelEd::InsertEdge(int a, int b, OriginId o, DeltaBuilder& out) {
  g_.InsertEdgeWithOrigin(a, b, o);
  ++updates_;
  int la = Leaf(a), lb = Leaf(b);
  if (la != lb) out.InsertEdge(la, lb, o);
  RouteToEd(root_.get(), a, b, out);
}

void LevelEd::DeleteEdge(OriginId o, DeltaBuilder& out) {
  Edge e = g_.DeleteEdgeByOrigin(o);
  ++updates_;
  int la = Leaf(e.u), lb = Leaf(e.v);
  if (la != lb) out.DeleteEdge(la, lb, o);
  RouteToEd(root_.get(), e.u, e.v, out);
  for (int x : {e.u, e.v}) {
    if (g_.Degree(x) == 0 && owner_[x] != nullptr && Chain(x).front()->u.size() > 1) Detach(x, out);
  }
  int leaf = Leaf(e.u);
  if (e.u != e.v && leaf == Leaf(e.v) && !InsideConnected(leaf, e.u, e.v)) {
    ++counters_.split_restarts;
    Restart(owner_[e.u], out);
  }
}

void LevelEd::RemoveFromChain(int x, DeltaBuilder& out) {
  std::vector<Cd*> chain = Chain(x);
  int leaf = Leaf(x);
  for (Cd* cd : chain) {
    cd->u.erase(std::lower_bound(cd->u.begin(), cd->u.end(), x));
    for (int s = 1; s <= cd->hbar; ++s) {
      MlpLevel& lv = cd->levels[s];
      lv.pruner->Forget(x);
      auto it = std::lower_bound(lv.snap.begin(), lv.snap.end(), x);
      if (it != lv.snap.end() && *it == x) lv.snap.erase(it);
    }
  }
  owner_[x] = nullptr;
  auto it = leaf_size_.find(leaf);
  if (--it->second == 0) {
    leaf_size_.erase(it);
    out.RemoveVertex(leaf);
  }
  // Drop processes left without vertices, innermost first.
  for (auto c = chain.rbegin(); c != chain.rend(); ++c) {
    Cd* cd = *c;
    if (cd->u.empty()) {
      Ed* ed = cd->parent;
      RemoveCd(cd);
      if (ed->cds.empty() && ed->parent != nullptr) ed->parent->levels[ed->s].child.reset();
    } else {
      FixLeaf(cd);
    }
  }
}

void LevelEd::Detach(int x, DeltaBuilder& out) {
  ++counters_.detaches;
  RemoveFromChain(x, out);
  Cd* cd = NewCd(root_.get(), {x}, p_.phi, next_leaf_++);
  leaf_size_[cd->leaf] = 1;
  out.AddVertex(cd->leaf);
}

void LevelEd::AddVertex(int x, DeltaBuilder& out) {
  g_.AddVertexAt(x);
  if (x >= static_cast<int>(owner_.size())) owner_.resize(x + 1, nullptr);
  Cd* cd = NewCd(root_.get(), {x}, p_.phi, next_leaf_++);
  leaf_size_[cd->leaf] = 1;
  out.AddVertex(cd->leaf);
}

void LevelEd::RemoveVertex(int x, DeltaBuilder& out) {
  Require(g_.HasVertex(x) && g_.Degree(x) == 0, ErrorKind::kPrecondition,
          "only isolated vertices can be removed");
  RemoveFromChain(x, out);
  g_.RemoveVertex(x);
}

void LevelEd::Consume(const DeltaOp& op, DeltaBuilder& out) {
  switch (op.kind) {
    case DeltaOp::kDeleteEdge:
      DeleteEdge(op.origin, out);
      break;
    case DeltaOp::kRemoveVertex:
      RemoveVertex(op.a, out);
      break;
    case DeltaOp::kAddVertex:
      AddVertex(op.a, out);
      break;
    case DeltaOp::kInsertEdge:
      InsertEdge(op.a, op.b, op.origin, out);
      break;
  }
}

DynGraph LevelEd::BuildContracted() const {
  std::vector<int> leaves;
  for (const auto& [leaf, size] : leaf_size_) leaves.push_back(leaf);
  std::sort(leaves.begin(), leaves.end());
  DynGraph c;
  for (int leaf : leaves) c.AddVertexAt(leaf);
  for (const Edge& e : g_.Edges()) {
    int a = Leaf(e.u), b = Leaf(e.v);
    if (a != b) c.InsertEdgeWithOrigin(a, b, e.origin);
  }
  return c;
}

std::vector<int> LevelEd::PartOf() const {
  std::vector<int> part(g_.NumVertexSlots(), -1);
  for (int v : g_.Vertices()) part[v] = Leaf(v);
  return part;
}

std::vector<ClusterInfo> LevelEd::Clusters() const {
  std::unordered_map<int, int> index;
  std::vector<ClusterInfo> out;
  for (int v : g_.Vertices()) {
    Cd* cd = owner_[v];
    auto [it, fresh] = index.try_emplace(cd->leaf, static_cast<int>(out.size()));
    if (fresh) out.push_back({cd->leaf, {}, cd->phi, cd->hbar});
    out[it->second].members.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const ClusterInfo& x, const ClusterInfo& y) { return x.leaf < y.leaf; });
  return out;
}

int LevelEd::MaxHbar() const {
  int h = 0;
  std::function<void(const Ed*)> walk = [&](const Ed* ed) {
    for (const auto& cd : ed->cds) {
      h = std::max(h, cd->hbar);
      for (int s = 1; s <= cd->hbar; ++s) {
        if (cd->levels[s].child) walk(cd->levels[s].child.get());
      }
    }
  };
  walk(root_.get());
  return h;
}

// ---------------------------------------------------------------------------

DynHierarchy::DynHierarchy(const DynGraph& g, const DynParams& p) : p_(p) {
  if (p_.alpha == Rational(0)) {
    const int64_t big = int64_t{1} << 40;
    p_.alpha = MaxAdmissibleAlpha(big, DefaultGammaKrv(big));
  }
  Require(p_.phi > Rational(0) && p_.phi < Rational(1, 2), ErrorKind::kInvalidArgument,
          "phi must lie in (0, 1/2)");
  Require(p_.alpha > Rational(0) && p_.alpha <= p_.phi, ErrorKind::kInvalidArgument,
          "alpha must lie in (0, phi]");
  Require(p_.psi >= 2, ErrorKind::kInvalidArgument, "psi must be at least 2");
  Require(p_.sigma >= 1, ErrorKind::kInvalidArgument, "slack base must be positive");
  Require(p_.rho >= 1, ErrorKind::kInvalidArgument, "rho must be positive");
  Require(p_.c_z > 0, ErrorKind::kInvalidArgument, "c_z must be positive");
  graphs_.push_back(std::make_unique<DynGraph>(g));
  Grow();
}

DynHierarchy::~DynHierarchy() = default;

int64_t DynHierarchy::Budget(int64_t m) const {
  double z = p_.c_z * p_.phi.ToDouble() * static_cast<double>(m) / static_cast<double>(p_.rho);
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(z)));
}

void DynHierarchy::Grow() {
  while (graphs_.back()->NumEdges() > 0) {
    int i = depth();
    if (i >= p_.max_depth) {
      Fail(ErrorKind::kInternal, "hierarchy depth exceeds the cap of " + std::to_string(p_.max_depth));
    }
    eds_.push_back(std::make_unique<LevelEd>(*graphs_[i], p_, SplitMix(p_.seed ^ SplitMix(++builds_))));
    graphs_.push_back(std::make_unique<DynGraph>(eds_[i]->BuildContracted()));
    budget_.push_back(Budget(graphs_[i]->NumEdges()));
    since_rebuild_.push_back(0);
  }
}

void DynHierarchy::Retire(int level) {
  for (int j = level; j < static_cast<int>(eds_.size()); ++j) {
    const EdCounters& c = eds_[j]->counters();
    retired_.restarts += c.restarts;
    retired_.expiries += c.expiries;
    retired_.budget_failures += c.budget_failures;
    retired_.snapshots += c.snapshots;
    retired_.detaches += c.detaches;
    retired_.split_restarts += c.split_restarts;
  }
  eds_.resize(level);
  graphs_.resize(level + 1);
  budget_.resize(level);
  since_rebuild_.resize(level);
}

int64_t DynHierarchy::RebuildFrom(int level) {
  ++rebuilds_;
  int64_t recourse = 0;
  for (int j = level + 1; j <= depth(); ++j) recourse += graphs_[j]->NumEdges();
  Retire(level);
  Grow();
  for (int j = level + 1; j <= depth(); ++j) recourse += graphs_[j]->NumEdges();
  return recourse;
}

void DynHierarchy::Truncate() {
  for (int i = 0; i < depth(); ++i) {
    if (graphs_[i]->NumEdges() == 0) {
      Retire(i);
      return;
    }
  }
}

UpdateReport DynHierarchy::Insert(int u, int v) {
  const DynGraph& g = *graphs_[0];
  if (!g.HasVertex(u) || !g.HasVertex(v)) {
    Fail(ErrorKind::kNotFound, "insert (" + std::to_string(u) + "," + std::to_string(v) + ") names an unknown vertex");
  }
  return Process({DeltaOp::kInsertEdge, u, v, g.next_origin()});
}

UpdateReport DynHierarchy::Delete(int u, int v) {
  const DynGraph& g = *graphs_[0];
  if (!g.HasVertex(u) || !g.HasVertex(v)) {
    Fail(ErrorKind::kNotFound, "delete (" + std::to_string(u) + "," + std::to_string(v) + ") names an unknown vertex");
  }
  OriginId o = g.FindEdge(u, v);
  if (o < 0) Fail(ErrorKind::kNotFound, "no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return Process({DeltaOp::kDeleteEdge, u, v, o});
}

namespace {

void ApplyRaw(DynGraph& g, const DeltaOp& op) {
  switch (op.kind) {
    case DeltaOp::kDeleteEdge:
      g.DeleteEdgeByOrigin(op.origin);
      break;
    case DeltaOp::kRemoveVertex:
      g.RemoveVertex(op.a);
      break;
    case DeltaOp::kAddVertex:
      g.AddVertexAt(op.a);
      break;
    case DeltaOp::kInsertEdge:
      g.InsertEdgeWithOrigin(op.a, op.b, op.origin);
      break;
  }
}

}  // namespace

UpdateReport DynHierarchy::Process(DeltaOp op) {
  UpdateReport r;
  ++total_updates_;
  std::vector<DeltaOp> ops{op};
  for (int i = 0; !ops.empty(); ++i) {
    if (i == depth()) {
      for (const DeltaOp& x : ops) ApplyRaw(*graphs_[i], x);
      if (graphs_[i]->NumEdges() > 0) {
        Grow();
        for (int j = i + 1; j <= depth(); ++j) r.recourse += graphs_[j]->NumEdges();
      }
      break;
    }
    DeltaBuilder b;
    int64_t edge_ops = 0;
    for (const DeltaOp& x : ops) {
      eds_[i]->Consume(x, b);
      if (x.kind == DeltaOp::kInsertEdge || x.kind == DeltaOp::kDeleteEdge) ++edge_ops;
    }
    since_rebuild_[i] += edge_ops;
    if (since_rebuild_[i] > budget_[i]) {
      r.recourse += RebuildFrom(i);
      r.rebuilt_from = i;
      break;
    }
    RecourseDelta d = b.Finish();
    r.recourse += d.EdgeOps();
    ops = std::move(d.ops);
  }
  Truncate();
  total_recourse_ += r.recourse;
  return r;
}

std::vector<std::pair<int, int>> DynHierarchy::Path(int v) const {
  if (!graphs_[0]->HasVertex(v)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(v));
  std::vector<std::pair<int, int>> path{{0, v}};
  for (int i = 0; i < depth(); ++i) {
    v = eds_[i]->ClusterOf(v);
    path.push_back({i + 1, v});
  }
  return path;
}

bool DynHierarchy::Connected(int u, int v) const {
  if (u == v) {
    if (!graphs_[0]->HasVertex(u)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(u));
    return true;
  }
  return Path(u).back() == Path(v).back();
}

Rational DynHierarchy::Slack() const {
  int h = 0;
  for (const auto& ed : eds_) h = std::max(h, ed->MaxHbar());
  return Power(p_.sigma, h);
}

Hierarchy DynHierarchy::Snapshot() const {
  Hierarchy h;
  h.alpha = p_.alpha;
  h.phi = p_.phi;
  h.slack = Slack();
  for (const auto& g : graphs_) h.graphs.push_back(*g);
  for (const auto& ed : eds_) h.part_of.push_back(ed->PartOf());
  return h;
}

std::vector<LevelStats> DynHierarchy::Stats() const {
  std::vector<LevelStats> out;
  for (int i = 0; i <= depth(); ++i) {
    LevelStats s;
    s.level = i;
    s.vertices = graphs_[i]->NumVertices();
    s.edges = graphs_[i]->NumEdges();
    if (i < depth()) {
      s.clusters = eds_[i]->NumClusters();
      s.updates = since_rebuild_[i];
      s.budget = budget_[i];
      s.max_hbar = eds_[i]->MaxHbar();
    } else {
      s.clusters = s.vertices;
    }
    out.push_back(s);
  }
  return out;
}

EdCounters DynHierarchy::Counters() const {
  EdCounters c = retired_;
  for (const auto& ed : eds_) {
    const EdCounters& x = ed->counters();
    c.restarts += x.restarts;
    c.expiries += x.expiries;
    c.budget_failures += x.budget_failures;
    c.snapshots += x.snapshots;
    c.detaches += x.detaches;
    c.split_restarts += x.split_restarts;
  }
  return c;
}

}  // namespace dynexp
