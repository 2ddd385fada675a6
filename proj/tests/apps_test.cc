#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dynexp/apps.h"
#include "dynexp/contract.h"
#include "dynexp/decomposition.h"
#include "dynexp/dyn_hierarchy.h"
#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/oracle.h"

using namespace dynexp;

namespace {

Hierarchy Static(const DynGraph& g) {
  HierarchyConfig cfg;
  int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
  cfg.decomp.alpha = MaxAdmissibleAlpha(m, DefaultGammaKrv(m));
  cfg.decomp.phi = Rational(1, 64);
  return BuildStaticHierarchy(g, cfg);
}

// Every vertex of g in one cluster on top of g.
Hierarchy OneCluster(const DynGraph& g) {
  Hierarchy h;
  h.alpha = Rational(1, 64);
  h.phi = Rational(1, 64);
  h.graphs.push_back(g);
  h.part_of.push_back(std::vector<int>(g.NumVertexSlots(), 0));
  h.graphs.push_back(DynGraph(1));
  return h;
}

// Random chain of contractions, not necessarily ending edgeless.
Hierarchy RandomChain(Rng& rng, int n, int m, int levels) {
  Hierarchy h;
  h.alpha = Rational(1, 64);
  h.phi = Rational(1, 64);
  h.graphs.push_back(RandomMultigraph(rng, n, m));
  for (int i = 0; i < levels && h.graphs.back().NumVertices() > 1; ++i) {
    const DynGraph& top = h.graphs.back();
    int parts = static_cast<int>(UniformInt(rng, 1, std::max(1, top.NumVertices() - 1)));
    std::vector<std::vector<int>> partition(parts);
    for (int v : top.Vertices()) partition[UniformInt(rng, 0, parts - 1)].push_back(v);
    partition.erase(std::remove_if(partition.begin(), partition.end(), [](auto& p) { return p.empty(); }),
                    partition.end());
    ContractedGraph c = Contract(top, partition);
    h.part_of.push_back(std::move(c.part_of));
    h.graphs.push_back(std::move(c.graph));
  }
  return h;
}

std::vector<int> NodesOf(const CapTree& t, const std::vector<int>& vertices) {
  std::vector<int> out;
  for (int v : vertices) out.push_back(t.LeafNode(v));
  return out;
}

std::vector<char> LeafFlags(const CapTree& t) {
  std::vector<char> out;
  for (const CapNode& n : t.nodes()) out.push_back(n.level == 0);
  return out;
}

}  // namespace

TEST_CASE("triangle gives a star with capacities 2") {
  CapTree t = CapTree::Build(Static(Complete(3)));
  REQUIRE(t.NumNodes() == 4);
  REQUIRE(t.NumLeaves() == 3);
  for (int v = 0; v < 3; ++v) {
    REQUIRE(t.node(t.LeafNode(v)).cap == 2);
    REQUIRE(t.node(t.LeafNode(v)).parent == 3);
  }
  REQUIRE(t.node(3).leaves == 3);
  REQUIRE(t.LeafCountsConsistent());
  REQUIRE(StCutEstimate(t, 0, 1) == 2);
  REQUIRE(oracle::ExactMincutSets(Complete(3), {0}, {1}).value == 2);
  REQUIRE(StCutEstimate(t, 1, 1) == kInfiniteCapacity);
}

TEST_CASE("path in one cluster gives capacities 1, 2, 1") {
  DynGraph g = Path(3);
  CapTree t = CapTree::Build(OneCluster(g));
  REQUIRE(t.Capacities() == std::vector<int64_t>{1, 2, 1, 0});
  REQUIRE(StCutEstimate(t, 0, 2) == 1);
  REQUIRE(oracle::ExactMincutSets(g, {0}, {2}).value == 1);
  SparseEdge sc = TreeSparsestCut(t);
  REQUIRE(sc.sparsity == Rational(1));
  REQUIRE(sc.node == 0);
}

TEST_CASE("edgeless graph gives isolated roots") {
  DynGraph g(4);
  CapTree t = CapTree::Build(Static(g));
  REQUIRE(t.NumNodes() == 4);
  REQUIRE(t.Roots().size() == 4);
  REQUIRE(StCutEstimate(t, 0, 1) == 0);
  REQUIRE(TreeSparsestCut(t).sparsity == Rational(0));
  REQUIRE(TreeMultiwayCut(t, {0, 1, 3}).value == 0);
  std::vector<std::vector<int>> bags = TreewidthBags(Static(g));
  for (int v = 0; v < 4; ++v) REQUIRE(bags[v] == std::vector<int>{v});
}

TEST_CASE("vertex sparsifier keeps terminal paths") {
  Rng rng(3);
  Hierarchy h = RandomChain(rng, 12, 30, 3);
  CapTree t = CapTree::Build(h);
  CapTree all = VertexSparsifier(t, t.LeafVertices());
  REQUIRE(all.NumNodes() == t.NumNodes());
  REQUIRE(all.Capacities() == t.Capacities());
  CapTree two = VertexSparsifier(t, {2, 7});
  REQUIRE(two.NumLeaves() == 2);
  REQUIRE(two.NumNodes() <= 2 * (h.depth() + 1));
  REQUIRE(two.LeafCountsConsistent());
  REQUIRE(StCutEstimate(two, 2, 7) == StCutEstimate(t, 2, 7));
  for (int k = 1; k <= 6; ++k) {
    std::vector<int> c;
    for (int i = 0; i < k; ++i) c.push_back(i * 2);
    REQUIRE(VertexSparsifier(t, c).NumNodes() <= k * (h.depth() + 1));
  }
  REQUIRE_THROWS_AS(VertexSparsifier(t, {40}), Error);
  REQUIRE_THROWS_AS(VertexSparsifier(t, {}), Error);
}

TEST_CASE("tree congestion") {
  CapTree t = CapTree::Build(Static(Complete(3)));
  REQUIRE(TreeCongestion(t, {}).value == Rational(0));
  Congestion c = TreeCongestion(t, {{0, 1, Rational(2)}});
  REQUIRE_FALSE(c.infinite);
  REQUIRE(c.value == Rational(1));
  std::vector<Demand> d{{0, 1, Rational(3, 2)}, {2, 1, Rational(1, 3)}};
  Congestion base = TreeCongestion(t, d);
  for (Demand& x : d) x.amount = x.amount * Rational(2);
  REQUIRE(TreeCongestion(t, d).value == base.value * Rational(2));
  REQUIRE_THROWS_AS(TreeCongestion(t, {{0, 1, Rational(-1)}}), Error);

  DynGraph g(3);
  g.InsertEdge(0, 1);
  CapTree z = CapTree::Build(OneCluster(g));
  REQUIRE(TreeCongestion(z, {{0, 2, Rational(1)}}).infinite);
  REQUIRE_FALSE(TreeCongestion(z, {{0, 1, Rational(1)}}).infinite);
}

TEST_CASE("sparsest cut over tree edges matches enumeration") {
  REQUIRE_THROWS_AS(TreeSparsestCut(CapTree::Build(Static(DynGraph(1)))), Error);
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 10));
    CapTree t = CapTree::Build(RandomChain(rng, n, static_cast<int>(UniformInt(rng, 1, 3 * n)), 3));
    REQUIRE(TreeSparsestCut(t).sparsity == oracle::BruteTreeSparsestCut(t.Parents(), t.Capacities(), LeafFlags(t)));
  }
}

TEST_CASE("multiway cut dynamic program matches enumeration") {
  // Star with terminals on k leaves: the k-1 cheapest terminal edges.
  DynGraph g(5);
  for (int i = 0; i < 3; ++i) g.InsertEdge(0, 1);
  for (int i = 0; i < 5; ++i) g.InsertEdge(2, 3);
  g.InsertEdge(1, 4);
  CapTree star = CapTree::Build(OneCluster(g));
  REQUIRE(star.Capacities() == std::vector<int64_t>{3, 4, 5, 5, 1, 0});
  REQUIRE(TreeMultiwayCut(star, {0, 1, 2}).value == 3 + 4);
  REQUIRE(TreeMultiwayCut(star, {0, 2}).value == StCutEstimate(star, 0, 2));
  REQUIRE_THROWS_AS(TreeMultiwayCut(star, {1}), Error);
  REQUIRE_THROWS_AS(TreeMultiwayCut(star, {1, 1}), Error);

  Rng rng(23);
  int audited = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 7));
    Hierarchy h = RandomChain(rng, n, static_cast<int>(UniformInt(rng, 1, 3 * n)), 3);
    CapTree t = CapTree::Build(h);
    if (t.NumNodes() - static_cast<int>(t.Roots().size()) > 12) continue;
    std::vector<int> term;
    for (int v : t.LeafVertices()) {
      if (UniformInt(rng, 0, 1) == 1) term.push_back(v);
    }
    if (term.size() < 2) continue;
    MultiwayCut mc = TreeMultiwayCut(t, term);
    REQUIRE(mc.value == oracle::BruteTreeMultiwayCut(t.Parents(), t.Capacities(), NodesOf(t, term)));
    int64_t sum = 0;
    for (int e : mc.edges) sum += t.node(e).cap;
    REQUIRE(sum == mc.value);
    ++audited;
  }
  REQUIRE(audited > 50);
}

TEST_CASE("tree mincut dynamic program matches max-flow on the tree") {
  Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 3, 12));
    CapTree t = CapTree::Build(RandomChain(rng, n, static_cast<int>(UniformInt(rng, 1, 3 * n)), 4));
    std::vector<int> a, b;
    for (int v : t.LeafVertices()) {
      int64_t side = UniformInt(rng, 0, 2);
      if (side == 0) a.push_back(v);
      if (side == 1) b.push_back(v);
    }
    if (a.empty() || b.empty()) continue;
    REQUIRE(TreeMincutSets(t, a, b) == oracle::TreeMincutByFlow(t.Parents(), t.Capacities(), NodesOf(t, a), NodesOf(t, b)));
  }
}

TEST_CASE("tree cuts never undercut the graph") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 4, 14));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, n, 3 * n)));
    CapTree t = CapTree::Build(Static(g));
    for (int s = 0; s < n; ++s) {
      int u = (s + 1) % n;
      REQUIRE(StCutEstimate(t, s, u) >= oracle::ExactMincutSets(g, {s}, {u}).value);
    }
    REQUIRE(TreeMincutSets(t, {0, 1}, {2, 3}) >= oracle::ExactMincutSets(g, {0, 1}, {2, 3}).value);
  }
}

TEST_CASE("treewidth bags") {
  std::vector<std::vector<int>> bags = TreewidthBags(Static(Complete(3)));
  REQUIRE(bags[0] == std::vector<int>{0, 1, 2});
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 30));
    DynGraph g = RandomBoundedDegree(rng, n, 4, 3 * n);
    Hierarchy h = Static(g);
    CapTree t = CapTree::Build(h);
    oracle::VerificationReport rep = oracle::VerifyTreeDecomposition(g, t.Parents(), TreewidthBags(h));
    INFO(rep.ToJson().dump());
    REQUIRE(rep.AllPass());
  }
}

TEST_CASE("bags from a dynamic snapshot stay valid") {
  Rng rng(37);
  DynGraph g = RandomBoundedDegree(rng, 20, 4, 60);
  DynHierarchy dh(g, DynParams{});
  for (int i = 0; i < 30; ++i) {
    if (i % 3 == 0 && dh.graph(0).NumEdges() > 0) {
      Edge e = dh.graph(0).Edges().front();
      dh.Delete(e.u, e.v);
    } else {
      int a = static_cast<int>(UniformInt(rng, 0, 19));
      int b = (a + static_cast<int>(UniformInt(rng, 1, 19))) % 20;
      dh.Insert(a, b);
    }
  }
  Hierarchy h = dh.Snapshot();
  CapTree t = CapTree::Build(dh);
  for (int v = 0; v < 20; ++v) REQUIRE(t.node(t.LeafNode(v)).cap == dh.graph(0).Degree(v));
  REQUIRE(oracle::VerifyTreeDecomposition(dh.graph(0), t.Parents(), TreewidthBags(h)).AllPass());
}

TEST_CASE("quality formula") {
  Hierarchy h = Static(Complete(8));
  REQUIRE(h.depth() == 1);
  QualityReport r = MakeQualityReport(h, 1.0);
  double inv = std::max(1.0 / h.alpha.ToDouble(), 1.0 / h.phi.ToDouble());
  REQUIRE(r.value == Catch::Approx(std::log2(28.0) * inv));
  h.slack = Rational(2);
  REQUIRE(MakeQualityReport(h, 1.0).value == Catch::Approx(2 * r.value));
  REQUIRE(QualityFormula(r) == r.value);
}

TEST_CASE("serialization") {
  CapTree t = CapTree::Build(Static(Complete(3)));
  std::ostringstream out;
  WriteCapTree(out, t);
  REQUIRE(out.str().find("node 0 level 0 parent 3 cap 2\n") != std::string::npos);
  REQUIRE(out.str().find("node 3 level 1 parent - cap 0\n") != std::string::npos);
  std::ostringstream bags;
  WriteBags(bags, TreewidthBags(Static(Complete(3))));
  REQUIRE(bags.str().find("bag 0: 0 1 2\n") != std::string::npos);
}
