#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "dynexp/contract.h"
#include "dynexp/dyn_graph.h"
#include "dynexp/error.h"
#include "dynexp/graph_io.h"
#include "dynexp/rational.h"
#include "dynexp/weighted_view.h"

using namespace dynexp;

TEST_CASE("Rational arithmetic") {
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(-3, -6) == Rational(1, 2));
  REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  REQUIRE(Rational(7, 2).Ceil() == 4);
  REQUIRE(Rational(-7, 2).Ceil() == -3);
  REQUIRE(Rational(1, 64).Ceil() == 1);
  REQUIRE(Rational(0).Ceil() == 0);
  REQUIRE(Rational(-7, 2).Floor() == -4);
  REQUIRE(Rational::Parse("3/9") == Rational(1, 3));
  REQUIRE(Rational::Parse("5") == Rational(5));
  REQUIRE_THROWS_AS(Rational::Parse("x/2"), Error);
  REQUIRE_THROWS_AS(Rational(1, 0), Error);
  REQUIRE(ScaledAtLeast(Rational(1, 2), 4, Rational(1, 3), 6));
  REQUIRE(!ScaledAtLeast(Rational(1, 2), 3, Rational(1, 3), 6));
}

TEST_CASE("DynGraph degree conventions") {
  SECTION("insert edge") {
    DynGraph g(2);
    g.InsertEdge(0, 1);
    REQUIRE(g.Degree(0) == 1);
    REQUIRE(g.Degree(1) == 1);
  }
  SECTION("self-loop adds one") {
    DynGraph g(1);
    g.InsertEdge(0, 0);
    REQUIRE(g.Degree(0) == 1);
    REQUIRE(g.Volume({0}) == 1);
  }
  SECTION("parallel edge deletion removes one copy") {
    DynGraph g(2);
    g.InsertEdge(0, 1);
    g.InsertEdge(0, 1);
    g.DeleteEdge(1, 0);
    REQUIRE(g.Multiplicity(0, 1) == 1);
    REQUIRE(g.Degree(0) == 1);
    REQUIRE(g.NumEdges() == 1);
  }
  SECTION("errors") {
    DynGraph g(2);
    REQUIRE_THROWS_AS(g.DeleteEdge(0, 1), Error);
    REQUIRE_THROWS_AS(g.InsertEdge(0, 5), Error);
    g.InsertEdge(0, 1);
    REQUIRE_THROWS_AS(g.RemoveVertex(0), Error);
  }
  SECTION("origin ids are monotone and survive deletions of others") {
    DynGraph g(3);
    OriginId a = g.InsertEdge(0, 1);
    OriginId b = g.InsertEdge(1, 2);
    g.DeleteEdge(0, 1);
    OriginId c = g.InsertEdge(0, 2);
    REQUIRE(a < b);
    REQUIRE(b < c);
    REQUIRE(g.EdgeByOrigin(b).u == 1);
  }
  SECTION("isolated vertex add and remove") {
    DynGraph g(2);
    int v = g.AddVertex();
    REQUIRE(v == 2);
    REQUIRE(g.NumVertices() == 3);
    g.RemoveVertex(v);
    REQUIRE(!g.HasVertex(v));
    REQUIRE(g.AddVertex() == v);
  }
}

TEST_CASE("DynGraph counters match recomputation under random updates") {
  std::mt19937_64 rng(7);
  const int n = 12;
  DynGraph g(n);
  for (int step = 0; step < 3000; ++step) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (rng() % 3 == 0 && g.Multiplicity(u, v) > 0) {
      g.DeleteEdge(u, v);
    } else {
      g.InsertEdge(u, v);
    }
    if (step % 100 == 0) {
      std::vector<int> deg(n, 0);
      for (const Edge& e : g.Edges()) {
        ++deg[e.u];
        if (e.u != e.v) ++deg[e.v];
      }
      for (int x = 0; x < n; ++x) REQUIRE(deg[x] == g.Degree(x));
    }
  }
}

namespace {

DynGraph Triangle() {
  DynGraph g(3);
  g.InsertEdge(0, 1);
  g.InsertEdge(1, 2);
  g.InsertEdge(0, 2);
  return g;
}

DynGraph RandomMultigraph(std::mt19937_64& rng, int n, int m) {
  DynGraph g(n);
  for (int i = 0; i < m; ++i) g.InsertEdge(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
  return g;
}

}  // namespace

TEST_CASE("WeightedView degrees") {
  DynGraph g = Triangle();
  SECTION("w = 2 on a triangle pair") {
    WeightedView h(g, {0, 1}, Rational(2));
    REQUIRE(h.Degree(h.Local(0)) == 3);
  }
  SECTION("w = 0 is the induced subgraph") {
    WeightedView h(g, {0, 1}, Rational(0));
    REQUIRE(h.Degree(0) == 1);
    REQUIRE(h.Degree(1) == 1);
  }
  SECTION("w = 1 keeps degrees") {
    WeightedView h(g, {0, 1}, Rational(1));
    REQUIRE(h.Degree(0) == g.Degree(0));
    REQUIRE(h.Degree(1) == g.Degree(1));
  }
  SECTION("unknown vertex") { REQUIRE_THROWS_AS(WeightedView(g, {0, 7}, Rational(1)), Error); }
}

TEST_CASE("WeightedView volume formula on random sets") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 2 + static_cast<int>(rng() % 14);
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(rng() % 40));
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (rng() % 2) s.push_back(v);
    }
    if (s.empty()) s.push_back(0);
    Rational w(static_cast<int64_t>(rng() % 7), 1 + static_cast<int64_t>(rng() % 3));
    WeightedView h(g, s, w);
    std::vector<char> in = MaskOf(n, s);
    int64_t induced = 0;
    g.ForEachEdge([&](const Edge& e) {
      if (in[e.u] && in[e.v]) induced += e.IsLoop() ? 1 : 2;
    });
    REQUIRE(h.Volume() == induced + w.Ceil() * CountOut(g, s));
  }
}

TEST_CASE("Contract") {
  SECTION("C4 into two pairs") {
    DynGraph g(4);
    g.InsertEdge(0, 1);
    g.InsertEdge(1, 2);
    g.InsertEdge(2, 3);
    g.InsertEdge(3, 0);
    ContractedGraph c = Contract(g, {{0, 1}, {2, 3}});
    REQUIRE(c.graph.NumVertices() == 2);
    REQUIRE(c.graph.NumEdges() == 2);
    REQUIRE(c.graph.Multiplicity(0, 1) == 2);
  }
  SECTION("singletons drop self-loops only") {
    DynGraph g(3);
    g.InsertEdge(0, 1);
    g.InsertEdge(1, 1);
    g.InsertEdge(1, 2);
    ContractedGraph c = Contract(g, {{0}, {1}, {2}});
    REQUIRE(c.graph.NumEdges() == 2);
    REQUIRE(c.graph.HasOrigin(0));
    REQUIRE(!c.graph.HasOrigin(1));
    REQUIRE(c.graph.HasOrigin(2));
  }
  SECTION("single part") {
    ContractedGraph c = Contract(Triangle(), {{0, 1, 2}});
    REQUIRE(c.graph.NumVertices() == 1);
    REQUIRE(c.graph.NumEdges() == 0);
  }
  SECTION("bad partitions") {
    REQUIRE_THROWS_AS(Contract(Triangle(), {{0, 1}, {1, 2}}), Error);
    REQUIRE_THROWS_AS(Contract(Triangle(), {{0, 1}}), Error);
  }
  SECTION("volume equals total boundary on random partitions") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 100; ++iter) {
      int n = 1 + static_cast<int>(rng() % 15);
      DynGraph g = RandomMultigraph(rng, n, static_cast<int>(rng() % 40));
      int k = 1 + static_cast<int>(rng() % n);
      std::vector<std::vector<int>> parts(k);
      for (int v = 0; v < n; ++v) parts[rng() % k].push_back(v);
      int64_t total_out = 0;
      for (const auto& p : parts) total_out += CountOut(g, p);
      ContractedGraph c = Contract(g, parts);
      int64_t vol = 0;
      for (int x = 0; x < k; ++x) vol += c.graph.Degree(x);
      REQUIRE(vol == total_out);
    }
  }
}

TEST_CASE("Graph text format") {
  std::istringstream in("3 4\n0 1\n1 2\n0 1\n2 2\n");
  DynGraph g = ReadGraph(in);
  REQUIRE(g.NumVertices() == 3);
  REQUIRE(g.Multiplicity(0, 1) == 2);
  REQUIRE(g.Degree(2) == 2);
  std::ostringstream out;
  WriteGraph(out, g);
  std::istringstream back(out.str());
  REQUIRE(ReadGraph(back).NumEdges() == 4);

  std::istringstream bad("3 2\n0 1\nx y z\n");
  try {
    ReadGraph(bad);
    FAIL("expected parse error");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::kParse);
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
