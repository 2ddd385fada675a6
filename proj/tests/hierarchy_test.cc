#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dynexp/decomposition.h"
#include "dynexp/generators.h"
#include "dynexp/hierarchy.h"
#include "dynexp/oracle.h"

using namespace dynexp;

namespace {

HierarchyConfig Config(const DynGraph& g, Rational phi) {
  HierarchyConfig cfg;
  int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
  cfg.decomp.alpha = MaxAdmissibleAlpha(m, DefaultGammaKrv(m));
  cfg.decomp.phi = phi;
  return cfg;
}

}  // namespace

TEST_CASE("K8 contracts to a single vertex") {
  DynGraph g = Complete(8);
  Hierarchy h = BuildStaticHierarchy(g, Config(g, Rational(1, 64)));
  REQUIRE(h.depth() == 1);
  REQUIRE(h.graphs[1].NumVertices() == 1);
  REQUIRE(h.graphs[1].NumEdges() == 0);
  for (int v = 0; v < 8; ++v) {
    REQUIRE(h.Capacity(0, v) == 7);
    REQUIRE(h.Parent(0, v) == h.Parent(0, 0));
  }
  auto path = h.Path(5);
  REQUIRE(path.size() == 2);
  REQUIRE(path[0] == std::make_pair(0, 5));
}

TEST_CASE("edgeless graph is its own top level") {
  DynGraph g(4);
  Hierarchy h = BuildStaticHierarchy(g, Config(g, Rational(1, 64)));
  REQUIRE(h.depth() == 0);
  REQUIRE(h.Path(2).size() == 1);
}

TEST_CASE("every level of a random hierarchy passes the oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    DynGraph g = RandomMultigraph(rng, 50, 150);
    Hierarchy h = BuildStaticHierarchy(g, Config(g, Rational(1, 64)));
    REQUIRE(h.depth() >= 1);
    REQUIRE(h.graphs.back().NumEdges() == 0);
    for (int i = 0; i < h.depth(); ++i) {
      oracle::VerificationReport rep = oracle::VerifyDecomposition(h.graphs[i], h.graphs[i].Vertices(), h.decomps[i]);
      INFO(rep.ToJson().dump());
      REQUIRE(rep.AllPass());
      REQUIRE(oracle::VerifyContraction(h.graphs[i], h.part_of[i], h.graphs[i + 1]).AllPass());
    }
  }
}

TEST_CASE("hierarchy serialization lists tree edges with capacities") {
  DynGraph g = Complete(3);
  Hierarchy h = BuildStaticHierarchy(g, Config(g, Rational(1, 64)));
  std::ostringstream out;
  WriteHierarchy(out, h);
  std::string text = out.str();
  REQUIRE(text.find("level 0 cluster 0") != std::string::npos);
  REQUIRE(text.find("tree 0:0 1:0 cap 2") != std::string::npos);
}

TEST_CASE("contraction oracle catches a corrupted level") {
  DynGraph g = Complete(4);
  std::vector<int> part{0, 0, 1, 1};
  DynGraph c(2);
  REQUIRE_FALSE(oracle::VerifyContraction(g, part, c).AllPass());
}
