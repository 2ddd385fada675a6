#include <catch2/catch_amalgamated.hpp>

#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/inc_flow.h"

using namespace dynexp;

namespace {

WeightedView Whole(const DynGraph& g) { return WeightedView(g, g.Vertices(), Rational(1)); }

}  // namespace

TEST_CASE("IncFlow basics") {
  DynGraph c6 = Cycle(6);
  IncFlow f(Whole(c6), 100, 1);
  REQUIRE(f.Pruned().empty());
  for (int v = 0; v < 6; ++v) REQUIRE(f.Sink(v) == 2);
  REQUIRE(f.CertifyResidualFeasible().feasible);
  REQUIRE(f.Inject(0, 4).empty());
  REQUIRE(f.Pruned().empty());
  REQUIRE(f.CertifyResidualFeasible().feasible);
  REQUIRE(!f.GuaranteeVoid());
  REQUIRE_THROWS_AS(IncFlow(Whole(c6), 0, 1), Error);
}

TEST_CASE("IncFlow prunes a trapped pendant") {
  // Path 0-1-2 hanging off a K5 through vertex 2; capacity 1 per edge.
  DynGraph g(7);
  g.InsertEdge(0, 1);
  g.InsertEdge(1, 2);
  for (int u = 2; u < 7; ++u) {
    for (int v = u + 1; v < 7; ++v) g.InsertEdge(u, v);
  }
  IncFlow f(Whole(g), 1, 1);
  std::vector<int> newly = f.Inject(0, 3);
  // Vertex 0 absorbs 1, vertex 1 absorbs 1 of what crosses edge (0,1) with
  // capacity 1; the last unit is stuck behind that edge.
  REQUIRE(newly == std::vector<int>{0});
  REQUIRE(f.PrunedVolume() == 1);
  REQUIRE(f.PrunedBoundary() == 1);
  REQUIRE(f.CertifyResidualFeasible().feasible);
}

TEST_CASE("IncFlow bounds and feasibility on random sequences") {
  Rng rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    int n = static_cast<int>(UniformInt(rng, 2, 30));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, n, 3 * n)));
    WeightedView view = Whole(g);
    int64_t scale = UniformInt(rng, 1, 3);
    int64_t c = UniformInt(rng, 1, 8);
    IncFlow f(view, c, scale);
    std::vector<char> before(n, 0);
    while (true) {
      int v = static_cast<int>(UniformInt(rng, 0, n - 1));
      int64_t amount = UniformInt(rng, 1, 4 * scale);
      if (3 * (f.TotalSource() + amount) > view.Volume() * scale) break;
      f.Inject(v, amount);
      for (int x = 0; x < n; ++x) {
        REQUIRE((!before[x] || f.IsPruned(x)));
        before[x] = f.IsPruned(x);
      }
      REQUIRE(f.PrunedVolume() * scale <= 2 * f.TotalSource());
      REQUIRE(f.PrunedBoundary() * c <= 2 * f.TotalSource());
      REQUIRE(f.CertifyResidualFeasible().feasible);
    }
  }
}

TEST_CASE("IncFlow flags the void regime") {
  DynGraph g = Path(2);
  IncFlow f(Whole(g), 1, 1);
  f.Inject(0, 1);
  REQUIRE(f.GuaranteeVoid());
  f.Inject(0, 5);
  REQUIRE(f.IsPruned(0));
}
