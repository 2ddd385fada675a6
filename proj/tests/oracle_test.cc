#include <catch2/catch_amalgamated.hpp>

#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/oracle.h"

using namespace dynexp;
using namespace dynexp::oracle;

namespace {

std::vector<int> All(const DynGraph& g) { return g.Vertices(); }

}  // namespace

TEST_CASE("BruteConductance on small graphs") {
  REQUIRE(BruteConductance(Complete(4), All(Complete(4)), Rational(1)).value == Rational(2, 3));
  REQUIRE(BruteConductance(Cycle(4), All(Cycle(4)), Rational(1)).value == Rational(1, 2));
  REQUIRE(BruteConductance(Complete(8), All(Complete(8)), Rational(1)).value == Rational(4, 7));
  DynGraph d = Dumbbell(5);
  ConductanceResult r = BruteConductance(d, All(d), Rational(1));
  REQUIRE(r.value == Rational(1, 21));
  REQUIRE(r.witness.size() == 5);

  DynGraph two(6);
  for (int base : {0, 3}) {
    two.InsertEdge(base, base + 1);
    two.InsertEdge(base + 1, base + 2);
    two.InsertEdge(base, base + 2);
  }
  REQUIRE(BruteConductance(two, All(two), Rational(1)).value == Rational(0));
  REQUIRE(!BruteConductance(DynGraph(1), {0}, Rational(1)).bounded);
  REQUIRE_THROWS_AS(BruteConductance(DynGraph(21), All(DynGraph(21)), Rational(1)), Error);
}

TEST_CASE("CheckWeightedExpander") {
  DynGraph k8 = Complete(8);
  REQUIRE(CheckWeightedExpander(k8, All(k8), Rational(1), Rational(1, 2)).ok);
  DynGraph d = Dumbbell(5);
  ExpanderCheck e = CheckWeightedExpander(d, All(d), Rational(1), Rational(1, 10));
  REQUIRE(!e.ok);
  REQUIRE(e.cut == 1);
  REQUIRE(e.witness.size() == 5);
  REQUIRE(CheckWeightedExpander(DynGraph(1), {0}, Rational(1), Rational(1, 2)).ok);

  SECTION("boundary loops raise degrees") {
    DynGraph p = Path(3);
    REQUIRE(BruteConductance(p, {0, 1}, Rational(0)).value == Rational(1));
    REQUIRE(BruteConductance(p, {0, 1}, Rational(1)).value == Rational(1));
    REQUIRE(BruteConductance(p, {0, 1}, Rational(3)).value == Rational(1));
    REQUIRE(BruteConductance(p, {1, 2}, Rational(3)).value == Rational(1));
  }
}

TEST_CASE("ExactMincutSets") {
  DynGraph tri = Complete(3);
  REQUIRE(ExactMincutSets(tri, {0}, {1}).value == 2);
  DynGraph two(4);
  two.InsertEdge(0, 1);
  two.InsertEdge(2, 3);
  REQUIRE(ExactMincutSets(two, {0}, {2}).value == 0);
  REQUIRE(ExactMincutSets(Complete(4), {0, 1}, {2, 3}).value == 4);
  REQUIRE_THROWS_AS(ExactMincutSets(tri, {0}, {0}), Error);
  DynGraph multi(2);
  multi.InsertEdge(0, 1);
  multi.InsertEdge(0, 1);
  multi.InsertEdge(0, 0);
  REQUIRE(ExactMincutSets(multi, {0}, {1}).value == 2);
}

TEST_CASE("BruteSparsestCut") {
  REQUIRE(BruteSparsestCut(Cycle(6)).value == Rational(2, 3));
  REQUIRE(BruteSparsestCut(Complete(4)).value == Rational(2));
  DynGraph two(4);
  two.InsertEdge(0, 1);
  two.InsertEdge(2, 3);
  REQUIRE(BruteSparsestCut(two).value == Rational(0));
}

TEST_CASE("CheegerLowerBound is a lower bound") {
  Rng rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    int n = static_cast<int>(UniformInt(rng, 2, 12));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 1, 30)));
    std::vector<int> s = All(g);
    ConductanceResult exact = BruteConductance(g, s, Rational(1));
    double bound = CheegerLowerBound(g, s, Rational(1));
    if (exact.bounded) REQUIRE(bound <= exact.value.ToDouble() + 1e-12);
  }
}

TEST_CASE("VerifyTreeDecomposition") {
  DynGraph tri = Complete(3);
  SECTION("single bag") {
    VerificationReport r = VerifyTreeDecomposition(tri, {-1}, {{0, 1, 2}});
    REQUIRE(r.AllPass());
    REQUIRE(r.checks().back().measured == "2");
  }
  SECTION("split occurrences are rejected") {
    DynGraph p = Path(3);
    // Chain of nodes 0 - 1 - 2 with vertex 0 in the two ends only.
    VerificationReport r = VerifyTreeDecomposition(p, {-1, 0, 1}, {{0, 1}, {1, 2}, {0}});
    REQUIRE(!r.AllPass());
    bool flagged = false;
    for (const Check& c : r.checks()) {
      if (c.name == "connected_occurrences" && c.status == Status::kFail) flagged = true;
    }
    REQUIRE(flagged);
  }
  SECTION("missing edge is rejected") {
    VerificationReport r = VerifyTreeDecomposition(tri, {-1, 0}, {{0, 1}, {1, 2}});
    REQUIRE(!r.AllPass());
  }
}

TEST_CASE("ExactTreewidth") {
  REQUIRE(ExactTreewidth(Complete(4)) == 3);
  REQUIRE(ExactTreewidth(Cycle(5)) == 2);
  REQUIRE(ExactTreewidth(Path(6)) == 1);
  REQUIRE(ExactTreewidth(DynGraph(3)) == 0);
  DynGraph grid(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) grid.InsertEdge(3 * r + c, 3 * r + c + 1);
      if (r + 1 < 3) grid.InsertEdge(3 * r + c, 3 * r + c + 3);
    }
  }
  REQUIRE(ExactTreewidth(grid) == 3);
}

TEST_CASE("NearExpansion counts edges leaving A") {
  // Path 0-1-2 with A = {0, 1}: S = {0} has one edge out of vol 1, S = {1}
  // has two edges out of vol 2.
  DynGraph p = Path(3);
  ConductanceResult r = NearExpansion(p, {0, 1});
  REQUIRE(r.bounded);
  REQUIRE(r.value == Rational(1));
  // Dumbbell halves are poorly attached to each other.
  DynGraph d = Dumbbell(4);
  ConductanceResult all = NearExpansion(d, d.Vertices());
  REQUIRE(all.value == Rational(1, 13));
  REQUIRE(all.witness.size() == 4);
  REQUIRE_FALSE(NearExpansion(DynGraph(2), {0}).bounded);
}

TEST_CASE("ResidualFeasible") {
  DynGraph g = Path(3);
  std::vector<char> none(3, 0);
  REQUIRE(ResidualFeasible(g, none, {1, 0, 0}, 1, 1));
  // Three units at an end vertex of degree 1: one absorbed, one crosses.
  REQUIRE_FALSE(ResidualFeasible(g, none, {3, 0, 0}, 1, 1));
  REQUIRE(ResidualFeasible(g, none, {3, 0, 0}, 2, 1));
  // Pruning vertex 0 turns its edge into c units of source at vertex 1.
  std::vector<char> p0{1, 0, 0};
  REQUIRE(ResidualFeasible(g, p0, {100, 0, 0}, 1, 1));
  REQUIRE_FALSE(ResidualFeasible(g, p0, {0, 0, 0}, 4, 1));
}

TEST_CASE("tree brute forces") {
  // Star: root 3 over leaves 0, 1, 2 with capacities 1, 2, 1.
  std::vector<int> parent{3, 3, 3, -1};
  std::vector<int64_t> cap{1, 2, 1, 0};
  std::vector<char> leaf{1, 1, 1, 0};
  REQUIRE(BruteTreeSparsestCut(parent, cap, leaf) == Rational(1));
  REQUIRE(BruteTreeMultiwayCut(parent, cap, {0, 1, 2}) == 1 + 1);  // the two cheapest edges
  REQUIRE(BruteTreeMultiwayCut(parent, cap, {0, 2}) == 1);
  REQUIRE(TreeMincutByFlow(parent, cap, {0}, {1, 2}) == 1);
  REQUIRE(TreeMincutByFlow(parent, cap, {1}, {0, 2}) == 2);
  // Two trees: disconnected, sparsity 0 and free multiway cut.
  std::vector<int> forest{-1, -1};
  REQUIRE(BruteTreeSparsestCut(forest, {0, 0}, {1, 1}) == Rational(0));
  REQUIRE(BruteTreeMultiwayCut(forest, {0, 0}, {0, 1}) == 0);
  REQUIRE_THROWS_AS(BruteTreeSparsestCut({-1}, {0}, {1}), Error);
}
