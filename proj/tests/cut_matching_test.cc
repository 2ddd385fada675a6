#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "dynexp/cut_matching.h"
#include "dynexp/decomposition.h"
#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/oracle.h"

using namespace dynexp;

namespace {

WeightedView Whole(const DynGraph& g) { return WeightedView(g, g.Vertices(), Rational(1)); }

Rational CutConductance(const WeightedView& h, const std::vector<int>& side) {
  std::vector<char> mask(h.Size(), 0);
  for (int x : side) mask[x] = 1;
  int64_t vs = h.Volume(side);
  return Rational(h.Cut(mask), std::min(vs, h.Volume() - vs));
}

// Independent near-expander check by plain subset enumeration.
bool NearExpanderBrute(const WeightedView& h, const std::vector<int>& a, const Rational& target) {
  int k = static_cast<int>(a.size());
  int64_t vol_a = h.Volume(a);
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<char> side(h.Size(), 0);
    std::vector<int> s;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        side[a[i]] = 1;
        s.push_back(a[i]);
      }
    }
    int64_t vs = h.Volume(s);
    if (2 * vs > vol_a) continue;
    if (Rational(h.Cut(side)) < target * Rational(vs)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact sparsest cut agrees with the oracle") {
  REQUIRE(ExactSparsestCutSmall(Whole(Complete(4))).conductance == Rational(2, 3));
  REQUIRE(ExactSparsestCutSmall(Whole(Cycle(4))).conductance == Rational(1, 2));
  REQUIRE(ExactSparsestCutSmall(Whole(Dumbbell(5))).conductance == Rational(1, 21));
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 2, 10));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 0, 3 * n)));
    SparsestCut sc = ExactSparsestCutSmall(Whole(g));
    oracle::ConductanceResult br = oracle::BruteConductance(g, g.Vertices(), Rational(1));
    REQUIRE(sc.bounded == br.bounded);
    if (sc.bounded) REQUIRE(sc.conductance == br.value);
  }
  REQUIRE_THROWS_AS(ExactSparsestCutSmall(Whole(Cycle(21))), Error);
}

TEST_CASE("dumbbell never certifies at phi 0.3") {
  DynGraph g = Dumbbell(5);
  WeightedView h = Whole(g);
  int64_t gamma = DefaultGammaKrv(h.Volume());
  Rational phi(3, 10);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    CutMatchResult r = CutOrCertify(h, phi, gamma, seed);
    REQUIRE(r.kind != CutMatchCase::kCertified);
    REQUIRE(CaseInequalitiesHold(h, r, phi, gamma));
    REQUIRE(CutConductance(h, r.a_bar) <= Rational(gamma) * phi);
  }
}

TEST_CASE("K8 at phi 1/20 is certified") {
  DynGraph g = Complete(8);
  WeightedView h = Whole(g);
  int64_t gamma = DefaultGammaKrv(h.Volume());
  CutMatchResult r = CutOrCertify(h, Rational(1, 20), gamma, 3);
  REQUIRE(r.kind == CutMatchCase::kCertified);
  REQUIRE(r.exact);
  REQUIRE(oracle::BruteConductance(g, g.Vertices(), Rational(1)).value >= Rational(8, 20));
}

TEST_CASE("disconnected views split without crossing edges") {
  DynGraph g(6);
  g.InsertEdge(0, 1);
  g.InsertEdge(1, 2);
  g.InsertEdge(2, 0);
  g.InsertEdge(3, 4);
  g.InsertEdge(4, 5);
  g.InsertEdge(5, 3);
  WeightedView h = Whole(g);
  CutMatchResult r = CutOrCertify(h, Rational(1, 16), 8, 1);
  REQUIRE(r.crossing_free);
  REQUIRE(r.cut == 0);
  REQUIRE(r.a.size() == 3);
  REQUIRE(r.a_bar.size() == 3);
}

TEST_CASE("exact player cases hold on random small views") {
  Rng rng(11);
  int unbalanced = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 4, 12));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, n, 4 * n)));
    WeightedView h = Whole(g);
    if (h.Components().size() > 1) continue;
    Rational phi(1, static_cast<int64_t>(UniformInt(rng, 3, 40)));
    int64_t gamma = UniformInt(rng, 8, 12);
    CutMatchResult r = CutOrCertify(h, phi, gamma, 1);
    REQUIRE(r.exact);
    REQUIRE(CaseInequalitiesHold(h, r, phi, gamma));
    if (r.kind == CutMatchCase::kCertified) {
      REQUIRE(oracle::BruteConductance(g, g.Vertices(), Rational(1)).value >= Rational(8) * phi);
    } else {
      REQUIRE(oracle::BruteConductance(g, g.Vertices(), Rational(1)).value < Rational(8) * phi);
    }
    if (r.kind == CutMatchCase::kUnbalanced) {
      ++unbalanced;
      REQUIRE(NearExpanderBrute(h, r.a, Rational(8) * phi));
    }
  }
  INFO("unbalanced results seen: " << unbalanced);
  SUCCEED();
}

TEST_CASE("randomized player on larger views") {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    DynGraph g = trial % 2 ? Dumbbell(12) : RandomSimple(rng, 40, 160);
    WeightedView h = Whole(g);
    if (h.Components().size() > 1) continue;
    Rational phi(1, 16);
    int64_t gamma = DefaultGammaKrv(h.Volume());
    CutMatchResult r = CutOrCertify(h, phi, gamma, 100 + trial);
    REQUIRE(!r.exact);
    REQUIRE(r.rounds > 0);
    REQUIRE(CaseInequalitiesHold(h, r, phi, gamma));
    if (trial % 2) REQUIRE(r.kind != CutMatchCase::kCertified);
    CutMatchResult again = CutOrCertify(h, phi, gamma, 100 + trial);
    REQUIRE(again.kind == r.kind);
    REQUIRE(again.a == r.a);
    REQUIRE(again.a_bar == r.a_bar);
  }
}

TEST_CASE("cut_or_certify rejects bad parameters") {
  WeightedView h = Whole(Cycle(5));
  REQUIRE_THROWS_AS(CutOrCertify(h, Rational(1, 2), 8, 1), Error);
  REQUIRE_THROWS_AS(CutOrCertify(h, Rational(0), 8, 1), Error);
  REQUIRE_THROWS_AS(CutOrCertify(h, Rational(1, 8), 7, 1), Error);
}
