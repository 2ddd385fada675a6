#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "dynexp/decomposition.h"
#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/oracle.h"

using namespace dynexp;

namespace {

WeightedView Whole(const DynGraph& g) { return WeightedView(g, g.Vertices(), Rational(1)); }

DecompConfig Admissible(const DynGraph& g, Rational phi, uint64_t seed = 1) {
  DecompConfig cfg;
  int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
  cfg.alpha = MaxAdmissibleAlpha(m, DefaultGammaKrv(m));
  cfg.phi = phi;
  cfg.seed = seed;
  return cfg;
}

void RequirePass(const oracle::VerificationReport& rep) {
  for (const auto& c : rep.checks()) {
    INFO(c.name << " measured " << c.measured << " threshold " << c.threshold << " witness " << c.witness.dump());
    REQUIRE(c.status == oracle::Status::kPass);
  }
}

}  // namespace

TEST_CASE("default constants") {
  REQUIRE(DefaultGammaKrv(1) == 10);
  REQUIRE(DefaultGammaKrv(4) == 40);
  REQUIRE(DefaultGammaKrv(1024) == 1000);
  // 4 * 2 * 40 * log2(4) = 640
  REQUIRE(MaxAdmissibleAlpha(4, 40) == Rational(1, 640));
}

TEST_CASE("trim on a set without boundary prunes nothing") {
  DynGraph g = Complete(5);
  WeightedView h = Whole(g);
  std::vector<int> a{0, 1, 2, 3, 4};
  TrimResult t = Trim(h, a, Rational(1, 8));
  REQUIRE(t.pruned.empty());
  REQUIRE(t.kept == a);
  REQUIRE(t.boundary_before == 0);
}

TEST_CASE("trim bounds on random sets") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 6, 30));
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(UniformInt(rng, 2 * n, 6 * n)));
    WeightedView h = Whole(g);
    std::vector<int> a;
    for (int i = 0; i < n; ++i) {
      if (UniformInt(rng, 0, 3) != 0) a.push_back(i);
    }
    if (a.empty()) continue;
    Rational phi(1, UniformInt(rng, 3, 20));
    TrimResult t = Trim(h, a, phi);
    if (t.guarantee_void) continue;
    REQUIRE(Rational(t.pruned_volume) <= Rational(4) / phi * Rational(t.boundary_before));
    REQUIRE(t.boundary_after <= 2 * t.boundary_before);
    REQUIRE(t.pruned.size() + t.kept.size() == a.size());
  }
}

TEST_CASE("cut-match-trim rejects heavy weights") {
  WeightedView h = Whole(Cycle(6));
  REQUIRE_THROWS_AS(CutMatchTrim(h, Rational(1, 8), Rational(1), 10, 1, {}), Error);
  CmtResult r = CutMatchTrim(Whole(Complete(6)), Rational(1, 16), Rational(1, 2), 10, 1, {});
  REQUIRE(r.kind == CmtKind::kSmallCut);
  REQUIRE(r.a_bar.empty());
}

TEST_CASE("edgeless set decomposes into singletons") {
  DynGraph g(5);
  Decomposition d = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64)));
  REQUIRE(d.clusters.size() == 5);
  RequirePass(oracle::VerifyDecomposition(g, g.Vertices(), d));
}

TEST_CASE("K8 decomposition passes the oracle") {
  DynGraph g = Complete(8);
  Decomposition d = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64)));
  REQUIRE(d.clusters.size() == 1);
  RequirePass(oracle::VerifyDecomposition(g, g.Vertices(), d));
}

TEST_CASE("alpha above the admissible bound is rejected") {
  DynGraph g = Complete(8);
  DecompConfig cfg;
  cfg.alpha = Rational(1, 64);
  cfg.phi = Rational(1, 64);
  REQUIRE_THROWS_AS(Decompose(g, g.Vertices(), cfg), Error);
  cfg.check_alpha = false;
  Decomposition d = Decompose(g, g.Vertices(), cfg);
  REQUIRE(d.clusters.size() == 1);
}

TEST_CASE("dumbbell at phi 1/8") {
  DynGraph g = Dumbbell(5);
  Decomposition d = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 8)));
  RequirePass(oracle::VerifyDecomposition(g, g.Vertices(), d));
  // 8 phi = 1 is out of reach for any cluster with an internal edge.
  REQUIRE(d.clusters.size() == 10);
  Decomposition loose = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64)));
  RequirePass(oracle::VerifyDecomposition(g, g.Vertices(), loose));
  REQUIRE(loose.Partition() == std::vector<std::vector<int>>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
}

TEST_CASE("random graphs decompose validly") {
  Rng rng(19);
  for (int trial = 0; trial < 8; ++trial) {
    int n = static_cast<int>(UniformInt(rng, 8, 50));
    DynGraph g = RandomSimple(rng, n, 3 * n);
    Decomposition d = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64), trial));
    RequirePass(oracle::VerifyDecomposition(g, g.Vertices(), d));
    Decomposition again = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64), trial));
    REQUIRE(again.Partition() == d.Partition());
  }
}

TEST_CASE("decomposing a subset") {
  DynGraph g = Dumbbell(6);
  std::vector<int> u{0, 1, 2, 3, 4, 5, 6, 7};
  Decomposition d = Decompose(g, u, Admissible(g, Rational(1, 32)));
  RequirePass(oracle::VerifyDecomposition(g, u, d));
}

TEST_CASE("serialization") {
  DynGraph g = Complete(3);
  Decomposition d = Decompose(g, g.Vertices(), Admissible(g, Rational(1, 64)));
  std::ostringstream out;
  WriteDecomposition(out, d, 0);
  REQUIRE(out.str() == "level 0 cluster 0 phi 1/64 members 0 1 2\n");
}
