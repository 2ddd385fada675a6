#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynexp/cut_matching.h"
#include "dynexp/dyn_graph.h"
#include "dynexp/rational.h"
#include "dynexp/weighted_view.h"

namespace dynexp {

struct DecompConfig {
  Rational alpha{1, 1 << 20};
  Rational phi{1, 64};
  uint64_t seed = 1;
  int64_t gamma_krv = 0;  // 0 picks DefaultGammaKrv(m)
  CutPlayerOptions player;
  double c1_multiplier = 16.0;      // C_1 = c1_multiplier * gamma_cmp
  double theta3_multiplier = 80.0;  // deactivation threshold constant
  bool check_alpha = true;
  // Certified clusters small enough for enumeration are re-validated; a
  // failed re-validation keeps the cluster active instead of trusting it.
  bool recheck_small = true;
};

struct Cluster {
  std::vector<int> members;  // sorted
  Rational phi;              // expansion bound phi_i >= phi
};

struct Decomposition {
  std::vector<int> parent;  // the decomposed set U, sorted
  std::vector<Cluster> clusters;
  Rational alpha;
  Rational phi;
  Rational slack{1};
  int64_t m = 2;  // max(vol_G(U), 2), the m of all log m terms
  int64_t gamma_krv = 0;
  int rounds = 0;
  int w_clamps = 0;
  int rejected_certificates = 0;

  int64_t gamma_cmp() const { return 2 * gamma_krv; }
  std::vector<std::vector<int>> Partition() const;
};

int64_t DefaultGammaKrv(int64_t m);
// Largest 1/k with 1/k <= 1/(4 gamma_cmp log2 m).
Rational MaxAdmissibleAlpha(int64_t m, int64_t gamma_krv);
double Log2(int64_t m);

enum class CmtKind { kBalancedCut, kSmallCut };

struct CmtResult {
  CmtKind kind = CmtKind::kSmallCut;
  std::vector<int> a;       // local indices of the view
  std::vector<int> a_bar;   // local indices of the view
  bool crossing_free = false;
  CutMatchCase source_case = CutMatchCase::kCertified;
};

struct TrimResult {
  std::vector<int> pruned;  // local indices of the view
  std::vector<int> kept;
  int64_t boundary_before = 0;  // |E(A, A-bar)|
  int64_t boundary_after = 0;   // |E(A', A'-bar)|
  int64_t pruned_volume = 0;
  bool guarantee_void = false;
};

// Trimming inside the view h: A (local indices) is assumed to be a near
// 8*phi-expander; prunes P so that h[A \ P]^1 admits the boundary flow.
TrimResult Trim(const WeightedView& h, const std::vector<int>& a, const Rational& phi);

CmtResult CutMatchTrim(const WeightedView& h, const Rational& phi, const Rational& w,
                       int64_t gamma_krv, uint64_t seed, const CutPlayerOptions& opts);

Decomposition Decompose(const DynGraph& g, const std::vector<int>& u, const DecompConfig& cfg);

void WriteDecomposition(std::ostream& out, const Decomposition& d, int level = -1);

}  // namespace dynexp
