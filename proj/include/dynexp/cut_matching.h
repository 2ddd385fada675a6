#pragma once

#include <cstdint>
#include <vector>

#include "dynexp/rational.h"
#include "dynexp/weighted_view.h"

namespace dynexp {

enum class CutMatchCase {
  kCertified = 1,   // conductance >= 8 phi
  kBalanced = 2,    // sparse cut, both sides hold >= vol/(100 gamma) volume
  kUnbalanced = 3,  // sparse cut, small side, A is a near 8 phi-expander
};

struct CutMatchResult {
  CutMatchCase kind = CutMatchCase::kCertified;
  std::vector<int> a;      // local indices; all vertices in the certified case
  std::vector<int> a_bar;  // local indices; empty in the certified case
  int64_t cut = 0;
  bool crossing_free = false;  // split along connected components
  bool exact = false;          // decided by enumeration
  int rounds = 0;              // cut-matching rounds played
};

struct CutPlayerOptions {
  int exact_threshold = 16;
  double gamma0 = 1.0;  // rounds = ceil(gamma0 * log2(m)^2)
};

struct SparsestCut {
  std::vector<int> side;  // local indices of one side, never containing the last vertex
  int64_t cut = 0;
  int64_t min_volume = 0;
  bool bounded = false;  // false when no cut has two sides of positive volume
  Rational conductance{1};
};

// Minimum conductance cut by enumerating all bipartitions.
SparsestCut ExactSparsestCutSmall(const WeightedView& h);

CutMatchResult CutOrCertify(const WeightedView& h, const Rational& phi, int64_t gamma_krv,
                            uint64_t seed, const CutPlayerOptions& opts = {});

// Arithmetic check of the inequalities attached to a Case 2 / Case 3 result.
bool CaseInequalitiesHold(const WeightedView& h, const CutMatchResult& r, const Rational& phi,
                          int64_t gamma_krv);

}  // namespace dynexp
