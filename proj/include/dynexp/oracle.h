#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynexp/decomposition.h"
#include "dynexp/dyn_graph.h"
#include "dynexp/rational.h"

namespace dynexp::oracle {

enum class Status { kPass, kFail, kInconclusive };

struct Check {
  explicit Check(std::string n = "") : name(std::move(n)) {}
  std::string name;
  Status status = Status::kPass;
  std::string measured;
  std::string threshold;
  nlohmann::json witness;
};

class VerificationReport {
 public:
  void Add(Check check) { checks_.push_back(std::move(check)); }
  void Merge(const VerificationReport& other, const std::string& prefix);
  bool AllPass() const;
  int Failures() const;
  const std::vector<Check>& checks() const { return checks_; }
  nlohmann::json ToJson() const;

 private:
  std::vector<Check> checks_;
};

struct ConductanceResult {
  bool bounded = false;  // false: no cut with both sides of positive volume
  Rational value{1};
  std::vector<int> witness;  // vertex ids of the witness side
};

// Conductance of G[S]^w by enumeration; |S| <= 20.
ConductanceResult BruteConductance(const DynGraph& g, const std::vector<int>& s,
                                   const Rational& w);

struct ExpanderCheck {
  bool ok = true;
  std::vector<int> witness;  // side with cut < target * min volume
  int64_t cut = 0;
  int64_t min_volume = 0;
};

ExpanderCheck CheckWeightedExpander(const DynGraph& g, const std::vector<int>& s,
                                    const Rational& w, const Rational& target);

struct MincutResult {
  int64_t value = 0;
  std::vector<int> source_side;
};

// Unit capacities, parallel edges add up.
MincutResult ExactMincutSets(const DynGraph& g, const std::vector<int>& a,
                             const std::vector<int>& b);

struct SparsestCutResult {
  Rational value{0};
  std::vector<int> side;
};

// min |delta(S)| / min(|S|, |V \ S|) over all S; |V| <= 20.
SparsestCutResult BruteSparsestCut(const DynGraph& g);

// Spectral lower bound on the conductance of G[S]^w (Cheeger: Phi >= lambda2/2).
double CheegerLowerBound(const DynGraph& g, const std::vector<int>& s, const Rational& w);

struct DecompConstants {
  double c1_multiplier = 16.0;
  double theta3_multiplier = 80.0;
  int enumeration_threshold = 16;
  int spectral_threshold = 400;
};

VerificationReport VerifyDecomposition(const DynGraph& g, const std::vector<int>& u,
                                       const Decomposition& d, const DecompConstants& k = {});

// Tree given as a parent array over nodes (-1 marks roots); bags over vertex ids.
VerificationReport VerifyTreeDecomposition(const DynGraph& g, const std::vector<int>& parent,
                                           const std::vector<std::vector<int>>& bags);

// Checks that contracted equals the quotient of g by part_of (vertex of g ->
// vertex of contracted, -1 for absent ids), matching edges by origin id.
VerificationReport VerifyContraction(const DynGraph& g, const std::vector<int>& part_of,
                                     const DynGraph& contracted);

// min |E(S, V \ S)| / vol(S) over nonempty S within A with vol(S) <= vol(A)/2,
// volumes in g; unbounded when no such S has positive volume. |A| <= 20.
ConductanceResult NearExpansion(const DynGraph& g, const std::vector<int>& a);

// The residual incremental-flow problem on V \ P solved from scratch: source
// source[v] at every unpruned v plus c per edge into P, sink scale * deg(v),
// capacity c per edge copy. True iff every unit of source is absorbed.
bool ResidualFeasible(const DynGraph& g, const std::vector<char>& pruned, const std::vector<int64_t>& source,
                      int64_t c, int64_t scale);

// Rooted forests below are parent arrays (-1 for roots) with cap[x] the
// capacity of the edge from x to its parent and a leaf flag per node.

// Max-flow between node sets A and B over the tree edges.
int64_t TreeMincutByFlow(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                         const std::vector<int>& a, const std::vector<int>& b);

// min over tree edges of cap / min(l, n - l), leaf sets found by walking up
// from every leaf; 0 for a forest with two nonempty trees.
Rational BruteTreeSparsestCut(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                              const std::vector<char>& leaf);

// Cheapest edge subset separating all terminal nodes; at most 20 edges.
int64_t BruteTreeMultiwayCut(const std::vector<int>& parent, const std::vector<int64_t>& cap,
                             const std::vector<int>& terminals);

// Exact treewidth by dynamic programming over vertex subsets; n <= 16.
int ExactTreewidth(const DynGraph& g);

}  // namespace dynexp::oracle
