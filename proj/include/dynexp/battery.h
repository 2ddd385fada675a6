#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynexp/dyn_hierarchy.h"
#include "dynexp/oracle.h"
#include "dynexp/rational.h"

namespace dynexp::battery {

// Randomized acceptance batteries. Every battery generates its own corpus
// from the seed and cross-checks the library against the oracles; reports
// contain counts and witnesses only, so equal seeds give equal reports.
struct Options {
  uint64_t seed = 1;
  Rational phi{1, 64};  // hierarchy phi for the sparsifier and treewidth corpora
  double ratio_ceiling = 64.0;
  int scale_percent = 100;  // shrinks or grows every instance count
};

oracle::VerificationReport IncFlowBattery(const Options& o);     // 200 graphs
oracle::VerificationReport TrimBattery(const Options& o);        // 100 near-expanders
oracle::VerificationReport DecompBattery(const Options& o);      // 200 graphs
oracle::VerificationReport PruneBattery(const Options& o);       // 100 sequences
oracle::VerificationReport SparsifierBattery(const Options& o);  // 100 graphs x 50 pairs
oracle::VerificationReport TreeQueryBattery(const Options& o);   // 100 graphs
oracle::VerificationReport TreewidthBattery(const Options& o);   // 100 graphs

// Contraction consistency at every level, an edgeless top level, and the
// slack-parameterized expansion of every cluster with at most `threshold`
// vertices.
oracle::VerificationReport AuditDynHierarchy(const DynHierarchy& h, int threshold = 16);

struct HierarchyRunOptions {
  int n = 64;
  int m = 160;
  int updates = 10000;  // alternating random deletions and insertions
  int checkpoint = 100;  // audit period, in updates
  // With blocks > 0 the vertices are split into that many equal blocks and an
  // edge (initial or inserted) stays inside a random block with probability
  // `inside`; otherwise both endpoints are uniform.
  int blocks = 0;
  double inside = 0.9;
  DynParams params;
};

struct LevelBoundary {
  int level = 0;
  int64_t initial_edges = 0;  // edges of the contracted graph one level up
  int64_t final_edges = 0;
  double bound = 0;  // C_1 log^3 m phi m + 4 initial_edges, m = edges of this level
};

struct HierarchyRunResult {
  oracle::VerificationReport report;  // checkpoints and connectivity replay
  int64_t updates = 0;
  int64_t queries = 0;
  int64_t checkpoints = 0;
  int64_t slack_clusters = 0;
  double avg_recourse = 0;
  std::vector<LevelBoundary> boundary;
  bool boundary_ok = true;
  double seconds = 0;
};

// Random updates on a random multigraph, one connectivity query after every
// update checked against union-find, full audits at every checkpoint.
HierarchyRunResult DynamicHierarchyRun(const Options& o, const HierarchyRunOptions& r);

const std::vector<std::string>& BatteryNames();
// decomp = incflow + trimming + decomposition; sparsifier includes the tree
// queries; all runs everything.
oracle::VerificationReport RunBattery(const std::string& name, const Options& o);

}  // namespace dynexp::battery
