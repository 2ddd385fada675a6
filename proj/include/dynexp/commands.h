#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dynexp/dyn_hierarchy.h"
#include "dynexp/rational.h"

namespace dynexp {

// Exit codes of every command.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  Rational alpha{0};  // 0: the largest admissible value
  Rational phi{1, 64};
  int64_t psi = 4;
  int64_t slack_base = 38;
  int64_t gamma_krv = 0;  // 0: default for the input size
  double c1_multiplier = 16.0;
  double theta3_multiplier = 80.0;
  int max_depth = 64;
  uint64_t seed = 1;
  int64_t rho = 120;
  double c_z = 1.0;
  int enumeration_threshold = 16;
  double ratio_ceiling = 64.0;
  bool audit = false;
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys and bad values
// raise kParse errors naming the line.
void ApplyConfig(std::istream& in, RunConfig& cfg);
void ApplyConfigFile(const std::string& path, RunConfig& cfg);
void SetConfigValue(const std::string& key, const std::string& value, RunConfig& cfg);
// Parameter preconditions that do not depend on the input graph.
void ValidateConfig(const RunConfig& cfg);
DynParams ToDynParams(const RunConfig& cfg);

// Each command writes results to out and diagnostics to err and returns one
// of the exit codes above.
int CmdDecompose(std::istream& graph, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int CmdHierarchy(std::istream& graph, const RunConfig& cfg, std::ostream& out, std::ostream& err);
// Stream lines: "I u v", "D u v", "QC u v", "QF s t", "QS", "QW" (treewidth
// bag summary) and "QM t1 t2 ..." (multiway cut of terminals on the tree).
int CmdDynamic(std::istream& graph, std::istream& stream, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);
// graph may be null; when present its decomposition and tree decomposition
// are verified too.
int CmdVerify(std::istream* graph, const std::string& battery, const RunConfig& cfg, std::ostream& out,
              std::ostream& err);
// Random graph with n vertices and m edges, then `updates` alternating random
// deletions and insertions; reports wall-clock throughput.
int CmdBench(int n, int64_t m, int64_t updates, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dynexp
