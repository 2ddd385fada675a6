#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dynexp/commands.h"
#include "dynexp/error.h"

namespace {

std::optional<std::ifstream> Open(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    return std::nullopt;
  }
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dynexp;
  CLI::App app{"Dynamic expander hierarchies: decomposition, maintenance and queries"};
  app.require_subcommand(1);

  // Flag values are kept as text and applied after the config file so that
  // the command line wins.
  std::string config_file, alpha, phi, psi, slack_base, seed, max_depth;
  bool audit = false;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", config_file, "flat key = value file");
    c->add_option("--alpha", alpha, "alpha as p/q (default: largest admissible)");
    c->add_option("--phi", phi, "phi as 1/k");
    c->add_option("--psi", psi, "pruning trigger exponent");
    c->add_option("--slack-base", slack_base, "slack base sigma");
    c->add_option("--seed", seed, "RNG seed");
    c->add_option("--max-depth", max_depth, "depth cap of the hierarchy");
    c->add_flag("--audit", audit, "cross-check against brute-force oracles");
  };

  std::string graph_file, stream_file, battery = "all";
  int bench_n = 1000;
  int64_t bench_m = 3000, bench_updates = 1000;
  double c_z = 0;

  CLI::App* decompose = app.add_subcommand("decompose", "expander decomposition of a graph file");
  decompose->add_option("graph", graph_file)->required();
  CLI::App* hierarchy = app.add_subcommand("hierarchy", "static expander hierarchy, tree and bags");
  hierarchy->add_option("graph", graph_file)->required();
  CLI::App* dynamic = app.add_subcommand("dynamic", "replay an update/query stream");
  dynamic->add_option("graph", graph_file)->required();
  dynamic->add_option("stream", stream_file)->required();
  CLI::App* verify = app.add_subcommand("verify", "run a verification battery");
  verify->add_option("--battery", battery, "decomp, prune, sparsifier, treewidth or all");
  verify->add_option("--graph", graph_file, "also verify this graph");
  CLI::App* bench = app.add_subcommand("bench", "update throughput on a random graph");
  bench->add_option("-n", bench_n, "vertices");
  bench->add_option("-m", bench_m, "edges");
  bench->add_option("-u,--updates", bench_updates, "updates");
  bench->add_option("--c-z", c_z, "level budget multiplier");
  for (CLI::App* c : {decompose, hierarchy, dynamic, verify, bench}) add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_file.empty()) ApplyConfigFile(config_file, cfg);
    if (!alpha.empty()) SetConfigValue("alpha", alpha, cfg);
    if (!phi.empty()) SetConfigValue("phi", phi, cfg);
    if (!psi.empty()) SetConfigValue("psi", psi, cfg);
    if (!slack_base.empty()) SetConfigValue("slack_base", slack_base, cfg);
    if (!seed.empty()) SetConfigValue("seed", seed, cfg);
    if (!max_depth.empty()) SetConfigValue("max_depth", max_depth, cfg);
    if (c_z > 0) cfg.c_z = c_z;
    if (audit) cfg.audit = true;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*bench) return CmdBench(bench_n, bench_m, bench_updates, cfg, std::cout, std::cerr);
  if (*verify) {
    if (graph_file.empty()) return CmdVerify(nullptr, battery, cfg, std::cout, std::cerr);
    auto in = Open(graph_file);
    if (!in) return kExitUsage;
    return CmdVerify(&*in, battery, cfg, std::cout, std::cerr);
  }
  auto in = Open(graph_file);
  if (!in) return kExitUsage;
  if (*decompose) return CmdDecompose(*in, cfg, std::cout, std::cerr);
  if (*hierarchy) return CmdHierarchy(*in, cfg, std::cout, std::cerr);
  auto stream = Open(stream_file);
  if (!stream) return kExitUsage;
  return CmdDynamic(*in, *stream, cfg, std::cout, std::cerr);
}
