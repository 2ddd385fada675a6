#include "dynexp/commands.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynexp/apps.h"
#include "dynexp/battery.h"
#include "dynexp/decomposition.h"
#include "dynexp/error.h"
#include "dynexp/generators.h"
#include "dynexp/graph_io.h"
#include "dynexp/hierarchy.h"
#include "dynexp/oracle.h"

namespace dynexp {

namespace {

using nlohmann::json;

std::string Trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int64_t ParseInt(const std::string& v) {
  try {
    size_t used = 0;
    int64_t x = std::stoll(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  Fail(ErrorKind::kParse, "not an integer: '" + v + "'");
}

double ParseDouble(const std::string& v) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  Fail(ErrorKind::kParse, "not a number: '" + v + "'");
}

bool ParseBool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  Fail(ErrorKind::kParse, "not a boolean: '" + v + "'");
}

DecompConfig DecompFor(const DynGraph& g, const RunConfig& cfg) {
  DecompConfig d;
  int64_t m = std::max<int64_t>(g.Volume(g.Vertices()), 2);
  d.gamma_krv = cfg.gamma_krv;
  int64_t gamma = cfg.gamma_krv > 0 ? cfg.gamma_krv : DefaultGammaKrv(m);
  d.alpha = cfg.alpha > Rational(0) ? cfg.alpha : MaxAdmissibleAlpha(m, gamma);
  d.phi = cfg.phi;
  d.seed = cfg.seed;
  d.c1_multiplier = cfg.c1_multiplier;
  d.theta3_multiplier = cfg.theta3_multiplier;
  d.player.exact_threshold = cfg.enumeration_threshold;
  return d;
}

oracle::DecompConstants ConstantsFor(const RunConfig& cfg) {
  oracle::DecompConstants k;
  k.c1_multiplier = cfg.c1_multiplier;
  k.theta3_multiplier = cfg.theta3_multiplier;
  k.enumeration_threshold = cfg.enumeration_threshold;
  return k;
}

json LevelStatsJson(const DynHierarchy& h) {
  json out = json::array();
  for (const LevelStats& s : h.Stats()) {
    out.push_back({{"level", s.level}, {"vertices", s.vertices}, {"edges", s.edges}, {"clusters", s.clusters}});
  }
  return out;
}

json CapacityJson(int64_t c) {
  if (c == kInfiniteCapacity) return "inf";
  return c;
}

// Component labels of g, recomputed on demand after every change.
class UnionFindOracle {
 public:
  void Invalidate() { valid_ = false; }
  bool Connected(const DynGraph& g, int a, int b) {
    if (!valid_) {
      root_.resize(g.NumVertexSlots());
      std::iota(root_.begin(), root_.end(), 0);
      g.ForEachEdge([&](const Edge& e) { root_[Find(e.u)] = Find(e.v); });
      valid_ = true;
    }
    return Find(a) == Find(b);
  }

 private:
  int Find(int x) { return root_[x] == x ? x : root_[x] = Find(root_[x]); }
  std::vector<int> root_;
  bool valid_ = false;
};

struct StreamError {
  int line;
  std::string message;
};

}  // namespace

void SetConfigValue(const std::string& key, const std::string& value, RunConfig& cfg) {
  if (key == "alpha") {
    cfg.alpha = Rational::Parse(value);
  } else if (key == "phi") {
    cfg.phi = Rational::Parse(value);
  } else if (key == "psi") {
    cfg.psi = ParseInt(value);
  } else if (key == "slack_base" || key == "sigma") {
    cfg.slack_base = ParseInt(value);
  } else if (key == "gamma_krv") {
    cfg.gamma_krv = ParseInt(value);
  } else if (key == "c1") {
    cfg.c1_multiplier = ParseDouble(value);
  } else if (key == "theta3") {
    cfg.theta3_multiplier = ParseDouble(value);
  } else if (key == "max_depth") {
    cfg.max_depth = static_cast<int>(ParseInt(value));
  } else if (key == "seed") {
    cfg.seed = static_cast<uint64_t>(ParseInt(value));
  } else if (key == "rho") {
    cfg.rho = ParseInt(value);
  } else if (key == "c_z") {
    cfg.c_z = ParseDouble(value);
  } else if (key == "enumeration_threshold") {
    cfg.enumeration_threshold = static_cast<int>(ParseInt(value));
  } else if (key == "ratio_ceiling") {
    cfg.ratio_ceiling = ParseDouble(value);
  } else if (key == "audit") {
    cfg.audit = ParseBool(value);
  } else {
    Fail(ErrorKind::kParse, "unknown config key '" + key + "'");
  }
}

void ApplyConfig(std::istream& in, RunConfig& cfg) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string body = Trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    size_t eq = body.find('=');
    try {
      if (eq == std::string::npos) Fail(ErrorKind::kParse, "expected 'key = value'");
      SetConfigValue(Trim(body.substr(0, eq)), Trim(body.substr(eq + 1)), cfg);
    } catch (const Error& e) {
      Fail(ErrorKind::kParse, "config line " + std::to_string(number) + ": " + e.what());
    }
  }
}

void ApplyConfigFile(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kNotFound, "cannot open config " + path);
  ApplyConfig(in, cfg);
}

void ValidateConfig(const RunConfig& cfg) {
  Require(cfg.phi > Rational(0) && cfg.phi < Rational(1, 2), ErrorKind::kPrecondition, "phi must lie in (0, 1/2)");
  Require(cfg.phi.num() == 1, ErrorKind::kPrecondition, "phi must have the form 1/k");
  Require(cfg.alpha >= Rational(0), ErrorKind::kPrecondition, "alpha must be positive (or 0 for automatic)");
  Require(cfg.alpha <= cfg.phi, ErrorKind::kPrecondition, "alpha must not exceed phi");
  Require(cfg.psi >= 2, ErrorKind::kPrecondition, "psi must be at least 2");
  Require(cfg.slack_base >= 1, ErrorKind::kPrecondition, "slack base must be at least 1");
  Require(cfg.gamma_krv == 0 || cfg.gamma_krv >= 8, ErrorKind::kPrecondition, "gamma_krv must be at least 8");
  Require(cfg.c1_multiplier > 0 && cfg.theta3_multiplier > 0, ErrorKind::kPrecondition,
          "C_1 and Theta_3 multipliers must be positive");
  Require(cfg.max_depth >= 1, ErrorKind::kPrecondition, "depth cap must be at least 1");
  Require(cfg.rho >= 1, ErrorKind::kPrecondition, "rho must be at least 1");
  Require(cfg.c_z > 0, ErrorKind::kPrecondition, "c_z must be positive");
  Require(cfg.enumeration_threshold >= 1 && cfg.enumeration_threshold <= 20, ErrorKind::kPrecondition,
          "enumeration threshold must lie in [1, 20]");
  Require(cfg.ratio_ceiling >= 1, ErrorKind::kPrecondition, "ratio ceiling must be at least 1");
}

DynParams ToDynParams(const RunConfig& cfg) {
  DynParams p;
  p.alpha = cfg.alpha;
  p.phi = cfg.phi;
  p.psi = cfg.psi;
  p.sigma = cfg.slack_base;
  p.rho = cfg.rho;
  p.c_z = cfg.c_z;
  p.seed = cfg.seed;
  p.max_depth = cfg.max_depth;
  p.gamma_krv = cfg.gamma_krv;
  p.player.exact_threshold = cfg.enumeration_threshold;
  return p;
}

int CmdDecompose(std::istream& graph, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DynGraph g;
  Decomposition d;
  try {
    ValidateConfig(cfg);
    g = ReadGraph(graph);
    d = Decompose(g, g.Vertices(), DecompFor(g, cfg));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  WriteDecomposition(out, d);
  oracle::VerificationReport rep = oracle::VerifyDecomposition(g, g.Vertices(), d, ConstantsFor(cfg));
  json summary = {{"clusters", d.clusters.size()}, {"rounds", d.rounds}, {"alpha", d.alpha.ToString()},
                  {"phi", d.phi.ToString()}, {"report", rep.ToJson()}};
  out << summary.dump() << '\n';
  return rep.AllPass() ? kExitOk : kExitCheckFailed;
}

int CmdHierarchy(std::istream& graph, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DynGraph g;
  Hierarchy h;
  try {
    ValidateConfig(cfg);
    g = ReadGraph(graph);
    HierarchyConfig hc;
    hc.decomp = DecompFor(g, cfg);
    hc.max_depth = cfg.max_depth;
    h = BuildStaticHierarchy(g, hc);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  WriteHierarchy(out, h);
  CapTree t = CapTree::Build(h);
  WriteCapTree(out, t);
  std::vector<std::vector<int>> bags = TreewidthBags(h);
  WriteBags(out, bags);
  QualityReport q = MakeQualityReport(h);
  json summary = {{"depth", h.depth()},
                  {"quality", {{"alpha", q.alpha.ToString()}, {"phi", q.phi.ToString()}, {"slack", q.slack.ToString()},
                               {"t", q.depth}, {"c_q", q.c_q}, {"log2_m", q.log_m}, {"value", q.value}}}};
  bool ok = true;
  if (cfg.audit) {
    oracle::VerificationReport rep;
    for (int i = 0; i < h.depth(); ++i) {
      std::string prefix = "level" + std::to_string(i) + ".";
      rep.Merge(oracle::VerifyDecomposition(h.graphs[i], h.graphs[i].Vertices(), h.decomps[i], ConstantsFor(cfg)),
                prefix);
      rep.Merge(oracle::VerifyContraction(h.graphs[i], h.part_of[i], h.graphs[i + 1]), prefix);
    }
    rep.Merge(oracle::VerifyTreeDecomposition(g, t.Parents(), bags), "bags.");
    summary["report"] = rep.ToJson();
    ok = rep.AllPass();
  }
  out << summary.dump() << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int CmdDynamic(std::istream& graph, std::istream& stream, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
  std::unique_ptr<DynHierarchy> h;
  try {
    ValidateConfig(cfg);
    DynGraph g = ReadGraph(graph);
    h = std::make_unique<DynHierarchy>(g, ToDynParams(cfg));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  UnionFindOracle uf;
  int64_t inserts = 0, deletes = 0, queries = 0, recourse = 0;
  oracle::Check qc_check("audit.connectivity"), qf_check("audit.flow_one_sided"), qw_check("audit.bags");
  int64_t qc_audited = 0, qf_audited = 0, qw_audited = 0;
  std::string line;
  int number = 0;
  try {
    while (std::getline(stream, line)) {
      ++number;
      std::string body = Trim(line.substr(0, line.find('#')));
      if (body.empty()) continue;
      std::istringstream ss(body);
      std::string op;
      ss >> op;
      std::vector<int64_t> args;
      std::string tok;
      while (ss >> tok) {
        try {
          args.push_back(ParseInt(tok));
        } catch (const Error&) {
          throw StreamError{number, "bad argument '" + tok + "'"};
        }
      }
      const DynGraph& g0 = h->graph(0);
      auto vertex = [&](int64_t v) {
        if (v < 0 || v >= g0.NumVertexSlots() || !g0.HasVertex(static_cast<int>(v))) {
          throw StreamError{number, "unknown vertex " + std::to_string(v)};
        }
        return static_cast<int>(v);
      };
      auto arity = [&](size_t k) {
        if (args.size() != k) throw StreamError{number, op + " takes " + std::to_string(k) + " arguments"};
      };
      if (op == "I" || op == "D") {
        arity(2);
        int a = vertex(args[0]), b = vertex(args[1]);
        if (op == "D" && g0.Multiplicity(a, b) == 0) {
          throw StreamError{number, "no edge (" + std::to_string(a) + ", " + std::to_string(b) + ") to delete"};
        }
        UpdateReport r = op == "I" ? h->Insert(a, b) : h->Delete(a, b);
        recourse += r.recourse;
        (op == "I" ? inserts : deletes) += 1;
        uf.Invalidate();
        continue;
      }
      json resp = {{"op", op}, {"args", args}};
      if (op == "QC") {
        arity(2);
        int a = vertex(args[0]), b = vertex(args[1]);
        bool ans = h->Connected(a, b);
        resp["answer"] = ans;
        if (cfg.audit) {
          bool want = uf.Connected(h->graph(0), a, b);
          ++qc_audited;
          resp["oracle"] = want;
          if (want != ans && qc_check.status == oracle::Status::kPass) {
            qc_check.status = oracle::Status::kFail;
            qc_check.witness = {{"line", number}, {"u", a}, {"v", b}, {"answer", ans}, {"oracle", want}};
          }
        }
      } else if (op == "QF") {
        arity(2);
        int s = vertex(args[0]), t = vertex(args[1]);
        int64_t est = StCutEstimate(*h, s, t);
        resp["answer"] = CapacityJson(est);
        if (cfg.audit && s != t && h->graph(0).NumVertices() <= 20) {
          int64_t exact = oracle::ExactMincutSets(h->graph(0), {s}, {t}).value;
          ++qf_audited;
          resp["exact"] = exact;
          if (est < exact && qf_check.status == oracle::Status::kPass) {
            qf_check.status = oracle::Status::kFail;
            qf_check.witness = {{"line", number}, {"s", s}, {"t", t}, {"estimate", est}, {"exact", exact}};
          }
        }
      } else if (op == "QS") {
        arity(0);
        CapTree t = CapTree::Build(*h);
        if (t.NumLeaves() < 2) throw StreamError{number, "sparsest cut needs two vertices"};
        SparseEdge e = TreeSparsestCut(t);
        json edge = nullptr;
        if (e.node >= 0) edge = {{"level", t.node(e.node).level}, {"vertex", t.node(e.node).vertex}};
        resp["answer"] = {{"sparsity", e.sparsity.ToString()}, {"edge", edge}};
      } else if (op == "QW") {
        arity(0);
        Hierarchy snap = h->Snapshot();
        std::vector<std::vector<int>> bags = TreewidthBags(snap);
        size_t widest = 0;
        for (const auto& b : bags) widest = std::max(widest, b.size());
        resp["answer"] = {{"bags", bags.size()}, {"width", static_cast<int64_t>(widest) - 1}};
        if (cfg.audit) {
          oracle::VerificationReport rep =
              oracle::VerifyTreeDecomposition(h->graph(0), CapTree::Build(snap).Parents(), bags);
          resp["valid"] = rep.AllPass();
          ++qw_audited;
          if (!rep.AllPass() && qw_check.status == oracle::Status::kPass) {
            qw_check.status = oracle::Status::kFail;
            qw_check.witness = {{"line", number}, {"report", rep.ToJson()}};
          }
        }
      } else if (op == "QM") {
        std::vector<int> term;
        for (int64_t v : args) term.push_back(vertex(v));
        CapTree t = CapTree::Build(*h);
        MultiwayCut mc;
        try {
          mc = TreeMultiwayCut(t, term);
        } catch (const Error& e) {
          throw StreamError{number, e.what()};
        }
        json edges = json::array();
        for (int x : mc.edges) edges.push_back({{"level", t.node(x).level}, {"vertex", t.node(x).vertex}});
        resp["answer"] = {{"value", mc.value}, {"edges", edges}};
      } else {
        throw StreamError{number, "unknown operation '" + op + "'"};
      }
      ++queries;
      resp["level_stats"] = LevelStatsJson(*h);
      out << resp.dump() << '\n';
    }
  } catch (const StreamError& e) {
    err << "stream line " << e.line << ": " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "stream line " << number << ": " << e.what() << '\n';
    return kExitUsage;
  }

  int64_t updates = inserts + deletes;
  EdCounters c = h->Counters();
  json levels = json::array();
  for (const LevelStats& s : h->Stats()) {
    levels.push_back({{"level", s.level}, {"vertices", s.vertices}, {"edges", s.edges}, {"volume", 2 * s.edges},
                      {"clusters", s.clusters}, {"budget", s.budget}, {"max_hbar", s.max_hbar}});
  }
  json summary = {{"updates", updates},
                  {"inserts", inserts},
                  {"deletes", deletes},
                  {"queries", queries},
                  {"total_recourse", recourse},
                  {"avg_recourse", updates > 0 ? static_cast<double>(recourse) / updates : 0.0},
                  {"rebuilds", h->rebuilds()},
                  {"restarts", c.restarts},
                  {"expiries", c.expiries},
                  {"budget_failures", c.budget_failures},
                  {"snapshots", c.snapshots},
                  {"split_restarts", c.split_restarts},
                  {"depth", h->depth()},
                  {"alpha", h->alpha().ToString()},
                  {"levels", levels}};
  bool ok = true;
  if (cfg.audit) {
    oracle::VerificationReport rep = battery::AuditDynHierarchy(*h, cfg.enumeration_threshold);
    qc_check.measured = std::to_string(qc_audited) + " queries";
    qf_check.measured = std::to_string(qf_audited) + " queries";
    qw_check.measured = std::to_string(qw_audited) + " queries";
    rep.Add(qc_check);
    rep.Add(qf_check);
    rep.Add(qw_check);
    summary["audit"] = rep.ToJson();
    ok = rep.AllPass();
  }
  out << json{{"summary", summary}}.dump() << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int CmdVerify(std::istream* graph, const std::string& battery_name, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  oracle::VerificationReport rep;
  try {
    ValidateConfig(cfg);
    battery::Options o;
    o.seed = cfg.seed;
    o.phi = cfg.phi;
    o.ratio_ceiling = cfg.ratio_ceiling;
    const auto& names = battery::BatteryNames();
    if (std::find(names.begin(), names.end(), battery_name) == names.end()) {
      Fail(ErrorKind::kInvalidArgument, "unknown battery '" + battery_name + "'");
    }
    if (graph != nullptr) {
      DynGraph g = ReadGraph(*graph);
      Decomposition d = Decompose(g, g.Vertices(), DecompFor(g, cfg));
      rep.Merge(oracle::VerifyDecomposition(g, g.Vertices(), d, ConstantsFor(cfg)), "input.decomposition.");
      HierarchyConfig hc;
      hc.decomp = DecompFor(g, cfg);
      hc.max_depth = cfg.max_depth;
      Hierarchy h = BuildStaticHierarchy(g, hc);
      rep.Merge(oracle::VerifyTreeDecomposition(g, CapTree::Build(h).Parents(), TreewidthBags(h)), "input.bags.");
    }
    rep.Merge(battery::RunBattery(battery_name, o), "");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << json{{"battery", battery_name}, {"seed", cfg.seed}, {"report", rep.ToJson()}}.dump(2) << '\n';
  return rep.AllPass() ? kExitOk : kExitCheckFailed;
}

int CmdBench(int n, int64_t m, int64_t updates, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (n < 2 || m < 1 || updates < 0) {
    err << "error: bench needs n >= 2, m >= 1, updates >= 0\n";
    return kExitUsage;
  }
  try {
    ValidateConfig(cfg);
    Rng rng(cfg.seed);
    DynGraph g = RandomMultigraph(rng, n, static_cast<int>(m));
    std::vector<std::pair<int, int>> edges;
    g.ForEachEdge([&](const Edge& e) { edges.push_back({e.u, e.v}); });
    auto t0 = std::chrono::steady_clock::now();
    DynHierarchy h(g, ToDynParams(cfg));
    auto t1 = std::chrono::steady_clock::now();
    int64_t recourse = 0;
    for (int64_t i = 0; i < updates; ++i) {
      if (i % 2 == 0 && !edges.empty()) {
        size_t k = static_cast<size_t>(UniformInt(rng, 0, static_cast<int64_t>(edges.size()) - 1));
        std::swap(edges[k], edges.back());
        recourse += h.Delete(edges.back().first, edges.back().second).recourse;
        edges.pop_back();
      } else {
        int a = static_cast<int>(UniformInt(rng, 0, n - 1));
        int b = static_cast<int>(UniformInt(rng, 0, n - 2));
        if (b >= a) ++b;
        recourse += h.Insert(a, b).recourse;
        edges.push_back({a, b});
      }
    }
    auto t2 = std::chrono::steady_clock::now();
    double build = std::chrono::duration<double>(t1 - t0).count();
    double run = std::chrono::duration<double>(t2 - t1).count();
    out << json{{"n", n},
                {"m", m},
                {"updates", updates},
                {"build_seconds", build},
                {"update_seconds", run},
                {"ms_per_update", updates > 0 ? 1000.0 * run / updates : 0.0},
                {"avg_recourse", updates > 0 ? static_cast<double>(recourse) / updates : 0.0},
                {"rebuilds", h.rebuilds()},
                {"depth", h.depth()}}
               .dump()
        << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace dynexp
