#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "dynexp/cut_matching.h"
#include "dynexp/dyn_graph.h"
#include "dynexp/hierarchy.h"
#include "dynexp/pruner.h"
#include "dynexp/rational.h"

namespace dynexp {

struct DeltaOp {
  enum Kind { kDeleteEdge, kRemoveVertex, kAddVertex, kInsertEdge };
  Kind kind;
  int a = -1;  // vertex for vertex ops
  int b = -1;
  OriginId origin = -1;
};

// Changes to a contracted graph: edge deletions, then vertex removals, then
// vertex additions, then edge insertions, so every prefix is a valid graph.
struct RecourseDelta {
  std::vector<DeltaOp> ops;
  int64_t EdgeOps() const;
};

// Accumulates edge and vertex changes and emits their net effect.
class DeltaBuilder {
 public:
  void InsertEdge(int a, int b, OriginId o);
  void DeleteEdge(int a, int b, OriginId o);
  void AddVertex(int x);
  void RemoveVertex(int x);
  RecourseDelta Finish();

 private:
  struct EdgeState {
    bool init = false;
    int ia = -1, ib = -1;
    bool cur = false;
    int ca = -1, cb = -1;
  };
  std::unordered_map<OriginId, EdgeState> edges_;
  std::vector<OriginId> edge_order_;
  std::unordered_map<int, std::pair<bool, bool>> vertices_;
  std::vector<int> vertex_order_;
};

struct DynParams {
  Rational alpha{0};  // 0 picks MaxAdmissibleAlpha(2^40)
  Rational phi{1, 64};
  int64_t psi = 4;
  int64_t sigma = 38;   // slack base
  int64_t rho = 120;    // update limit N = floor(phi' vol / rho)
  double c_z = 1.0;     // level budget Z = ceil(c_z phi m / rho)
  uint64_t seed = 1;
  int max_depth = 64;
  int64_t gamma_krv = 0;
  CutPlayerOptions player;
};

struct ClusterInfo {
  int leaf;                  // supervertex id one level up
  std::vector<int> members;  // sorted
  Rational phi;              // expansion parameter of the owning process
  int hbar = 1;              // pruning levels of the owning process
};

struct EdCounters {
  int64_t restarts = 0;
  int64_t expiries = 0;        // update limit reached
  int64_t budget_failures = 0; // a level pruner ran out of budget
  int64_t snapshots = 0;       // child decompositions launched
  int64_t detaches = 0;
  int64_t split_restarts = 0;  // a leaf cluster lost internal connectivity
};

// One level of the dynamic hierarchy: the root ED-process on a level graph,
// its CD-processes with multi-level pruning, and the partition they induce.
// Consumes changes to its graph and reports the changes to the contracted
// graph one level up.
class LevelEd {
 public:
  LevelEd(DynGraph& g, const DynParams& p, uint64_t seed);
  ~LevelEd();
  LevelEd(const LevelEd&) = delete;
  LevelEd& operator=(const LevelEd&) = delete;

  DynGraph BuildContracted() const;

  void InsertEdge(int a, int b, OriginId o, DeltaBuilder& out);
  void DeleteEdge(OriginId o, DeltaBuilder& out);
  void AddVertex(int x, DeltaBuilder& out);
  void RemoveVertex(int x, DeltaBuilder& out);
  void Consume(const DeltaOp& op, DeltaBuilder& out);

  int ClusterOf(int v) const;
  std::vector<int> PartOf() const;  // by vertex slot of the level graph, -1 if absent
  std::vector<ClusterInfo> Clusters() const;
  int NumClusters() const { return static_cast<int>(leaf_size_.size()); }
  int MaxHbar() const;

  const DynGraph& graph() const { return g_; }
  const EdCounters& counters() const { return counters_; }
  int64_t updates() const { return updates_; }

 private:
  struct Cd;
  struct Ed;
  struct MlpLevel;

  std::unique_ptr<Ed> NewEd(Cd* parent, int s, const Rational& phi);
  void PopulateEd(Ed* ed, const std::vector<int>& set, int reuse_leaf);
  Cd* NewCd(Ed* ed, std::vector<int> u, const Rational& phi, int leaf);
  void RemoveCd(Cd* cd);
  void StartPruner(Cd* cd, int s);
  void RouteToEd(Ed* ed, int a, int b, DeltaBuilder& out);
  void CdApply(Cd* cd, int a, int b, DeltaBuilder& out);
  // Both return true when cd was restarted and is gone.
  bool SetSnapshot(Cd* cd, int s, std::vector<int> p, DeltaBuilder& out);
  bool CheckCore(Cd* cd, DeltaBuilder& out);
  void Restart(Cd* cd, DeltaBuilder& out);
  void RemoveFromChain(int x, DeltaBuilder& out);
  void Detach(int x, DeltaBuilder& out);
  std::unordered_map<int, int> Record(const std::vector<int>& xs) const;
  void Repartition(const std::vector<int>& xs, const std::unordered_map<int, int>& old_leaf,
                   DeltaBuilder& out);
  void FixLeaf(Cd* cd);
  std::vector<Cd*> Chain(int x) const;
  Cd* CdIn(Ed* ed, int x) const;
  bool InsideConnected(int leaf, int from, int to) const;
  int Leaf(int v) const;
  uint64_t NextSeed();

  DynGraph& g_;
  DynParams p_;
  uint64_t seed_;
  uint64_t calls_ = 0;
  std::unique_ptr<Ed> root_;
  std::vector<Cd*> owner_;  // innermost process whose core holds the vertex
  std::unordered_map<int, int> leaf_size_;
  int next_leaf_ = 0;
  int64_t updates_ = 0;
  EdCounters counters_;
};

struct LevelStats {
  int level = 0;
  int vertices = 0;
  int64_t edges = 0;
  int clusters = 0;
  int64_t updates = 0;  // since the last rebuild
  int64_t budget = 0;   // Z
  int max_hbar = 0;
};

struct UpdateReport {
  int64_t recourse = 0;  // edge changes to contracted graphs, summed over levels
  int rebuilt_from = -1;  // lowest level rebuilt from scratch, -1 if none
};

class DynHierarchy {
 public:
  DynHierarchy(const DynGraph& g, const DynParams& p);
  ~DynHierarchy();

  UpdateReport Insert(int u, int v);
  UpdateReport Delete(int u, int v);

  int depth() const { return static_cast<int>(graphs_.size()) - 1; }
  const DynGraph& graph(int level) const { return *graphs_[level]; }
  const LevelEd& level_ed(int level) const { return *eds_[level]; }
  std::vector<std::pair<int, int>> Path(int v) const;
  bool Connected(int u, int v) const;
  Hierarchy Snapshot() const;
  std::vector<LevelStats> Stats() const;
  Rational alpha() const { return p_.alpha; }
  const DynParams& params() const { return p_; }
  Rational Slack() const;

  int64_t total_updates() const { return total_updates_; }
  int64_t total_recourse() const { return total_recourse_; }
  int64_t rebuilds() const { return rebuilds_; }
  EdCounters Counters() const;

 private:
  UpdateReport Process(DeltaOp op);
  int64_t RebuildFrom(int level);  // returns the recourse of the rebuild
  void Retire(int level);
  void Grow();
  void Truncate();
  int64_t Budget(int64_t m) const;

  DynParams p_;
  std::vector<std::unique_ptr<DynGraph>> graphs_;
  std::vector<std::unique_ptr<LevelEd>> eds_;
  std::vector<int64_t> budget_;
  std::vector<int64_t> since_rebuild_;
  EdCounters retired_;  // counters of levels already torn down
  int64_t total_updates_ = 0;
  int64_t total_recourse_ = 0;
  int64_t rebuilds_ = 0;
  uint64_t builds_ = 0;
};

}  // namespace dynexp
