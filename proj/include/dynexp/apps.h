#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "dynexp/hierarchy.h"
#include "dynexp/rational.h"

namespace dynexp {

class DynHierarchy;

// Returned for s-t queries with s == t.
constexpr int64_t kInfiniteCapacity = std::numeric_limits<int64_t>::max();

struct CapNode {
  int level = 0;
  int vertex = -1;  // vertex of the level graph this node stands for
  int parent = -1;
  int64_t cap = 0;  // capacity of the edge to the parent (level degree)
  int leaves = 0;   // leaves in the subtree
};

// Rooted forest over the hierarchy nodes. Leaves are the vertices of the
// input graph; node ids grow with the level, so children precede parents.
class CapTree {
 public:
  static CapTree Build(const Hierarchy& h);
  static CapTree Build(const DynHierarchy& h);

  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  const CapNode& node(int id) const { return nodes_[id]; }
  const std::vector<CapNode>& nodes() const { return nodes_; }
  // Node of the leaf for input vertex v, or -1.
  int LeafNode(int v) const;
  std::vector<int> LeafVertices() const;
  int NumLeaves() const { return num_leaves_; }
  std::vector<int> Roots() const;
  std::vector<int> Parents() const;
  std::vector<int64_t> Capacities() const;

  // Sum over leaves below every node, recomputed from parent pointers.
  bool LeafCountsConsistent() const;

 private:
  friend CapTree VertexSparsifier(const CapTree& t, const std::vector<int>& terminals);
  void Finish();

  std::vector<CapNode> nodes_;
  std::vector<int> leaf_node_;  // input vertex -> node id
  int num_leaves_ = 0;
};

// Union of the leaf-to-root paths of the terminals (input vertices).
CapTree VertexSparsifier(const CapTree& t, const std::vector<int>& terminals);

// Minimum capacity on the tree path between the leaves of s and u; 0 when they
// lie in different trees, kInfiniteCapacity when s == u.
int64_t StCutEstimate(const CapTree& t, int s, int u);
// Same value read straight off the levels of a dynamic hierarchy.
int64_t StCutEstimate(const DynHierarchy& h, int s, int u);

// Minimum capacity of tree edges whose removal separates the leaves of A from
// those of B.
int64_t TreeMincutSets(const CapTree& t, const std::vector<int>& a, const std::vector<int>& b);

struct Demand {
  int s = -1;
  int t = -1;
  Rational amount{0};
};

struct Congestion {
  bool infinite = false;
  Rational value{0};
};

// Every demand routed along its unique tree path; the maximum of load/cap.
// Load on a zero-capacity edge, or a demand between trees, is infinite.
Congestion TreeCongestion(const CapTree& t, const std::vector<Demand>& demands);

struct SparseEdge {
  int node = -1;  // child endpoint of the tree edge; -1 for a disconnected forest
  Rational sparsity{0};
};

// min cap(e) / min(l_e, n - l_e) over tree edges, l_e = leaves below e.
SparseEdge TreeSparsestCut(const CapTree& t);

struct MultiwayCut {
  int64_t value = 0;
  std::vector<int> edges;  // child endpoints of the removed tree edges
};

// Optimal multiway cut of the terminal leaves on the tree.
MultiwayCut TreeMultiwayCut(const CapTree& t, const std::vector<int>& terminals);

// One bag per node of CapTree::Build(h). A leaf gets its vertex plus the
// endpoints of its incident edges; a node at level i >= 1 gets the original
// endpoints of every edge of G^{i-1} incident to one of its children.
std::vector<std::vector<int>> TreewidthBags(const Hierarchy& h);

struct QualityReport {
  Rational alpha;
  Rational phi;
  Rational slack;
  int depth = 0;
  double c_q = 1.0;
  double log_m = 0.0;  // log2 of the input edge count (at least 1)
  double value = 0.0;
  double empirical_max_ratio = -1.0;  // negative when not measured
};

// (c_q s log m)^t max(1/alpha, 1/phi) / alpha^(t-1).
QualityReport MakeQualityReport(const Hierarchy& h, double c_q = 1.0);
double QualityFormula(const QualityReport& r);

// "node <id> level <i> parent <id|-> cap <c>", one line per node.
void WriteCapTree(std::ostream& out, const CapTree& t);
// "bag <node-id>: v1 v2 ...".
void WriteBags(std::ostream& out, const std::vector<std::vector<int>>& bags);

}  // namespace dynexp
