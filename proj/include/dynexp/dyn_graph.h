#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace dynexp {

using OriginId = int64_t;

struct Edge {
  int u = -1;
  int v = -1;
  OriginId origin = -1;

  bool IsLoop() const { return u == v; }
  int Other(int x) const { return x == u ? v : u; }
};

// Unweighted multigraph with parallel edges and self-loops. A self-loop adds
// one to the degree of its vertex. Edges carry an origin id which survives
// contraction, so contracted levels can refer back to input edges.
class DynGraph {
 public:
  DynGraph() = default;
  explicit DynGraph(int n);

  int NumVertexSlots() const { return static_cast<int>(alive_.size()); }
  int NumVertices() const { return num_vertices_; }
  int64_t NumEdges() const { return num_edges_; }
  bool HasVertex(int v) const {
    return v >= 0 && v < NumVertexSlots() && alive_[v];
  }
  std::vector<int> Vertices() const;

  // Reuses the most recently freed id if there is one.
  int AddVertex();
  // Claims a specific id; gaps below it become free ids.
  void AddVertexAt(int v);
  // Only isolated vertices can be removed.
  void RemoveVertex(int v);

  OriginId InsertEdge(int u, int v);
  void InsertEdgeWithOrigin(int u, int v, OriginId origin);
  // Origin of some copy of (u,v), or -1.
  OriginId FindEdge(int u, int v) const;
  // Removes one copy of (u,v) and returns its origin id.
  OriginId DeleteEdge(int u, int v);
  Edge DeleteEdgeByOrigin(OriginId origin);

  bool HasOrigin(OriginId origin) const { return slot_of_.count(origin) > 0; }
  const Edge& EdgeByOrigin(OriginId origin) const;
  int Multiplicity(int u, int v) const;

  int Degree(int v) const { return deg_[v]; }
  int64_t Volume(const std::vector<int>& vertices) const;

  // Calls f(const Edge&) once per incident edge; a self-loop is reported once.
  template <typename F>
  void ForEachIncident(int v, F&& f) const {
    for (int slot : adj_[v]) f(static_cast<const Edge&>(edges_[slot]));
  }
  template <typename F>
  void ForEachEdge(F&& f) const {
    for (const Slot& e : edges_) {
      if (e.alive) f(static_cast<const Edge&>(e));
    }
  }
  std::vector<Edge> Edges() const;

  OriginId next_origin() const { return next_origin_; }

 private:
  struct Slot : Edge {
    int pos_u = -1;
    int pos_v = -1;
    bool alive = false;
  };

  void CheckVertex(int v) const;
  void Attach(int slot);
  void Detach(int slot);
  int FindSlot(int u, int v) const;

  std::vector<char> alive_;
  std::vector<int> deg_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> free_vertices_;
  std::vector<Slot> edges_;
  std::vector<int> free_slots_;
  std::unordered_map<OriginId, int> slot_of_;
  int num_vertices_ = 0;
  int64_t num_edges_ = 0;
  OriginId next_origin_ = 0;
};

// |E(A, B)| for disjoint A, B given as masks over vertex ids.
int64_t CountEdgesBetween(const DynGraph& g, const std::vector<char>& in_a,
                          const std::vector<char>& in_b);
// |E(S, V \ S)|.
int64_t CountOut(const DynGraph& g, const std::vector<int>& s);
std::vector<char> MaskOf(int slots, const std::vector<int>& vertices);

}  // namespace dynexp
