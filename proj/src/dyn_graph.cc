#include "dynexp/dyn_graph.h"

#include <algorithm>
#include <string>

#include "dynexp/error.h"

namespace dynexp {

DynGraph::DynGraph(int n) : alive_(n, 1), deg_(n, 0), adj_(n), num_vertices_(n) {}

std::vector<int> DynGraph::Vertices() const {
  std::vector<int> out;
  out.reserve(num_vertices_);
  for (int v = 0; v < NumVertexSlots(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

void DynGraph::CheckVertex(int v) const {
  if (!HasVertex(v)) Fail(ErrorKind::kNotFound, "unknown vertex " + std::to_string(v));
}

int DynGraph::AddVertex() {
  int v;
  if (!free_vertices_.empty()) {
    v = free_vertices_.back();
    free_vertices_.pop_back();
    alive_[v] = 1;
  } else {
    v = NumVertexSlots();
    alive_.push_back(1);
    deg_.push_back(0);
    adj_.emplace_back();
  }
  ++num_vertices_;
  return v;
}

void DynGraph::AddVertexAt(int v) {
  Require(v >= 0, ErrorKind::kInvalidArgument, "negative vertex id");
  if (HasVertex(v)) Fail(ErrorKind::kPrecondition, "vertex " + std::to_string(v) + " already present");
  if (v >= NumVertexSlots()) {
    for (int x = NumVertexSlots(); x < v; ++x) free_vertices_.push_back(x);
    alive_.resize(v + 1, 0);
    deg_.resize(v + 1, 0);
    adj_.resize(v + 1);
  } else {
    auto it = std::find(free_vertices_.begin(), free_vertices_.end(), v);
    if (it != free_vertices_.end()) free_vertices_.erase(it);
  }
  alive_[v] = 1;
  ++num_vertices_;
}

void DynGraph::RemoveVertex(int v) {
  CheckVertex(v);
  if (!adj_[v].empty()) {
    Fail(ErrorKind::kPrecondition, "vertex " + std::to_string(v) + " is not isolated");
  }
  alive_[v] = 0;
  free_vertices_.push_back(v);
  --num_vertices_;
}

void DynGraph::Attach(int slot) {
  Slot& e = edges_[slot];
  e.pos_u = static_cast<int>(adj_[e.u].size());
  adj_[e.u].push_back(slot);
  ++deg_[e.u];
  if (e.u != e.v) {
    e.pos_v = static_cast<int>(adj_[e.v].size());
    adj_[e.v].push_back(slot);
    ++deg_[e.v];
  } else {
    e.pos_v = e.pos_u;
  }
}

void DynGraph::Detach(int slot) {
  Slot& e = edges_[slot];
  auto remove_at = [&](int x, int pos) {
    std::vector<int>& list = adj_[x];
    int moved = list.back();
    list[pos] = moved;
    list.pop_back();
    if (moved != slot) {
      Slot& m = edges_[moved];
      if (m.u == x) m.pos_u = pos;
      if (m.v == x) m.pos_v = pos;
    }
    --deg_[x];
  };
  remove_at(e.u, e.pos_u);
  if (e.u != e.v) remove_at(e.v, e.pos_v);
}

OriginId DynGraph::InsertEdge(int u, int v) {
  OriginId o = next_origin_;
  InsertEdgeWithOrigin(u, v, o);
  return o;
}

void DynGraph::InsertEdgeWithOrigin(int u, int v, OriginId origin) {
  CheckVertex(u);
  CheckVertex(v);
  if (slot_of_.count(origin)) {
    Fail(ErrorKind::kInvalidArgument, "duplicate origin id " + std::to_string(origin));
  }
  int slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<int>(edges_.size());
    edges_.emplace_back();
  }
  Slot& e = edges_[slot];
  e.u = u;
  e.v = v;
  e.origin = origin;
  e.alive = true;
  Attach(slot);
  slot_of_.emplace(origin, slot);
  if (origin >= next_origin_) next_origin_ = origin + 1;
  ++num_edges_;
}

int DynGraph::FindSlot(int u, int v) const {
  int x = deg_[u] <= deg_[v] ? u : v;
  int y = x == u ? v : u;
  const std::vector<int>& list = adj_[x];
  for (int i = static_cast<int>(list.size()) - 1; i >= 0; --i) {
    const Slot& e = edges_[list[i]];
    if ((e.u == x && e.v == y) || (e.v == x && e.u == y)) return list[i];
  }
  return -1;
}

OriginId DynGraph::FindEdge(int u, int v) const {
  if (!HasVertex(u) || !HasVertex(v)) return -1;
  int slot = FindSlot(u, v);
  return slot < 0 ? -1 : edges_[slot].origin;
}

OriginId DynGraph::DeleteEdge(int u, int v) {
  CheckVertex(u);
  CheckVertex(v);
  int slot = FindSlot(u, v);
  if (slot < 0) {
    Fail(ErrorKind::kNotFound,
         "no edge (" + std::to_string(u) + "," + std::to_string(v) + ") to delete");
  }
  OriginId o = edges_[slot].origin;
  DeleteEdgeByOrigin(o);
  return o;
}

Edge DynGraph::DeleteEdgeByOrigin(OriginId origin) {
  auto it = slot_of_.find(origin);
  if (it == slot_of_.end()) {
    Fail(ErrorKind::kNotFound, "no edge with origin " + std::to_string(origin));
  }
  int slot = it->second;
  slot_of_.erase(it);
  Detach(slot);
  Slot& e = edges_[slot];
  e.alive = false;
  free_slots_.push_back(slot);
  --num_edges_;
  return static_cast<const Edge&>(e);
}

const Edge& DynGraph::EdgeByOrigin(OriginId origin) const {
  auto it = slot_of_.find(origin);
  if (it == slot_of_.end()) {
    Fail(ErrorKind::kNotFound, "no edge with origin " + std::to_string(origin));
  }
  return edges_[it->second];
}

int DynGraph::Multiplicity(int u, int v) const {
  CheckVertex(u);
  CheckVertex(v);
  int count = 0;
  for (int slot : adj_[u]) {
    const Slot& e = edges_[slot];
    if (e.Other(u) == v) ++count;
  }
  return count;
}

int64_t DynGraph::Volume(const std::vector<int>& vertices) const {
  int64_t vol = 0;
  for (int v : vertices) {
    CheckVertex(v);
    vol += deg_[v];
  }
  return vol;
}

std::vector<Edge> DynGraph::Edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  ForEachEdge([&](const Edge& e) { out.push_back(e); });
  return out;
}

std::vector<char> MaskOf(int slots, const std::vector<int>& vertices) {
  std::vector<char> mask(slots, 0);
  for (int v : vertices) mask[v] = 1;
  return mask;
}

int64_t CountEdgesBetween(const DynGraph& g, const std::vector<char>& in_a,
                          const std::vector<char>& in_b) {
  int64_t count = 0;
  g.ForEachEdge([&](const Edge& e) {
    if ((in_a[e.u] && in_b[e.v]) || (in_a[e.v] && in_b[e.u])) ++count;
  });
  return count;
}

int64_t CountOut(const DynGraph& g, const std::vector<int>& s) {
  // Stamped membership keeps this O(vol(s)) on graphs with many dead slots.
  thread_local std::vector<uint32_t> stamp;
  thread_local uint32_t epoch = 0;
  if (stamp.size() < static_cast<size_t>(g.NumVertexSlots())) stamp.resize(g.NumVertexSlots(), 0);
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }
  for (int v : s) stamp[v] = epoch;
  int64_t count = 0;
  for (int v : s) {
    g.ForEachIncident(v, [&](const Edge& e) {
      if (stamp[e.Other(v)] != epoch) ++count;
    });
  }
  return count;
}

}  // namespace dynexp
