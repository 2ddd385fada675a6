#include "dynexp/generators.h"

#include <set>

#include "dynexp/error.h"

namespace dynexp {

int64_t UniformInt(Rng& rng, int64_t lo, int64_t hi) {
  Require(lo <= hi, ErrorKind::kInvalidArgument, "empty integer range");
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(rng());
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int64_t>(x % span);
}

double UniformReal(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

DynGraph Complete(int n) {
  DynGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.InsertEdge(u, v);
  }
  return g;
}

DynGraph Cycle(int n) {
  DynGraph g(n);
  for (int u = 0; u < n; ++u) g.InsertEdge(u, (u + 1) % n);
  return g;
}

DynGraph Path(int n) {
  DynGraph g(n);
  for (int u = 0; u + 1 < n; ++u) g.InsertEdge(u, u + 1);
  return g;
}

DynGraph Dumbbell(int k) {
  DynGraph g(2 * k);
  for (int side = 0; side < 2; ++side) {
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v) g.InsertEdge(side * k + u, side * k + v);
    }
  }
  g.InsertEdge(k - 1, k);
  return g;
}

DynGraph RandomMultigraph(Rng& rng, int n, int m) {
  DynGraph g(n);
  if (n < 2) return g;
  for (int i = 0; i < m; ++i) {
    int u = static_cast<int>(UniformInt(rng, 0, n - 1));
    int v = static_cast<int>(UniformInt(rng, 0, n - 2));
    if (v >= u) ++v;
    g.InsertEdge(u, v);
  }
  return g;
}

DynGraph RandomSimple(Rng& rng, int n, int m) {
  DynGraph g(n);
  int64_t max_edges = static_cast<int64_t>(n) * (n - 1) / 2;
  if (m > max_edges) m = static_cast<int>(max_edges);
  std::set<std::pair<int, int>> used;
  while (static_cast<int>(used.size()) < m) {
    int u = static_cast<int>(UniformInt(rng, 0, n - 1));
    int v = static_cast<int>(UniformInt(rng, 0, n - 1));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (used.insert({u, v}).second) g.InsertEdge(u, v);
  }
  return g;
}

DynGraph RandomBoundedDegree(Rng& rng, int n, int max_deg, int attempts) {
  DynGraph g(n);
  std::set<std::pair<int, int>> used;
  if (n < 2) return g;
  for (int i = 0; i < attempts; ++i) {
    int u = static_cast<int>(UniformInt(rng, 0, n - 1));
    int v = static_cast<int>(UniformInt(rng, 0, n - 1));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.Degree(u) >= max_deg || g.Degree(v) >= max_deg) continue;
    if (used.insert({u, v}).second) g.InsertEdge(u, v);
  }
  return g;
}

}  // namespace dynexp
