#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dynexp/dyn_graph.h"

namespace dynexp {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi], independent of the standard library's
// distribution implementations so that runs are reproducible everywhere.
int64_t UniformInt(Rng& rng, int64_t lo, int64_t hi);
double UniformReal(Rng& rng);

DynGraph Complete(int n);
DynGraph Cycle(int n);
DynGraph Path(int n);
// Two copies of K_k joined by a single edge.
DynGraph Dumbbell(int k);
// m edges with uniformly random endpoints, no self-loops, parallel edges allowed.
DynGraph RandomMultigraph(Rng& rng, int n, int m);
// m distinct non-loop edges chosen uniformly (m is capped at n(n-1)/2).
DynGraph RandomSimple(Rng& rng, int n, int m);
// Simple graph with maximum degree at most max_deg built by random attempts.
DynGraph RandomBoundedDegree(Rng& rng, int n, int max_deg, int attempts);

}  // namespace dynexp
