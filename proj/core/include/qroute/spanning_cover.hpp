#pragma once

#include "qroute/faults.hpp"
#include "qroute/path.hpp"
#include "qroute/solvers.hpp"

namespace qroute {

// k = |sources| disjoint paths from sources to sinks that together cover
// every vertex of the fault-free n-cube except the two endpoints of the
// edge xy. Requires n >= 4, 1 <= k <= n-2, sources in one parity class and
// sinks in the other, and endpoints disjoint from {x, y}. The result
// always covers exactly 2^n - 2 vertices.
//
// For k = 1 this reduces to a single edge-avoiding spanning path. Larger k
// at n = 4 is assembled from two half-cube covers when a suitable split
// exists and by direct search otherwise. For n >= 5 the cube is split
// along a dimension that keeps xy inside one half and at least one
// endpoint outside it, the half holding xy is covered recursively, the
// other half by a fault-free disjoint path cover, and the two covers are
// stitched through peer edges.
PathSystem spanning_disjoint_paths_avoiding_edge(int n, Vertex x, Vertex y,
                                                 const VertexSet& sources,
                                                 const VertexSet& sinks,
                                                 const SolverBudget& budget = {});

} // namespace qroute
