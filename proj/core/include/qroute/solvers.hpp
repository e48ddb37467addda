#pragma once

#include <optional>

#include "qroute/faults.hpp"
#include "qroute/path.hpp"

namespace qroute {

// Resource limits shared by every solver entry point. `max_dimension` caps
// how large a cube the backtracking search may be asked to sweep directly;
// `node_limit` caps the number of search tree expansions per call.
struct SolverBudget {
  int max_dimension = 6;
  long long node_limit = 50'000'000;
};

// One request to the backtracking search: path i starts at sources[i], ends
// at some sink (the search picks the pairing), avoids `excluded`, stays
// vertex disjoint from the other paths, and the system must cover at least
// `min_coverage` vertices in total.
struct SearchProblem {
  int n = 0;
  VertexSet excluded;
  std::vector<Vertex> sources;
  std::vector<Vertex> sinks;
  std::size_t min_coverage = 0;
};

// Exhaustive search with component, matching, and parity pruning. Returns
// the first system found in deterministic order, std::nullopt if none
// exists, and throws ErrorKind::BudgetExceeded when the node limit runs out
// before the search is decided.
std::optional<PathSystem> search_disjoint_paths(const SearchProblem& prob,
                                                const SolverBudget& budget = {});

// Path between two fixed fault-free vertices avoiding every fault.
// Requires n >= 3, |faults| <= 2n-5, the two-neighbor condition, x != y.
// Covers at least 2^n - 2f vertices when distance(x, y) is odd and at least
// 2^n - 2f - 1 when it is even.
Path long_path(int n, const VertexSet& faults, Vertex x, Vertex y,
               const SolverBudget& budget = {});

// k = |sources| disjoint fault-avoiding paths between opposite parity
// classes. Requires n >= 2, 1 <= k <= n-1, |faults| <= n-k-1, endpoints
// fault-free. Covers at least 2^n - 2f vertices in total.
PathSystem disjoint_paths_small(int n, const VertexSet& faults,
                                const VertexSet& sources,
                                const VertexSet& sinks,
                                const SolverBudget& budget = {});

// Path from u to v through every vertex except the two endpoints of the
// edge xy. Requires n >= 3, xy an edge disjoint from {u, v}, distance(u, v)
// odd. Throws ErrorKind::ExceptionCase for the one infeasible layout: n = 3
// with uv an edge at distance 2 from xy.
Path spanning_path_avoiding_edge(int n, Vertex x, Vertex y, Vertex u,
                                 Vertex v, const SolverBudget& budget = {});

} // namespace qroute
