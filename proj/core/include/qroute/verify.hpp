#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qroute/faults.hpp"
#include "qroute/path.hpp"

namespace qroute {

// Outcome of checking a path system against its instance. `pass()` holds
// exactly when every structural check holds and the coverage bound is met.
struct VerifyReport {
  bool disjoint = false;
  bool fault_free = false;
  bool endpoints_bijection = false;
  bool all_edges_valid = false;
  std::size_t coverage = 0;
  std::size_t bound = 0;
  bool meets_bound = false;
  std::vector<std::string> failures;

  bool pass() const {
    return disjoint && fault_free && endpoints_bijection && all_edges_valid &&
           meets_bound;
  }
};

// Recomputes every property of the system from scratch. This function
// shares no graph logic with the construction side: adjacency, parity, and
// coverage are all rederived locally so that a construction bug cannot hide
// behind a shared helper.
VerifyReport verify(const Instance& inst, const PathSystem& ps);

struct OracleResult {
  bool feasible = false;
  std::size_t max_coverage = 0;
};

// Exact maximum total coverage over all systems of |sources| disjoint
// paths from sources to sinks (any pairing) avoiding `excluded`, by plain
// exhaustive search. Meant for cross-checking on small cubes; requires
// n <= 4. Returns infeasible when no complete system exists.
OracleResult brute_force_max_paths(int n, const VertexSet& excluded,
                                   const std::vector<Vertex>& sources,
                                   const std::vector<Vertex>& sinks);

// The same oracle applied to a full routing instance.
OracleResult brute_force_best(const Instance& inst);

} // namespace qroute
