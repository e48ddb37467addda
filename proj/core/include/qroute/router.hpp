#pragma once

#include <string>
#include <vector>

#include "qroute/faults.hpp"
#include "qroute/path.hpp"
#include "qroute/solvers.hpp"

namespace qroute {

// One level of the divide-and-conquer construction: which rule fired and the
// shape of the subproblem it saw. `split_dim` is 0 at levels that did not
// split, and the endpoint/fault counts describe the two halves with the near
// half first. Children are the recursive subcalls in solve order.
//
// Tags: BaseK1, BaseKmax, BaseSmallN for the non-splitting levels;
// Case1_1, Case1_2a, Case1_2b_fallback when every endpoint shares a half;
// Case2 when both halves hold endpoints of both roles (or the far fault
// count leaves room to route the far half on the full budget); Case3a and
// Case3b when one half holds only sources; SolverFallback when the level
// handed the whole subproblem to the backtracking search.
struct TraceNode {
  std::string tag;
  int n = 0;
  int k = 0;
  int split_dim = 0;
  int p = -1;
  int q = -1;
  int f_near = -1;
  int f_far = -1;
  std::vector<TraceNode> children;
};

struct RouteResult {
  PathSystem paths;  // oriented source to sink, sorted by source label
  TraceNode trace;
};

// Routes k vertex-disjoint fault-avoiding paths from the sources to the
// sinks, covering at least 2^n - 2f vertices. Validates the full contract
// up front (see validate_instance) and throws PreconditionViolation naming
// the failed clause if the instance is outside it.
RouteResult route(const Instance& inst, const SolverBudget& budget = {});

// Pre-order rendering of a trace, one line per node, indented by depth.
std::vector<std::string> flatten_trace(const TraceNode& root);

} // namespace qroute
