#pragma once

#include <utility>
#include <vector>

#include "qroute/cube.hpp"

namespace qroute {

// Vertex sets are kept sorted and duplicate free so that iteration order,
// and with it every tie break in the solver, is deterministic.
using VertexSet = std::vector<Vertex>;

// Sorts the input and rejects duplicates.
VertexSet make_set(std::vector<Vertex> vs);

bool set_contains(const VertexSet& set, Vertex v);

// Inserts v if absent, keeping the set sorted. Returns false if present.
bool set_insert(VertexSet& set, Vertex v);

// Removes v if present, returns whether it was there.
bool set_erase(VertexSet& set, Vertex v);

// Every vertex outside `faults` must keep at least two neighbors outside
// `faults`. This is the connectivity condition all routing entry points
// assume of a fault set.
bool is_conditionally_fault_free(int n, const VertexSet& faults);

// Fault counts per half for a given split: {side 0, side 1}.
std::pair<int, int> split_fault_counts(const SplitContext& ctx,
                                       const VertexSet& faults);

// The members of `set` lying in the given half, projected to the half's
// coordinates. The result is again sorted: projection along a fixed axis is
// monotone on each half.
VertexSet project_side(const SplitContext& ctx, const VertexSet& set, int side);

// Smallest dimension whose two halves each satisfy the two-neighbor
// condition on their own. Throws ErrorKind::NoValidDimension if none does.
int choose_split_dimension(int n, const VertexSet& faults);

// One routing problem: k fault-free source/sink pairs in opposite parity
// classes of the n-cube, with faulty vertices to avoid.
struct Instance {
  int n = 0;
  int k = 0;
  VertexSet faults;
  VertexSet sources;
  VertexSet sinks;
};

// Largest admissible number of faults for the full routing contract.
inline int max_fault_budget(int n, int k) { return 2 * n - 2 * k - 3; }

// Checks every hypothesis of the routing contract and throws
// ErrorKind::PreconditionViolation naming the first failed clause.
void validate_instance(const Instance& inst);

} // namespace qroute
