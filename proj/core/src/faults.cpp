#include "qroute/faults.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace qroute {

VertexSet make_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  auto dup = std::adjacent_find(vs.begin(), vs.end());
  if (dup != vs.end())
    fail(ErrorKind::InvalidArgument, "duplicate label " + std::to_string(*dup));
  return vs;
}

bool set_contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

bool set_insert(VertexSet& set, Vertex v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it != set.end() && *it == v) return false;
  set.insert(it, v);
  return true;
}

bool set_erase(VertexSet& set, Vertex v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it == set.end() || *it != v) return false;
  set.erase(it);
  return true;
}

bool is_conditionally_fault_free(int n, const VertexSet& faults) {
  // A vertex can fall below two usable neighbors only when at least n-1 of
  // its n neighbors are faulty, so counting over the faults' neighborhoods
  // covers every candidate.
  std::unordered_map<Vertex, int> faulty_neighbors;
  for (Vertex f : faults)
    for (int j = 0; j < n; ++j) ++faulty_neighbors[f ^ (Vertex{1} << j)];
  for (const auto& [v, c] : faulty_neighbors)
    if (c >= n - 1 && !set_contains(faults, v)) return false;
  return true;
}

std::pair<int, int> split_fault_counts(const SplitContext& ctx,
                                       const VertexSet& faults) {
  int c0 = 0;
  int c1 = 0;
  for (Vertex f : faults) (ctx.side(f) ? c1 : c0)++;
  return {c0, c1};
}

VertexSet project_side(const SplitContext& ctx, const VertexSet& set,
                       int side) {
  VertexSet out;
  for (Vertex v : set)
    if (ctx.side(v) == side) out.push_back(ctx.project(v));
  return out;
}

int choose_split_dimension(int n, const VertexSet& faults) {
  for (int j = 1; j <= n; ++j) {
    SplitContext ctx(n, j);
    bool ok = true;
    for (int side = 0; side < 2 && ok; ++side)
      ok = is_conditionally_fault_free(n - 1,
                                       project_side(ctx, faults, side));
    if (ok) return j;
  }
  fail(ErrorKind::NoValidDimension,
       "no split dimension keeps both halves well-connected");
}

namespace {

void check_labels(const VertexSet& set, int n, const char* what) {
  for (Vertex v : set)
    require((v >> n) == 0, ErrorKind::PreconditionViolation,
            std::string(what) + " label " + std::to_string(v) +
                " does not fit in " + std::to_string(n) + " bits");
}

} // namespace

void validate_instance(const Instance& inst) {
  check_dimension(inst.n);
  require(inst.n >= 3, ErrorKind::PreconditionViolation,
          "n=" + std::to_string(inst.n) + " is below the minimum dimension 3");
  require(inst.k >= 1 && inst.k <= inst.n - 2, ErrorKind::PreconditionViolation,
          "k=" + std::to_string(inst.k) + " outside [1, n-2] with n=" +
              std::to_string(inst.n));
  check_labels(inst.faults, inst.n, "fault");
  check_labels(inst.sources, inst.n, "source");
  check_labels(inst.sinks, inst.n, "sink");

  require(static_cast<int>(inst.sources.size()) == inst.k,
          ErrorKind::PreconditionViolation,
          "expected k=" + std::to_string(inst.k) + " sources, got " +
              std::to_string(inst.sources.size()));
  require(static_cast<int>(inst.sinks.size()) == inst.k,
          ErrorKind::PreconditionViolation,
          "expected k=" + std::to_string(inst.k) + " sinks, got " +
              std::to_string(inst.sinks.size()));

  int budget = max_fault_budget(inst.n, inst.k);
  require(static_cast<int>(inst.faults.size()) <= budget,
          ErrorKind::PreconditionViolation,
          "f=" + std::to_string(inst.faults.size()) + " exceeds 2n-2k-3=" +
              std::to_string(budget));

  for (Vertex s : inst.sources)
    require(same_class(s, inst.sources.front()),
            ErrorKind::PreconditionViolation,
            "sources span both parity classes");
  for (Vertex t : inst.sinks)
    require(same_class(t, inst.sinks.front()), ErrorKind::PreconditionViolation,
            "sinks span both parity classes");
  require(!same_class(inst.sources.front(), inst.sinks.front()),
          ErrorKind::PreconditionViolation,
          "sources and sinks must lie in opposite parity classes");

  for (Vertex s : inst.sources)
    require(!set_contains(inst.faults, s), ErrorKind::PreconditionViolation,
            "source " + std::to_string(s) + " is faulty");
  for (Vertex t : inst.sinks)
    require(!set_contains(inst.faults, t), ErrorKind::PreconditionViolation,
            "sink " + std::to_string(t) + " is faulty");

  require(is_conditionally_fault_free(inst.n, inst.faults),
          ErrorKind::PreconditionViolation,
          "a fault-free vertex has fewer than two fault-free neighbors");
}

} // namespace qroute
