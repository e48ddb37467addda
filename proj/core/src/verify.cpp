#include "qroute/verify.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace qroute {

namespace {

std::string label(Vertex v) { return std::to_string(v); }

} // namespace

VerifyReport verify(const Instance& inst, const PathSystem& ps) {
  VerifyReport rep;
  const int n = inst.n;
  const std::uint32_t limit = std::uint32_t{1} << n;

  rep.all_edges_valid = true;
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const auto& vs = ps.paths[i].vertices;
    if (vs.empty()) {
      rep.all_edges_valid = false;
      rep.failures.push_back("path " + std::to_string(i) + " is empty");
      continue;
    }
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (vs[j] >= limit) {
        rep.all_edges_valid = false;
        rep.failures.push_back("path " + std::to_string(i) + " leaves the " +
                               std::to_string(n) + "-cube at " + label(vs[j]));
      }
      if (j > 0 && std::popcount(vs[j - 1] ^ vs[j]) != 1) {
        rep.all_edges_valid = false;
        rep.failures.push_back("path " + std::to_string(i) + " jumps from " +
                               label(vs[j - 1]) + " to " + label(vs[j]));
      }
    }
  }

  rep.disjoint = true;
  std::vector<Vertex> all;
  for (const auto& p : ps.paths)
    all.insert(all.end(), p.vertices.begin(), p.vertices.end());
  {
    std::vector<Vertex> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      rep.disjoint = false;
      rep.failures.push_back("vertex " + label(*dup) +
                             " appears more than once");
    }
  }

  rep.fault_free = true;
  for (Vertex v : all) {
    if (std::binary_search(inst.faults.begin(), inst.faults.end(), v)) {
      rep.fault_free = false;
      rep.failures.push_back("vertex " + label(v) + " is faulty");
    }
  }

  rep.endpoints_bijection = true;
  if (ps.paths.size() != inst.sources.size()) {
    rep.endpoints_bijection = false;
    rep.failures.push_back("expected " + std::to_string(inst.sources.size()) +
                           " paths, got " + std::to_string(ps.paths.size()));
  } else {
    std::vector<Vertex> fronts;
    std::vector<Vertex> backs;
    for (const auto& p : ps.paths) {
      if (p.vertices.empty()) continue;
      fronts.push_back(p.vertices.front());
      backs.push_back(p.vertices.back());
    }
    std::sort(fronts.begin(), fronts.end());
    std::sort(backs.begin(), backs.end());
    if (fronts != inst.sources) {
      rep.endpoints_bijection = false;
      rep.failures.push_back("path starts do not match the source set");
    }
    if (backs != inst.sinks) {
      rep.endpoints_bijection = false;
      rep.failures.push_back("path ends do not match the sink set");
    }
  }

  rep.coverage = all.size();
  rep.bound = (std::size_t{1} << n) - 2 * inst.faults.size();
  rep.meets_bound = rep.coverage >= rep.bound;
  if (!rep.meets_bound)
    rep.failures.push_back("coverage " + std::to_string(rep.coverage) +
                           " is below the bound " + std::to_string(rep.bound));
  return rep;
}

namespace {

// Plain depth-first maximization, deliberately free of the solver's
// pruning machinery: correctness here guards correctness there.
class ExhaustiveCover {
public:
  ExhaustiveCover(int n, std::uint32_t blocked, std::vector<Vertex> sources,
                  std::vector<Vertex> sinks)
      : n_(n),
        k_(static_cast<int>(sources.size())),
        blocked_(blocked),
        sources_(std::move(sources)),
        sinks_(std::move(sinks)) {
    full_ = (std::uint32_t{1} << (1 << n_)) - 1;
  }

  int run() {
    std::uint32_t open = 0;
    for (Vertex t : sinks_) open |= bit(t);
    start_path(0, 0, open, 0);
    return best_;
  }

private:
  int n_;
  int k_;
  std::uint32_t blocked_;
  std::uint32_t full_ = 0;
  std::vector<Vertex> sources_;
  std::vector<Vertex> sinks_;
  int best_ = -1;

  static std::uint32_t bit(Vertex v) { return std::uint32_t{1} << v; }

  int spare(std::uint32_t used, int cov) const {
    return cov + std::popcount(full_ & ~(used | blocked_));
  }

  void start_path(int i, std::uint32_t used, std::uint32_t open, int cov) {
    if (i == k_) {
      best_ = std::max(best_, cov);
      return;
    }
    if (spare(used, cov) <= best_) return;
    std::uint32_t future = 0;
    for (int j = i + 1; j < k_; ++j) future |= bit(sources_[j]);
    walk(i, sources_[i], used | bit(sources_[i]), open, future, cov + 1);
  }

  void walk(int i, Vertex h, std::uint32_t used, std::uint32_t open,
            std::uint32_t future, int cov) {
    if (spare(used, cov) <= best_) return;
    for (int j = 0; j < n_; ++j) {
      Vertex u = h ^ (Vertex{1} << j);
      if (open & bit(u)) start_path(i + 1, used | bit(u), open ^ bit(u), cov + 1);
    }
    std::uint32_t taboo = used | blocked_ | open | future;
    for (int j = 0; j < n_; ++j) {
      Vertex u = h ^ (Vertex{1} << j);
      if (!(taboo & bit(u))) walk(i, u, used | bit(u), open, future, cov + 1);
    }
  }
};

} // namespace

OracleResult brute_force_max_paths(int n, const VertexSet& excluded,
                                   const std::vector<Vertex>& sources,
                                   const std::vector<Vertex>& sinks) {
  require(n >= 1 && n <= 4, ErrorKind::InvalidArgument,
          "exhaustive oracle supports n <= 4, got n=" + std::to_string(n));
  require(!sources.empty() && sources.size() == sinks.size(),
          ErrorKind::InvalidArgument, "endpoint counts differ or are empty");
  std::uint32_t blocked = 0;
  for (Vertex v : excluded) {
    check_vertex(v, n);
    blocked |= std::uint32_t{1} << v;
  }
  for (Vertex v : sources) check_vertex(v, n);
  for (Vertex v : sinks) check_vertex(v, n);

  ExhaustiveCover cover(n, blocked, sources, sinks);
  int best = cover.run();
  OracleResult res;
  res.feasible = best >= 0;
  res.max_coverage = best >= 0 ? static_cast<std::size_t>(best) : 0;
  return res;
}

OracleResult brute_force_best(const Instance& inst) {
  return brute_force_max_paths(
      inst.n, inst.faults,
      std::vector<Vertex>(inst.sources.begin(), inst.sources.end()),
      std::vector<Vertex>(inst.sinks.begin(), inst.sinks.end()));
}

} // namespace qroute
