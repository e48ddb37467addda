#include "qroute/solvers.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <string>
#include <vector>

namespace qroute {

namespace {

void validate_problem(const SearchProblem& prob, const SolverBudget& budget) {
  check_dimension(prob.n);
  require(prob.n <= budget.max_dimension, ErrorKind::DimensionTooLarge,
          "search over dimension " + std::to_string(prob.n) +
              " exceeds the configured cap " +
              std::to_string(budget.max_dimension));
  require(!prob.sources.empty(), ErrorKind::InvalidArgument,
          "search needs at least one source");
  require(prob.sources.size() == prob.sinks.size(), ErrorKind::InvalidArgument,
          "source and sink counts differ");
  require(prob.sources.size() <= 32, ErrorKind::InvalidArgument,
          "more than 32 paths requested");

  std::vector<Vertex> endpoints = prob.sources;
  endpoints.insert(endpoints.end(), prob.sinks.begin(), prob.sinks.end());
  std::sort(endpoints.begin(), endpoints.end());
  require(std::adjacent_find(endpoints.begin(), endpoints.end()) ==
              endpoints.end(),
          ErrorKind::InvalidArgument, "endpoint labels repeat");
  for (Vertex v : endpoints) {
    check_vertex(v, prob.n);
    require(!set_contains(prob.excluded, v), ErrorKind::InvalidArgument,
            "endpoint " + std::to_string(v) + " is excluded");
  }
  for (Vertex v : prob.excluded) check_vertex(v, prob.n);
}

// Depth-first construction of all paths at once. At each node the search
// picks the unfinished path with the fewest legal moves and branches over
// exactly that path's moves, which keeps the tree complete while failing
// fast. Pruning combines several sound coverage bounds:
//   - an available vertex with too few distinct entry and exit ports can
//     never be covered, and ports only disappear as the search deepens;
//   - paths alternate parity classes, so the drawable surplus of one class
//     over the other is pinned by the head and sink classes;
//   - every path extends through at most one connected component of the
//     still-available vertices, and within a component the two parity
//     classes of drawn vertices can differ by at most one per entering
//     path;
//   - each unfinished path must reach a distinct unused sink either
//     directly or through a component adjacent to both its head and the
//     sink, a bipartite matching condition;
//   - a path whose head has no moves left is stuck.
// Internal signal that a search slice ran out of nodes.
struct SliceCap {};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class PathSearch {
public:
  PathSearch(const SearchProblem& prob, long long node_limit, int perturb)
      : n_(prob.n),
        N_(std::size_t{1} << prob.n),
        k_(prob.sources.size()),
        min_cov_(prob.min_coverage),
        node_limit_(node_limit),
        tie_mask_(perturb == 0
                      ? 0
                      : static_cast<Vertex>(mix64(
                            static_cast<std::uint64_t>(perturb)) &
                        (N_ - 1))),
        sinks_(prob.sinks) {
    avail_.assign(N_, 1);
    sink_unused_.assign(N_, 0);
    for (Vertex v : prob.excluded) avail_[v] = 0;
    for (Vertex t : sinks_) {
      avail_[t] = 0;
      sink_unused_[t] = 1;
    }
    heads_.resize(k_);
    finished_.assign(k_, 0);
    paths_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      Vertex s = prob.sources[i];
      heads_[i] = s;
      avail_[s] = 0;
      paths_[i].push_back(s);
    }
    used_ = k_;
    unfinished_ = k_;
    for (std::size_t v = 0; v < N_; ++v) {
      if (!avail_[v]) continue;
      ++avail_total_;
      avail_even_ += even(static_cast<Vertex>(v));
    }
    comp_seen_.assign(N_, 0);
    comp_id_.assign(N_, 0);
    adj_epoch_.assign(N_, 0);
    head_mask_.assign(N_, 0);
    sink_cnt_.assign(N_, 0);
  }

  std::optional<PathSystem> run() {
    try {
      if (!expand()) return std::nullopt;
    } catch (const SliceCap&) {
      capped_ = true;
      return std::nullopt;
    }
    PathSystem out;
    out.paths.reserve(k_);
    for (auto& vs : paths_) out.paths.emplace_back(std::move(vs));
    return out;
  }

  bool capped() const { return capped_; }
  long long nodes_used() const { return nodes_; }

private:
  int n_;
  std::size_t N_;
  std::size_t k_;
  std::size_t min_cov_;
  long long node_limit_;
  long long nodes_ = 0;
  Vertex tie_mask_;
  bool capped_ = false;

  std::vector<Vertex> sinks_;
  std::vector<char> avail_;
  std::vector<char> sink_unused_;
  std::vector<Vertex> heads_;
  std::vector<char> finished_;
  std::vector<std::vector<Vertex>> paths_;
  std::size_t used_ = 0;
  std::size_t unfinished_ = 0;
  std::size_t avail_total_ = 0;
  std::size_t avail_even_ = 0;

  // Component scan scratch, reused across nodes via an epoch counter.
  std::vector<int> comp_seen_;
  std::vector<int> comp_id_;
  int comp_epoch_ = 0;
  std::vector<Vertex> bfs_queue_;
  struct CompInfo {
    std::size_t size = 0;
    std::size_t even = 0;
    std::uint32_t heads = 0;
  };
  std::vector<CompInfo> comps_;

  // Per-vertex adjacency to heads and unused sinks, epoch stamped.
  std::vector<int> adj_epoch_;
  std::vector<std::uint32_t> head_mask_;
  std::vector<std::uint8_t> sink_cnt_;

  Vertex flip(Vertex v, int j) const { return v ^ (Vertex{1} << j); }

  static bool even(Vertex v) { return (std::popcount(v) & 1) == 0; }

  int avail_degree(Vertex v) const {
    int d = 0;
    for (int j = 0; j < n_; ++j) d += avail_[flip(v, j)];
    return d;
  }

  int open_sink_degree(Vertex v) const {
    int d = 0;
    for (int j = 0; j < n_; ++j) d += sink_unused_[flip(v, j)];
    return d;
  }

  // The draw still needed from available vertices to reach the target,
  // counting the sink each unfinished path will consume.
  std::size_t needed_draw() const {
    std::size_t have = used_ + unfinished_;
    return have >= min_cov_ ? 0 : min_cov_ - have;
  }

  // Parity bound on the total draw. Paths alternate classes, so a path
  // whose head and final pre-sink vertex share a class draws one more
  // vertex of the opposite class; when all unused sinks agree on a class
  // the surplus is pinned exactly, otherwise it varies by one per path.
  bool parity_feasible() const {
    std::size_t ax = avail_even_;
    std::size_t ay = avail_total_ - avail_even_;
    bool sinks_even = false;
    bool sinks_odd = false;
    for (Vertex t : sinks_) {
      if (!sink_unused_[t]) continue;
      (even(t) ? sinks_even : sinks_odd) = true;
    }
    std::size_t cap;
    if (sinks_even != sinks_odd) {
      // Uniform sink class: with sinks odd, a path from an odd head draws
      // exactly one extra even vertex, and symmetrically.
      std::size_t surplus = 0;
      for (std::size_t i = 0; i < k_; ++i)
        if (!finished_[i] && even(heads_[i]) == sinks_even) ++surplus;
      std::size_t& major = sinks_odd ? ax : ay;
      std::size_t& minor = sinks_odd ? ay : ax;
      if (major < surplus) return false;
      cap = 2 * std::min(major - surplus, minor) + surplus;
    } else {
      std::size_t lo = std::min(ax, ay);
      std::size_t hi = std::max(ax, ay);
      cap = 2 * lo + std::min(hi - lo, unfinished_);
    }
    return cap >= needed_draw();
  }

  bool feasible() {
    if (!parity_feasible()) return false;

    ++comp_epoch_;
    comps_.clear();

    // Stamp head and sink adjacency onto available vertices.
    auto touch = [&](Vertex v) {
      if (adj_epoch_[v] != comp_epoch_) {
        adj_epoch_[v] = comp_epoch_;
        head_mask_[v] = 0;
        sink_cnt_[v] = 0;
      }
    };
    for (std::size_t i = 0; i < k_; ++i) {
      if (finished_[i]) continue;
      for (int j = 0; j < n_; ++j) {
        Vertex u = flip(heads_[i], j);
        if (!avail_[u]) continue;
        touch(u);
        head_mask_[u] |= std::uint32_t{1} << i;
      }
    }
    for (Vertex t : sinks_) {
      if (!sink_unused_[t]) continue;
      for (int j = 0; j < n_; ++j) {
        Vertex u = flip(t, j);
        if (!avail_[u]) continue;
        touch(u);
        ++sink_cnt_[u];
      }
    }

    // One sweep: label components, count parity classes, collect adjacent
    // heads, and count vertices that no path can cover any more. A vertex
    // needs an entry port (available neighbor or adjacent head), an exit
    // port (available neighbor or adjacent unused sink), and at least two
    // ports in total; all three quantities only shrink as the search
    // deepens, so an uncoverable vertex stays uncoverable.
    std::size_t dead = 0;
    for (std::size_t v = 0; v < N_; ++v) {
      if (!avail_[v] || comp_seen_[v] == comp_epoch_) continue;
      int id = static_cast<int>(comps_.size());
      comps_.emplace_back();
      CompInfo& info = comps_.back();
      bfs_queue_.clear();
      bfs_queue_.push_back(static_cast<Vertex>(v));
      comp_seen_[v] = comp_epoch_;
      comp_id_[v] = id;
      while (!bfs_queue_.empty()) {
        Vertex u = bfs_queue_.back();
        bfs_queue_.pop_back();
        ++info.size;
        info.even += even(u) ? 1 : 0;
        int deg = 0;
        for (int j = 0; j < n_; ++j) {
          Vertex w = flip(u, j);
          if (!avail_[w]) continue;
          ++deg;
          if (comp_seen_[w] != comp_epoch_) {
            comp_seen_[w] = comp_epoch_;
            comp_id_[w] = id;
            bfs_queue_.push_back(w);
          }
        }
        touch(u);
        info.heads |= head_mask_[u];
        int entries = deg + std::popcount(head_mask_[u]);
        int exits = deg + sink_cnt_[u];
        int ports = deg + std::popcount(head_mask_[u]) + sink_cnt_[u];
        if (entries < 1 || exits < 1 || ports < 2) ++dead;
      }
    }

    std::size_t target = needed_draw();
    if (avail_total_ - dead < target) return false;

    // Component bound: at most `unfinished_` components contribute, each at
    // most its size and at most one parity-odd vertex per entering path.
    std::vector<std::size_t> caps;
    caps.reserve(comps_.size());
    for (const CompInfo& c : comps_) {
      if (c.heads == 0) continue;
      std::size_t odd = c.size - c.even;
      std::size_t parity_cap = 2 * std::min(c.even, odd) +
                               static_cast<std::size_t>(std::popcount(c.heads));
      caps.push_back(std::min(c.size, parity_cap));
    }
    std::sort(caps.begin(), caps.end(), std::greater<>());
    std::size_t draw = 0;
    for (std::size_t i = 0; i < caps.size() && i < unfinished_; ++i)
      draw += caps[i];
    if (draw < target) return false;

    // Matching: every unfinished path must claim a distinct reachable sink.
    std::vector<std::size_t> open_paths;
    for (std::size_t i = 0; i < k_; ++i)
      if (!finished_[i]) open_paths.push_back(i);
    std::vector<Vertex> open_sinks;
    for (Vertex t : sinks_)
      if (sink_unused_[t]) open_sinks.push_back(t);

    auto comps_around = [&](Vertex v) {
      std::vector<int> ids;
      for (int j = 0; j < n_; ++j) {
        Vertex u = flip(v, j);
        if (avail_[u]) ids.push_back(comp_id_[u]);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      return ids;
    };
    std::vector<std::vector<int>> head_comps(open_paths.size());
    for (std::size_t a = 0; a < open_paths.size(); ++a)
      head_comps[a] = comps_around(heads_[open_paths[a]]);
    std::vector<std::vector<int>> sink_comps(open_sinks.size());
    for (std::size_t b = 0; b < open_sinks.size(); ++b)
      sink_comps[b] = comps_around(open_sinks[b]);

    auto compatible = [&](std::size_t a, std::size_t b) {
      if (adjacent(heads_[open_paths[a]], open_sinks[b])) return true;
      const auto& ha = head_comps[a];
      const auto& sb = sink_comps[b];
      std::size_t x = 0;
      std::size_t y = 0;
      while (x < ha.size() && y < sb.size()) {
        if (ha[x] == sb[y]) return true;
        (ha[x] < sb[y]) ? ++x : ++y;
      }
      return false;
    };

    std::vector<int> owner(open_sinks.size(), -1);
    std::vector<char> visited;
    auto augment = [&](auto&& self, std::size_t a) -> bool {
      for (std::size_t b = 0; b < open_sinks.size(); ++b) {
        if (visited[b] || !compatible(a, b)) continue;
        visited[b] = 1;
        if (owner[b] < 0 ||
            self(self, static_cast<std::size_t>(owner[b]))) {
          owner[b] = static_cast<int>(a);
          return true;
        }
      }
      return false;
    };
    for (std::size_t a = 0; a < open_paths.size(); ++a) {
      visited.assign(open_sinks.size(), 0);
      if (!augment(augment, a)) return false;
    }
    return true;
  }

  bool expand() {
    if (nodes_++ >= node_limit_) throw SliceCap{};
    if (unfinished_ == 0) return used_ >= min_cov_;
    if (!feasible()) return false;

    // Branch on the unfinished path with the fewest legal moves.
    std::size_t pick = k_;
    int fewest = INT_MAX;
    for (std::size_t i = 0; i < k_; ++i) {
      if (finished_[i]) continue;
      int m = avail_degree(heads_[i]) + open_sink_degree(heads_[i]);
      if (m == 0) return false;
      if (m < fewest) {
        fewest = m;
        pick = i;
      }
    }

    Vertex h = heads_[pick];
    std::vector<Vertex> finishes;
    struct Extend {
      int onward;
      Vertex to;
    };
    std::vector<Extend> extends;
    for (int j = 0; j < n_; ++j) {
      Vertex u = flip(h, j);
      if (sink_unused_[u]) finishes.push_back(u);
      if (avail_[u]) {
        int onward = avail_degree(u) + open_sink_degree(u);
        if (onward > 0) extends.push_back({onward, u});
      }
    }
    std::sort(finishes.begin(), finishes.end(),
              [&](Vertex a, Vertex b) {
                return (a ^ tie_mask_) < (b ^ tie_mask_);
              });
    std::sort(extends.begin(), extends.end(), [&](const Extend& a,
                                                  const Extend& b) {
      return a.onward != b.onward
                 ? a.onward < b.onward
                 : (a.to ^ tie_mask_) < (b.to ^ tie_mask_);
    });

    // Once finishing every path meets the coverage target, closing paths
    // early is the promising direction; before that, keep growing them.
    bool finish_first = used_ + unfinished_ >= min_cov_;

    auto try_finish = [&](Vertex t) {
      paths_[pick].push_back(t);
      sink_unused_[t] = 0;
      finished_[pick] = 1;
      ++used_;
      --unfinished_;
      if (expand()) return true;
      ++unfinished_;
      --used_;
      finished_[pick] = 0;
      sink_unused_[t] = 1;
      paths_[pick].pop_back();
      return false;
    };
    auto try_extend = [&](Vertex u) {
      paths_[pick].push_back(u);
      avail_[u] = 0;
      --avail_total_;
      avail_even_ -= even(u) ? 1 : 0;
      heads_[pick] = u;
      ++used_;
      if (expand()) return true;
      --used_;
      heads_[pick] = h;
      avail_even_ += even(u) ? 1 : 0;
      ++avail_total_;
      avail_[u] = 1;
      paths_[pick].pop_back();
      return false;
    };

    if (finish_first)
      for (Vertex t : finishes)
        if (try_finish(t)) return true;
    for (const Extend& e : extends)
      if (try_extend(e.to)) return true;
    if (!finish_first)
      for (Vertex t : finishes)
        if (try_finish(t)) return true;
    return false;
  }
};

} // namespace

std::optional<PathSystem> search_disjoint_paths(const SearchProblem& prob,
                                                const SolverBudget& budget) {
  validate_problem(prob, budget);

  // Backtracking on near-spanning instances has a heavy tail under any one
  // move ordering, so the budget is spent in growing slices, each with a
  // different deterministic tie-break. A slice that exhausts its tree
  // without hitting the cap is a proof that no system exists.
  long long remaining = budget.node_limit;
  long long slice = 50'000;
  for (int perturb = 0;; ++perturb) {
    PathSearch search(prob, std::min(slice, remaining), perturb);
    auto found = search.run();
    remaining -= search.nodes_used();
    if (found) return found;
    if (!search.capped()) return std::nullopt;
    if (remaining <= 0)
      fail(ErrorKind::BudgetExceeded,
           "search exceeded " + std::to_string(budget.node_limit) + " nodes");
    slice *= 2;
  }
}

Path long_path(int n, const VertexSet& faults, Vertex x, Vertex y,
               const SolverBudget& budget) {
  check_dimension(n);
  require(n >= 3, ErrorKind::PreconditionViolation,
          "long path needs n >= 3, got n=" + std::to_string(n));
  int cap = 2 * n - 5;
  require(static_cast<int>(faults.size()) <= cap,
          ErrorKind::PreconditionViolation,
          "f=" + std::to_string(faults.size()) + " exceeds 2n-5=" +
              std::to_string(cap));
  check_vertex(x, n);
  check_vertex(y, n);
  require(x != y, ErrorKind::PreconditionViolation,
          "path endpoints coincide");
  require(!set_contains(faults, x) && !set_contains(faults, y),
          ErrorKind::PreconditionViolation, "path endpoint is faulty");
  require(is_conditionally_fault_free(n, faults),
          ErrorKind::PreconditionViolation,
          "a fault-free vertex has fewer than two fault-free neighbors");

  std::size_t bound = vertex_count(n) - 2 * faults.size();
  if (distance(x, y) % 2 == 0) bound -= 1;

  SearchProblem prob;
  prob.n = n;
  prob.excluded = faults;
  prob.sources = {x};
  prob.sinks = {y};
  prob.min_coverage = bound;
  auto found = search_disjoint_paths(prob, budget);
  if (!found)
    fail(ErrorKind::ConstructionFailure,
         "no sufficiently long path between " + std::to_string(x) + " and " +
             std::to_string(y));
  return found->paths.front();
}

PathSystem disjoint_paths_small(int n, const VertexSet& faults,
                                const VertexSet& sources,
                                const VertexSet& sinks,
                                const SolverBudget& budget) {
  check_dimension(n);
  require(n >= 2, ErrorKind::PreconditionViolation,
          "disjoint path cover needs n >= 2, got n=" + std::to_string(n));
  int k = static_cast<int>(sources.size());
  require(k >= 1 && k <= n - 1, ErrorKind::PreconditionViolation,
          "k=" + std::to_string(k) + " outside [1, n-1] with n=" +
              std::to_string(n));
  require(sinks.size() == sources.size(), ErrorKind::PreconditionViolation,
          "source and sink counts differ");
  int cap = n - k - 1;
  require(static_cast<int>(faults.size()) <= cap,
          ErrorKind::PreconditionViolation,
          "f=" + std::to_string(faults.size()) + " exceeds n-k-1=" +
              std::to_string(cap));
  for (Vertex s : sources) {
    check_vertex(s, n);
    require(same_class(s, sources.front()), ErrorKind::PreconditionViolation,
            "sources span both parity classes");
    require(!set_contains(faults, s), ErrorKind::PreconditionViolation,
            "source " + std::to_string(s) + " is faulty");
  }
  for (Vertex t : sinks) {
    check_vertex(t, n);
    require(same_class(t, sinks.front()), ErrorKind::PreconditionViolation,
            "sinks span both parity classes");
    require(!set_contains(faults, t), ErrorKind::PreconditionViolation,
            "sink " + std::to_string(t) + " is faulty");
  }
  require(!same_class(sources.front(), sinks.front()),
          ErrorKind::PreconditionViolation,
          "sources and sinks must lie in opposite parity classes");

  SearchProblem prob;
  prob.n = n;
  prob.excluded = faults;
  prob.sources = {sources.begin(), sources.end()};
  prob.sinks = {sinks.begin(), sinks.end()};
  prob.min_coverage = vertex_count(n) - 2 * faults.size();
  auto found = search_disjoint_paths(prob, budget);
  if (!found)
    fail(ErrorKind::ConstructionFailure,
         "no disjoint path cover meets the coverage bound");
  return *found;
}

Path spanning_path_avoiding_edge(int n, Vertex x, Vertex y, Vertex u,
                                 Vertex v, const SolverBudget& budget) {
  check_dimension(n);
  require(n >= 3, ErrorKind::PreconditionViolation,
          "edge-avoiding spanning path needs n >= 3, got n=" +
              std::to_string(n));
  check_vertex(x, n);
  check_vertex(y, n);
  check_vertex(u, n);
  check_vertex(v, n);
  require(adjacent(x, y), ErrorKind::PreconditionViolation,
          "removed pair is not an edge");
  require(u != v, ErrorKind::PreconditionViolation,
          "path endpoints coincide");
  require(u != x && u != y && v != x && v != y,
          ErrorKind::PreconditionViolation,
          "path endpoints meet the removed edge");
  require(distance(u, v) % 2 == 1, ErrorKind::PreconditionViolation,
          "path endpoints lie in the same parity class");

  int edge_gap = std::min(std::min(distance(x, u), distance(x, v)),
                          std::min(distance(y, u), distance(y, v)));
  if (n == 3 && distance(u, v) == 1 && edge_gap == 2)
    fail(ErrorKind::ExceptionCase,
         "no spanning path exists for two opposite edges of the 3-cube");

  SearchProblem prob;
  prob.n = n;
  prob.excluded = make_set({x, y});
  prob.sources = {u};
  prob.sinks = {v};
  prob.min_coverage = vertex_count(n) - 2;
  auto found = search_disjoint_paths(prob, budget);
  if (!found)
    fail(ErrorKind::ConstructionFailure,
         "no spanning path avoiding the removed edge");
  return found->paths.front();
}

} // namespace qroute
