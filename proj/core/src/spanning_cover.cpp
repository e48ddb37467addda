#include "qroute/spanning_cover.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

namespace qroute {

namespace {

VertexSet project_all(const SplitContext& ctx, const VertexSet& set) {
  VertexSet out;
  out.reserve(set.size());
  for (Vertex v : set) out.push_back(ctx.project(v));
  return make_set(std::move(out));
}

// Ascending-label pads on the xy side: class of the sinks, not a sink, not
// an endpoint of the removed edge, and with a peer that is not a source.
VertexSet choose_pads(const SplitContext& ctx, int side, std::size_t count,
                      Vertex x, Vertex y, const VertexSet& sources,
                      const VertexSet& sinks) {
  VertexSet pads;
  if (count == 0) return pads;
  Vertex total = vertex_count(ctx.dimension());
  Vertex sample = sinks.front();
  for (Vertex v = 0; v < total && pads.size() < count; ++v) {
    if (ctx.side(v) != side) continue;
    if (!same_class(v, sample)) continue;
    if (v == x || v == y) continue;
    if (set_contains(sinks, v)) continue;
    if (set_contains(sources, ctx.peer(v))) continue;
    pads.push_back(v);
  }
  require(pads.size() == count, ErrorKind::ConstructionFailure,
          "could not reserve enough junction vertices");
  return pads;
}

VertexSet side_members(const SplitContext& ctx, const VertexSet& set,
                       int side) {
  VertexSet out;
  for (Vertex v : set)
    if (ctx.side(v) == side) out.push_back(v);
  return out;
}

// Two splits of the 4-cube into 3-cubes, one pair per half: a spanning
// path avoiding xy in its half plus a spanning path of the other half.
std::optional<PathSystem> base4_by_halves(Vertex x, Vertex y,
                                          const VertexSet& sources,
                                          const VertexSet& sinks,
                                          const SolverBudget& budget) {
  int edge_dim = std::countr_zero(x ^ y) + 1;
  for (int j = 1; j <= 4; ++j) {
    if (j == edge_dim) continue;
    SplitContext ctx(4, j);
    int ls = ctx.side(x);
    int rs = 1 - ls;
    VertexSet s_l = side_members(ctx, sources, ls);
    VertexSet t_l = side_members(ctx, sinks, ls);
    VertexSet s_r = side_members(ctx, sources, rs);
    VertexSet t_r = side_members(ctx, sinks, rs);
    if (s_l.size() != 1 || t_l.size() != 1) continue;

    Path near;
    try {
      near = spanning_path_avoiding_edge(3, ctx.project(x), ctx.project(y),
                                         ctx.project(s_l.front()),
                                         ctx.project(t_l.front()), budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ExceptionCase) continue;
      throw;
    }
    PathSystem far = disjoint_paths_small(3, {}, project_all(ctx, s_r),
                                          project_all(ctx, t_r), budget);

    PathSystem out;
    out.paths.push_back(embed_path(ctx, near, ls));
    out.paths.push_back(embed_path(ctx, far.paths.front(), rs));
    return out;
  }
  return std::nullopt;
}

PathSystem base4(Vertex x, Vertex y, const VertexSet& sources,
                 const VertexSet& sinks, const SolverBudget& budget) {
  if (auto by_halves = base4_by_halves(x, y, sources, sinks, budget))
    return *by_halves;

  SearchProblem prob;
  prob.n = 4;
  prob.excluded = make_set({x, y});
  prob.sources = {sources.begin(), sources.end()};
  prob.sinks = {sinks.begin(), sinks.end()};
  prob.min_coverage = vertex_count(4) - 2;
  auto found = search_disjoint_paths(prob, budget);
  if (!found)
    fail(ErrorKind::ConstructionFailure,
         "no covering path pair avoids the removed edge in the 4-cube");
  return *found;
}

// Joins half covers through pad edges: a left path ending on a pad
// continues along the right path starting at the pad's peer.
PathSystem stitch(const SplitContext& ctx, const PathSystem& left_full,
                  const PathSystem& right_full, const VertexSet& pads) {
  std::vector<std::pair<Vertex, Vertex>> seams;
  seams.reserve(pads.size());
  for (Vertex u : pads) seams.emplace_back(u, ctx.peer(u));
  return link_systems(left_full, right_full, seams);
}

} // namespace

PathSystem spanning_disjoint_paths_avoiding_edge(int n, Vertex x, Vertex y,
                                                 const VertexSet& sources,
                                                 const VertexSet& sinks,
                                                 const SolverBudget& budget) {
  check_dimension(n);
  require(n >= 4, ErrorKind::PreconditionViolation,
          "edge-avoiding path cover needs n >= 4, got n=" + std::to_string(n));
  check_vertex(x, n);
  check_vertex(y, n);
  require(adjacent(x, y), ErrorKind::PreconditionViolation,
          "removed pair is not an edge");
  std::size_t k = sources.size();
  require(k >= 1 && k <= static_cast<std::size_t>(n - 2),
          ErrorKind::PreconditionViolation,
          "k=" + std::to_string(k) + " outside [1, n-2] with n=" +
              std::to_string(n));
  require(sinks.size() == k, ErrorKind::PreconditionViolation,
          "source and sink counts differ");
  for (Vertex s : sources) {
    check_vertex(s, n);
    require(same_class(s, sources.front()), ErrorKind::PreconditionViolation,
            "sources span both parity classes");
    require(s != x && s != y, ErrorKind::PreconditionViolation,
            "source meets the removed edge");
  }
  for (Vertex t : sinks) {
    check_vertex(t, n);
    require(same_class(t, sinks.front()), ErrorKind::PreconditionViolation,
            "sinks span both parity classes");
    require(t != x && t != y, ErrorKind::PreconditionViolation,
            "sink meets the removed edge");
  }
  require(!same_class(sources.front(), sinks.front()),
          ErrorKind::PreconditionViolation,
          "sources and sinks must lie in opposite parity classes");

  // Name the removed edge so that x sits in the source class.
  if (!same_class(x, sources.front())) std::swap(x, y);

  PathSystem result;
  if (k == 1) {
    result.paths.push_back(spanning_path_avoiding_edge(
        n, x, y, sources.front(), sinks.front(), budget));
  } else if (n == 4) {
    result = base4(x, y, sources, sinks, budget);
  } else {
    // Split along a dimension that keeps xy inside one half while at
    // least one endpoint lies in the other half. Some such dimension
    // always exists: the only vertices on the xy side of every candidate
    // split are x and y themselves.
    int edge_dim = std::countr_zero(x ^ y) + 1;
    int chosen = 0;
    for (int j = 1; j <= n && chosen == 0; ++j) {
      if (j == edge_dim) continue;
      SplitContext ctx(n, j);
      int ls = ctx.side(x);
      bool all_inside = true;
      for (Vertex v : sources) all_inside = all_inside && ctx.side(v) == ls;
      for (Vertex v : sinks) all_inside = all_inside && ctx.side(v) == ls;
      if (!all_inside) chosen = j;
    }
    require(chosen != 0, ErrorKind::ConstructionFailure,
            "no usable split dimension");
    SplitContext ctx(n, chosen);
    int ls = ctx.side(x);
    int rs = 1 - ls;

    // Work with the roles ordered so the xy half holds at least as many
    // sources as sinks; undo the swap by reversing at the end.
    VertexSet s_all = sources;
    VertexSet t_all = sinks;
    bool swapped = false;
    if (side_members(ctx, s_all, ls).size() <
        side_members(ctx, t_all, ls).size()) {
      std::swap(s_all, t_all);
      std::swap(x, y);
      swapped = true;
    }
    VertexSet s_l = side_members(ctx, s_all, ls);
    VertexSet t_l = side_members(ctx, t_all, ls);
    VertexSet s_r = side_members(ctx, s_all, rs);
    VertexSet t_r = side_members(ctx, t_all, rs);
    std::size_t p = s_l.size();
    std::size_t q = t_l.size();
    Vertex x_h = ctx.project(x);
    Vertex y_h = ctx.project(y);

    if (p == 0) {
      // Everything crosses the cut: cover the far half outright, then fold
      // the xy half into one of its edges through a peer pair clear of the
      // removed edge.
      PathSystem far = embed_system(
          ctx,
          disjoint_paths_small(n - 1, {}, project_all(ctx, s_r),
                               project_all(ctx, t_r), budget),
          rs);
      bool spliced = false;
      for (std::size_t i = 0; i < far.paths.size() && !spliced; ++i) {
        const auto& vs = far.paths[i].vertices;
        for (std::size_t e = 0; e + 1 < vs.size() && !spliced; ++e) {
          Vertex a = ctx.peer(vs[e]);
          Vertex b = ctx.peer(vs[e + 1]);
          if (a == x || a == y || b == x || b == y) continue;
          Path near = spanning_path_avoiding_edge(
              n - 1, x_h, y_h, ctx.project(a), ctx.project(b), budget);
          far.paths[i] = replace_edge(far.paths[i], vs[e], vs[e + 1],
                                      embed_path(ctx, near, ls));
          spliced = true;
        }
      }
      require(spliced, ErrorKind::ConstructionFailure,
              "no crossing edge clear of the removed edge");
      result = far;
    } else if (p < k) {
      // Both halves hold endpoints. Pad the xy half up to p sinks, cover
      // it recursively, cover the far half, and join across the pads.
      VertexSet pads = choose_pads(ctx, ls, p - q, x, y, s_all, t_all);
      VertexSet near_sinks = t_l;
      for (Vertex u : pads) set_insert(near_sinks, u);
      PathSystem near = embed_system(
          ctx,
          spanning_disjoint_paths_avoiding_edge(
              n - 1, x_h, y_h, project_all(ctx, s_l),
              project_all(ctx, near_sinks), budget),
          ls);
      VertexSet far_sources = project_all(ctx, s_r);
      for (Vertex u : pads) set_insert(far_sources, ctx.project(ctx.peer(u)));
      PathSystem far = embed_system(
          ctx,
          disjoint_paths_small(n - 1, {}, far_sources, project_all(ctx, t_r),
                               budget),
          rs);
      result = stitch(ctx, near, far, pads);
    } else {
      // Every source sits in the xy half. Drop the smallest one from the
      // recursion; it reappears inside the half cover, whose path through
      // it is cut just before it and rerouted across the cut.
      Vertex s_k = s_all.front();
      VertexSet s_rest = s_l;
      set_erase(s_rest, s_k);
      VertexSet pads = choose_pads(ctx, ls, k - 1 - q, x, y, s_all, t_all);
      VertexSet near_sinks = t_l;
      for (Vertex u : pads) set_insert(near_sinks, u);
      PathSystem near = embed_system(
          ctx,
          spanning_disjoint_paths_avoiding_edge(
              n - 1, x_h, y_h, project_all(ctx, s_rest),
              project_all(ctx, near_sinks), budget),
          ls);

      std::size_t host = near.paths.size();
      std::size_t pos = 0;
      for (std::size_t i = 0; i < near.paths.size() && host == near.paths.size();
           ++i) {
        if (auto at = near.paths[i].index_of(s_k)) {
          host = i;
          pos = *at;
        }
      }
      require(host < near.paths.size() && pos > 0 &&
                  pos + 1 < near.paths[host].size(),
              ErrorKind::ConstructionFailure,
              "dropped source is not interior to the half cover");
      Vertex u_l = near.paths[host].vertices[pos - 1];
      Vertex u_r = ctx.peer(u_l);

      Path head;
      head.vertices.assign(near.paths[host].vertices.begin(),
                           near.paths[host].vertices.begin() +
                               static_cast<std::ptrdiff_t>(pos));
      Path tail;
      tail.vertices.assign(near.paths[host].vertices.begin() +
                               static_cast<std::ptrdiff_t>(pos),
                           near.paths[host].vertices.end());
      near.paths[host] = tail;
      near.paths.push_back(head);

      VertexSet far_sources;
      for (Vertex u : pads) set_insert(far_sources, ctx.project(ctx.peer(u)));
      set_insert(far_sources, ctx.project(u_r));
      PathSystem far = embed_system(
          ctx,
          disjoint_paths_small(n - 1, {}, far_sources, project_all(ctx, t_r),
                               budget),
          rs);

      // The severed head ends at the neighbor of the dropped source and
      // continues across the cut like a pad join.
      VertexSet joiners = pads;
      set_insert(joiners, u_l);
      result = stitch(ctx, near, far, joiners);
    }

    if (swapped)
      for (Path& path : result.paths) path = path.reversed();
  }

  std::sort(result.paths.begin(), result.paths.end(),
            [](const Path& a, const Path& b) { return a.source() < b.source(); });

  require(result.paths.size() == k, ErrorKind::ConstructionFailure,
          "cover produced the wrong number of paths");
  require(result.covered_vertices() == vertex_count(n) - 2,
          ErrorKind::ConstructionFailure,
          "cover misses vertices outside the removed edge");
  return result;
}

} // namespace qroute
