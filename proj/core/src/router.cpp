#include "qroute/router.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "qroute/spanning_cover.hpp"

namespace qroute {

namespace {

VertexSet minus(VertexSet set, Vertex v) {
  set_erase(set, v);
  return set;
}

VertexSet plus(VertexSet set, Vertex v) {
  set_insert(set, v);
  return set;
}

VertexSet side_members(const SplitContext& ctx, const VertexSet& set,
                       int side) {
  VertexSet out;
  for (Vertex v : set)
    if (ctx.side(v) == side) out.push_back(v);
  return out;
}

bool on_any(const PathSystem& ps, Vertex v, std::size_t* path_idx = nullptr,
            std::size_t* pos = nullptr) {
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    if (auto at = ps.paths[i].index_of(v)) {
      if (path_idx) *path_idx = i;
      if (pos) *pos = *at;
      return true;
    }
  }
  return false;
}

Path two_vertex_path(Vertex a, Vertex b) {
  Path p;
  p.vertices = {a, b};
  return p;
}

Path one_vertex_path(Vertex a) {
  Path p;
  p.vertices = {a};
  return p;
}

std::size_t cover_bound(int n, std::size_t f) {
  return static_cast<std::size_t>(vertex_count(n)) - 2 * f;
}

PathSystem route_rec(int n, const VertexSet& faults, const VertexSet& sources,
                     const VertexSet& sinks, const SolverBudget& budget,
                     TraceNode& tr);

// Hands the whole subproblem to the backtracking search. This is the honest
// last resort for the few configurations the structured construction does
// not reach; the coverage requirement stays the full 2^n - 2f.
PathSystem fallback_search(int n, const VertexSet& faults, const VertexSet& S,
                           const VertexSet& T, const SolverBudget& budget) {
  SearchProblem prob;
  prob.n = n;
  prob.excluded = faults;
  prob.sources = {S.begin(), S.end()};
  prob.sinks = {T.begin(), T.end()};
  prob.min_coverage = cover_bound(n, faults.size());
  auto found = search_disjoint_paths(prob, budget);
  if (!found)
    fail(ErrorKind::ConstructionFailure,
         "fallback search found no admissible path system");
  return *found;
}

PathSystem fallback_here(TraceNode& tr, int n, const VertexSet& faults,
                         const VertexSet& S, const VertexSet& T,
                         const SolverBudget& budget) {
  tr.tag = "SolverFallback";
  tr.children.clear();
  return fallback_search(n, faults, S, T, budget);
}

// Ascending-label junction vertices inside one half: sink class, fault free,
// not a sink, with a fault-free peer that is not a source. Their peers serve
// as extra sources for the other half.
VertexSet choose_junctions(const SplitContext& ctx, int side,
                           std::size_t count, const VertexSet& faults,
                           const VertexSet& sources, const VertexSet& sinks) {
  VertexSet pads;
  if (count == 0) return pads;
  Vertex total = vertex_count(ctx.dimension());
  Vertex sample = sinks.front();
  for (Vertex v = 0; v < total && pads.size() < count; ++v) {
    if (ctx.side(v) != side) continue;
    if (!same_class(v, sample)) continue;
    if (set_contains(sinks, v)) continue;
    if (set_contains(faults, v)) continue;
    Vertex w = ctx.peer(v);
    if (set_contains(faults, w)) continue;
    if (set_contains(sources, w)) continue;
    pads.push_back(v);
  }
  require(pads.size() == count, ErrorKind::ConstructionFailure,
          "could not reserve enough junction vertices");
  return pads;
}

// Splices a far-half detour into the first path edge whose far peers are
// both fault free, replacing that edge. Returns false if no edge qualifies.
bool splice_far_detour(const SplitContext& ctx, int near, PathSystem& ps,
                       const VertexSet& faults, const SolverBudget& budget) {
  int far = 1 - near;
  for (auto& path : ps.paths) {
    const auto& vs = path.vertices;
    for (std::size_t e = 0; e + 1 < vs.size(); ++e) {
      Vertex a = ctx.peer(vs[e]);
      Vertex b = ctx.peer(vs[e + 1]);
      if (set_contains(faults, a) || set_contains(faults, b)) continue;
      Path detour =
          long_path(ctx.dimension() - 1, project_side(ctx, faults, far),
                    ctx.project(a), ctx.project(b), budget);
      path = replace_edge(path, vs[e], vs[e + 1],
                          embed_path(ctx, detour, far));
      return true;
    }
  }
  return false;
}

// Every endpoint lies in the near half. Route there recursively, then pull
// the resulting system through the far half to collect its vertices.
PathSystem route_same_half(const SplitContext& ctx, int near,
                           const VertexSet& faults, const VertexSet& S,
                           const VertexSet& T, const SolverBudget& budget,
                           TraceNode& tr) {
  int n = ctx.dimension();
  int far = 1 - near;
  std::size_t k = S.size();
  VertexSet fNear = side_members(ctx, faults, near);
  VertexSet fFar = side_members(ctx, faults, far);
  int sub_budget = 2 * n - 2 * static_cast<int>(k) - 5;
  std::size_t need = cover_bound(n, faults.size());

  if (static_cast<int>(fNear.size()) <= sub_budget) {
    // The near half still has budget for all k paths; any edge of the
    // result whose far peers are fault free carries the far detour.
    tr.tag = "Case1_1";
    TraceNode child;
    PathSystem sub =
        route_rec(n - 1, project_side(ctx, faults, near),
                  project_side(ctx, S, near), project_side(ctx, T, near),
                  budget, child);
    tr.children.push_back(std::move(child));
    PathSystem full = embed_system(ctx, sub, near);
    if (!splice_far_detour(ctx, near, full, faults, budget))
      return fallback_here(tr, n, faults, S, T, budget);
    if (full.covered_vertices() < need)
      return fallback_here(tr, n, faults, S, T, budget);
    return full;
  }

  if (fFar.size() == 1) {
    // The near half is one fault over budget. Treat one near fault as
    // usable for the recursion, then repair around it if a path ran
    // through it, bridging via the far half.
    tr.tag = "Case1_2a";
    Vertex w = 0;
    bool removable = false;
    for (Vertex cand : fNear) {
      if (is_conditionally_fault_free(
              n - 1, project_side(ctx, minus(fNear, cand), near))) {
        w = cand;
        removable = true;
        break;
      }
    }
    if (!removable) return fallback_here(tr, n, faults, S, T, budget);

    TraceNode child;
    PathSystem sub = route_rec(
        n - 1, project_side(ctx, minus(fNear, w), near),
        project_side(ctx, S, near), project_side(ctx, T, near), budget, child);
    tr.children.push_back(std::move(child));
    PathSystem full = embed_system(ctx, sub, near);

    std::size_t host = 0, pos = 0;
    if (!on_any(full, w, &host, &pos)) {
      // The borrowed fault went unused; an ordinary splice suffices.
      if (!splice_far_detour(ctx, near, full, faults, budget))
        return fallback_here(tr, n, faults, S, T, budget);
      if (full.covered_vertices() < need)
        return fallback_here(tr, n, faults, S, T, budget);
      return full;
    }

    // A path runs through the borrowed fault; cut it out and reconnect the
    // loose ends through the far half.
    Path P = full.paths[host];
    bool flipped = false;
    Vertex uL = P.vertices[pos - 1];
    Vertex vL = P.vertices[pos + 1];
    Vertex uR = ctx.peer(uL);
    Vertex vR = ctx.peer(vL);
    bool uBad = set_contains(faults, uR);
    bool vBad = set_contains(faults, vR);
    Path repaired;
    if (!uBad && !vBad) {
      Path det = long_path(n - 1, project_side(ctx, faults, far),
                           ctx.project(uR), ctx.project(vR), budget);
      repaired = join({segment(P, P.source(), uL), embed_path(ctx, det, far),
                       segment(P, vL, P.sink())});
    } else {
      if (vBad) {
        // Mirror the path so the blocked peer sits on the predecessor side.
        P = P.reversed();
        flipped = true;
        pos = P.size() - 1 - pos;
        std::swap(uL, vL);
        std::swap(uR, vR);
      }
      if (uL != P.source()) {
        // Back off one more step; that vertex has a usable peer.
        Vertex zL = P.vertices[pos - 2];
        Path det = long_path(n - 1, project_side(ctx, faults, far),
                             ctx.project(ctx.peer(zL)), ctx.project(vR),
                             budget);
        repaired = join({segment(P, P.source(), zL),
                         embed_path(ctx, det, far), segment(P, vL, P.sink())});
      } else {
        // The path starts right at the removed fault's neighbor. Leave the
        // endpoint along a fresh neighbor instead.
        Vertex a = uL;
        std::vector<Vertex> cand;
        for (Vertex z : neighbors(a, n))
          if (ctx.side(z) == near && !set_contains(faults, z))
            cand.push_back(z);
        std::sort(cand.begin(), cand.end());

        Vertex zOff = 0;
        bool gotOff = false;
        for (Vertex z : cand) {
          if (!on_any(full, z)) {
            zOff = z;
            gotOff = true;
            break;
          }
        }
        if (gotOff) {
          Path det = long_path(n - 1, project_side(ctx, faults, far),
                               ctx.project(ctx.peer(zOff)), ctx.project(vR),
                               budget);
          repaired = join({two_vertex_path(a, zOff),
                           embed_path(ctx, det, far),
                           segment(P, vL, P.sink())});
        } else {
          // Otherwise pick a neighbor on this same path and fold the stub
          // between them into the detour.
          Vertex zOn = 0;
          bool gotOn = false;
          for (Vertex z : cand) {
            auto at = P.index_of(z);
            if (at && *at + 1 < P.size()) {
              zOn = z;
              gotOn = true;
              break;
            }
          }
          if (!gotOn) return fallback_here(tr, n, faults, S, T, budget);
          Vertex zNext = P.vertices[*P.index_of(zOn) + 1];
          Path det = long_path(n - 1, project_side(ctx, faults, far),
                               ctx.project(vR), ctx.project(ctx.peer(zNext)),
                               budget);
          repaired = join({one_vertex_path(a), segment(P, zOn, vL),
                           embed_path(ctx, det, far),
                           segment(P, zNext, P.sink())});
        }
      }
    }
    full.paths[host] = flipped ? repaired.reversed() : repaired;
    if (full.covered_vertices() < need)
      return fallback_here(tr, n, faults, S, T, budget);
    return full;
  }

  // The far half is fault free but the near half is over budget. Set one
  // endpoint pair aside, route the rest, and thread the set-aside pair back
  // through the untouched far half.
  tr.tag = "Case1_2b_fallback";
  Vertex sk = S.back();
  Vertex tk = T.back();
  TraceNode child;
  PathSystem sub = route_rec(n - 1, project_side(ctx, faults, near),
                             project_side(ctx, minus(S, sk), near),
                             project_side(ctx, minus(T, tk), near), budget,
                             child);
  tr.children.push_back(std::move(child));
  PathSystem full = embed_system(ctx, sub, near);

  auto far_bridge = [&](Vertex fromNear, Vertex toNear) {
    return embed_path(ctx,
                      long_path(n - 1, {}, ctx.project(ctx.peer(fromNear)),
                                ctx.project(ctx.peer(toNear)), budget),
                      far);
  };

  std::size_t si = 0, sp = 0, ti = 0, tp = 0;
  bool sOn = on_any(full, sk, &si, &sp);
  bool tOn = on_any(full, tk, &ti, &tp);
  if (sOn && tOn && si == ti) {
    // Both on one path: excise the stretch between them as the new pair's
    // path and bridge the cut through the far half.
    Path P = full.paths[si];
    std::size_t lo = std::min(sp, tp);
    std::size_t hi = std::max(sp, tp);
    Vertex o1 = P.vertices[lo - 1];
    Vertex o2 = P.vertices[hi + 1];
    Path mid = segment(P, sk, tk);
    full.paths[si] = join({segment(P, P.source(), o1), far_bridge(o1, o2),
                           segment(P, o2, P.sink())});
    full.paths.push_back(mid);
  } else if (sOn && tOn) {
    // On two different paths: cut each free and re-pair the four pieces,
    // joining two of them through the far half.
    Path Pi = full.paths[si];
    Path Pj = full.paths[ti];
    Vertex x = Pi.vertices[sp - 1];
    Vertex y = Pj.vertices[tp + 1];
    full.paths[si] = join({segment(Pi, Pi.source(), x), far_bridge(x, y),
                           segment(Pj, y, Pj.sink())});
    full.paths[ti] = segment(Pj, Pj.source(), tk);
    full.paths.push_back(segment(Pi, sk, Pi.sink()));
  } else if (sOn) {
    Path Pi = full.paths[si];
    Vertex x = Pi.vertices[sp - 1];
    full.paths[si] = join({segment(Pi, Pi.source(), x), far_bridge(x, tk),
                           one_vertex_path(tk)});
    full.paths.push_back(segment(Pi, sk, Pi.sink()));
  } else if (tOn) {
    Path Pj = full.paths[ti];
    Vertex y = Pj.vertices[tp + 1];
    full.paths[ti] = segment(Pj, Pj.source(), tk);
    full.paths.push_back(join({one_vertex_path(sk), far_bridge(sk, y),
                               segment(Pj, y, Pj.sink())}));
  } else {
    return fallback_here(tr, n, faults, S, T, budget);
  }
  if (full.covered_vertices() < need)
    return fallback_here(tr, n, faults, S, T, budget);
  return full;
}

// Endpoints on both sides of the cut. Pad the near half with junctions so
// it carries all p near sources, route both halves independently, and join
// across the junction edges.
PathSystem route_padded_halves(const SplitContext& ctx, int near,
                               const VertexSet& faults, const VertexSet& S,
                               const VertexSet& T, const SolverBudget& budget,
                               TraceNode& tr) {
  int n = ctx.dimension();
  int far = 1 - near;
  std::size_t p = side_members(ctx, S, near).size();
  std::size_t q = side_members(ctx, T, near).size();
  tr.tag = "Case2";

  VertexSet pads;
  try {
    pads = choose_junctions(ctx, near, p - q, faults, S, T);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConstructionFailure) throw;
    return fallback_here(tr, n, faults, S, T, budget);
  }
  VertexSet nearSinks = side_members(ctx, T, near);
  for (Vertex u : pads) set_insert(nearSinks, u);
  VertexSet farSources = side_members(ctx, S, far);
  for (Vertex u : pads) set_insert(farSources, ctx.peer(u));

  TraceNode cNear;
  PathSystem nearSys =
      route_rec(n - 1, project_side(ctx, faults, near),
                project_side(ctx, S, near),
                project_side(ctx, nearSinks, near), budget, cNear);
  tr.children.push_back(std::move(cNear));
  TraceNode cFar;
  PathSystem farSys =
      route_rec(n - 1, project_side(ctx, faults, far),
                project_side(ctx, farSources, far),
                project_side(ctx, T, far), budget, cFar);
  tr.children.push_back(std::move(cFar));

  std::vector<std::pair<Vertex, Vertex>> seams;
  seams.reserve(pads.size());
  for (Vertex u : pads) seams.emplace_back(u, ctx.peer(u));
  PathSystem out = link_systems(embed_system(ctx, nearSys, near),
                                embed_system(ctx, farSys, far), seams);
  if (out.covered_vertices() < cover_bound(n, faults.size()))
    return fallback_here(tr, n, faults, S, T, budget);
  return out;
}

// Every sink lies in the far half, which also carries almost the whole
// fault budget (so the far half cannot absorb an extra path on its own).
// One sink is set aside, the far half routes the other k-1 paths, and the
// set-aside sink is reached from the near half through its peer or through
// a neighbor on an existing path. Candidates for the set-aside sink are
// tried in ascending order until one of the reconnection rules applies.
PathSystem route_far_sinks(const SplitContext& ctx, int near,
                           const VertexSet& faults, const VertexSet& S,
                           const VertexSet& T, const SolverBudget& budget,
                           TraceNode& tr) {
  int n = ctx.dimension();
  int far = 1 - near;
  VertexSet sN = side_members(ctx, S, near);
  VertexSet fNear = side_members(ctx, faults, near);
  std::size_t p = sN.size();
  std::size_t need = cover_bound(n, faults.size());
  tr.tag = "Case3a";

  VertexSet pads;
  try {
    pads = choose_junctions(ctx, near, p, faults, S, T);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConstructionFailure) throw;
    return fallback_here(tr, n, faults, S, T, budget);
  }
  Vertex u1 = pads.front();
  VertexSet padRest = minus(pads, u1);
  std::vector<std::pair<Vertex, Vertex>> padSeams;
  for (Vertex u : padRest) padSeams.emplace_back(u, ctx.peer(u));

  // Usable near-half neighbors of a vertex, ascending, excluding the
  // remaining junctions (the freed smallest junction may be reused).
  auto near_neighbors = [&](Vertex of) {
    std::vector<Vertex> out;
    for (Vertex z : neighbors(of, n))
      if (ctx.side(z) == near && !set_contains(faults, z) &&
          !set_contains(padRest, z))
        out.push_back(z);
    std::sort(out.begin(), out.end());
    return out;
  };

  auto run_near = [&](const VertexSet& nf, const VertexSet& ns,
                      const VertexSet& nt,
                      TraceNode& child) -> std::optional<PathSystem> {
    try {
      return route_rec(n - 1, project_side(ctx, nf, near),
                       project_side(ctx, ns, near),
                       project_side(ctx, nt, near), budget, child);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConstructionFailure) return std::nullopt;
      throw;
    }
  };

  std::deque<Vertex> queue;
  for (Vertex t : T)
    if (p != 1 || t != ctx.peer(sN.front())) queue.push_back(t);
  VertexSet tried;

  while (!queue.empty()) {
    Vertex t1 = queue.front();
    queue.pop_front();
    set_insert(tried, t1);

    VertexSet farSources = side_members(ctx, S, far);
    for (Vertex u : padRest) set_insert(farSources, ctx.peer(u));
    TraceNode cFar;
    PathSystem farFull;
    try {
      farFull = embed_system(
          ctx,
          route_rec(n - 1, project_side(ctx, faults, far),
                    project_side(ctx, farSources, far),
                    project_side(ctx, minus(T, t1), far), budget, cFar),
          far);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConstructionFailure) continue;
      throw;
    }

    auto finish = [&](PathSystem out, TraceNode cNear, const char* tag)
        -> std::optional<PathSystem> {
      if (out.covered_vertices() < need) return std::nullopt;
      tr.tag = tag;
      tr.children.clear();
      tr.children.push_back(std::move(cFar));
      if (!cNear.tag.empty()) tr.children.push_back(std::move(cNear));
      return out;
    };

    std::size_t mi = 0, mp = 0;
    if (!on_any(farFull, t1, &mi, &mp)) {
      Vertex tL = ctx.peer(t1);
      if (!set_contains(faults, tL) && set_contains(S, tL)) {
        // The set-aside sink's peer is itself a source: pair the two by a
        // single edge and route the remaining near sources around it.
        if (p == 1) continue;
        VertexSet nf = plus(fNear, tL);
        if (!is_conditionally_fault_free(n - 1,
                                         project_side(ctx, nf, near)))
          continue;
        TraceNode cNear;
        auto nearSys = run_near(nf, minus(S, tL), padRest, cNear);
        if (!nearSys) continue;
        PathSystem out = link_systems(embed_system(ctx, *nearSys, near),
                                      farFull, padSeams);
        out.paths.push_back(two_vertex_path(tL, t1));
        if (auto done = finish(std::move(out), std::move(cNear), "Case3a"))
          return *done;
        continue;
      }
      if (!set_contains(faults, tL)) {
        // Reach the sink through its peer: one near path is retargeted to
        // end at a neighbor of that peer, with the peer kept off the rest
        // of the near system by treating it as faulty there.
        if (p == static_cast<std::size_t>(n - 3) && fNear.size() == 1)
          continue;  // the extra kept-off vertex would burst the budget
        VertexSet nf = plus(fNear, tL);
        if (!is_conditionally_fault_free(n - 1,
                                         project_side(ctx, nf, near)))
          continue;
        for (Vertex z : near_neighbors(tL)) {
          TraceNode cNear;
          auto nearSys = run_near(nf, S, plus(padRest, z), cNear);
          if (!nearSys) continue;
          PathSystem right = farFull;
          right.paths.push_back(two_vertex_path(tL, t1));
          auto seams = padSeams;
          seams.emplace_back(z, tL);
          PathSystem out =
              link_systems(embed_system(ctx, *nearSys, near), right, seams);
          if (auto done = finish(std::move(out), std::move(cNear), "Case3a"))
            return *done;
          break;
        }
        continue;
      }
      // The sink's peer is the near fault. Enter the sink sideways from a
      // fault-free far neighbor instead.
      std::vector<Vertex> wcands;
      for (Vertex wz : neighbors(t1, n))
        if (ctx.side(wz) == far && !set_contains(faults, wz))
          wcands.push_back(wz);
      std::sort(wcands.begin(), wcands.end());
      for (Vertex wR : wcands) {
        std::size_t wi = 0, wp = 0;
        if (!on_any(farFull, wR, &wi, &wp)) {
          // The side entrance is unused: land on it from the near half.
          Vertex wL = ctx.peer(wR);
          if (set_contains(padRest, wL)) continue;
          TraceNode cNear;
          auto nearSys = run_near(fNear, S, plus(padRest, wL), cNear);
          if (!nearSys) continue;
          PathSystem right = farFull;
          right.paths.push_back(two_vertex_path(wR, t1));
          auto seams = padSeams;
          seams.emplace_back(wL, wR);
          PathSystem out =
              link_systems(embed_system(ctx, *nearSys, near), right, seams);
          if (auto done = finish(std::move(out), std::move(cNear), "Case3a"))
            return *done;
          continue;
        }
        // The side entrance lies on an existing path: split that path at
        // the entrance, divert its head into the sink, and restart its
        // tail from the near half.
        const Path Pm = farFull.paths[wi];
        Vertex uR = Pm.vertices[wp + 1];
        Vertex uL = ctx.peer(uR);
        if (set_contains(S, uL)) {
          if (p == 1) continue;
          VertexSet nf = plus(fNear, uL);
          if (!is_conditionally_fault_free(n - 1,
                                           project_side(ctx, nf, near)))
            continue;
          TraceNode cNear;
          auto nearSys = run_near(nf, minus(S, uL), padRest, cNear);
          if (!nearSys) continue;
          PathSystem right;
          for (std::size_t i = 0; i < farFull.paths.size(); ++i)
            if (i != wi) right.paths.push_back(farFull.paths[i]);
          right.paths.push_back(
              join({segment(Pm, Pm.source(), wR), one_vertex_path(t1)}));
          right.paths.push_back(
              join({one_vertex_path(uL), segment(Pm, uR, Pm.sink())}));
          PathSystem out = link_systems(embed_system(ctx, *nearSys, near),
                                        right, padSeams);
          if (auto done = finish(std::move(out), std::move(cNear), "Case3a"))
            return *done;
          continue;
        }
        if (p == static_cast<std::size_t>(n - 3)) continue;
        VertexSet nf = plus(fNear, uL);
        if (!is_conditionally_fault_free(n - 1, project_side(ctx, nf, near)))
          continue;
        for (Vertex z : near_neighbors(uL)) {
          TraceNode cNear;
          auto nearSys = run_near(nf, S, plus(padRest, z), cNear);
          if (!nearSys) break;
          PathSystem right;
          for (std::size_t i = 0; i < farFull.paths.size(); ++i)
            if (i != wi) right.paths.push_back(farFull.paths[i]);
          right.paths.push_back(
              join({segment(Pm, Pm.source(), wR), one_vertex_path(t1)}));
          right.paths.push_back(
              join({one_vertex_path(uL), segment(Pm, uR, Pm.sink())}));
          auto seams = padSeams;
          seams.emplace_back(z, uL);
          PathSystem out =
              link_systems(embed_system(ctx, *nearSys, near), right, seams);
          if (auto done = finish(std::move(out), std::move(cNear), "Case3a"))
            return *done;
          break;
        }
      }
      continue;
    }

    // The set-aside sink already sits inside the far system, on path mi at
    // position mp, strictly interior. Divert that path's head into it and
    // restart the tail from the near half.
    const Path Pm = farFull.paths[mi];
    Vertex t2 = Pm.sink();
    Vertex uR = Pm.vertices[mp + 1];
    Vertex uL = ctx.peer(uR);
    if (!set_contains(faults, uL)) {
      TraceNode cNear;
      auto nearSys = run_near(fNear, S, plus(padRest, uL), cNear);
      if (!nearSys) continue;
      PathSystem right;
      for (std::size_t i = 0; i < farFull.paths.size(); ++i)
        if (i != mi) right.paths.push_back(farFull.paths[i]);
      right.paths.push_back(segment(Pm, Pm.source(), t1));
      right.paths.push_back(segment(Pm, uR, Pm.sink()));
      auto seams = padSeams;
      seams.emplace_back(uL, uR);
      PathSystem out =
          link_systems(embed_system(ctx, *nearSys, near), right, seams);
      if (auto done = finish(std::move(out), std::move(cNear), "Case3b"))
        return *done;
      continue;
    }

    // The tail's first peer is the near fault. That only works out when
    // the tail is a single edge into its sink; otherwise prefer retrying
    // with that sink set aside instead.
    if (distance(uR, t2) != 1) {
      if (!set_contains(tried, t2)) {
        auto at = std::find(queue.begin(), queue.end(), t2);
        if (at != queue.end()) queue.erase(at);
        queue.push_front(t2);
      }
      continue;
    }
    Vertex t2L = ctx.peer(t2);
    // The near half is fault free apart from uL, and uL -- t2L is an edge:
    // cover the near half completely except for that edge's endpoints.
    if (set_contains(S, t2L)) {
      if (p == 1) continue;
      PathSystem cov;
      try {
        cov = spanning_disjoint_paths_avoiding_edge(
            n - 1, ctx.project(uL), ctx.project(t2L),
            project_side(ctx, minus(S, t2L), near),
            project_side(ctx, padRest, near), budget);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConstructionFailure) continue;
        throw;
      }
      PathSystem right;
      for (std::size_t i = 0; i < farFull.paths.size(); ++i)
        if (i != mi) right.paths.push_back(farFull.paths[i]);
      right.paths.push_back(segment(Pm, Pm.source(), t1));
      right.paths.push_back(two_vertex_path(t2L, t2));
      PathSystem out =
          link_systems(embed_system(ctx, cov, near), right, padSeams);
      if (auto done = finish(std::move(out), TraceNode{}, "Case3b"))
        return *done;
      continue;
    }
    for (Vertex z : near_neighbors(t2L)) {
      PathSystem cov;
      try {
        cov = spanning_disjoint_paths_avoiding_edge(
            n - 1, ctx.project(uL), ctx.project(t2L),
            project_side(ctx, S, near),
            project_side(ctx, plus(padRest, z), near), budget);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConstructionFailure) break;
        throw;
      }
      PathSystem right;
      for (std::size_t i = 0; i < farFull.paths.size(); ++i)
        if (i != mi) right.paths.push_back(farFull.paths[i]);
      right.paths.push_back(segment(Pm, Pm.source(), t1));
      right.paths.push_back(two_vertex_path(t2L, t2));
      auto seams = padSeams;
      seams.emplace_back(z, t2L);
      PathSystem out = link_systems(embed_system(ctx, cov, near), right, seams);
      if (auto done = finish(std::move(out), TraceNode{}, "Case3b"))
        return *done;
      break;
    }
  }

  return fallback_here(tr, n, faults, S, T, budget);
}

PathSystem route_rec(int n, const VertexSet& faults, const VertexSet& sources,
                     const VertexSet& sinks, const SolverBudget& budget,
                     TraceNode& tr) {
  std::size_t k = sources.size();
  tr.n = n;
  tr.k = static_cast<int>(k);

  if (k == 1) {
    tr.tag = "BaseK1";
    PathSystem out;
    out.paths.push_back(
        long_path(n, faults, sources.front(), sinks.front(), budget));
    return out;
  }
  if (k == static_cast<std::size_t>(n - 2)) {
    tr.tag = "BaseKmax";
    return disjoint_paths_small(n, faults, sources, sinks, budget);
  }
  if (n <= 4) {
    // Unreachable for contract instances (k is 1 or n-2 there); kept so a
    // future caller with looser invariants still gets an answer.
    tr.tag = "BaseSmallN";
    return fallback_search(n, faults, sources, sinks, budget);
  }

  int j = 0;
  try {
    j = choose_split_dimension(n, faults);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoValidDimension) throw;
    tr.tag = "SolverFallback";
    return fallback_search(n, faults, sources, sinks, budget);
  }
  SplitContext ctx(n, j);
  tr.split_dim = j;
  auto fc = split_fault_counts(ctx, faults);

  std::size_t src0 = side_members(ctx, sources, 0).size();
  std::size_t snk0 = side_members(ctx, sinks, 0).size();

  if ((src0 == k && snk0 == k) || (src0 == 0 && snk0 == 0)) {
    int near = (src0 == k) ? 0 : 1;
    tr.p = static_cast<int>(k);
    tr.q = static_cast<int>(k);
    tr.f_near = (near == 0) ? fc.first : fc.second;
    tr.f_far = (near == 0) ? fc.second : fc.first;
    return route_same_half(ctx, near, faults, sources, sinks, budget, tr);
  }

  // Mixed case: name the half with fewer faults the near one and orient the
  // roles so the near half holds at least as many sources as sinks.
  int near = (fc.first <= fc.second) ? 0 : 1;
  VertexSet S = sources;
  VertexSet T = sinks;
  std::size_t p = side_members(ctx, S, near).size();
  std::size_t q = side_members(ctx, T, near).size();
  bool swapped = false;
  if (p < q) {
    std::swap(S, T);
    std::swap(p, q);
    swapped = true;
  }
  tr.p = static_cast<int>(p);
  tr.q = static_cast<int>(q);
  tr.f_near = (near == 0) ? fc.first : fc.second;
  tr.f_far = (near == 0) ? fc.second : fc.first;

  PathSystem result;
  if (q >= 1 || tr.f_far <= 2 * n - 2 * static_cast<int>(k) - 5) {
    result = route_padded_halves(ctx, near, faults, S, T, budget, tr);
  } else {
    result = route_far_sinks(ctx, near, faults, S, T, budget, tr);
  }
  if (swapped)
    for (Path& path : result.paths) path = path.reversed();
  return result;
}

void flatten_into(const TraceNode& node, int depth,
                  std::vector<std::string>& out) {
  std::ostringstream line;
  line << std::string(static_cast<std::size_t>(depth) * 2, ' ') << node.tag
       << " n=" << node.n << " k=" << node.k;
  if (node.split_dim > 0) {
    line << " j=" << node.split_dim << " p=" << node.p << " q=" << node.q
         << " f_near=" << node.f_near << " f_far=" << node.f_far;
  }
  out.push_back(line.str());
  for (const TraceNode& child : node.children)
    flatten_into(child, depth + 1, out);
}

} // namespace

RouteResult route(const Instance& inst, const SolverBudget& budget) {
  validate_instance(inst);
  RouteResult out;
  try {
    out.paths = route_rec(inst.n, inst.faults, inst.sources, inst.sinks,
                          budget, out.trace);
  } catch (const Error& e) {
    // A precondition failure below the validated entry point is a defect in
    // the construction, not in the caller's instance.
    if (e.kind() == ErrorKind::PreconditionViolation)
      fail(ErrorKind::ConstructionFailure,
           std::string("internal subproblem rejected: ") + e.what());
    throw;
  }
  std::sort(
      out.paths.paths.begin(), out.paths.paths.end(),
      [](const Path& a, const Path& b) { return a.source() < b.source(); });
  return out;
}

std::vector<std::string> flatten_trace(const TraceNode& root) {
  std::vector<std::string> out;
  flatten_into(root, 0, out);
  return out;
}

} // namespace qroute
