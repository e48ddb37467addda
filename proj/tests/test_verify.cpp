#include "doctest.h"

#include <cstddef>

#include "qroute/router.hpp"
#include "qroute/verify.hpp"
#include "test_support.hpp"

using namespace qroute;
using qroute_test::mk;

namespace {

// The frozen corruption target: routes two paths around three faults with
// two vertices of slack over the coverage bound, so single-vertex damage
// keeps the bound satisfied and each corruption trips exactly one check.
const Instance kInst{5, 2, make_set({1, 9, 17}), make_set({0, 6}),
                     make_set({7, 11})};

struct FieldState {
  bool disjoint, fault_free, bijection, edges, meets;
};

FieldState fields(const VerifyReport& r) {
  return {r.disjoint, r.fault_free, r.endpoints_bijection, r.all_edges_valid,
          r.meets_bound};
}

// Replaces one interior vertex b by the fourth corner of the square spanned
// by its neighbors a and c, keeping every edge of the path intact.
bool reroute_interior(PathSystem& ps, bool (*want)(Vertex bp, const Instance&,
                                                   const PathSystem&, std::size_t)) {
  for (std::size_t pi = 0; pi < ps.paths.size(); ++pi) {
    auto& vs = ps.paths[pi].vertices;
    for (std::size_t t = 1; t + 1 < vs.size(); ++t) {
      Vertex bp = vs[t - 1] ^ vs[t] ^ vs[t + 1];
      if (bp != vs[t] && want(bp, kInst, ps, pi)) {
        vs[t] = bp;
        return true;
      }
    }
  }
  return false;
}

} // namespace

TEST_CASE("a short path is flagged only for missing the coverage bound") {
  Instance inst{3, 1, make_set({6}), {0}, {7}};
  PathSystem ps;
  ps.paths = {mk({0, 1, 3, 7})};
  VerifyReport r = verify(inst, ps);
  CHECK(r.disjoint);
  CHECK(r.fault_free);
  CHECK(r.endpoints_bijection);
  CHECK(r.all_edges_valid);
  CHECK(r.coverage == 4);
  CHECK(r.bound == 6);
  CHECK_FALSE(r.meets_bound);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.failures.empty());
}

TEST_CASE("a routed system passes every check") {
  RouteResult res = route(kInst);
  VerifyReport r = verify(kInst, res.paths);
  CHECK(r.pass());
  CHECK(r.failures.empty());
  CHECK(r.coverage == 28);
  CHECK(r.bound == 26);
}

TEST_CASE("sharing a vertex across paths trips only the disjointness check") {
  RouteResult res = route(kInst);
  PathSystem ps = res.paths;
  bool found = reroute_interior(
      ps, [](Vertex bp, const Instance&, const PathSystem& sys, std::size_t pi) {
        return sys.paths[1 - pi].index_of(bp).has_value();
      });
  REQUIRE(found);
  FieldState f = fields(verify(kInst, ps));
  CHECK_FALSE(f.disjoint);
  CHECK(f.fault_free);
  CHECK(f.bijection);
  CHECK(f.edges);
  CHECK(f.meets);
}

TEST_CASE("touching a faulty vertex trips only the fault check") {
  RouteResult res = route(kInst);
  PathSystem ps = res.paths;
  bool found = reroute_interior(
      ps, [](Vertex bp, const Instance& inst, const PathSystem&, std::size_t) {
        return set_contains(inst.faults, bp);
      });
  REQUIRE(found);
  FieldState f = fields(verify(kInst, ps));
  CHECK(f.disjoint);
  CHECK_FALSE(f.fault_free);
  CHECK(f.bijection);
  CHECK(f.edges);
  CHECK(f.meets);
}

TEST_CASE("a torn seam trips only the edge check") {
  RouteResult res = route(kInst);
  PathSystem ps = res.paths;
  auto& vs = ps.paths[0].vertices;
  REQUIRE(vs.size() >= 4);
  std::swap(vs[1], vs[2]);
  FieldState f = fields(verify(kInst, ps));
  CHECK(f.disjoint);
  CHECK(f.fault_free);
  CHECK(f.bijection);
  CHECK_FALSE(f.edges);
  CHECK(f.meets);
}

TEST_CASE("losing an endpoint trips only the bijection check") {
  RouteResult res = route(kInst);
  PathSystem ps = res.paths;
  ps.paths[0].vertices.pop_back();
  FieldState f = fields(verify(kInst, ps));
  CHECK(f.disjoint);
  CHECK(f.fault_free);
  CHECK_FALSE(f.bijection);
  CHECK(f.edges);
  CHECK(f.meets);
}

TEST_CASE("shaving interior detours trips only the coverage bound") {
  RouteResult res = route(kInst);
  PathSystem ps = res.paths;
  int cuts = 0;
  while (cuts < 2) {
    bool cut = false;
    for (auto& p : ps.paths) {
      auto& vs = p.vertices;
      for (std::size_t t = 0; t + 3 < vs.size(); ++t)
        if (distance(vs[t], vs[t + 3]) == 1) {
          vs.erase(vs.begin() + t + 1, vs.begin() + t + 3);
          cut = true;
          break;
        }
      if (cut) break;
    }
    REQUIRE(cut);
    ++cuts;
  }
  VerifyReport r = verify(kInst, ps);
  FieldState f = fields(r);
  CHECK(f.disjoint);
  CHECK(f.fault_free);
  CHECK(f.bijection);
  CHECK(f.edges);
  CHECK_FALSE(f.meets);
  CHECK(r.coverage == 24);
}

TEST_CASE("re-pairing sinks is accepted as long as it stays a bijection") {
  // The contract fixes the two endpoint sets, not who reaches whom.
  Instance inst{4, 2, {}, make_set({0, 3}), make_set({7, 14})};
  RouteResult res = route(inst);
  VerifyReport r = verify(inst, res.paths);
  CHECK(r.pass());
}

TEST_CASE("exhaustive oracle values on small cubes") {
  OracleResult a = brute_force_max_paths(3, {}, {0}, {7});
  CHECK(a.feasible);
  CHECK(a.max_coverage == 8);

  OracleResult b = brute_force_max_paths(3, make_set({6}), {0}, {7});
  CHECK(b.feasible);
  CHECK(b.max_coverage == 6);

  OracleResult c = brute_force_max_paths(2, {}, {0}, {3});
  CHECK(c.feasible);
  CHECK(c.max_coverage == 3);

  OracleResult d = brute_force_best({4, 2, make_set({1}), make_set({0, 3}),
                                     make_set({7, 8})});
  CHECK(d.feasible);
  CHECK(d.max_coverage == 14);
}
