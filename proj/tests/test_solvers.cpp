#include "doctest.h"

#include <cstddef>
#include <vector>

#include "qroute/solvers.hpp"
#include "test_support.hpp"

using namespace qroute;
using qroute_test::kind_of;

namespace {

bool avoids(const Path& p, const VertexSet& faults) {
  for (Vertex v : p.vertices)
    if (set_contains(faults, v)) return false;
  return true;
}

std::size_t path_bound(int n, std::size_t f, Vertex x, Vertex y) {
  std::size_t base = (std::size_t{1} << n) - 2 * f;
  return (distance(x, y) % 2 == 1) ? base : base - 1;
}

} // namespace

TEST_CASE("long fault-avoiding paths meet the parity bound") {
  Path p = long_path(3, make_set({6}), 0, 7);
  CHECK(p.size() == 6);
  CHECK(p.source() == 0);
  CHECK(p.sink() == 7);
  CHECK(is_simple_path(p, 3));
  CHECK(avoids(p, make_set({6})));

  VertexSet F = make_set({1, 2});
  Path q = long_path(4, F, 0, 3);
  CHECK(q.size() == 13);
  CHECK(q.size() >= path_bound(4, 2, 0, 3));
  CHECK(is_simple_path(q, 4));
  CHECK(avoids(q, F));

  Path r = long_path(4, make_set({15}), 0, 7);
  CHECK(r.size() >= 14);
  CHECK(is_simple_path(r, 4));
}

TEST_CASE("long paths over every small configuration") {
  for (Vertex w = 0; w <= 8; ++w) {
    VertexSet F;
    if (w < 8) F.push_back(w); // w == 8 means no fault
    for (Vertex x = 0; x < 8; ++x)
      for (Vertex y = 0; y < 8; ++y) {
        if (x == y || set_contains(F, x) || set_contains(F, y)) continue;
        Path p = long_path(3, F, x, y);
        CHECK(is_simple_path(p, 3));
        CHECK(avoids(p, F));
        CHECK(p.source() == x);
        CHECK(p.sink() == y);
        CHECK(p.size() >= path_bound(3, F.size(), x, y));
      }
  }
}

TEST_CASE("long path contract rejections") {
  CHECK(kind_of([] { long_path(3, {}, 5, 5); }) ==
        ErrorKind::PreconditionViolation);
  CHECK(kind_of([] { long_path(3, make_set({6}), 6, 7); }) ==
        ErrorKind::PreconditionViolation);
  CHECK(kind_of([] { long_path(3, make_set({1, 2}), 0, 7); }) ==
        ErrorKind::PreconditionViolation); // two faults exceed 2n-5 at n=3
  CHECK(kind_of([] { long_path(4, make_set({1, 2, 4}), 0, 15); }) ==
        ErrorKind::PreconditionViolation); // pinches vertex 0
}

TEST_CASE("small fault count disjoint path families") {
  PathSystem a = disjoint_paths_small(3, {}, make_set({1, 2}), make_set({0, 3}));
  CHECK(a.paths.size() == 2);
  CHECK(a.covered_vertices() == 8);
  CHECK(is_vertex_disjoint(a));

  VertexSet F = make_set({5});
  PathSystem b = disjoint_paths_small(4, F, make_set({0, 3}), make_set({7, 14}));
  CHECK(b.paths.size() == 2);
  CHECK(b.covered_vertices() >= 14);
  CHECK(is_vertex_disjoint(b));
  for (const Path& p : b.paths) {
    CHECK(is_simple_path(p, 4));
    CHECK(avoids(p, F));
  }

  PathSystem c =
      disjoint_paths_small(4, {}, make_set({0, 3, 5}), make_set({1, 2, 4}));
  CHECK(c.paths.size() == 3);
  CHECK(c.covered_vertices() == 16);
  CHECK(is_vertex_disjoint(c));
}

TEST_CASE("disjoint path family contract rejections") {
  CHECK(kind_of([] {
          disjoint_paths_small(3, make_set({5}), make_set({1, 2}),
                               make_set({0, 3}));
        }) == ErrorKind::PreconditionViolation); // budget n-k-1 = 0
  CHECK(kind_of([] {
          disjoint_paths_small(3, {}, make_set({1, 2}), make_set({0, 7}));
        }) == ErrorKind::PreconditionViolation); // sinks span both classes
  CHECK(kind_of([] {
          disjoint_paths_small(3, {}, make_set({1, 2, 4, 7}), make_set({0, 3, 5, 6}));
        }) == ErrorKind::PreconditionViolation); // k = n exceeds n-1
}

TEST_CASE("edge-avoiding spanning paths") {
  Path p = spanning_path_avoiding_edge(3, 0, 1, 3, 4);
  CHECK(p.size() == 6);
  CHECK(p.source() == 3);
  CHECK(p.sink() == 4);
  CHECK(is_simple_path(p, 3));
  CHECK(avoids(p, make_set({0, 1})));

  Path q = spanning_path_avoiding_edge(4, 0, 1, 3, 2);
  CHECK(q.size() == 14);
  CHECK(is_simple_path(q, 4));
  CHECK(avoids(q, make_set({0, 1})));
}

TEST_CASE("the one infeasible spanning layout is reported as such") {
  // Endpoints forming an edge two steps from the avoided edge: infeasible
  // in the 3-cube, and the only layout that is.
  CHECK(kind_of([] { spanning_path_avoiding_edge(3, 0, 1, 6, 7); }) ==
        ErrorKind::ExceptionCase);
  // An endpoint edge only one step away works.
  Path p = spanning_path_avoiding_edge(3, 0, 1, 5, 7);
  CHECK(p.size() == 6);
}

TEST_CASE("spanning path contract rejections") {
  CHECK(kind_of([] { spanning_path_avoiding_edge(3, 0, 3, 5, 6); }) ==
        ErrorKind::PreconditionViolation); // 0-3 is not an edge
  CHECK(kind_of([] { spanning_path_avoiding_edge(3, 0, 1, 5, 5); }) ==
        ErrorKind::PreconditionViolation);
  CHECK(kind_of([] { spanning_path_avoiding_edge(3, 0, 1, 1, 6); }) ==
        ErrorKind::PreconditionViolation); // endpoint on the avoided edge
  CHECK(kind_of([] { spanning_path_avoiding_edge(3, 0, 1, 2, 4); }) ==
        ErrorKind::PreconditionViolation); // even endpoint distance
}

TEST_CASE("the backtracking search proves infeasibility and obeys budgets") {
  SearchProblem prob;
  prob.n = 2;
  prob.sources = {0};
  prob.sinks = {3};
  prob.min_coverage = 4; // a spanning 0-3 path would need odd distance
  CHECK_FALSE(search_disjoint_paths(prob).has_value());

  prob.min_coverage = 3;
  auto found = search_disjoint_paths(prob);
  REQUIRE(found.has_value());
  CHECK(found->covered_vertices() == 3);

  // A spanning path to an even-parity corner is ruled out up front by the
  // parity count, so aim at an odd one to force a real search.
  SearchProblem big;
  big.n = 4;
  big.sources = {0};
  big.sinks = {14};
  big.min_coverage = 16;
  SolverBudget tiny;
  tiny.node_limit = 1;
  CHECK(kind_of([&] { search_disjoint_paths(big, tiny); }) ==
        ErrorKind::BudgetExceeded);

  SearchProblem deep;
  deep.n = 7;
  deep.sources = {0};
  deep.sinks = {127};
  deep.min_coverage = 2;
  CHECK(kind_of([&] { search_disjoint_paths(deep); }) ==
        ErrorKind::DimensionTooLarge);
}
