#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "qroute/spanning_cover.hpp"
#include "test_support.hpp"

using namespace qroute;
using qroute_test::kind_of;

namespace {

void check_cover(int n, Vertex x, Vertex y, const VertexSet& sources,
                 const VertexSet& sinks, const PathSystem& ps) {
  REQUIRE(ps.paths.size() == sources.size());
  CHECK(is_vertex_disjoint(ps));
  CHECK(ps.covered_vertices() == (std::size_t{1} << n) - 2);
  VertexSet from, to;
  for (const Path& p : ps.paths) {
    CHECK(is_simple_path(p, n));
    CHECK(p.index_of(x) == std::nullopt);
    CHECK(p.index_of(y) == std::nullopt);
    from.push_back(p.source());
    to.push_back(p.sink());
  }
  std::sort(from.begin(), from.end());
  std::sort(to.begin(), to.end());
  CHECK(from == sources);
  CHECK(to == sinks);
}

} // namespace

TEST_CASE("spanning covers that skip one edge, small frozen cases") {
  {
    VertexSet S = make_set({5}), T = make_set({2});
    check_cover(4, 0, 1, S, T, spanning_disjoint_paths_avoiding_edge(4, 0, 1, S, T));
  }
  {
    VertexSet S = make_set({5, 6}), T = make_set({2, 8});
    check_cover(4, 0, 1, S, T, spanning_disjoint_paths_avoiding_edge(4, 0, 1, S, T));
  }
  {
    VertexSet S = make_set({3, 5}), T = make_set({2, 8});
    check_cover(5, 0, 16, S, T, spanning_disjoint_paths_avoiding_edge(5, 0, 16, S, T));
  }
  {
    VertexSet S = make_set({3, 5, 9}), T = make_set({2, 8, 32});
    check_cover(6, 0, 1, S, T, spanning_disjoint_paths_avoiding_edge(6, 0, 1, S, T));
  }
}

TEST_CASE("spanning covers over random 5-cube layouts") {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    Vertex x = rng() % 32;
    Vertex y = x ^ (Vertex{1} << (rng() % 5));
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<Vertex> even, odd;
    for (Vertex v = 0; v < 32; ++v) {
      if (v == x || v == y) continue;
      (parity_class(v) == ParityClass::Even ? even : odd).push_back(v);
    }
    std::shuffle(even.begin(), even.end(), rng);
    std::shuffle(odd.begin(), odd.end(), rng);
    VertexSet S = make_set({even.begin(), even.begin() + k});
    VertexSet T = make_set({odd.begin(), odd.begin() + k});
    check_cover(5, x, y, S, T,
                spanning_disjoint_paths_avoiding_edge(5, x, y, S, T));
  }
}

TEST_CASE("spanning cover contract rejections") {
  CHECK(kind_of([] {
          spanning_disjoint_paths_avoiding_edge(4, 0, 3, make_set({5}),
                                                make_set({2}));
        }) == ErrorKind::PreconditionViolation); // 0-3 is not an edge
  CHECK(kind_of([] {
          spanning_disjoint_paths_avoiding_edge(4, 0, 1, make_set({1}),
                                                make_set({2}));
        }) == ErrorKind::PreconditionViolation); // endpoint on avoided edge
  CHECK(kind_of([] {
          spanning_disjoint_paths_avoiding_edge(4, 0, 1, make_set({5, 6, 9}),
                                                make_set({2, 4, 8}));
        }) == ErrorKind::PreconditionViolation); // k = 3 exceeds n-2
  CHECK(kind_of([] {
          spanning_disjoint_paths_avoiding_edge(4, 0, 1, make_set({5, 2}),
                                                make_set({4, 8}));
        }) == ErrorKind::PreconditionViolation); // sources span both classes
  CHECK(kind_of([] {
          spanning_disjoint_paths_avoiding_edge(3, 0, 1, make_set({5}),
                                                make_set({2}));
        }) == ErrorKind::PreconditionViolation); // needs at least dimension 4
}
