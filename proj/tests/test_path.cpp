#include "doctest.h"

#include <vector>

#include "qroute/path.hpp"
#include "test_support.hpp"

using namespace qroute;
using qroute_test::kind_of;
using qroute_test::mk;

TEST_CASE("simple path recognition") {
  CHECK(is_simple_path(mk({0, 1, 3, 7}), 3));
  CHECK(is_simple_path(mk({5}), 3));
  CHECK_FALSE(is_simple_path(mk({0, 3}), 3));    // 0 and 3 are not an edge
  CHECK_FALSE(is_simple_path(mk({0, 1, 0}), 3)); // revisits 0
  CHECK_FALSE(is_simple_path(mk({0, 8}), 3));    // 8 needs four bits
  CHECK_FALSE(is_simple_path(Path{}, 3));
}

TEST_CASE("segment is oriented from its first argument to its second") {
  Path host = mk({0, 1, 3, 7});
  CHECK(segment(host, 3, 1).vertices == std::vector<Vertex>{3, 1});
  CHECK(segment(host, 0, 7).vertices == host.vertices);
  CHECK(segment(host, 7, 7).vertices == std::vector<Vertex>{7});
  CHECK(kind_of([&] { segment(host, 0, 5); }) == ErrorKind::VertexNotOnPath);
}

TEST_CASE("join concatenates pieces across edges and rejects bad seams") {
  CHECK(join({mk({0, 1}), mk({3, 7})}).vertices ==
        std::vector<Vertex>{0, 1, 3, 7});
  CHECK(join({mk({0, 1}), Path{}, mk({3, 7})}).vertices ==
        std::vector<Vertex>{0, 1, 3, 7});
  CHECK(kind_of([] { join({mk({0, 1}), mk({4, 5})}); }) ==
        ErrorKind::SeamNotAdjacent);
  CHECK(kind_of([] { join({mk({0, 1}), mk({3, 1})}); }) ==
        ErrorKind::VertexCollision);
  CHECK(kind_of([] { join({}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("replace_edge splices a detour over one host edge") {
  Path host = mk({0, 1, 3});
  CHECK(replace_edge(host, 1, 3, mk({5, 7})).vertices ==
        std::vector<Vertex>{0, 1, 5, 7, 3});
  // A detour oriented the other way is flipped automatically.
  CHECK(replace_edge(host, 1, 3, mk({7, 5})).vertices ==
        std::vector<Vertex>{0, 1, 5, 7, 3});
  CHECK(kind_of([&] { replace_edge(host, 0, 3, mk({5, 7})); }) ==
        ErrorKind::InvalidArgument); // 0-3 is not a host edge
  CHECK(kind_of([&] { replace_edge(host, 1, 3, mk({0})); }).has_value());
}

TEST_CASE("link_systems stitches families along explicit seams") {
  PathSystem left;
  left.paths = {mk({0, 1}), mk({4, 5})};
  PathSystem right;
  right.paths = {mk({3, 7})};
  PathSystem out = link_systems(left, right, {{1, 3}});
  REQUIRE(out.paths.size() == 2);
  CHECK(out.paths[0].vertices == std::vector<Vertex>{0, 1, 3, 7});
  CHECK(out.paths[1].vertices == std::vector<Vertex>{4, 5});

  CHECK(kind_of([&] { link_systems(left, right, {{1, 7}}); }).has_value());
}

TEST_CASE("embedding lifts half-cube paths into the full cube") {
  SplitContext ctx(4, 2);
  Path p = mk({0, 1, 3}); // a path in the 3-cube
  CHECK(embed_path(ctx, p, 0).vertices == std::vector<Vertex>{0, 1, 5});
  CHECK(embed_path(ctx, p, 1).vertices == std::vector<Vertex>{2, 3, 7});
  PathSystem ps;
  ps.paths = {p};
  PathSystem lifted = embed_system(ctx, ps, 1);
  REQUIRE(lifted.paths.size() == 1);
  CHECK(is_simple_path(lifted.paths[0], 4));
}

TEST_CASE("coverage and disjointness over a system") {
  PathSystem ps;
  ps.paths = {mk({0, 1}), mk({6, 7})};
  CHECK(ps.covered_vertices() == 4);
  CHECK(is_vertex_disjoint(ps));
  ps.paths.push_back(mk({5, 7}));
  CHECK_FALSE(is_vertex_disjoint(ps));
}
