#include "doctest.h"

#include <string>
#include <vector>

#include "qroute/router.hpp"
#include "qroute/verify.hpp"
#include "test_support.hpp"

using namespace qroute;
using qroute_test::kind_of;

namespace {

VerifyReport route_and_verify(const Instance& inst, RouteResult* out = nullptr,
                              const SolverBudget& budget = {}) {
  RouteResult res = route(inst, budget);
  VerifyReport rep = verify(inst, res.paths);
  if (out) *out = std::move(res);
  return rep;
}

} // namespace

TEST_CASE("single pair in the 3-cube routes around a fault") {
  Instance inst{3, 1, make_set({6}), {0}, {7}};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 6);
  CHECK(rep.bound == 6);
  CHECK(res.trace.tag == "BaseK1");
  CHECK(res.paths.paths[0].vertices == std::vector<Vertex>{0, 2, 3, 1, 5, 7});
}

TEST_CASE("maximal path count in the 4-cube") {
  Instance inst{4, 2, make_set({5}), make_set({0, 3}), make_set({7, 14})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 14);
  CHECK(res.trace.tag == "BaseKmax");
}

TEST_CASE("all endpoints in one half with few near faults") {
  Instance inst{5, 2, make_set({3}), make_set({0, 6}), make_set({2, 8})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 30);
  CHECK(flatten_trace(res.trace) ==
        std::vector<std::string>{
            "Case1_1 n=5 k=2 j=1 p=2 q=2 f_near=0 f_far=1",
            "  BaseKmax n=4 k=2",
        });
}

TEST_CASE("too many near faults borrows one from the far half") {
  Instance inst{5, 2, make_set({1, 6, 10}), make_set({0, 12}), make_set({2, 8})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 28);
  CHECK(res.trace.tag == "Case1_2a");
}

TEST_CASE("too many near faults with none to borrow sets a pair aside") {
  Instance inst{5, 2, make_set({6, 10}), make_set({0, 12}), make_set({2, 8})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 28);
  CHECK(res.trace.tag == "Case1_2b_fallback");
}

TEST_CASE("endpoints on both sides pad the thin side with junctions") {
  Instance inst{5, 2, {}, make_set({0, 3}), make_set({2, 4})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 32);
  CHECK(flatten_trace(res.trace) ==
        std::vector<std::string>{
            "Case2 n=5 k=2 j=1 p=2 q=1 f_near=0 f_far=0",
            "  BaseKmax n=4 k=2",
            "  BaseK1 n=4 k=1",
        });
}

TEST_CASE("sinks crowded into the heavily faulted half") {
  Instance inst{5, 2, make_set({1, 9, 17}), make_set({0, 6}), make_set({7, 11})};
  RouteResult res;
  VerifyReport rep = route_and_verify(inst, &res);
  CHECK(rep.pass());
  CHECK(rep.coverage == 28);
  CHECK(rep.bound == 26);
  CHECK(flatten_trace(res.trace) ==
        std::vector<std::string>{
            "Case3b n=5 k=2 j=1 p=2 q=0 f_near=0 f_far=3",
            "  BaseK1 n=4 k=1",
            "  BaseKmax n=4 k=2",
        });
}

TEST_CASE("result paths are sorted by source label") {
  Instance inst{5, 2, {}, make_set({0, 3}), make_set({2, 4})};
  RouteResult res = route(inst);
  REQUIRE(res.paths.paths.size() == 2);
  CHECK(res.paths.paths[0].source() < res.paths.paths[1].source());
}

TEST_CASE("routing the same instance twice gives identical output") {
  Instance inst{6, 3, make_set({7, 21, 35}), make_set({0, 9, 40}),
                make_set({1, 22, 52})};
  RouteResult a = route(inst);
  RouteResult b = route(inst);
  REQUIRE(a.paths.paths.size() == b.paths.paths.size());
  for (std::size_t i = 0; i < a.paths.paths.size(); ++i)
    CHECK(a.paths.paths[i].vertices == b.paths.paths[i].vertices);
  CHECK(flatten_trace(a.trace) == flatten_trace(b.trace));
  CHECK(verify(inst, a.paths).pass());
}

TEST_CASE("invalid instances are rejected before any construction") {
  CHECK(kind_of([] { route({3, 1, {}, {0}, {3}}); }) ==
        ErrorKind::PreconditionViolation); // endpoints share a class
  CHECK(kind_of([] {
          route({5, 2, make_set({1, 9, 17, 30}), make_set({0, 6}),
                 make_set({7, 11})});
        }) == ErrorKind::PreconditionViolation); // f = 4 over budget 3
}

TEST_CASE("the base dimension cap gates large direct searches") {
  Instance inst{7, 5, {}, make_set({0, 3, 5, 6, 9}), make_set({1, 2, 4, 7, 8})};
  CHECK(kind_of([&] { route(inst); }) == ErrorKind::DimensionTooLarge);
  SolverBudget wide;
  wide.max_dimension = 7;
  VerifyReport rep = route_and_verify(inst, nullptr, wide);
  CHECK(rep.pass());
  CHECK(rep.coverage >= 128);
}
