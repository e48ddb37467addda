#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qroute/faults.hpp"
#include "qroute/path.hpp"
#include "qroute/router.hpp"

namespace qroute {

// Instance documents are JSON objects with fields n, k, faults, sources,
// and sinks. Vertex labels are decimal integers or binary strings of
// exactly n characters, most significant bit first. Parse failures carry
// the offending field in the message and use the ParseError kind.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Routing outcome document: the path system, the realized source-to-sink
// pairing, coverage and its guaranteed lower bound, the construction trace,
// and a verification flag. The flag is recomputed by the verifier when the
// document is written, never taken from the router.
struct ResultDocument {
  PathSystem paths;
  std::vector<std::pair<Vertex, Vertex>> pairing;
  std::size_t coverage = 0;
  std::size_t bound = 0;
  std::vector<std::string> case_trace;
  bool verified = false;
};

std::string serialize_result(const Instance& inst, const RouteResult& res);
ResultDocument parse_result(const std::string& text);

} // namespace qroute
