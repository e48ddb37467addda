#include "qroute/io.hpp"

#include <algorithm>
#include <string>

#include "json.hpp"

#include "qroute/verify.hpp"

namespace qroute {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
  fail(ErrorKind::ParseError, field + ": " + why);
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

void check_fields(const ordered_json& doc,
                  const std::vector<std::string>& expected) {
  if (!doc.is_object())
    fail(ErrorKind::ParseError, "top level is not an object");
  for (const auto& name : expected)
    if (!doc.contains(name)) fail_field(name, "missing field");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(expected.begin(), expected.end(), key) == expected.end())
      fail_field(key, "unknown field");
  }
}

int parse_small_int(const ordered_json& doc, const std::string& field, int lo,
                    int hi) {
  const auto& v = doc.at(field);
  if (!v.is_number_integer())
    fail_field(field, "expected an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    fail_field(field, "value " + std::to_string(x) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

Vertex parse_label(const ordered_json& v, int n, const std::string& where) {
  if (v.is_number_unsigned()) {
    unsigned long long x = v.get<unsigned long long>();
    if (x >= (1ull << n))
      fail_field(where, "label " + std::to_string(x) + " does not fit in " +
                            std::to_string(n) + " bits");
    return static_cast<Vertex>(x);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (static_cast<int>(s.size()) != n)
      fail_field(where, "binary label \"" + s + "\" is not exactly " +
                            std::to_string(n) + " characters");
    Vertex x = 0;
    for (char c : s) {
      if (c != '0' && c != '1')
        fail_field(where, "binary label \"" + s + "\" has a character that is"
                          " neither 0 nor 1");
      x = (x << 1) | static_cast<Vertex>(c - '0');
    }
    return x;
  }
  fail_field(where, "label must be an unsigned integer or a binary string");
}

// Result documents are machine artifacts and always carry decimal labels.
Vertex parse_decimal_label(const ordered_json& v, const std::string& where) {
  if (!v.is_number_unsigned())
    fail_field(where, "expected an unsigned integer label");
  unsigned long long x = v.get<unsigned long long>();
  if (x >= (1ull << kMaxDimension))
    fail_field(where, "label " + std::to_string(x) + " does not fit in " +
                          std::to_string(kMaxDimension) + " bits");
  return static_cast<Vertex>(x);
}

VertexSet parse_labels(const ordered_json& doc, const std::string& field,
                       int n) {
  const auto& arr = doc.at(field);
  if (!arr.is_array()) fail_field(field, "expected an array of labels");
  std::vector<Vertex> vs;
  vs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    vs.push_back(parse_label(arr[i], n, field + "[" + std::to_string(i) + "]"));
  try {
    return make_set(std::move(vs));
  } catch (const Error& e) {
    fail_field(field, e.what());
  }
}

} // namespace

Instance parse_instance(const std::string& text) {
  ordered_json doc = parse_document(text);
  check_fields(doc, {"n", "k", "faults", "sources", "sinks"});
  Instance inst;
  inst.n = parse_small_int(doc, "n", 1, kMaxDimension);
  inst.k = parse_small_int(doc, "k", 0, kMaxDimension);
  inst.faults = parse_labels(doc, "faults", inst.n);
  inst.sources = parse_labels(doc, "sources", inst.n);
  inst.sinks = parse_labels(doc, "sinks", inst.n);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.n;
  doc["k"] = inst.k;
  doc["faults"] = inst.faults;
  doc["sources"] = inst.sources;
  doc["sinks"] = inst.sinks;
  return doc.dump(2) + "\n";
}

std::string serialize_result(const Instance& inst, const RouteResult& res) {
  VerifyReport report = verify(inst, res.paths);
  ordered_json doc;
  auto& paths = doc["paths"] = ordered_json::array();
  for (const Path& p : res.paths.paths) paths.push_back(p.vertices);
  auto& pairing = doc["pairing"] = ordered_json::object();
  for (const Path& p : res.paths.paths)
    pairing[std::to_string(p.source())] = p.sink();
  doc["coverage"] = report.coverage;
  doc["bound"] = report.bound;
  doc["case_trace"] = flatten_trace(res.trace);
  doc["verified"] = report.pass();
  return doc.dump(2) + "\n";
}

ResultDocument parse_result(const std::string& text) {
  ordered_json doc = parse_document(text);
  check_fields(doc,
               {"paths", "pairing", "coverage", "bound", "case_trace",
                "verified"});
  ResultDocument out;

  const auto& paths = doc.at("paths");
  if (!paths.is_array()) fail_field("paths", "expected an array of paths");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& arr = paths[i];
    const std::string where = "paths[" + std::to_string(i) + "]";
    if (!arr.is_array()) fail_field(where, "expected an array of labels");
    Path p;
    for (std::size_t j = 0; j < arr.size(); ++j)
      p.vertices.push_back(
          parse_decimal_label(arr[j], where + "[" + std::to_string(j) + "]"));
    out.paths.paths.push_back(std::move(p));
  }

  const auto& pairing = doc.at("pairing");
  if (!pairing.is_object()) fail_field("pairing", "expected an object");
  for (const auto& [key, value] : pairing.items()) {
    Vertex s = 0;
    try {
      std::size_t used = 0;
      unsigned long long x = std::stoull(key, &used);
      if (used != key.size() || x >= (1ull << kMaxDimension))
        throw std::invalid_argument(key);
      s = static_cast<Vertex>(x);
    } catch (const std::exception&) {
      fail_field("pairing", "key \"" + key + "\" is not a vertex label");
    }
    out.pairing.emplace_back(
        s, parse_decimal_label(value, "pairing[\"" + key + "\"]"));
  }

  const auto& coverage = doc.at("coverage");
  if (!coverage.is_number_unsigned())
    fail_field("coverage", "expected an unsigned integer");
  out.coverage = coverage.get<std::size_t>();
  const auto& bound = doc.at("bound");
  if (!bound.is_number_unsigned())
    fail_field("bound", "expected an unsigned integer");
  out.bound = bound.get<std::size_t>();

  const auto& trace = doc.at("case_trace");
  if (!trace.is_array()) fail_field("case_trace", "expected an array");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].is_string())
      fail_field("case_trace[" + std::to_string(i) + "]", "expected a string");
    out.case_trace.push_back(trace[i].get<std::string>());
  }

  const auto& verified = doc.at("verified");
  if (!verified.is_boolean()) fail_field("verified", "expected a boolean");
  out.verified = verified.get<bool>();
  return out;
}

} // namespace qroute
