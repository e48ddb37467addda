#include "qroute/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qroute/io.hpp"
#include "qroute/router.hpp"
#include "qroute/verify.hpp"

namespace qroute {

namespace {

constexpr const char* kTagNames[] = {
    "BaseK1",  "BaseKmax", "BaseSmallN",     "Case1_1", "Case1_2a",
    "Case1_2b_fallback",   "Case2",          "Case3a",  "Case3b",
    "SolverFallback"};
constexpr int kTagCount = static_cast<int>(std::size(kTagNames));

int tag_id(const std::string& tag) {
  for (int i = 0; i < kTagCount; ++i)
    if (tag == kTagNames[i]) return i;
  return kTagCount;  // counted as "other"; not expected in practice
}

bool trace_has_fallback(const TraceNode& t) {
  if (t.tag == "SolverFallback") return true;
  for (const auto& c : t.children)
    if (trace_has_fallback(c)) return true;
  return false;
}

// Per-instance outcome, packed so workers can record results without
// synchronization: bit 7 ran, bit 6 passed, bit 5 fallback used, low bits
// the top-level tag id.
constexpr std::uint8_t kRan = 0x80;
constexpr std::uint8_t kPassed = 0x40;
constexpr std::uint8_t kFallback = 0x20;
constexpr std::uint8_t kTagMask = 0x1f;

std::vector<Vertex> fault_free_class(int n, const VertexSet& faults,
                                     int parity) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(n); ++v)
    if (parity_class(v) == (parity ? ParityClass::Odd : ParityClass::Even) &&
        !set_contains(faults, v))
      out.push_back(v);
  return out;
}

// Lexicographic size-m subsets of `pool`, passed to `emit`.
template <typename Fn>
void for_each_subset(const std::vector<Vertex>& pool, int m, Fn&& emit) {
  if (m == 0) {
    emit(VertexSet{});
    return;
  }
  if (m > static_cast<int>(pool.size())) return;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    VertexSet chosen;
    chosen.reserve(m);
    for (int i : idx) chosen.push_back(pool[i]);
    emit(std::move(chosen));
    int i = m - 1;
    while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Instance> generate_exhaustive(const CampaignOptions& opts) {
  int n = opts.n;
  int k = opts.k;
  int fmax = max_fault_budget(n, k);
  std::vector<Vertex> all;
  for (Vertex v = 0; v < vertex_count(n); ++v) all.push_back(v);

  std::vector<Instance> out;
  for (int f = 0; f <= fmax; ++f) {
    for_each_subset(all, f, [&](VertexSet F) {
      if (!is_conditionally_fault_free(n, F)) return;
      auto even = fault_free_class(n, F, 0);
      auto odd = fault_free_class(n, F, 1);
      for_each_subset(even, k, [&](const VertexSet& S) {
        for_each_subset(odd, k, [&](VertexSet T) {
          out.push_back(Instance{n, k, F, S, std::move(T)});
        });
      });
    });
  }
  return out;
}

std::vector<Instance> generate_randomized(const CampaignOptions& opts) {
  int n = opts.n;
  int k = opts.k;
  int f = max_fault_budget(n, k);
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Vertex> pick(0, vertex_count(n) - 1);

  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(opts.samples));
  for (long long it = 0; it < opts.samples; ++it) {
    VertexSet F;
    while (true) {
      F.clear();
      while (static_cast<int>(F.size()) < f) set_insert(F, pick(rng));
      if (is_conditionally_fault_free(n, F)) break;
    }
    auto even = fault_free_class(n, F, 0);
    auto odd = fault_free_class(n, F, 1);
    if (rng() & 1) std::swap(even, odd);
    std::shuffle(even.begin(), even.end(), rng);
    std::shuffle(odd.begin(), odd.end(), rng);
    VertexSet S = make_set({even.begin(), even.begin() + k});
    VertexSet T = make_set({odd.begin(), odd.begin() + k});
    out.push_back(Instance{n, k, std::move(F), std::move(S), std::move(T)});
  }
  return out;
}

} // namespace

CampaignSummary run_campaign(const CampaignOptions& opts,
                             const ProgressFn& progress) {
  require(opts.n >= 3 && opts.n <= kMaxDimension, ErrorKind::InvalidArgument,
          "campaign requires 3 <= n <= " + std::to_string(kMaxDimension));
  require(opts.k >= 1 && opts.k <= opts.n - 2, ErrorKind::InvalidArgument,
          "campaign requires 1 <= k <= n-2");
  if (opts.exhaustive)
    require(opts.n <= 4, ErrorKind::InvalidArgument,
            "exhaustive campaigns are limited to n <= 4");
  else
    require(opts.n <= 7 && opts.samples >= 1, ErrorKind::InvalidArgument,
            "randomized campaigns require n <= 7 and at least one sample");
  require(opts.workers >= 1, ErrorKind::InvalidArgument,
          "worker count must be at least 1");

  std::vector<Instance> instances = opts.exhaustive
                                        ? generate_exhaustive(opts)
                                        : generate_randomized(opts);
  const long long count = static_cast<long long>(instances.size());
  std::vector<std::uint8_t> outcome(instances.size(), 0);

  std::atomic<long long> next{0};
  std::atomic<long long> done{0};
  std::atomic<long long> first_fail{std::numeric_limits<long long>::max()};
  std::mutex reason_mutex;
  std::map<long long, std::string> reasons;

  auto record_failure = [&](long long i, const std::string& why) {
    long long seen = first_fail.load();
    while (i < seen && !first_fail.compare_exchange_weak(seen, i)) {
    }
    std::lock_guard<std::mutex> lock(reason_mutex);
    reasons[i] = why;
  };

  auto work = [&] {
    while (true) {
      long long i = next.fetch_add(1);
      if (i >= count) break;
      if (i > first_fail.load()) {
        // A lower-indexed instance already failed; skip the rest.
        done.fetch_add(1);
        continue;
      }
      std::uint8_t field = kRan;
      try {
        RouteResult res = route(instances[static_cast<std::size_t>(i)],
                                opts.budget);
        VerifyReport rep =
            verify(instances[static_cast<std::size_t>(i)], res.paths);
        field |= static_cast<std::uint8_t>(tag_id(res.trace.tag));
        if (trace_has_fallback(res.trace)) field |= kFallback;
        if (rep.pass()) {
          field |= kPassed;
        } else {
          std::string why = "verification failed:";
          for (const auto& r : rep.failures) why += " " + r + ";";
          record_failure(i, why);
        }
      } catch (const Error& e) {
        record_failure(i, e.what());
      }
      outcome[static_cast<std::size_t>(i)] = field;
      done.fetch_add(1);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(opts.workers));
  for (int w = 0; w < opts.workers; ++w) pool.emplace_back(work);
  if (progress) {
    while (done.load() < count) {
      progress(done.load(), count);
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    progress(count, count);
  }
  for (auto& t : pool) t.join();

  // Reduce in instance order; on failure, truncate just past the earliest
  // failing instance so the summary never depends on scheduling.
  CampaignSummary summary;
  long long cut = std::min(first_fail.load(), count - 1);
  for (long long i = 0; i <= cut; ++i) {
    std::uint8_t field = outcome[static_cast<std::size_t>(i)];
    if (!(field & kRan)) continue;
    ++summary.total;
    if (field & kPassed) {
      ++summary.passed;
    } else {
      ++summary.failed;
      if (!summary.counterexample) {
        summary.counterexample = instances[static_cast<std::size_t>(i)];
        std::lock_guard<std::mutex> lock(reason_mutex);
        summary.failure_reason = reasons[i];
      }
    }
    if (field & kFallback) ++summary.fallback_used;
    int id = field & kTagMask;
    summary.case_histogram[id < kTagCount ? kTagNames[id] : "other"] += 1;
  }
  return summary;
}

std::string serialize_summary(const CampaignOptions& opts,
                              const CampaignSummary& summary) {
  nlohmann::ordered_json doc;
  doc["mode"] = opts.exhaustive ? "exhaustive" : "randomized";
  doc["n"] = opts.n;
  doc["k"] = opts.k;
  doc["f"] = max_fault_budget(opts.n, opts.k);
  if (!opts.exhaustive) {
    doc["samples"] = opts.samples;
    doc["seed"] = opts.seed;
  }
  doc["total"] = summary.total;
  doc["passed"] = summary.passed;
  doc["failed"] = summary.failed;
  doc["fallback_used"] = summary.fallback_used;
  doc["fallback_rate"] =
      summary.total ? static_cast<double>(summary.fallback_used) /
                          static_cast<double>(summary.total)
                    : 0.0;
  auto& hist = doc["case_histogram"] = nlohmann::ordered_json::object();
  for (const auto& [tag, c] : summary.case_histogram) hist[tag] = c;
  if (summary.counterexample) {
    doc["counterexample"] =
        nlohmann::ordered_json::parse(serialize_instance(*summary.counterexample));
    doc["failure_reason"] = summary.failure_reason;
  } else {
    doc["counterexample"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

} // namespace qroute
