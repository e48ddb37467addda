#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qroute/faults.hpp"
#include "qroute/solvers.hpp"

namespace qroute {

// A campaign runs route + verify across a family of instances for one
// (n, k). Exhaustive mode enumerates every fault set within budget that
// passes the conditional predicate, with every source and sink choice
// (sources drawn from the even class); it requires n <= 4. Randomized mode
// draws seeded instances at the maximal fault budget for any n <= 7.
struct CampaignOptions {
  int n = 0;
  int k = 0;
  bool exhaustive = true;
  long long samples = 0;   // randomized mode: number of instances
  std::uint64_t seed = 0;  // randomized mode: generator seed, kept for replay
  int workers = 1;
  SolverBudget budget;
};

struct CampaignSummary {
  long long total = 0;
  long long passed = 0;
  long long failed = 0;
  long long fallback_used = 0;
  std::map<std::string, long long> case_histogram;
  std::optional<Instance> counterexample;  // first failure, if any
  std::string failure_reason;
};

using ProgressFn = std::function<void(long long done, long long total)>;

// Runs the campaign, fanning instances out to `workers` threads. The
// summary is independent of the worker count and of scheduling: instances
// are generated up front in a fixed order, and on failure the counts are
// truncated at the earliest failing instance.
CampaignSummary run_campaign(const CampaignOptions& opts,
                             const ProgressFn& progress = {});

// JSON text for the summary. Wall-clock data is deliberately excluded so
// that identical options produce byte-identical summaries.
std::string serialize_summary(const CampaignOptions& opts,
                              const CampaignSummary& summary);

} // namespace qroute
