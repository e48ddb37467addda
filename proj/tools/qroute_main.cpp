// Command line surface: solve one instance, verify a result document
// against its instance, or run a pass/fail campaign over many instances.
//
// Exit codes form a contract: 0 success, 1 unreadable input or parse error,
// 2 violated routing hypothesis, 3 verification or construction failure,
// 4 search budget exceeded.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qroute/campaign.hpp"
#include "qroute/io.hpp"
#include "qroute/router.hpp"
#include "qroute/verify.hpp"

namespace {

int exit_code_for(const qroute::Error& e) {
  switch (e.kind()) {
    case qroute::ErrorKind::ParseError:
    case qroute::ErrorKind::InvalidArgument:
      return 1;
    case qroute::ErrorKind::PreconditionViolation:
      return 2;
    case qroute::ErrorKind::BudgetExceeded:
    case qroute::ErrorKind::DimensionTooLarge:
      return 4;
    default:
      return 3;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    qroute::fail(qroute::ErrorKind::ParseError,
                 "cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    qroute::fail(qroute::ErrorKind::ParseError,
                 "cannot open \"" + path + "\" for writing");
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

int run_solve(const std::string& input, const std::string& output,
              const qroute::SolverBudget& budget) {
  qroute::Instance inst = qroute::parse_instance(read_file(input));
  qroute::validate_instance(inst);
  qroute::RouteResult res = qroute::route(inst, budget);
  emit(output, qroute::serialize_result(inst, res));
  qroute::VerifyReport report = qroute::verify(inst, res.paths);
  if (!report.pass()) {
    std::cerr << "error: result failed verification\n";
    for (const auto& f : report.failures) std::cerr << "  - " << f << "\n";
    return 3;
  }
  return 0;
}

int run_verify(const std::string& instance_path,
               const std::string& result_path) {
  qroute::Instance inst = qroute::parse_instance(read_file(instance_path));
  qroute::ResultDocument doc = qroute::parse_result(read_file(result_path));
  qroute::VerifyReport report = qroute::verify(inst, doc.paths);
  std::cout << "disjoint:             " << (report.disjoint ? "yes" : "no")
            << "\n"
            << "fault_free:           " << (report.fault_free ? "yes" : "no")
            << "\n"
            << "endpoints_bijection:  "
            << (report.endpoints_bijection ? "yes" : "no") << "\n"
            << "all_edges_valid:      "
            << (report.all_edges_valid ? "yes" : "no") << "\n"
            << "coverage:             " << report.coverage << "\n"
            << "bound:                " << report.bound << "\n"
            << "meets_bound:          " << (report.meets_bound ? "yes" : "no")
            << "\n";
  for (const auto& f : report.failures)
    std::cout << "violation: " << f << "\n";
  return report.pass() ? 0 : 3;
}

int run_campaign(const qroute::CampaignOptions& opts,
                 const std::string& output) {
  auto started = std::chrono::steady_clock::now();
  qroute::CampaignSummary summary = qroute::run_campaign(
      opts, [](long long done, long long total) {
        std::fprintf(stderr, "\r%lld/%lld instances", done, total);
        std::fflush(stderr);
      });
  auto elapsed = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::fprintf(stderr, "\rdone: %lld instances in %.2fs\n", summary.total,
               elapsed);

  emit(output, qroute::serialize_summary(opts, summary));
  if (summary.failed > 0) {
    std::string side = output.empty() ? std::string("campaign_counterexample.json")
                                      : output + ".counterexample.json";
    write_file(side, qroute::serialize_instance(*summary.counterexample));
    std::cerr << "error: " << summary.failed
              << " instance(s) failed; counterexample written to " << side
              << "\n";
    return 3;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjoint fault-avoiding path routing in hypercubes"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string result_path;
  long long node_limit = qroute::SolverBudget{}.node_limit;
  int max_base_dim = qroute::SolverBudget{}.max_dimension;

  auto add_budget_flags = [&](CLI::App* cmd) {
    cmd->add_option("--node-limit", node_limit,
                    "Search node budget for base solvers and fallbacks");
    cmd->add_option("--max-base-dim", max_base_dim,
                    "Largest dimension the backtracking search may handle");
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "Route one instance file and write the result document");
  solve->add_option("--input", input, "Instance file to route")->required();
  solve->add_option("--output", output,
                    "Result file path (stdout when omitted)");
  add_budget_flags(solve);

  CLI::App* verify = app.add_subcommand(
      "verify", "Check a result document against its instance file");
  verify->add_option("--input", input, "Instance file")->required();
  verify->add_option("--output", result_path,
                     "Result document produced for that instance")
      ->required();

  int n = 0;
  int k = 0;
  std::string mode = "randomized";
  long long samples = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  CLI::App* campaign = app.add_subcommand(
      "campaign", "Route and verify a family of instances for one (n, k)");
  campaign->add_option("--n", n, "Cube dimension")->required();
  campaign->add_option("--k", k, "Number of disjoint paths")->required();
  campaign
      ->add_option("--mode", mode, "exhaustive (n <= 4) or randomized (n <= 7)")
      ->check(CLI::IsMember({"exhaustive", "randomized"}));
  campaign->add_option("--samples", samples,
                       "Instance count in randomized mode");
  campaign->add_option("--seed", seed, "Generator seed in randomized mode");
  campaign->add_option("--workers", workers, "Parallel solver threads");
  campaign->add_option("--output", output,
                       "Summary file path (stdout when omitted)");
  add_budget_flags(campaign);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  qroute::SolverBudget budget;
  budget.node_limit = node_limit;
  budget.max_dimension = max_base_dim;

  try {
    if (solve->parsed()) return run_solve(input, output, budget);
    if (verify->parsed()) return run_verify(input, result_path);
    qroute::CampaignOptions opts;
    opts.n = n;
    opts.k = k;
    opts.exhaustive = (mode == "exhaustive");
    opts.samples = samples;
    opts.seed = seed;
    opts.workers = workers;
    opts.budget = budget;
    return run_campaign(opts, output);
  } catch (const qroute::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
