#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#include "qroute/io.hpp"

using namespace qroute;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("qroute_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

CliRun run_cli(const std::string& args) {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = std::string(QROUTE_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const char* kInstance5 =
    R"({"n":5,"k":2,"faults":[1,9,17],"sources":[0,6],"sinks":[7,11]})";

} // namespace

TEST_CASE("cli rejects missing subcommands and bad flags") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve").exit_code == 1); // --input is required
}

TEST_CASE("solve writes a verified result document") {
  fs::path in = work_dir() / "inst5.json";
  fs::path out = work_dir() / "res5.json";
  spit(in, kInstance5);
  CliRun r = run_cli("solve --input " + in.string() + " --output " + out.string());
  CHECK(r.exit_code == 0);
  ResultDocument doc = parse_result(slurp(out));
  CHECK(doc.verified);
  CHECK(doc.coverage == 28);
  CHECK(doc.bound == 26);

  // Without --output the document goes to standard output.
  CliRun r2 = run_cli("solve --input " + in.string());
  CHECK(r2.exit_code == 0);
  CHECK(parse_result(r2.out).verified);
}

TEST_CASE("solve distinguishes malformed input from a broken hypothesis") {
  fs::path bad = work_dir() / "bad_label.json";
  spit(bad, R"({"n":2,"k":1,"faults":[],"sources":["012"],"sinks":[1]})");
  CliRun r1 = run_cli("solve --input " + bad.string());
  CHECK(r1.exit_code == 1);

  CHECK(run_cli("solve --input " + (work_dir() / "no_such.json").string())
            .exit_code == 1);

  fs::path over = work_dir() / "over_budget.json";
  spit(over, R"({"n":5,"k":2,"faults":[1,9,17,30],"sources":[0,6],"sinks":[7,11]})");
  CliRun r2 = run_cli("solve --input " + over.string());
  CHECK(r2.exit_code == 2);
  CHECK(r2.err.find("exceeds 2n-2k-3") != std::string::npos);
}

TEST_CASE("solve reports dimension cap overruns on their own exit code") {
  fs::path in = work_dir() / "inst7.json";
  spit(in, R"({"n":7,"k":5,"faults":[],"sources":[0,3,5,6,9],"sinks":[1,2,4,7,8]})");
  CHECK(run_cli("solve --input " + in.string()).exit_code == 4);
  CHECK(run_cli("solve --input " + in.string() + " --max-base-dim 7").exit_code == 0);
}

TEST_CASE("verify accepts a fresh result and flags a tampered one") {
  fs::path in = work_dir() / "inst5v.json";
  fs::path out = work_dir() / "res5v.json";
  spit(in, kInstance5);
  REQUIRE(run_cli("solve --input " + in.string() + " --output " + out.string())
              .exit_code == 0);
  CliRun ok = run_cli("verify --input " + in.string() + " --output " + out.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("disjoint:") != std::string::npos);
  CHECK(ok.out.find("violation") == std::string::npos);

  auto doc = nlohmann::json::parse(slurp(out));
  doc["paths"][0][1] = doc["paths"][0][0]; // repeat the source: breaks an edge
  spit(out, doc.dump(2) + "\n");
  CliRun badr = run_cli("verify --input " + in.string() + " --output " + out.string());
  CHECK(badr.exit_code == 3);
  CHECK(badr.out.find("violation") != std::string::npos);
}

TEST_CASE("exhaustive campaigns count and clear every tiny instance") {
  fs::path sum = work_dir() / "sum3.json";
  CliRun r = run_cli("campaign --n 3 --k 1 --mode exhaustive --output " + sum.string());
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(slurp(sum));
  CHECK(doc.at("mode") == "exhaustive");
  CHECK(doc.at("total") == 112);
  CHECK(doc.at("failed") == 0);
  CHECK(doc.at("counterexample").is_null());
}

TEST_CASE("campaign summaries are byte-identical across reruns and workers") {
  fs::path a = work_dir() / "sum_a.json";
  fs::path b = work_dir() / "sum_b.json";
  fs::path c = work_dir() / "sum_c.json";
  std::string base = "campaign --n 5 --k 2 --samples 40 --seed 7 ";
  CHECK(run_cli(base + "--output " + a.string()).exit_code == 0);
  CHECK(run_cli(base + "--output " + b.string()).exit_code == 0);
  CHECK(run_cli(base + "--workers 2 --output " + c.string()).exit_code == 0);
  std::string sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
  CHECK(sa == slurp(c));
}

TEST_CASE("campaign argument errors exit through the usage code") {
  CHECK(run_cli("campaign --n 8 --k 1 --samples 5").exit_code == 1);
  CHECK(run_cli("campaign --n 5 --k 0 --samples 5").exit_code == 1);
  CHECK(run_cli("campaign --n 5 --k 2 --mode sideways").exit_code == 1);
}
