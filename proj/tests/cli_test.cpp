#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evac/cli.hpp"
#include "evac/sweep.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = evac::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("eval prints the evacuation time and branch") {
  const Run r = run({"eval", "--model", "wireless", "--zeta", "0", "--d", "3.141592653589793", "--e1", "2.356"});
  CHECK(r.code == evac::cli::kExitOk);
  CHECK(r.out.find("case W1a") != std::string::npos);
  CHECK(r.out.find("time 2.19") != std::string::npos);
}

TEST_CASE("eval writes a trace and replays to the same time") {
  const auto path = std::filesystem::temp_directory_path() / "evac_cli_trace.csv";
  const Run r = run({"eval", "--model", "f2f", "--d", "2", "--e1", "2.2", "--trace", path.string()});
  REQUIRE(r.code == evac::cli::kExitOk);
  CHECK(r.out.find("time 2.200000") != std::string::npos);
  CHECK(r.out.find("replay 2.200000") != std::string::npos);
  CHECK(r.out.find("responder_case F0-4c") != std::string::npos);
  const std::string trace = slurp(path);
  CHECK(trace.find("R1,") != std::string::npos);
  CHECK(trace.find("R2,") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("center leg adds one") {
  const Run r = run({"eval", "--d", "0", "--e1", "1", "--include-center-leg"});
  const Run s = run({"eval", "--d", "0", "--e1", "1"});
  REQUIRE(r.code == 0);
  REQUIRE(s.code == 0);
  const double with = std::stod(r.out.substr(5));
  const double without = std::stod(s.out.substr(5));
  CHECK(with - without == doctest::Approx(1.0));
}

TEST_CASE("bounds") {
  const Run r = run({"bounds", "--d", "1.0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("f2f_lower_bound 3.000000") != std::string::npos);
  const Run z = run({"bounds", "--zeta", "3.141592653589793"});
  CHECK(z.code == 0);
  CHECK(z.out.find("wireless_gap_bound 3.570796") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == evac::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == evac::cli::kExitUsage);
  CHECK(run({"eval", "--d", "1"}).code == evac::cli::kExitUsage);
  CHECK(run({"eval", "--d", "4", "--e1", "0"}).code == evac::cli::kExitUsage);
  CHECK(run({"eval", "--d", "1", "--e1", "0", "--zeta", "2"}).code == evac::cli::kExitUsage);
  CHECK(run({"eval", "--model", "f2f", "--d", "1", "--e1", "0", "--zeta", "d/2"}).code == evac::cli::kExitUsage);
  CHECK(run({"bounds"}).code == evac::cli::kExitUsage);
  CHECK(run({"bounds", "--d", "0"}).code == evac::cli::kExitUsage);
  const Run r = run({"sweep", "--d-step", "-1"});
  CHECK(r.code == evac::cli::kExitUsage);
  CHECK(!r.err.empty());
}

TEST_CASE("verify passes on a small batch") {
  const Run r = run({"verify", "--samples", "50", "--seed", "3"});
  CHECK(r.code == evac::cli::kExitOk);
  CHECK(r.out.find("verify: pass") != std::string::npos);
}

TEST_CASE("sweep writes csv") {
  const auto path = std::filesystem::temp_directory_path() / "evac_cli_sweep.csv";
  const Run r = run({"sweep", "--model", "wireless", "--labeled", "--zeta", "d/2", "--d-step", "0.5", "--exit-step",
                     "0.01", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("points 8") != std::string::npos);
  const std::string csv = slurp(path);
  CHECK(csv.rfind(evac::kCsvHeader, 0) == 0);
  CHECK(csv.find(",d/2,wireless,labeled,") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("compare flags a worse series") {
  const Run worse = run({"compare", "--zeta", "d/2", "--against", "0", "--d-step", "0.5", "--exit-step", "0.01",
                         "--assert-never-worse"});
  CHECK(worse.code == evac::cli::kExitVerifyFailed);
  const Run better = run({"compare", "--zeta", "d", "--against", "0", "--d-step", "0.5", "--exit-step", "0.001",
                          "--assert-never-worse"});
  CHECK(better.code == evac::cli::kExitOk);
}
