#include "evac/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "evac/bounds.hpp"
#include "evac/replay.hpp"
#include "evac/scenario.hpp"
#include "evac/sweep.hpp"

namespace evac::cli {
namespace {

struct Options {
  std::string model = "wireless";
  bool labeled = false;
  std::string zeta = "0";
  std::string against = "0";
  double d = 0.0;
  double e1 = 0.0;
  double d_step = 0.01;
  double exit_step = 0.001;
  double tol = kDefaultMeetTol;
  bool center_leg = false;
  std::string out_path;
  std::string trace_path;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  bool assert_never_worse = false;
  std::optional<double> bound_d;
  std::optional<double> bound_zeta;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Model parse_model(const std::string& m) { return m == "f2f" ? Model::FaceToFace : Model::Wireless; }

void add_series_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "wireless or f2f")->check(CLI::IsMember({"wireless", "f2f"}));
  cmd->add_flag("--labeled", o.labeled, "exits carry labels");
  cmd->add_option("--zeta", o.zeta, "0, d, d/2, <k>d or radians");
  cmd->add_option("--tol", o.tol, "catch-up equation tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--include-center-leg", o.center_leg, "add the unit center-to-perimeter leg");
}

void add_sweep_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--d-step", o.d_step, "grid step in d")->check(CLI::PositiveNumber);
  cmd->add_option("--exit-step", o.exit_step, "grid step in exit position")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

SweepConfig sweep_config(const Options& o) {
  SweepConfig cfg;
  cfg.d_step = o.d_step;
  cfg.exit_step = o.exit_step;
  cfg.include_center_leg = o.center_leg;
  cfg.workers = o.jobs;
  cfg.tol = o.tol;
  return cfg;
}

Series series_of(const Options& o, const std::string& zeta) {
  return {parse_model(o.model), o.labeled, ZetaPolicy::parse(zeta)};
}

void write_csv_file(const std::string& path, const std::vector<SweepRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  write_csv(f, records);
}

int cmd_eval(const Options& o, std::ostream& out) {
  Scenario s;
  s.model = parse_model(o.model);
  s.labeled = o.labeled;
  s.d = o.d;
  s.zeta = ZetaPolicy::parse(o.zeta).resolve(o.d);
  s.e1 = ArcPos{o.e1};
  const EvacResult r = evaluate(s, o.tol);
  const double leg = o.center_leg ? 1.0 : 0.0;
  out << "time " << fmt(r.time_from_perimeter + leg) << '\n';
  out << "case " << to_string(r.case_tag) << '\n';
  out << "finder_case " << to_string(r.finder_tag) << '\n';
  if (r.responder_tag) out << "responder_case " << to_string(*r.responder_tag) << '\n';
  out << "x " << fmt(r.discovery_arc_x) << '\n';
  out << "r1_exit " << fmt(r.r1_exit_time + leg) << '\n';
  out << "r2_exit " << fmt(r.r2_exit_time + leg) << '\n';
  if (r.simultaneous) out << "simultaneous\n";
  if (r.printed_formula_differs) out << "printed_formula " << fmt(r.printed_formula_value + leg) << '\n';
  if (!o.trace_path.empty()) {
    const ReplayResult rep = replay(s);
    std::ofstream f(o.trace_path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + o.trace_path + " for writing");
    write_trace(f, rep);
    out << "replay " << fmt(rep.makespan + leg) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Series series = series_of(o, o.zeta);
  const std::vector<SweepRecord> records = run_sweep(sweep_config(o), series);
  const CurvePoint m = min_over_d(records);
  out << "series " << series.label() << '\n';
  out << "points " << records.size() << '\n';
  out << "min " << fmt(m.time) << " at d=" << fmt(m.d) << '\n';
  out << "transitions";
  for (double d : transition_points(records)) out << ' ' << fmt(d);
  out << '\n';
  if (!o.out_path.empty()) {
    write_csv_file(o.out_path, records);
  } else {
    write_csv(out, records);
  }
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  if (!o.bound_d && !o.bound_zeta) throw UsageError("bounds needs --d or --zeta");
  const double leg = 0.0;
  if (o.bound_d) {
    const BoundResult b = f2f_lower_bound(*o.bound_d);
    out << "f2f_lower_bound " << fmt(b.value + leg) << " (" << b.formula_text << ", " << to_string(b.regime) << ")\n";
  }
  if (o.bound_zeta) {
    const BoundResult b = wireless_gap_bound(*o.bound_zeta);
    out << "wireless_gap_bound " << fmt(b.value) << " (" << b.formula_text << ")\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  bool ok = true;
  double worst = 0.0;
  for (OracleTarget t : kOracleTargets) {
    const OracleSummary s = check_oracle(t, o.samples, o.seed);
    worst = std::max(worst, s.max_deviation);
    ok = ok && s.ok();
    out << to_string(t) << ": samples " << s.samples << ", max deviation " << s.max_deviation << ", mismatches "
        << s.mismatches << ", invalid " << s.invalid << ", agreement failures " << s.agreement_failures;
    if (s.printed_formula_differs > 0) out << ", printed formula differs in " << s.printed_formula_differs;
    out << '\n';
    for (const std::string& n : s.notes) out << "  " << n << '\n';
  }
  out << "max deviation " << worst << '\n';
  out << (ok ? "verify: pass" : "verify: FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_table1(const Options& o, std::ostream& out) {
  const SweepConfig cfg = sweep_config(o);
  std::vector<SweepRecord> rows;
  out << "zeta,labeling,d_min,time_min\n";
  for (const bool labeled : {false, true}) {
    for (const char* z : {"0", "d", "d/2"}) {
      const Series series{Model::Wireless, labeled, ZetaPolicy::parse(z)};
      const std::vector<SweepRecord> records = run_sweep(cfg, series);
      const CurvePoint m = min_over_d(records);
      out << z << ',' << (labeled ? "labeled" : "unlabeled") << ',' << fmt(m.d) << ',' << fmt(m.time) << '\n';
      const auto it = std::find_if(records.begin(), records.end(), [&](const SweepRecord& r) { return r.d == m.d; });
      rows.push_back(*it);
    }
  }
  if (!o.out_path.empty()) write_csv_file(o.out_path, rows);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const SweepConfig cfg = sweep_config(o);
  const Series a = series_of(o, o.zeta);
  const Series b = series_of(o, o.against);
  const std::vector<SweepRecord> ra = run_sweep(cfg, a);
  const std::vector<SweepRecord> rb = run_sweep(cfg, b);
  const std::vector<DInterval> worse = crossing_intervals(ra, rb);
  out << a.label() << " worse than " << b.label() << " on";
  if (worse.empty()) out << " no grid point";
  for (const DInterval& i : worse) out << " [" << fmt(i.lo) << ", " << fmt(i.hi) << "]";
  out << '\n';
  for (const auto* s : {&ra, &rb}) {
    out << s->front().zeta_policy << " local minima";
    for (double d : local_minima(*s)) out << ' ' << fmt(d);
    out << "; transitions";
    for (double d : transition_points(*s)) out << ' ' << fmt(d);
    out << '\n';
  }
  if (!o.out_path.empty()) {
    std::vector<SweepRecord> both = ra;
    both.insert(both.end(), rb.begin(), rb.end());
    write_csv_file(o.out_path, both);
  }
  if (o.assert_never_worse && !worse.empty()) {
    out << "compare: FAIL\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-robot, two-exit disk evacuation simulator"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate one scenario");
  add_series_flags(eval, o);
  eval->add_option("--d", o.d, "arc distance between the exits")->required();
  eval->add_option("--e1", o.e1, "position of the first exit")->required();
  eval->add_option("--trace", o.trace_path, "write the replayed trajectories here");

  auto* sweep = app.add_subcommand("sweep", "worst case over exit placements for every d");
  add_series_flags(sweep, o);
  add_sweep_flags(sweep, o);
  sweep->add_option("--out", o.out_path, "CSV output path");

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
  bounds->add_option("--d", o.bound_d, "face-to-face lower bound at this d");
  bounds->add_option("--zeta", o.bound_zeta, "wireless bound when the start gap exceeds d");

  auto* verify = app.add_subcommand("verify", "compare closed forms against kinematic replay");
  verify->add_option("--samples", o.samples, "random scenarios per evaluator");
  verify->add_option("--seed", o.seed, "random seed");

  auto* table1 = app.add_subcommand("table1", "minimum worst-case time over d for the wireless series");
  add_sweep_flags(table1, o);
  table1->add_flag("--include-center-leg", o.center_leg, "add the unit center-to-perimeter leg");
  table1->add_option("--out", o.out_path, "CSV output path");

  auto* compare = app.add_subcommand("compare", "compare two ζ rules of the same model");
  add_series_flags(compare, o);
  add_sweep_flags(compare, o);
  compare->add_option("--against", o.against, "ζ rule of the second series");
  compare->add_flag("--assert-never-worse", o.assert_never_worse, "fail if the first series is ever worse");
  compare->add_option("--out", o.out_path, "CSV output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*table1) return cmd_table1(o, out);
    if (*compare) return cmd_compare(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace evac::cli
