#include "evac/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "evac/face_to_face.hpp"
#include "evac/wireless.hpp"

namespace evac {

std::string Series::label() const {
  return std::string(to_string(model)) + (labeled ? "/labeled" : "/unlabeled") + "/zeta=" + zeta.label();
}

void SweepConfig::validate() const {
  if (!(d_step > 0.0)) throw std::invalid_argument("sweep: d step must be positive");
  if (!(exit_step > 0.0)) throw std::invalid_argument("sweep: exit step must be positive");
  if (!(d_min >= 0.0) || !(d_max <= kPi + kAngularTol) || d_min > d_max) {
    throw std::invalid_argument("sweep: d range must satisfy 0 <= d_min <= d_max <= pi");
  }
  if (workers < 1) throw std::invalid_argument("sweep: need at least one worker");
}

std::vector<double> d_grid(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<double> grid;
  const double hi = std::min(cfg.d_max, kPi);
  for (std::size_t k = 0;; ++k) {
    const double d = cfg.d_min + static_cast<double>(k) * cfg.d_step;
    if (d >= hi - 1e-9) break;
    grid.push_back(d);
  }
  grid.push_back(hi);
  return grid;
}

WorstCase worst_case(const Series& series, double d, double exit_step, double tol) {
  if (series.model == Model::Wireless) return worst_wireless(d, series.zeta, series.labeled, exit_step);
  F2FVariant v = F2FVariant::Labeled;
  if (!series.labeled) {
    switch (series.zeta.kind) {
      case ZetaPolicy::Kind::Zero: v = F2FVariant::SameStart; break;
      case ZetaPolicy::Kind::Full: v = F2FVariant::DiffStart; break;
      default: throw WrongEvaluatorError("sweep: unlabeled face-to-face needs zeta = 0 or zeta = d");
    }
  }
  return worst_f2f(d, v, series.zeta, exit_step, tol);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, const Series& series) {
  const std::vector<double> grid = d_grid(cfg);
  std::vector<SweepRecord> out(grid.size());
  const double leg = cfg.include_center_leg ? 1.0 : 0.0;
  const auto cell = [&](std::size_t i) {
    const WorstCase w = worst_case(series, grid[i], cfg.exit_step, cfg.tol);
    out[i] = {grid[i], series.zeta.label(), series.model, series.labeled, w.time + leg, w.argmax_e1, w.case_tag};
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) cell(i);
    return out;
  }
  // Each worker owns every workers-th cell; results land in fixed slots.
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < grid.size(); i += workers) cell(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

CurvePoint min_over_d(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("min_over_d: no records");
  const auto it = std::min_element(records.begin(), records.end(),
                                   [](const SweepRecord& a, const SweepRecord& b) { return a.worst_time < b.worst_time; });
  return {it->d, it->worst_time};
}

std::vector<DInterval> crossing_intervals(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b,
                                          double margin) {
  if (a.size() != b.size()) throw std::invalid_argument("crossing_intervals: grids differ in size");
  std::vector<DInterval> out;
  bool open = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].d - b[i].d) > 1e-12) throw std::invalid_argument("crossing_intervals: grids differ");
    const bool worse = a[i].worst_time > b[i].worst_time + margin;
    if (worse && !open) {
      out.push_back({a[i].d, a[i].d});
      open = true;
    } else if (worse) {
      out.back().hi = a[i].d;
    } else {
      open = false;
    }
  }
  return out;
}

std::vector<double> transition_points(const std::vector<SweepRecord>& records) {
  std::vector<double> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].case_tag != records[i - 1].case_tag) out.push_back(records[i].d);
  }
  return out;
}

std::vector<double> local_minima(const std::vector<SweepRecord>& records, double margin) {
  std::vector<double> out;
  std::size_t i = 1;
  while (i + 1 < records.size()) {
    // Extend over a plateau of equal values.
    std::size_t j = i;
    while (j + 1 < records.size() && std::abs(records[j + 1].worst_time - records[i].worst_time) <= margin) ++j;
    if (j + 1 >= records.size()) break;
    const double v = records[i].worst_time;
    if (records[i - 1].worst_time > v + margin && records[j + 1].worst_time > v + margin) out.push_back(records[i].d);
    i = j + 1;
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  char buf[256];
  for (const SweepRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.6f,%s,%s,%s,%.6f,%.6f,%s\n", r.d, r.zeta_policy.c_str(),
                  std::string(to_string(r.model)).c_str(), r.labeled ? "labeled" : "unlabeled", r.worst_time,
                  r.argmax_e1.theta(), std::string(to_string(r.case_tag)).c_str());
    out << buf;
  }
}

}  // namespace evac
