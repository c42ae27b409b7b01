/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RINDLER_SWEEP_HPP
#define RINDLER_SWEEP_HPP

#include <string>
#include <vector>

#include "rindler/correlations.hpp"
#include "rindler/states.hpp"

namespace rindler {

/** Library and tool version, also stamped into every CSV header. */
std::string version();

/** Parameter grid: either squeezing directly or acceleration mapped to it. */
struct SweepAxis {
  enum class Kind { Squeezing, Acceleration };

  static SweepAxis squeezing(double alpha_min, double alpha_max, int steps);
  static SweepAxis acceleration(double omega, double accel_min, double accel_max, int steps);

  Kind kind = Kind::Squeezing;
  double alpha_min = 0.0;
  double alpha_max = 3.0;
  double omega = 1.0;
  double accel_min = 0.0;
  double accel_max = 0.0;
  int steps = 121;
};

/** The squeezing values the axis expands to, in ascending order. */
std::vector<double> axis_alphas(const SweepAxis& axis);

struct SweepConfig {
  SweepAxis axis;           // default: squeezing 0..3 in 121 steps
  RecordSettings record;    // truncation, optimizer, tolerances
  int workers = 0;          // 0 = RINDLER_CORR_WORKERS env, then hardware
  std::string out_csv = "sweep.csv";
  bool plots = false;
  std::string plot_dir = ".";
};

struct SweepDiagnostics {
  long long records = 0;
  int max_levels = 0;  // largest occupation cutoff used on the grid
};

struct SweepResult {
  std::vector<CorrelationRecord> records;  // ascending in alpha
  SweepConfig config;                      // echo of the driving config
  std::string tool_version;
  double wall_seconds = 0.0;
  SweepDiagnostics diagnostics;
};

/**
 * Evaluate the full record at every grid point. Points are independent and
 * run on a small worker pool; the result order and content are identical
 * for any worker count. A failure at any point aborts the sweep with the
 * offending squeezing value named in the error.
 */
SweepResult run_sweep(const SweepConfig& config);

/** Effective worker count: requested > 0, else env override, else hardware. */
int resolve_workers(int requested);

/**
 * CSV serialization: a version comment line, a header row naming every
 * record field, then one row per grid point at 12 significant digits with
 * LF line endings. Byte-stable for identical records.
 */
std::string csv_from_records(const std::vector<CorrelationRecord>& records);
void emit_csv(const SweepResult& result, const std::string& path);

/** Six standalone SVG line charts of the swept quantities. */
void emit_plots(const SweepResult& result, const std::string& dir);

/** Single record as JSON; keys mirror the CSV column names. */
std::string record_json(const CorrelationRecord& record);

/** Truncation sensitivity: every scalar at cutoff N vs. doubled cutoff 2N. */
struct ConvergenceStudy {
  struct Row {
    std::string name;
    double base = 0.0;
    double doubled = 0.0;
    double delta = 0.0;
  };
  double alpha = 0.0;
  int n_base = 0;
  int n_doubled = 0;
  std::vector<Row> rows;  // the twelve correlation scalars
  double max_delta = 0.0;
};

ConvergenceStudy convergence_study(const SqueezingParameter& alpha,
                                   const RecordSettings& settings = {});
std::string convergence_table(const ConvergenceStudy& study);

/** Self-check suite: reference series, exhaustive grids, tail sums. */
struct VerificationReport {
  struct Line {
    std::string name;
    double value = 0.0;   // measured discrepancy
    double bound = 0.0;   // admissible discrepancy
    bool pass = false;
  };
  std::vector<Line> lines;
  bool all_pass = false;
};

VerificationReport run_verification();
std::string verification_text(const VerificationReport& report);

}  // namespace rindler

#endif  // RINDLER_SWEEP_HPP
