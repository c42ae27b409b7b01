/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "rindler/oracle.hpp"
#include "rindler/svg.hpp"

namespace rindler {

namespace {

constexpr const char* kVersion = "0.1.0";

// Column order is the file format; never reorder without bumping kVersion.
constexpr const char* kCsvHeader =
    "alpha,S_A,S_R,S_AntiR,I_AR,I_AAntiR,I_RAntiR,J_AR,J_AAntiR,D_AR,D_AAntiR,"
    "EF_RAntiR,EF_RAntiR_alt,theta_AR,phi_AR,theta_AAntiR,phi_AAntiR,N_used";

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::pair<std::string, double>> scalar_fields(const CorrelationRecord& r) {
  return {{"S_A", r.s_a},          {"S_R", r.s_r},
          {"S_AntiR", r.s_antir},  {"I_AR", r.i_ar},
          {"I_AAntiR", r.i_aantir},{"I_RAntiR", r.i_rantir},
          {"J_AR", r.j_ar},        {"J_AAntiR", r.j_aantir},
          {"D_AR", r.d_ar},        {"D_AAntiR", r.d_aantir},
          {"EF_RAntiR", r.ef_rantir}, {"EF_RAntiR_alt", r.ef_rantir_alt}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Error::Code::Io, "cannot open '" + path + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw Error(Error::Code::Io, "short write to '" + path + "'");
  }
}

svg::Series make_series(std::string label, const std::vector<double>& x,
                        std::vector<double> y, std::string color, svg::Stroke stroke,
                        double width = 2.0) {
  svg::Series s;
  s.label = std::move(label);
  s.x = x;
  s.y = std::move(y);
  s.color = std::move(color);
  s.stroke = stroke;
  s.width = width;
  return s;
}

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kRed = "#d62728";
constexpr const char* kBlack = "#222222";
constexpr const char* kGray = "#999999";

}  // namespace

std::string version() { return kVersion; }

SweepAxis SweepAxis::squeezing(double alpha_min, double alpha_max, int steps) {
  if (!(alpha_min >= 0.0) || !(alpha_max > alpha_min)) {
    throw Error(Error::Code::InvalidArgument,
                "squeezing axis needs 0 <= alpha_min < alpha_max");
  }
  if (steps < 2) {
    throw Error(Error::Code::InvalidArgument, "axis needs at least 2 steps");
  }
  SweepAxis a;
  a.kind = Kind::Squeezing;
  a.alpha_min = alpha_min;
  a.alpha_max = alpha_max;
  a.steps = steps;
  return a;
}

SweepAxis SweepAxis::acceleration(double omega, double accel_min, double accel_max, int steps) {
  if (!(omega > 0.0) || !(accel_min > 0.0) || !(accel_max > accel_min)) {
    throw Error(Error::Code::InvalidArgument,
                "acceleration axis needs omega > 0 and 0 < accel_min < accel_max");
  }
  if (steps < 2) {
    throw Error(Error::Code::InvalidArgument, "axis needs at least 2 steps");
  }
  SweepAxis a;
  a.kind = Kind::Acceleration;
  a.omega = omega;
  a.accel_min = accel_min;
  a.accel_max = accel_max;
  a.steps = steps;
  return a;
}

std::vector<double> axis_alphas(const SweepAxis& axis) {
  if (axis.steps < 2) {
    throw Error(Error::Code::InvalidArgument, "axis needs at least 2 steps");
  }
  std::vector<double> alphas(static_cast<std::size_t>(axis.steps));
  if (axis.kind == SweepAxis::Kind::Squeezing) {
    if (!(axis.alpha_min >= 0.0) || !(axis.alpha_max > axis.alpha_min)) {
      throw Error(Error::Code::InvalidArgument,
                  "squeezing axis needs 0 <= alpha_min < alpha_max");
    }
    const double step = (axis.alpha_max - axis.alpha_min) / (axis.steps - 1);
    for (int i = 0; i < axis.steps; ++i) {
      alphas[static_cast<std::size_t>(i)] = axis.alpha_min + step * i;
    }
    alphas.back() = axis.alpha_max;  // exact endpoint, no rounding drift
  } else {
    if (!(axis.omega > 0.0) || !(axis.accel_min > 0.0) || !(axis.accel_max > axis.accel_min)) {
      throw Error(Error::Code::InvalidArgument,
                  "acceleration axis needs omega > 0 and 0 < accel_min < accel_max");
    }
    const double step = (axis.accel_max - axis.accel_min) / (axis.steps - 1);
    for (int i = 0; i < axis.steps; ++i) {
      const double a = (i + 1 == axis.steps) ? axis.accel_max : axis.accel_min + step * i;
      alphas[static_cast<std::size_t>(i)] =
          squeezing_from_acceleration(AccelerationSpec{axis.omega, a}).value();
    }
  }
  return alphas;
}

int resolve_workers(int requested) {
  if (requested < 0) {
    throw Error(Error::Code::InvalidArgument, "worker count must be nonnegative");
  }
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RINDLER_CORR_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) {
      return static_cast<int>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepResult run_sweep(const SweepConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> alphas = axis_alphas(config.axis);
  const std::size_t n = alphas.size();

  SweepResult result;
  result.config = config;
  result.tool_version = kVersion;
  result.records.resize(n);

  // Independent points, deterministic per point; order restored by index,
  // so the output bytes cannot depend on the worker count.
  const int workers =
      std::max(1, std::min<int>(resolve_workers(config.workers), static_cast<int>(n)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  Error::Code err_code = Error::Code::Numerical;
  std::string err_what;

  const auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        result.records[i] =
            assemble_record(SqueezingParameter(alphas[i]), config.record);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) {
          err_code = e.code();
          err_what = "sweep point alpha=" + fmt12(alphas[i]) + ": " + e.what();
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) {
          err_code = Error::Code::Numerical;
          err_what = "sweep point alpha=" + fmt12(alphas[i]) + ": " + e.what();
        }
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) {
    throw Error(err_code, err_what);
  }

  result.diagnostics.records = static_cast<long long>(n);
  for (const CorrelationRecord& r : result.records) {
    result.diagnostics.max_levels = std::max(result.diagnostics.max_levels, r.n_used);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::string csv_from_records(const std::vector<CorrelationRecord>& records) {
  std::string out;
  out.reserve(records.size() * 256 + 256);
  out += "# rindler-corr v";
  out += kVersion;
  out += "\n";
  out += kCsvHeader;
  out += "\n";
  for (const CorrelationRecord& r : records) {
    out += fmt12(r.alpha);
    for (const auto& [name, value] : scalar_fields(r)) {
      (void)name;
      out += ",";
      out += fmt12(value);
    }
    for (double angle : {r.theta_ar, r.phi_ar, r.theta_aantir, r.phi_aantir}) {
      out += ",";
      out += fmt12(angle);
    }
    out += ",";
    out += std::to_string(r.n_used);
    out += "\n";
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  write_text_file(path, csv_from_records(result.records));
}

void emit_plots(const SweepResult& result, const std::string& dir) {
  const std::vector<CorrelationRecord>& rs = result.records;
  if (rs.empty()) {
    throw Error(Error::Code::InvalidArgument, "no records to plot");
  }
  std::vector<double> x;
  x.reserve(rs.size());
  for (const CorrelationRecord& r : rs) x.push_back(r.alpha);
  const auto col = [&](double CorrelationRecord::*field) {
    std::vector<double> v;
    v.reserve(rs.size());
    for (const CorrelationRecord& r : rs) v.push_back(r.*field);
    return v;
  };

  // The two qubit-mode informations must add up to twice the qubit entropy;
  // re-check on the data before rendering the flat sum curve.
  std::vector<double> info_sum(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    info_sum[i] = rs[i].i_ar + rs[i].i_aantir;
    if (std::abs(info_sum[i] - 2.0 * rs[i].s_a) > 1e-6) {
      throw Error(Error::Code::Numerical,
                  "information conservation violated at alpha=" + fmt12(rs[i].alpha));
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(Error::Code::Io, "cannot create plot directory '" + dir + "'");
  }
  const auto path_of = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };

  {
    svg::Chart c;
    c.title = "Subsystem entropies";
    c.x_label = "squeezing parameter";
    c.y_label = "entropy (bits)";
    c.series.push_back(make_series("S(A)", x, col(&CorrelationRecord::s_a), kBlack,
                                   svg::Stroke::Dotted));
    c.series.push_back(make_series("S(R)", x, col(&CorrelationRecord::s_r), kBlue,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("S(AntiR)", x, col(&CorrelationRecord::s_antir), kRed,
                                   svg::Stroke::Dashed));
    write_text_file(path_of("entropies.svg"), svg::render(c));
  }
  {
    svg::Chart c;
    c.title = "Mutual information";
    c.x_label = "squeezing parameter";
    c.y_label = "mutual information (bits)";
    c.series.push_back(make_series("I(A:R)", x, col(&CorrelationRecord::i_ar), kBlue,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("I(A:AntiR)", x, col(&CorrelationRecord::i_aantir), kRed,
                                   svg::Stroke::Dashed));
    c.series.push_back(make_series("I(R:AntiR)", x, col(&CorrelationRecord::i_rantir), kBlack,
                                   svg::Stroke::Dotted));
    c.series.push_back(
        make_series("I(A:R)+I(A:AntiR)", x, info_sum, kGray, svg::Stroke::Solid, 1.0));
    write_text_file(path_of("mutual_information.svg"), svg::render(c));
  }
  {
    svg::Chart c;
    c.title = "Alice-Rob correlations";
    c.x_label = "squeezing parameter";
    c.y_label = "correlations (bits)";
    c.series.push_back(make_series("J(A:R)", x, col(&CorrelationRecord::j_ar), kBlue,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("D(A:R)", x, col(&CorrelationRecord::d_ar), kBlack,
                                   svg::Stroke::Dotted));
    c.series.push_back(make_series("I(A:R)", x, col(&CorrelationRecord::i_ar), kRed,
                                   svg::Stroke::Dashed));
    write_text_file(path_of("alice_rob.svg"), svg::render(c));
  }
  {
    svg::Chart c;
    c.title = "Alice-AntiRob correlations";
    c.x_label = "squeezing parameter";
    c.y_label = "correlations (bits)";
    c.series.push_back(make_series("J(A:AntiR)", x, col(&CorrelationRecord::j_aantir), kBlue,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("D(A:AntiR)", x, col(&CorrelationRecord::d_aantir), kBlack,
                                   svg::Stroke::Dotted));
    c.series.push_back(make_series("I(A:AntiR)", x, col(&CorrelationRecord::i_aantir), kRed,
                                   svg::Stroke::Dashed));
    write_text_file(path_of("alice_antirob.svg"), svg::render(c));
  }
  {
    svg::Chart c;
    c.title = "Correlations of both mode pairs";
    c.x_label = "squeezing parameter";
    c.y_label = "correlations (bits)";
    c.series.push_back(make_series("J(A:R)", x, col(&CorrelationRecord::j_ar), kBlue,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("D(A:R)", x, col(&CorrelationRecord::d_ar), kBlue,
                                   svg::Stroke::Dotted));
    c.series.push_back(make_series("I(A:R)", x, col(&CorrelationRecord::i_ar), kBlue,
                                   svg::Stroke::Dashed));
    c.series.push_back(make_series("J(A:AntiR)", x, col(&CorrelationRecord::j_aantir), kRed,
                                   svg::Stroke::Solid));
    c.series.push_back(make_series("D(A:AntiR)", x, col(&CorrelationRecord::d_aantir), kRed,
                                   svg::Stroke::Dotted));
    c.series.push_back(make_series("I(A:AntiR)", x, col(&CorrelationRecord::i_aantir), kRed,
                                   svg::Stroke::Dashed));
    write_text_file(path_of("correlations_compared.svg"), svg::render(c));
  }
  {
    svg::Chart c;
    c.title = "Entanglement of formation";
    c.x_label = "squeezing parameter";
    c.y_label = "entanglement of formation (bits)";
    c.series.push_back(make_series("E_F(R:AntiR)", x, col(&CorrelationRecord::ef_rantir),
                                   kBlue, svg::Stroke::Solid));
    c.series.push_back(make_series("complementary route", x,
                                   col(&CorrelationRecord::ef_rantir_alt), kRed,
                                   svg::Stroke::Dashed));
    write_text_file(path_of("entanglement_of_formation.svg"), svg::render(c));
  }
}

std::string record_json(const CorrelationRecord& r) {
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  for (const auto& [name, value] : scalar_fields(r)) j[name] = value;
  j["theta_AR"] = r.theta_ar;
  j["phi_AR"] = r.phi_ar;
  j["theta_AAntiR"] = r.theta_aantir;
  j["phi_AAntiR"] = r.phi_aantir;
  j["N_used"] = r.n_used;
  return j.dump(2) + "\n";
}

ConvergenceStudy convergence_study(const SqueezingParameter& alpha,
                                   const RecordSettings& settings) {
  ConvergenceStudy study;
  study.alpha = alpha.value();
  study.n_base = settings.trunc.resolve(alpha);
  study.n_doubled = 2 * study.n_base;

  RecordSettings base = settings;
  base.trunc = TruncationPolicy::fixed(study.n_base);
  RecordSettings doubled = settings;
  doubled.trunc = TruncationPolicy::fixed(study.n_doubled);

  const CorrelationRecord rb = assemble_record(alpha, base);
  const CorrelationRecord rd = assemble_record(alpha, doubled);

  const auto fb = scalar_fields(rb);
  const auto fd = scalar_fields(rd);
  for (std::size_t i = 0; i < fb.size(); ++i) {
    ConvergenceStudy::Row row;
    row.name = fb[i].first;
    row.base = fb[i].second;
    row.doubled = fd[i].second;
    row.delta = std::abs(row.base - row.doubled);
    study.max_delta = std::max(study.max_delta, row.delta);
    study.rows.push_back(row);
  }
  return study;
}

std::string convergence_table(const ConvergenceStudy& study) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "alpha = %.12g, cutoff N = %d vs 2N = %d\n", study.alpha,
                study.n_base, study.n_doubled);
  out += line;
  std::snprintf(line, sizeof line, "%-14s %22s %22s %12s\n", "quantity", "N", "2N", "|delta|");
  out += line;
  for (const ConvergenceStudy::Row& r : study.rows) {
    std::snprintf(line, sizeof line, "%-14s %22.15g %22.15g %12.3e\n", r.name.c_str(), r.base,
                  r.doubled, r.delta);
    out += line;
  }
  std::snprintf(line, sizeof line, "max |delta| = %.3e\n", study.max_delta);
  out += line;
  out +=
      "note: measurement angles are reported by the sweep but not compared here;\n"
      "the conditional entropy is azimuthally flat at the optimum, so the angles\n"
      "are not pinned down to this precision.\n";
  return out;
}

VerificationReport run_verification() {
  VerificationReport report;
  report.all_pass = true;
  const auto add = [&](const std::string& name, double value, double bound) {
    VerificationReport::Line l;
    l.name = name;
    l.value = value;
    l.bound = bound;
    l.pass = value <= bound;
    report.all_pass = report.all_pass && l.pass;
    report.lines.push_back(l);
  };

  const double half_tanh = std::atanh(0.5);
  const std::vector<double> spots = {0.0, 0.25, half_tanh, 1.0, 2.0};
  const Tolerances tol;

  for (double a : spots) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    const std::string tag = " @ alpha=" + fmt12(a);
    add("series qubit+mode entrywise" + tag, compare_rho_ar_series(alpha, n).max_abs_diff,
        1e-12);
    add("series qubit+counter-mode entrywise" + tag,
        compare_rho_aantir_series(alpha, n).max_abs_diff, 1e-12);
    add("series mode-pair entrywise" + tag, compare_rho_rantir_series(alpha, n).max_abs_diff,
        1e-12);
  }

  for (double a : spots) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    const BranchAmplitudes b = branch_amplitudes(alpha, n);
    const OptimizerSettings opt;
    const AliceMeasurementScan scan_r = scan_alice_rob(b, tol);
    const AliceMeasurementScan scan_w = scan_alice_antirob(b, tol);
    const double jr = classical_correlations(scan_r, opt).j_bits;
    const double jw = classical_correlations(scan_w, opt).j_bits;
    const std::string tag = " @ alpha=" + fmt12(a);
    add("direction grid vs refined, qubit+mode" + tag,
        std::abs(grid_search_j(scan_r, 1.0).j_bits - jr), 1e-6);
    add("direction grid vs refined, qubit+counter-mode" + tag,
        std::abs(grid_search_j(scan_w, 1.0).j_bits - jw), 1e-6);
  }

  for (double a : {0.25, 1.0, 2.0, 3.0}) {
    const SqueezingParameter alpha(a);
    const std::string tag = " @ alpha=" + fmt12(a);
    const double v = vacuum_tail_weight(alpha, 20);
    const double vb = vacuum_tail_weight_brute(alpha, 20);
    const double o = one_particle_tail_weight(alpha, 20);
    const double ob = one_particle_tail_weight_brute(alpha, 20);
    add("vacuum tail closed vs summed" + tag, std::abs(v - vb) / std::max(v, 1e-300), 1e-12);
    add("one-particle tail closed vs summed" + tag, std::abs(o - ob) / std::max(o, 1e-300),
        1e-12);
  }

  for (double a : spots) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    const DensityMatrix marg = unruh_thermal_marginal(alpha, n, tol);
    const std::string tag = " @ alpha=" + fmt12(a);
    if (a == 0.0) {
      add("thermal marginal ground weight" + tag, std::abs(marg.at(0, 0) - 1.0), 1e-12);
      continue;
    }
    const double x = std::tanh(a) * std::tanh(a);
    double worst = 0.0;
    for (int k = 0; k + 1 <= n; ++k) {
      const double pk = marg.at(k, k);
      const double pk1 = marg.at(k + 1, k + 1);
      if (pk < 1e-200) break;  // below this the ratio is pure rounding noise
      worst = std::max(worst, std::abs(pk1 / pk - x));
    }
    add("thermal occupation ratio vs tanh^2" + tag, worst, 1e-12);
  }

  return report;
}

std::string verification_text(const VerificationReport& report) {
  std::string out;
  char line[200];
  for (const VerificationReport::Line& l : report.lines) {
    std::snprintf(line, sizeof line, "%s  %-55s measured %.3e  bound %.3e\n",
                  l.pass ? "PASS" : "FAIL", l.name.c_str(), l.value, l.bound);
    out += line;
  }
  std::snprintf(line, sizeof line, "%s: %zu checks\n",
                report.all_pass ? "ALL PASS" : "FAILURES PRESENT", report.lines.size());
  out += line;
  return out;
}

}  // namespace rindler
