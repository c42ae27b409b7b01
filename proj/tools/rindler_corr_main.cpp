/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rindler_corr.h"

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int report_failure(rc_status status) {
  std::fprintf(stderr, "error (%s): %s\n", rc_status_name(status), rc_last_error());
  // Misuse of the interface is a usage problem; everything else is runtime.
  return status == RC_ERR_INVALID_ARGUMENT ? 2 : 1;
}

/** A flag that forwards into the config only when the user provided it. */
struct Forward {
  CLI::Option* option = nullptr;
  std::string key;
  std::function<std::string()> value;
};

struct ConfiguredCommand {
  std::string config_file;
  CLI::Option* config_option = nullptr;
  std::vector<Forward> forwards;

  void add_config_flag(CLI::App* cmd) {
    config_option =
        cmd->add_option("--config", config_file,
                        "key=value configuration file; explicit flags override it");
  }

  /** File first, then flags, so the command line wins on conflicts. */
  rc_status apply(rc_config* cfg) const {
    if (config_option != nullptr && config_option->count() > 0) {
      const rc_status st = rc_config_load_file(cfg, config_file.c_str());
      if (st != RC_OK) return st;
    }
    for (const Forward& f : forwards) {
      if (f.option->count() == 0) continue;
      const rc_status st = rc_config_set(cfg, f.key.c_str(), f.value().c_str());
      if (st != RC_OK) return st;
    }
    return RC_OK;
  }
};

struct ConfigHandle {
  rc_config* ptr = rc_config_new();
  ~ConfigHandle() { rc_config_free(ptr); }
};

struct StringOut {
  char* ptr = nullptr;
  ~StringOut() { rc_string_free(ptr); }
};

std::string config_string(const rc_config* cfg, const char* key) {
  StringOut s;
  if (rc_config_get(cfg, key, &s.ptr) != RC_OK) return {};
  return s.ptr;
}

int run_sweep_command(const ConfiguredCommand& cc) {
  ConfigHandle cfg;
  rc_status st = cc.apply(cfg.ptr);
  if (st != RC_OK) return report_failure(st);

  rc_result* raw = nullptr;
  st = rc_sweep_run(cfg.ptr, &raw);
  if (st != RC_OK) return report_failure(st);
  struct ResultOut {
    rc_result* ptr;
    ~ResultOut() { rc_result_free(ptr); }
  } result{raw};

  const std::string out_path = config_string(cfg.ptr, "out");
  st = rc_result_write_csv(result.ptr, out_path.c_str());
  if (st != RC_OK) return report_failure(st);
  std::printf("wrote %s (%zu points, %.1fs)\n", out_path.c_str(),
              rc_result_size(result.ptr), rc_result_wall_seconds(result.ptr));

  if (config_string(cfg.ptr, "plots") == "true") {
    const std::string dir = config_string(cfg.ptr, "plot-dir");
    st = rc_result_write_plots(result.ptr, dir.c_str());
    if (st != RC_OK) return report_failure(st);
    std::printf("wrote 6 charts to %s\n", dir.c_str());
  }
  return 0;
}

int run_point_command(const ConfiguredCommand& cc, double alpha) {
  ConfigHandle cfg;
  rc_status st = cc.apply(cfg.ptr);
  if (st != RC_OK) return report_failure(st);
  StringOut json;
  st = rc_point_json(cfg.ptr, alpha, &json.ptr);
  if (st != RC_OK) return report_failure(st);
  std::fputs(json.ptr, stdout);
  return 0;
}

int run_convergence_command(const ConfiguredCommand& cc, double alpha) {
  ConfigHandle cfg;
  rc_status st = cc.apply(cfg.ptr);
  if (st != RC_OK) return report_failure(st);
  StringOut table;
  st = rc_convergence_text(cfg.ptr, alpha, &table.ptr);
  if (st != RC_OK) return report_failure(st);
  std::fputs(table.ptr, stdout);
  return 0;
}

int run_verify_command() {
  StringOut report;
  const rc_status st = rc_verify(&report.ptr);
  if (report.ptr != nullptr) std::fputs(report.ptr, stdout);
  if (st == RC_OK) return 0;
  if (st == RC_ERR_VERIFY_FAILED) return 1;
  return report_failure(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rindler-corr: correlation structure of a maximally entangled two-mode "
      "field state probed by one inertial and two counter-accelerated "
      "observers, swept over the squeezing parameter"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(rc_version()); });

  // --- sweep ---------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "evaluate the grid; write CSV and optional SVG charts");
  ConfiguredCommand sweep_cc;
  double alpha_min = 0.0, alpha_max = 3.0, omega = 1.0, accel_min = 0.0, accel_max = 0.0;
  double tail_eps = 1e-12;
  int steps = 121, nmax = 4096, workers = 0;
  std::string out = "sweep.csv", plot_dir = ".";
  bool plots = false;
  sweep_cc.add_config_flag(sweep);
  sweep_cc.forwards = {
      {sweep->add_option("--alpha-min", alpha_min, "lower squeezing bound (default 0)"),
       "alpha-min", [&] { return fmt17(alpha_min); }},
      {sweep->add_option("--alpha-max", alpha_max, "upper squeezing bound (default 3)"),
       "alpha-max", [&] { return fmt17(alpha_max); }},
      {sweep->add_option("--steps", steps, "grid points (default 121)"), "steps",
       [&] { return std::to_string(steps); }},
      {sweep->add_option("--omega", omega, "mode frequency for the acceleration axis"),
       "omega", [&] { return fmt17(omega); }},
      {sweep->add_option("--accel-min", accel_min, "lower proper acceleration"), "accel-min",
       [&] { return fmt17(accel_min); }},
      {sweep->add_option("--accel-max", accel_max, "upper proper acceleration"), "accel-max",
       [&] { return fmt17(accel_max); }},
      {sweep->add_option("--nmax", nmax, "occupation-level cap (default 4096)"), "nmax",
       [&] { return std::to_string(nmax); }},
      {sweep->add_option("--tail-eps", tail_eps,
                         "discarded probability weight per branch (default 1e-12)"),
       "tail-eps", [&] { return fmt17(tail_eps); }},
      {sweep->add_option("--out", out, "CSV output path (default sweep.csv)"), "out",
       [&] { return out; }},
      {sweep->add_flag("--plots", plots, "also write the six SVG charts"), "plots",
       [&] { return plots ? std::string("true") : std::string("false"); }},
      {sweep->add_option("--plot-dir", plot_dir, "chart directory (default .)"), "plot-dir",
       [&] { return plot_dir; }},
      {sweep->add_option("--workers", workers,
                         "parallel grid workers (default: RINDLER_CORR_WORKERS, then hardware)"),
       "workers", [&] { return std::to_string(workers); }},
  };

  // --- point ---------------------------------------------------------
  auto* point = app.add_subcommand("point", "single squeezing value, printed as JSON");
  ConfiguredCommand point_cc;
  double point_alpha = 0.0, point_tail = 1e-12;
  int point_nmax = 4096;
  point->add_option("--alpha", point_alpha, "squeezing value")->required();
  point_cc.add_config_flag(point);
  point_cc.forwards = {
      {point->add_option("--nmax", point_nmax, "occupation-level cap (default 4096)"), "nmax",
       [&] { return std::to_string(point_nmax); }},
      {point->add_option("--tail-eps", point_tail,
                         "discarded probability weight per branch (default 1e-12)"),
       "tail-eps", [&] { return fmt17(point_tail); }},
  };

  // --- convergence ---------------------------------------------------
  auto* conv = app.add_subcommand("convergence",
                                  "cutoff-doubling study at one squeezing value");
  ConfiguredCommand conv_cc;
  double conv_alpha = 0.0, conv_tail = 1e-12;
  int conv_nmax = 4096;
  conv->add_option("--alpha", conv_alpha, "squeezing value")->required();
  conv_cc.add_config_flag(conv);
  conv_cc.forwards = {
      {conv->add_option("--nmax", conv_nmax, "occupation-level cap (default 4096)"), "nmax",
       [&] { return std::to_string(conv_nmax); }},
      {conv->add_option("--tail-eps", conv_tail,
                        "discarded probability weight per branch (default 1e-12)"),
       "tail-eps", [&] { return fmt17(conv_tail); }},
  };

  // --- verify --------------------------------------------------------
  app.add_subcommand("verify",
                     "run the self-check suite; nonzero exit on any failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sweep->parsed()) return run_sweep_command(sweep_cc);
  if (point->parsed()) return run_point_command(point_cc, point_alpha);
  if (conv->parsed()) return run_convergence_command(conv_cc, conv_alpha);
  return run_verify_command();
}
