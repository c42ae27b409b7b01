/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler_corr.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "rindler/sweep.hpp"

namespace {

thread_local std::string g_last_error;

rc_status map_code(rindler::Error::Code code) {
  switch (code) {
    case rindler::Error::Code::InvalidArgument: return RC_ERR_INVALID_ARGUMENT;
    case rindler::Error::Code::TruncationOverflow: return RC_ERR_TRUNCATION_OVERFLOW;
    case rindler::Error::Code::Numerical: return RC_ERR_NUMERICAL;
    case rindler::Error::Code::Io: return RC_ERR_IO;
    case rindler::Error::Code::VerifyFailed: return RC_ERR_VERIFY_FAILED;
  }
  return RC_ERR_UNKNOWN;
}

template <typename Fn>
rc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const rindler::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RC_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return RC_ERR_UNKNOWN;
  }
}

rc_status fail_invalid(const std::string& message) {
  g_last_error = message;
  return RC_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

rc_status return_string(const std::string& s, char** out) {
  *out = copy_string(s);
  if (*out == nullptr) {
    g_last_error = "out of memory";
    return RC_ERR_UNKNOWN;
  }
  return RC_OK;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw rindler::Error(rindler::Error::Code::InvalidArgument,
                         "value '" + value + "' for key '" + key + "' is not a number");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || v < -1000000000L || v > 1000000000L) {
    throw rindler::Error(rindler::Error::Code::InvalidArgument,
                         "value '" + value + "' for key '" + key + "' is not an integer");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw rindler::Error(rindler::Error::Code::InvalidArgument,
                       "value '" + value + "' for key '" + key + "' is not a boolean");
}

}  // namespace

struct rc_config {
  double alpha_min = 0.0;
  double alpha_max = 3.0;
  int steps = 121;
  bool accel_axis = false;
  double omega = 0.0;
  double accel_min = 0.0;
  double accel_max = 0.0;
  int nmax = 4096;
  double tail_eps = 1e-12;
  std::string out = "sweep.csv";
  bool plots = false;
  std::string plot_dir = ".";
  int workers = 0;

  rindler::SweepConfig build() const {
    rindler::SweepConfig cfg;
    if (accel_axis) {
      cfg.axis = rindler::SweepAxis::acceleration(omega, accel_min, accel_max, steps);
    } else {
      cfg.axis = rindler::SweepAxis::squeezing(alpha_min, alpha_max, steps);
    }
    cfg.record.trunc = rindler::TruncationPolicy::adaptive(tail_eps, nmax);
    cfg.workers = workers;
    cfg.out_csv = out;
    cfg.plots = plots;
    cfg.plot_dir = plot_dir;
    return cfg;
  }

  rindler::RecordSettings record_settings() const {
    rindler::RecordSettings settings;
    settings.trunc = rindler::TruncationPolicy::adaptive(tail_eps, nmax);
    return settings;
  }

  void set(const std::string& key, const std::string& value) {
    if (key == "alpha-min") {
      alpha_min = parse_double(key, value);
    } else if (key == "alpha-max") {
      alpha_max = parse_double(key, value);
    } else if (key == "steps") {
      steps = parse_int(key, value);
    } else if (key == "omega") {
      omega = parse_double(key, value);
      accel_axis = true;
    } else if (key == "accel-min") {
      accel_min = parse_double(key, value);
      accel_axis = true;
    } else if (key == "accel-max") {
      accel_max = parse_double(key, value);
      accel_axis = true;
    } else if (key == "nmax") {
      nmax = parse_int(key, value);
    } else if (key == "tail-eps") {
      tail_eps = parse_double(key, value);
    } else if (key == "out") {
      out = value;
    } else if (key == "plots") {
      plots = parse_bool(key, value);
    } else if (key == "plot-dir") {
      plot_dir = value;
    } else if (key == "workers") {
      workers = parse_int(key, value);
    } else {
      throw rindler::Error(rindler::Error::Code::InvalidArgument,
                           "unknown configuration key '" + key + "'");
    }
  }

  std::string get(const std::string& key) const {
    char buf[40];
    const auto num = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    if (key == "alpha-min") return num(alpha_min);
    if (key == "alpha-max") return num(alpha_max);
    if (key == "steps") return std::to_string(steps);
    if (key == "omega") return num(omega);
    if (key == "accel-min") return num(accel_min);
    if (key == "accel-max") return num(accel_max);
    if (key == "nmax") return std::to_string(nmax);
    if (key == "tail-eps") return num(tail_eps);
    if (key == "out") return out;
    if (key == "plots") return plots ? "true" : "false";
    if (key == "plot-dir") return plot_dir;
    if (key == "workers") return std::to_string(workers);
    throw rindler::Error(rindler::Error::Code::InvalidArgument,
                         "unknown configuration key '" + key + "'");
  }
};

struct rc_result {
  rindler::SweepResult sweep;
};

extern "C" {

const char* rc_version(void) { return "0.1.0"; }

const char* rc_status_name(rc_status status) {
  switch (status) {
    case RC_OK: return "RC_OK";
    case RC_ERR_INVALID_ARGUMENT: return "RC_ERR_INVALID_ARGUMENT";
    case RC_ERR_TRUNCATION_OVERFLOW: return "RC_ERR_TRUNCATION_OVERFLOW";
    case RC_ERR_NUMERICAL: return "RC_ERR_NUMERICAL";
    case RC_ERR_IO: return "RC_ERR_IO";
    case RC_ERR_VERIFY_FAILED: return "RC_ERR_VERIFY_FAILED";
    case RC_ERR_UNKNOWN: return "RC_ERR_UNKNOWN";
  }
  return "RC_ERR_UNKNOWN";
}

const char* rc_last_error(void) { return g_last_error.c_str(); }

void rc_string_free(char* s) { std::free(s); }

rc_config* rc_config_new(void) {
  try {
    return new rc_config();
  } catch (...) {
    return nullptr;
  }
}

void rc_config_free(rc_config* config) { delete config; }

rc_status rc_config_set(rc_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail_invalid("rc_config_set: null argument");
  }
  return guarded([&]() {
    config->set(trim(key), trim(value));
    return RC_OK;
  });
}

rc_status rc_config_get(const rc_config* config, const char* key, char** out) {
  if (config == nullptr || key == nullptr || out == nullptr) {
    return fail_invalid("rc_config_get: null argument");
  }
  return guarded([&]() { return return_string(config->get(trim(key)), out); });
}

rc_status rc_config_load_file(rc_config* config, const char* path) {
  if (config == nullptr || path == nullptr) {
    return fail_invalid("rc_config_load_file: null argument");
  }
  return guarded([&]() {
    std::ifstream in(path);
    if (!in) {
      throw rindler::Error(rindler::Error::Code::Io,
                           std::string("cannot open config file '") + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw rindler::Error(rindler::Error::Code::InvalidArgument,
                             std::string(path) + ":" + std::to_string(lineno) +
                                 ": expected key=value, got '" + stripped + "'");
      }
      try {
        config->set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
      } catch (const rindler::Error& e) {
        throw rindler::Error(e.code(), std::string(path) + ":" + std::to_string(lineno) +
                                           ": " + e.what());
      }
    }
    return RC_OK;
  });
}

rc_status rc_sweep_run(const rc_config* config, rc_result** out) {
  if (config == nullptr || out == nullptr) {
    return fail_invalid("rc_sweep_run: null argument");
  }
  *out = nullptr;
  return guarded([&]() {
    auto result = std::make_unique<rc_result>();
    result->sweep = rindler::run_sweep(config->build());
    *out = result.release();
    return RC_OK;
  });
}

void rc_result_free(rc_result* result) { delete result; }

size_t rc_result_size(const rc_result* result) {
  return result == nullptr ? 0 : result->sweep.records.size();
}

double rc_result_wall_seconds(const rc_result* result) {
  return result == nullptr ? 0.0 : result->sweep.wall_seconds;
}

rc_status rc_result_record(const rc_result* result, size_t index, rc_record* out) {
  if (result == nullptr || out == nullptr) {
    return fail_invalid("rc_result_record: null argument");
  }
  if (index >= result->sweep.records.size()) {
    return fail_invalid("rc_result_record: index " + std::to_string(index) +
                        " out of range (size " +
                        std::to_string(result->sweep.records.size()) + ")");
  }
  const rindler::CorrelationRecord& r = result->sweep.records[index];
  out->alpha = r.alpha;
  out->s_a = r.s_a;
  out->s_r = r.s_r;
  out->s_antir = r.s_antir;
  out->i_ar = r.i_ar;
  out->i_aantir = r.i_aantir;
  out->i_rantir = r.i_rantir;
  out->j_ar = r.j_ar;
  out->j_aantir = r.j_aantir;
  out->d_ar = r.d_ar;
  out->d_aantir = r.d_aantir;
  out->ef_rantir = r.ef_rantir;
  out->ef_rantir_alt = r.ef_rantir_alt;
  out->theta_ar = r.theta_ar;
  out->phi_ar = r.phi_ar;
  out->theta_aantir = r.theta_aantir;
  out->phi_aantir = r.phi_aantir;
  out->n_used = r.n_used;
  return RC_OK;
}

rc_status rc_result_csv(const rc_result* result, char** out) {
  if (result == nullptr || out == nullptr) {
    return fail_invalid("rc_result_csv: null argument");
  }
  return guarded(
      [&]() { return return_string(rindler::csv_from_records(result->sweep.records), out); });
}

rc_status rc_result_write_csv(const rc_result* result, const char* path) {
  if (result == nullptr || path == nullptr) {
    return fail_invalid("rc_result_write_csv: null argument");
  }
  return guarded([&]() {
    rindler::emit_csv(result->sweep, path);
    return RC_OK;
  });
}

rc_status rc_result_write_plots(const rc_result* result, const char* dir) {
  if (result == nullptr || dir == nullptr) {
    return fail_invalid("rc_result_write_plots: null argument");
  }
  return guarded([&]() {
    rindler::emit_plots(result->sweep, dir);
    return RC_OK;
  });
}

rc_status rc_point(const rc_config* config, double alpha, rc_record* out) {
  if (config == nullptr || out == nullptr) {
    return fail_invalid("rc_point: null argument");
  }
  return guarded([&]() {
    const rindler::CorrelationRecord r =
        rindler::assemble_record(rindler::SqueezingParameter(alpha),
                                 config->record_settings());
    rc_result tmp;
    tmp.sweep.records.push_back(r);
    return rc_result_record(&tmp, 0, out);
  });
}

rc_status rc_point_json(const rc_config* config, double alpha, char** out) {
  if (config == nullptr || out == nullptr) {
    return fail_invalid("rc_point_json: null argument");
  }
  return guarded([&]() {
    const rindler::CorrelationRecord r =
        rindler::assemble_record(rindler::SqueezingParameter(alpha),
                                 config->record_settings());
    return return_string(rindler::record_json(r), out);
  });
}

rc_status rc_convergence_text(const rc_config* config, double alpha, char** out) {
  if (config == nullptr || out == nullptr) {
    return fail_invalid("rc_convergence_text: null argument");
  }
  return guarded([&]() {
    const rindler::ConvergenceStudy study = rindler::convergence_study(
        rindler::SqueezingParameter(alpha), config->record_settings());
    return return_string(rindler::convergence_table(study), out);
  });
}

rc_status rc_verify(char** report) {
  if (report == nullptr) {
    return fail_invalid("rc_verify: null argument");
  }
  *report = nullptr;
  return guarded([&]() {
    const rindler::VerificationReport r = rindler::run_verification();
    const rc_status rs = return_string(rindler::verification_text(r), report);
    if (rs != RC_OK) return rs;
    if (!r.all_pass) {
      g_last_error = "verification failures present";
      return RC_ERR_VERIFY_FAILED;
    }
    return RC_OK;
  });
}

}  // extern "C"
