/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace rindler {

namespace {

/*
 * Branch weights written straight from the closed forms, normalized over
 * the kept levels only. Kept separate from the library's own amplitude
 * builder on purpose: a shared helper would hide a shared mistake.
 */
struct SeriesWeights {
  std::vector<double> c;  // squeezed-vacuum branch, level n
  std::vector<double> d;  // one-particle branch, counter-mode level n
};

SeriesWeights series_weights(const SqueezingParameter& alpha, int cutoff) {
  if (cutoff < 1) {
    throw Error(Error::Code::InvalidArgument,
                "series cutoff must be at least 1, got " + std::to_string(cutoff));
  }
  const double t = std::tanh(alpha.value());
  const double sech = 1.0 / std::cosh(alpha.value());
  SeriesWeights w;
  w.c.resize(static_cast<std::size_t>(cutoff) + 1);
  w.d.resize(static_cast<std::size_t>(cutoff) + 1);
  double tn = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    w.c[static_cast<std::size_t>(n)] = sech * tn;
    w.d[static_cast<std::size_t>(n)] = sech * sech * tn * std::sqrt(static_cast<double>(n) + 1.0);
    tn *= t;
  }
  for (auto* v : {&w.c, &w.d}) {
    double norm2 = 0.0;
    for (double x : *v) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : *v) x *= inv;
  }
  return w;
}

BasisLabel series_basis_ar(int cutoff) {
  return BasisLabel({BasisFactor{Subsystem::Alice, 2},
                     BasisFactor{Subsystem::Rob, cutoff + 2}});
}

BasisLabel series_basis_aantir(int cutoff) {
  return BasisLabel({BasisFactor{Subsystem::Alice, 2},
                     BasisFactor{Subsystem::AntiRob, cutoff + 1}});
}

SeriesComparison compare_dense(const DensityMatrix& series, const DensityMatrix& reduced) {
  SeriesComparison cmp;
  const int n = series.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cmp.max_abs_diff = std::max(cmp.max_abs_diff, std::abs(series.at(i, j) - reduced.at(i, j)));
      ++cmp.entries;
    }
  }
  return cmp;
}

}  // namespace

DensityMatrix series_rho_ar(const SqueezingParameter& alpha, int cutoff, const Tolerances& tol) {
  const SeriesWeights w = series_weights(alpha, cutoff);
  const BasisLabel basis = series_basis_ar(cutoff);
  const int rob = cutoff + 2;
  std::vector<double> m(static_cast<std::size_t>(basis.total_dim()) * basis.total_dim(), 0.0);
  const auto at = [&](int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * basis.total_dim() + j];
  };
  for (int n = 0; n <= cutoff; ++n) {
    const double c = w.c[static_cast<std::size_t>(n)];
    const double d = w.d[static_cast<std::size_t>(n)];
    at(n, n) += 0.5 * c * c;
    at(rob + n + 1, rob + n + 1) += 0.5 * d * d;
    at(n, rob + n + 1) += 0.5 * c * d;
    at(rob + n + 1, n) += 0.5 * c * d;
  }
  return DensityMatrix(basis, std::move(m), tol);
}

DensityMatrix series_rho_aantir(const SqueezingParameter& alpha, int cutoff,
                                const Tolerances& tol) {
  const SeriesWeights w = series_weights(alpha, cutoff);
  const BasisLabel basis = series_basis_aantir(cutoff);
  const int antirob = cutoff + 1;
  std::vector<double> m(static_cast<std::size_t>(basis.total_dim()) * basis.total_dim(), 0.0);
  const auto at = [&](int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * basis.total_dim() + j];
  };
  for (int n = 0; n <= cutoff; ++n) {
    const double c = w.c[static_cast<std::size_t>(n)];
    const double d = w.d[static_cast<std::size_t>(n)];
    at(n, n) += 0.5 * c * c;
    at(antirob + n, antirob + n) += 0.5 * d * d;
    if (n < cutoff) {
      // Coherence couples vacuum level n+1 to the one-particle level n.
      const double cross = 0.5 * w.c[static_cast<std::size_t>(n) + 1] * d;
      at(n + 1, antirob + n) += cross;
      at(antirob + n, n + 1) += cross;
    }
  }
  return DensityMatrix(basis, std::move(m), tol);
}

SeriesComparison compare_rho_ar_series(const SqueezingParameter& alpha, int cutoff,
                                       const Tolerances& tol) {
  const DensityMatrix series = series_rho_ar(alpha, cutoff, tol);
  const PureStateVector psi = tripartite_state(alpha, cutoff);
  const DensityMatrix reduced = partial_trace_pure(psi, {Subsystem::Alice, Subsystem::Rob}, tol);
  return compare_dense(series, reduced);
}

SeriesComparison compare_rho_aantir_series(const SqueezingParameter& alpha, int cutoff,
                                           const Tolerances& tol) {
  const DensityMatrix series = series_rho_aantir(alpha, cutoff, tol);
  const PureStateVector psi = tripartite_state(alpha, cutoff);
  const DensityMatrix reduced =
      partial_trace_pure(psi, {Subsystem::Alice, Subsystem::AntiRob}, tol);
  return compare_dense(series, reduced);
}

SeriesComparison compare_rho_rantir_series(const SqueezingParameter& alpha, int cutoff,
                                           const Tolerances&) {
  const SeriesWeights w = series_weights(alpha, cutoff);
  const PureStateVector psi = tripartite_state(alpha, cutoff);
  const int rob = cutoff + 2;
  const int antirob = cutoff + 1;
  const std::size_t pair_dim = static_cast<std::size_t>(rob) * antirob;

  // Support positions in the flattened (Rob, AntiRob) lattice. Branch 0
  // occupies the diagonal (n, n), branch 1 the shifted diagonal (n+1, n);
  // the two sets never collide.
  struct Site {
    std::size_t pos;
    int branch;
    int level;
  };
  std::vector<Site> sites;
  sites.reserve(2 * (static_cast<std::size_t>(cutoff) + 1));
  for (int n = 0; n <= cutoff; ++n) {
    sites.push_back({static_cast<std::size_t>(n) * antirob + n, 0, n});
    sites.push_back({(static_cast<std::size_t>(n) + 1) * antirob + n, 1, n});
  }

  const std::vector<double>& amp = psi.amplitudes();
  SeriesComparison cmp;
  for (const Site& a : sites) {
    const double a0 = amp[a.pos];
    const double a1 = amp[pair_dim + a.pos];
    for (const Site& b : sites) {
      // Partial trace over the qubit: sum the two qubit sectors directly.
      const double reduced = a0 * amp[b.pos] + a1 * amp[pair_dim + b.pos];
      double series = 0.0;
      if (a.branch == 0 && b.branch == 0) {
        series = 0.5 * w.c[static_cast<std::size_t>(a.level)] *
                 w.c[static_cast<std::size_t>(b.level)];
      } else if (a.branch == 1 && b.branch == 1) {
        series = 0.5 * w.d[static_cast<std::size_t>(a.level)] *
                 w.d[static_cast<std::size_t>(b.level)];
      }
      cmp.max_abs_diff = std::max(cmp.max_abs_diff, std::abs(series - reduced));
      ++cmp.entries;
    }
  }
  return cmp;
}

GridSearch grid_search_j(const AliceMeasurementScan& scan, double resolution_degrees) {
  if (!(resolution_degrees > 0.0) || resolution_degrees > 90.0) {
    throw Error(Error::Code::InvalidArgument, "grid resolution must lie in (0, 90] degrees");
  }
  const double rad = std::acos(-1.0) / 180.0;
  const int n_theta = static_cast<int>(std::lround(180.0 / resolution_degrees)) + 1;
  const int n_phi = static_cast<int>(std::lround(360.0 / resolution_degrees));
  GridSearch out;
  out.conditional_entropy = std::numeric_limits<double>::infinity();
  for (int it = 0; it < n_theta; ++it) {
    const double theta = std::min(it * resolution_degrees, 180.0) * rad;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = ip * resolution_degrees * rad;
      const double e = scan.conditional_entropy(MeasurementDirection{theta, phi});
      ++out.points;
      if (e < out.conditional_entropy) {
        out.conditional_entropy = e;
        out.best = MeasurementDirection{theta, phi};
      }
    }
  }
  out.j_bits = std::max(scan.unmeasured_entropy() - out.conditional_entropy, 0.0);
  return out;
}

double vacuum_tail_weight(const SqueezingParameter& alpha, int cutoff) {
  if (cutoff < 0) {
    throw Error(Error::Code::InvalidArgument, "tail cutoff must be nonnegative");
  }
  const double t = std::tanh(alpha.value());
  const double x = t * t;
  return std::pow(x, cutoff + 1);
}

double one_particle_tail_weight(const SqueezingParameter& alpha, int cutoff) {
  if (cutoff < 0) {
    throw Error(Error::Code::InvalidArgument, "tail cutoff must be nonnegative");
  }
  const double t = std::tanh(alpha.value());
  const double x = t * t;
  const double n1 = static_cast<double>(cutoff) + 1.0;
  return std::pow(x, cutoff + 1) * ((n1 + 1.0) - n1 * x);
}

namespace {

double tail_sum(double x, double prefactor, int cutoff, bool weight_by_level) {
  if (x == 0.0) return 0.0;
  double accum = 0.0;
  double xn = std::pow(x, cutoff + 1);
  for (int n = cutoff + 1; n <= cutoff + 4'000'000; ++n) {
    const double term = prefactor * xn * (weight_by_level ? static_cast<double>(n) + 1.0 : 1.0);
    accum += term;
    if (term < accum * 1e-17) break;
    xn *= x;
  }
  return accum;
}

}  // namespace

double vacuum_tail_weight_brute(const SqueezingParameter& alpha, int cutoff) {
  if (cutoff < 0) {
    throw Error(Error::Code::InvalidArgument, "tail cutoff must be nonnegative");
  }
  const double ch = std::cosh(alpha.value());
  const double t = std::tanh(alpha.value());
  return tail_sum(t * t, 1.0 / (ch * ch), cutoff, false);
}

double one_particle_tail_weight_brute(const SqueezingParameter& alpha, int cutoff) {
  if (cutoff < 0) {
    throw Error(Error::Code::InvalidArgument, "tail cutoff must be nonnegative");
  }
  const double ch = std::cosh(alpha.value());
  const double t = std::tanh(alpha.value());
  return tail_sum(t * t, 1.0 / (ch * ch * ch * ch), cutoff, true);
}

}  // namespace rindler
