/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/states.hpp"

#include <cmath>
#include <string>

namespace rindler {

namespace {

constexpr int kDenseDimLimit = 4096;

BasisLabel mode_pair_basis(int cutoff) {
  return BasisLabel({{Subsystem::Rob, cutoff + 2}, {Subsystem::AntiRob, cutoff + 1}});
}

BasisLabel tripartite_basis(int cutoff) {
  return BasisLabel(
      {{Subsystem::Alice, 2}, {Subsystem::Rob, cutoff + 2}, {Subsystem::AntiRob, cutoff + 1}});
}

void check_cutoff(int cutoff) {
  if (cutoff < 1)
    throw Error(Error::Code::InvalidArgument, "occupation cutoff must be at least 1");
}

DensityMatrix guarded_reduction(const PureStateVector& tripartite,
                                const std::vector<Subsystem>& keep, const Tolerances& tol) {
  const BasisLabel& b = tripartite.basis();
  if (b.factor_count() != 3 || !b.contains(Subsystem::Alice) || !b.contains(Subsystem::Rob) ||
      !b.contains(Subsystem::AntiRob))
    throw Error(Error::Code::InvalidArgument, "expected a three-party Alice/Rob/AntiRob state");
  long long kept_dim = 1;
  for (Subsystem id : keep) kept_dim *= b.factor(b.position_of(id)).dim;
  if (kept_dim > kDenseDimLimit)
    throw Error(Error::Code::InvalidArgument,
                "dense reduction of dimension " + std::to_string(kept_dim) +
                    " exceeds the in-memory limit; use the streaming paths");
  return partial_trace_pure(tripartite, keep, tol);
}

}  // namespace

SqueezingParameter::SqueezingParameter(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0)
    throw Error(Error::Code::InvalidArgument,
                "squeezing parameter must be finite and non-negative");
}

SqueezingParameter squeezing_from_acceleration(const AccelerationSpec& spec) {
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega))
    throw Error(Error::Code::InvalidArgument, "mode frequency must be positive");
  if (!(spec.accel > 0.0) || !std::isfinite(spec.accel))
    throw Error(Error::Code::InvalidArgument, "proper acceleration must be positive");
  const double arg = std::exp(-M_PI * spec.omega / spec.accel);
  if (arg >= 1.0)
    throw Error(Error::Code::Numerical, "squeezing parameter diverges for this acceleration");
  return SqueezingParameter(std::atanh(arg));
}

int required_truncation(const SqueezingParameter& alpha, double eps_tail, int cap) {
  if (!(eps_tail > 0.0) || eps_tail >= 1.0)
    throw Error(Error::Code::InvalidArgument, "tail tolerance must lie in (0, 1)");
  if (cap < 1) throw Error(Error::Code::InvalidArgument, "truncation cap must be at least 1");
  const double t = std::tanh(alpha.value());
  if (t == 0.0) return 1;
  const double x = t * t;
  for (int n = 1; n <= cap; ++n) {
    // Geometric tails of the two branch weight sequences beyond level n.
    const double tail_vac = std::pow(x, n + 1);
    const double tail_one = std::pow(x, n + 1) * ((n + 2) - (n + 1) * x);
    if (tail_vac < eps_tail && tail_one < eps_tail) return n;
  }
  throw Error(Error::Code::TruncationOverflow,
              "no cutoff <= " + std::to_string(cap) + " reaches tail tolerance at alpha = " +
                  std::to_string(alpha.value()));
}

TruncationPolicy TruncationPolicy::fixed(int n) {
  check_cutoff(n);
  TruncationPolicy p;
  p.adaptive_ = false;
  p.fixed_n_ = n;
  return p;
}

TruncationPolicy TruncationPolicy::adaptive(double eps_tail, int cap) {
  if (!(eps_tail > 0.0) || eps_tail >= 1.0)
    throw Error(Error::Code::InvalidArgument, "tail tolerance must lie in (0, 1)");
  if (cap < 1) throw Error(Error::Code::InvalidArgument, "truncation cap must be at least 1");
  TruncationPolicy p;
  p.adaptive_ = true;
  p.eps_tail_ = eps_tail;
  p.cap_ = cap;
  return p;
}

int TruncationPolicy::resolve(const SqueezingParameter& alpha) const {
  if (!adaptive_) return fixed_n_;
  return required_truncation(alpha, eps_tail_, cap_);
}

BranchAmplitudes branch_amplitudes(const SqueezingParameter& alpha, int cutoff) {
  check_cutoff(cutoff);
  const double a = alpha.value();
  const double t = std::tanh(a);
  const double sech = 1.0 / std::cosh(a);

  BranchAmplitudes b;
  b.cutoff = cutoff;
  b.vacuum.resize(static_cast<size_t>(cutoff) + 1);
  b.one_particle.resize(static_cast<size_t>(cutoff) + 1);

  double tn = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    b.vacuum[static_cast<size_t>(n)] = sech * tn;
    b.one_particle[static_cast<size_t>(n)] = sech * sech * tn * std::sqrt(double(n) + 1.0);
    tn *= t;
  }

  for (auto* vec : {&b.vacuum, &b.one_particle}) {
    double s = 0.0;
    for (double v : *vec) s += v * v;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : *vec) v *= inv;
  }
  return b;
}

PureStateVector vacuum_rindler(const SqueezingParameter& alpha, int cutoff) {
  BranchAmplitudes b = branch_amplitudes(alpha, cutoff);
  BasisLabel basis = mode_pair_basis(cutoff);
  std::vector<double> amps(static_cast<size_t>(basis.total_dim()), 0.0);
  const int stride = cutoff + 1;  // AntiRob dimension
  for (int n = 0; n <= cutoff; ++n)
    amps[static_cast<size_t>(n) * stride + n] = b.vacuum[static_cast<size_t>(n)];
  return PureStateVector(std::move(basis), std::move(amps));
}

PureStateVector one_particle_unruh(const SqueezingParameter& alpha, int cutoff) {
  BranchAmplitudes b = branch_amplitudes(alpha, cutoff);
  BasisLabel basis = mode_pair_basis(cutoff);
  std::vector<double> amps(static_cast<size_t>(basis.total_dim()), 0.0);
  const int stride = cutoff + 1;
  for (int n = 0; n <= cutoff; ++n)
    amps[static_cast<size_t>(n + 1) * stride + n] = b.one_particle[static_cast<size_t>(n)];
  return PureStateVector(std::move(basis), std::move(amps));
}

PureStateVector tripartite_state(const SqueezingParameter& alpha, int cutoff) {
  BranchAmplitudes b = branch_amplitudes(alpha, cutoff);
  BasisLabel basis = tripartite_basis(cutoff);
  std::vector<double> amps(static_cast<size_t>(basis.total_dim()), 0.0);
  const int pair_dim = (cutoff + 2) * (cutoff + 1);
  const int stride = cutoff + 1;
  const double r = 1.0 / std::sqrt(2.0);
  for (int n = 0; n <= cutoff; ++n) {
    amps[static_cast<size_t>(n) * stride + n] = r * b.vacuum[static_cast<size_t>(n)];
    amps[static_cast<size_t>(pair_dim) + static_cast<size_t>(n + 1) * stride + n] =
        r * b.one_particle[static_cast<size_t>(n)];
  }
  return PureStateVector(std::move(basis), std::move(amps));
}

DensityMatrix rho_ar(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::Alice, Subsystem::Rob}, tol);
}

DensityMatrix rho_aantir(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::Alice, Subsystem::AntiRob}, tol);
}

DensityMatrix rho_rantir(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::Rob, Subsystem::AntiRob}, tol);
}

DensityMatrix rho_a(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::Alice}, tol);
}

DensityMatrix rho_r(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::Rob}, tol);
}

DensityMatrix rho_antir(const PureStateVector& tripartite, const Tolerances& tol) {
  return guarded_reduction(tripartite, {Subsystem::AntiRob}, tol);
}

DensityMatrix unruh_thermal_marginal(const SqueezingParameter& alpha, int cutoff,
                                     const Tolerances& tol) {
  BranchAmplitudes b = branch_amplitudes(alpha, cutoff);
  const int dim = cutoff + 2;
  std::vector<double> a(static_cast<size_t>(dim) * dim, 0.0);
  for (int n = 0; n <= cutoff; ++n) {
    const double c = b.vacuum[static_cast<size_t>(n)];
    a[static_cast<size_t>(n) * dim + n] = c * c;
  }
  return DensityMatrix(BasisLabel({{Subsystem::Rob, dim}}), std::move(a), tol);
}

}  // namespace rindler
