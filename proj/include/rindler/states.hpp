/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RINDLER_STATES_HPP
#define RINDLER_STATES_HPP

#include <vector>

#include "rindler/fockla.hpp"

namespace rindler {

/** Two-mode squeezing parameter. Validated: finite and non-negative. */
class SqueezingParameter {
public:
  explicit SqueezingParameter(double value);
  double value() const { return value_; }

private:
  double value_;
};

/** Mode frequency and proper acceleration, both strictly positive. */
struct AccelerationSpec {
  double omega;
  double accel;
};

/**
 * Squeezing parameter equivalent to probing a mode of frequency spec.omega
 * at proper acceleration spec.accel: atanh(exp(-pi * omega / accel)).
 * Throws when the argument reaches 1 (the value would diverge).
 */
SqueezingParameter squeezing_from_acceleration(const AccelerationSpec& spec);

/**
 * Smallest occupation cutoff N >= 1 such that the probability weight beyond
 * level N is below eps_tail in BOTH branches of the probed state (the
 * squeezed-vacuum branch and the shifted one-particle branch). Returns 1 for
 * alpha == 0. Throws Error::TruncationOverflow when no N <= cap suffices.
 */
int required_truncation(const SqueezingParameter& alpha, double eps_tail, int cap = 4096);

/** Cutoff selection for state construction. */
class TruncationPolicy {
public:
  static TruncationPolicy fixed(int n);
  static TruncationPolicy adaptive(double eps_tail, int cap = 4096);
  /** The cutoff to use at the given squeezing. */
  int resolve(const SqueezingParameter& alpha) const;
  bool is_adaptive() const { return adaptive_; }
  double eps_tail() const { return eps_tail_; }
  int cap() const { return cap_; }

private:
  TruncationPolicy() = default;
  bool adaptive_ = false;
  int fixed_n_ = 0;
  double eps_tail_ = 0.0;
  int cap_ = 0;
};

/**
 * Probability amplitudes of the two branches, truncated at occupation N and
 * renormalized to unit norm each.
 *
 * vacuum[n], n = 0..N:        weight of |n, n> in the squeezed vacuum;
 * one_particle[n], n = 0..N:  weight of |n+1, n> in the shifted branch.
 *
 * The first index counts Rob excitations (dimension N+2), the second counts
 * AntiRob excitations (dimension N+1).
 */
struct BranchAmplitudes {
  int cutoff = 0;
  std::vector<double> vacuum;
  std::vector<double> one_particle;
};

BranchAmplitudes branch_amplitudes(const SqueezingParameter& alpha, int cutoff);

/** Squeezed two-mode vacuum on {Rob(N+2), AntiRob(N+1)}, normalized. */
PureStateVector vacuum_rindler(const SqueezingParameter& alpha, int cutoff);

/** Shifted one-particle branch on {Rob(N+2), AntiRob(N+1)}, normalized. */
PureStateVector one_particle_unruh(const SqueezingParameter& alpha, int cutoff);

/**
 * The probed maximally entangled state on {Alice(2), Rob(N+2), AntiRob(N+1)}:
 * (|0>|vacuum> + |1>|one-particle>) / sqrt(2).
 */
PureStateVector tripartite_state(const SqueezingParameter& alpha, int cutoff);

/**
 * Dense two-party and one-party reductions of the tripartite state. These
 * materialize O(dim^2) storage and are intended for moderate cutoffs; they
 * throw Error::InvalidArgument when the kept dimension exceeds 4096.
 */
DensityMatrix rho_ar(const PureStateVector& tripartite, const Tolerances& tol = {});
DensityMatrix rho_aantir(const PureStateVector& tripartite, const Tolerances& tol = {});
DensityMatrix rho_rantir(const PureStateVector& tripartite, const Tolerances& tol = {});
DensityMatrix rho_a(const PureStateVector& tripartite, const Tolerances& tol = {});
DensityMatrix rho_r(const PureStateVector& tripartite, const Tolerances& tol = {});
DensityMatrix rho_antir(const PureStateVector& tripartite, const Tolerances& tol = {});

/**
 * Rob's marginal of the squeezed vacuum alone: a thermal-shaped diagonal
 * state with weight ratio tanh^2(alpha) between successive levels, truncated
 * and renormalized, on the Rob factor of dimension cutoff + 2 (the last
 * level carries no vacuum-branch weight).
 */
DensityMatrix unruh_thermal_marginal(const SqueezingParameter& alpha, int cutoff,
                                     const Tolerances& tol = {});

}  // namespace rindler

#endif  // RINDLER_STATES_HPP
