/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RINDLER_CORRELATIONS_HPP
#define RINDLER_CORRELATIONS_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rindler/fockla.hpp"
#include "rindler/states.hpp"

namespace rindler {

/** Bloch direction of a projective qubit measurement. */
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
};

/** One outcome of a projective measurement on Alice's qubit. */
struct MeasurementOutcome {
  double probability = 0.0;
  /** Entropy (bits) of the conditioned state of the unmeasured side. */
  double entropy = 0.0;
};

/**
 * Project Alice's qubit of a two-party state onto the +/- eigenstates of
 * the given Bloch direction and report outcome probabilities along with the
 * entropies of the conditioned remote states. The Alice factor must be the
 * first of exactly two factors. Dense reference path.
 */
std::array<MeasurementOutcome, 2> measure_alice(const DensityMatrix& rho_ab,
                                                const MeasurementDirection& dir,
                                                const Tolerances& tol = {});

/** Average conditioned entropy sum_k p_k S_k for the direction. */
double conditional_entropy_after_measurement(const DensityMatrix& rho_ab,
                                             const MeasurementDirection& dir,
                                             const Tolerances& tol = {});

/** Controls for the measurement-direction optimization. */
struct OptimizerSettings {
  int grid_phi = 64;           ///< azimuthal seeding resolution over [0, 2*pi)
  int grid_theta = 32;         ///< polar seeding resolution over [0, pi/2]
  double nm_tolerance = 1e-10; ///< simplex value-spread convergence threshold
  int nm_max_iterations = 400; ///< refinement iteration budget
};

/**
 * Reusable evaluator of conditioned entropies over measurement directions
 * for one qubit-times-mode state. Holds either the dense qubit blocks of
 * the state or their banded form (diagonal blocks plus one coherence
 * stripe), and memoizes eigensolves keyed on the post-measurement matrix
 * content, so directions that lead to identical conditioned states are
 * solved once.
 */
class AliceMeasurementScan {
public:
  /**
   * Banded form: block <0|rho|0> = diag(d00), <1|rho|1> = diag(d11), and
   * <0|rho|1> carrying a single nonzero stripe one step off the diagonal
   * (stripe_offset +1: entries at (k, k+1); -1: entries at (k+1, k)).
   */
  static AliceMeasurementScan from_banded(std::vector<double> d00, std::vector<double> d11,
                                          std::vector<double> o01, int stripe_offset,
                                          const Tolerances& tol = {});

  /** Dense form, extracted from an explicit two-party state. */
  static AliceMeasurementScan from_density_matrix(const DensityMatrix& rho_ab,
                                                  const Tolerances& tol = {});

  /** sum_k p_k S_k for a measurement along dir. */
  double conditional_entropy(const MeasurementDirection& dir) const;

  /** Entropy (bits) of the unmeasured side's marginal. */
  double unmeasured_entropy() const { return s_b_; }

  int dim() const { return dim_; }
  long long evaluations() const { return evaluations_; }
  long long eigensolves() const { return eigensolves_; }

private:
  AliceMeasurementScan() = default;
  double outcome_entropy_banded(const std::vector<double>& diag,
                                const std::vector<double>& off, double p) const;

  bool banded_ = false;
  int dim_ = 0;
  Tolerances tol_;
  double s_b_ = 0.0;
  // Banded storage.
  std::vector<double> d00_, d11_, o01_;
  int stripe_offset_ = 0;
  // Dense storage (row-major dim_ x dim_ blocks).
  std::vector<double> b00_, b11_, b01_;

  struct CacheEntry {
    std::vector<int64_t> key;
    double entropy;
  };
  mutable std::unordered_map<uint64_t, std::vector<CacheEntry>> cache_;
  mutable long long evaluations_ = 0;
  mutable long long eigensolves_ = 0;
};

/** Result of maximizing classical correlations over measurement directions. */
struct ClassicalCorrelations {
  double j_bits = 0.0;              ///< S_B minus the minimal conditioned entropy
  double conditional_entropy = 0.0; ///< the minimal conditioned entropy itself
  MeasurementDirection best;        ///< canonicalized argmin direction
  long long evaluations = 0;        ///< objective evaluations spent
  long long eigensolves = 0;        ///< distinct eigensolves spent
};

/**
 * J(rho_AB) = S(rho_B) - min over directions of the conditioned entropy,
 * found by grid seeding plus Nelder-Mead refinement. Throws
 * Error::Numerical when the refinement fails to converge or the result is
 * negative beyond tolerance.
 */
ClassicalCorrelations classical_correlations(const AliceMeasurementScan& scan,
                                             const OptimizerSettings& opt = {});
ClassicalCorrelations classical_correlations(const DensityMatrix& rho_ab,
                                             const OptimizerSettings& opt = {},
                                             const Tolerances& tol = {});

/** I(A:B) = S_A + S_B - S_AB of an explicit two-party state. */
double mutual_information(const DensityMatrix& rho_ab, const Tolerances& tol = {});

/** Discord = mutual information minus classical correlations, floored at 0. */
double quantum_discord(double mutual_information_bits, double j_bits);

/**
 * Entanglement of formation of the complementary pair through the
 * entropic exchange identity: S_B - J equals the minimal conditioned
 * entropy, which is the formation entanglement of the two unmeasured
 * parties when the global state is pure.
 */
double entanglement_of_formation_kw(double unmeasured_entropy_bits, double j_bits);

/** Every derived quantity at one squeezing value. Entropies in bits. */
struct CorrelationRecord {
  double alpha = 0.0;
  double s_a = 0.0, s_r = 0.0, s_antir = 0.0;
  double i_ar = 0.0, i_aantir = 0.0, i_rantir = 0.0;
  double j_ar = 0.0, j_aantir = 0.0;
  double d_ar = 0.0, d_aantir = 0.0;
  double ef_rantir = 0.0;     ///< via the Rob-side scan
  double ef_rantir_alt = 0.0; ///< via the AntiRob-side scan (cross-check)
  double theta_ar = 0.0, phi_ar = 0.0;
  double theta_aantir = 0.0, phi_aantir = 0.0;
  int n_used = 0;
};

struct RecordSettings {
  TruncationPolicy trunc = TruncationPolicy::adaptive(1e-12, 4096);
  OptimizerSettings opt;
  Tolerances tol;
};

/**
 * Compute the full correlation record at one squeezing value through the
 * streaming pipeline (never materializes a dense joint state). Verifies
 * the conservation identity I_AR + I_AAntiR = 2 S_A and the agreement of
 * the two formation-entanglement routes; both are hard failures.
 */
CorrelationRecord assemble_record(const SqueezingParameter& alpha,
                                  const RecordSettings& settings = {});

/** Banded qubit blocks of the two mixed pairs, for scan construction. */
AliceMeasurementScan scan_alice_rob(const BranchAmplitudes& b, const Tolerances& tol = {});
AliceMeasurementScan scan_alice_antirob(const BranchAmplitudes& b, const Tolerances& tol = {});

}  // namespace rindler

#endif  // RINDLER_CORRELATIONS_HPP
