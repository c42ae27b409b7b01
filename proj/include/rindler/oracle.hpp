/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RINDLER_ORACLE_HPP
#define RINDLER_ORACLE_HPP

#include "rindler/correlations.hpp"
#include "rindler/fockla.hpp"
#include "rindler/states.hpp"

namespace rindler {

/**
 * Independent reference constructions for the self-check suite. Everything
 * here is written directly from closed forms -- explicit weight series,
 * exhaustive searches, term-by-term sums -- deliberately avoiding the
 * library's own streaming shortcuts, so that agreement between the two is
 * evidence rather than tautology.
 */

/** Reduced qubit+Rob state assembled entry by entry from its weight series. */
DensityMatrix series_rho_ar(const SqueezingParameter& alpha, int cutoff,
                            const Tolerances& tol = {});

/** Reduced qubit+AntiRob state assembled entry by entry from its series. */
DensityMatrix series_rho_aantir(const SqueezingParameter& alpha, int cutoff,
                                const Tolerances& tol = {});

/** Result of an entrywise comparison between two state representations. */
struct SeriesComparison {
  double max_abs_diff = 0.0;
  long long entries = 0;
};

/** Series entries vs. the partial trace of the constructed joint state. */
SeriesComparison compare_rho_ar_series(const SqueezingParameter& alpha, int cutoff,
                                       const Tolerances& tol = {});
SeriesComparison compare_rho_aantir_series(const SqueezingParameter& alpha, int cutoff,
                                           const Tolerances& tol = {});

/**
 * Mode-pair state: series entries vs. the joint-state partial trace over
 * the qubit, streamed over the support lattice so no dense matrix of
 * dimension (cutoff+2)(cutoff+1) is ever held.
 */
SeriesComparison compare_rho_rantir_series(const SqueezingParameter& alpha, int cutoff,
                                           const Tolerances& tol = {});

/** Exhaustive direction search at fixed angular resolution. */
struct GridSearch {
  double j_bits = 0.0;
  double conditional_entropy = 0.0;
  MeasurementDirection best;
  long long points = 0;
};

/**
 * Brute-force sweep of the full hemisphere x azimuth at the given
 * resolution (degrees), with no refinement. Serves as a floor for the
 * optimizer: the refined J may exceed this by at most the grid's own
 * discretization error and must never fall below it.
 */
GridSearch grid_search_j(const AliceMeasurementScan& scan, double resolution_degrees = 1.0);

/** Probability weight of the squeezed-vacuum branch beyond the cutoff. */
double vacuum_tail_weight(const SqueezingParameter& alpha, int cutoff);
/** Probability weight of the shifted one-particle branch beyond the cutoff. */
double one_particle_tail_weight(const SqueezingParameter& alpha, int cutoff);
/** The same two weights by explicit term summation. */
double vacuum_tail_weight_brute(const SqueezingParameter& alpha, int cutoff);
double one_particle_tail_weight_brute(const SqueezingParameter& alpha, int cutoff);

}  // namespace rindler

#endif  // RINDLER_ORACLE_HPP
