/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rindler/correlations.hpp"
#include "rindler/oracle.hpp"
#include "rindler/states.hpp"

using namespace rindler;

namespace {

constexpr double kAlphaHalfTanh = 0.5493061443340548;  // artanh(1/2)

}  // namespace

TEST_CASE("series states carry unit trace and match the basis layout") {
  const SqueezingParameter alpha(0.7);
  const DensityMatrix ar = series_rho_ar(alpha, 12);
  const DensityMatrix aw = series_rho_aantir(alpha, 12);
  CHECK(ar.dim() == 2 * 14);
  CHECK(aw.dim() == 2 * 13);
  double tr_ar = 0.0;
  for (int i = 0; i < ar.dim(); ++i) tr_ar += ar.at(i, i);
  CHECK(tr_ar == doctest::Approx(1.0).epsilon(1e-14));
  // Qubit sector balance: each branch holds exactly half the weight.
  double sector0 = 0.0;
  for (int i = 0; i < 14; ++i) sector0 += ar.at(i, i);
  CHECK(sector0 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("series transcriptions agree with the reduced joint state") {
  for (double a : {0.0, 0.25, kAlphaHalfTanh, 1.0}) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    const SeriesComparison ar = compare_rho_ar_series(alpha, n);
    const SeriesComparison aw = compare_rho_aantir_series(alpha, n);
    const SeriesComparison rw = compare_rho_rantir_series(alpha, n);
    CHECK(ar.max_abs_diff < 1e-14);
    CHECK(aw.max_abs_diff < 1e-14);
    CHECK(rw.max_abs_diff < 1e-14);
    CHECK(ar.entries == 4LL * (n + 2) * (n + 2));
    CHECK(rw.entries == 4LL * (n + 1) * (n + 1));
  }
}

TEST_CASE("mode-pair comparison streams without building the dense state") {
  // Beyond the dense partial-trace guard: dim (N+2)(N+1) ~ 4.4e6 here.
  const SqueezingParameter alpha(2.0);
  const int n = required_truncation(alpha, 1e-12);
  REQUIRE(n > 400);
  const SeriesComparison rw = compare_rho_rantir_series(alpha, n);
  CHECK(rw.max_abs_diff < 1e-13);
  CHECK(rw.entries == 4LL * (n + 1) * (n + 1));
}

TEST_CASE("exhaustive direction grid reproduces the optimized correlations") {
  const Tolerances tol;
  for (double a : {0.25, kAlphaHalfTanh, 1.0}) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    const BranchAmplitudes b = branch_amplitudes(alpha, n);
    const AliceMeasurementScan scan = scan_alice_rob(b, tol);
    const GridSearch grid = grid_search_j(scan, 1.0);
    const ClassicalCorrelations opt = classical_correlations(scan, OptimizerSettings{});
    // The best direction sits on the 1-degree grid, so the two agree tightly.
    CHECK(std::abs(grid.j_bits - opt.j_bits) < 1e-6);
    CHECK(opt.j_bits >= grid.j_bits - 1e-12);
    CHECK(grid.points == 181LL * 360LL);
  }
}

TEST_CASE("grid search on the counter-mode pair stays consistent too") {
  const Tolerances tol;
  const SqueezingParameter alpha(1.0);
  const int n = required_truncation(alpha, 1e-12);
  const BranchAmplitudes b = branch_amplitudes(alpha, n);
  const AliceMeasurementScan scan = scan_alice_antirob(b, tol);
  const GridSearch grid = grid_search_j(scan, 1.0);
  const ClassicalCorrelations opt = classical_correlations(scan, OptimizerSettings{});
  CHECK(std::abs(grid.j_bits - opt.j_bits) < 1e-6);
  CHECK(opt.j_bits >= grid.j_bits - 1e-12);
}

TEST_CASE("tail weights: closed form equals explicit summation") {
  // Frozen spot value: tanh^2 = 1/4, cutoff 10 -> 0.25^11.
  const SqueezingParameter half(kAlphaHalfTanh);
  CHECK(vacuum_tail_weight(half, 10) == doctest::Approx(2.384185791015625e-07).epsilon(1e-13));
  for (double a : {0.3, kAlphaHalfTanh, 1.0, 2.0, 3.0}) {
    const SqueezingParameter alpha(a);
    for (int cutoff : {1, 5, 40}) {
      const double v = vacuum_tail_weight(alpha, cutoff);
      const double vb = vacuum_tail_weight_brute(alpha, cutoff);
      const double o = one_particle_tail_weight(alpha, cutoff);
      const double ob = one_particle_tail_weight_brute(alpha, cutoff);
      CHECK(std::abs(v - vb) <= 1e-13 * std::max(v, 1e-300));
      CHECK(std::abs(o - ob) <= 1e-12 * std::max(o, 1e-300));
    }
  }
  const SqueezingParameter zero(0.0);
  CHECK(vacuum_tail_weight(zero, 3) == 0.0);
  CHECK(one_particle_tail_weight_brute(zero, 3) == 0.0);
}

TEST_CASE("tail weights justify the truncation rule") {
  // The chosen cutoff is the first level where both tails dip below the
  // target; one level earlier at least one of them must still exceed it.
  for (double a : {0.25, 1.0, 2.0}) {
    const SqueezingParameter alpha(a);
    const int n = required_truncation(alpha, 1e-12);
    CHECK(vacuum_tail_weight(alpha, n) < 1e-12);
    CHECK(one_particle_tail_weight(alpha, n) < 1e-12);
    if (n > 1) {
      const bool loose = vacuum_tail_weight(alpha, n - 1) >= 1e-12 ||
                         one_particle_tail_weight(alpha, n - 1) >= 1e-12;
      CHECK(loose);
    }
  }
}

TEST_CASE("oracle rejects malformed inputs") {
  const SqueezingParameter alpha(0.5);
  CHECK_THROWS_AS((void)series_rho_ar(alpha, 0), Error);
  CHECK_THROWS_AS((void)vacuum_tail_weight(alpha, -1), Error);
  const BranchAmplitudes b = branch_amplitudes(alpha, 8);
  const AliceMeasurementScan scan = scan_alice_rob(b, Tolerances{});
  CHECK_THROWS_AS((void)grid_search_j(scan, 0.0), Error);
  CHECK_THROWS_AS((void)grid_search_j(scan, 120.0), Error);
}
