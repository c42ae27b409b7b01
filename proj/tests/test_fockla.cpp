/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rindler/fockla.hpp"

using namespace rindler;

namespace {

BasisLabel qubit_pair() {
  return BasisLabel({{Subsystem::Alice, 2}, {Subsystem::Rob, 2}});
}

PureStateVector bell_pair() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureStateVector(qubit_pair(), {r, 0.0, 0.0, r});
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST_CASE("basis label validates its factors") {
  CHECK_THROWS_AS(BasisLabel(std::vector<BasisFactor>{}), Error);
  CHECK_THROWS_AS(BasisLabel({{Subsystem::Rob, 0}}), Error);
  CHECK_THROWS_AS(BasisLabel({{Subsystem::Alice, 3}}), Error);
  CHECK_THROWS_AS(BasisLabel({{Subsystem::Rob, 2}, {Subsystem::Rob, 2}}), Error);

  BasisLabel b({{Subsystem::Alice, 2}, {Subsystem::Rob, 5}, {Subsystem::AntiRob, 4}});
  CHECK(b.total_dim() == 40);
  CHECK(b.factor_count() == 3);
  CHECK(b.stride(0) == 20);
  CHECK(b.stride(1) == 4);
  CHECK(b.stride(2) == 1);
  CHECK(b.position_of(Subsystem::AntiRob) == 2);
  CHECK(b.position_of(Subsystem::Aux) == -1);
  CHECK(b.contains(Subsystem::Rob));
  CHECK_FALSE(b.contains(Subsystem::Aux));
}

TEST_CASE("pure state vectors normalize and reject null input") {
  PureStateVector v(qubit_pair(), {3.0, 0.0, 0.0, 4.0});
  CHECK(v.norm() == doctest::Approx(5.0));
  v.normalize();
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(v.amplitude(0) == doctest::Approx(0.6));

  PureStateVector z(qubit_pair(), {0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(z.normalize(), Error);
  CHECK_THROWS_AS(PureStateVector(qubit_pair(), {1.0}), Error);
}

TEST_CASE("density matrix constructor enforces symmetry and trace") {
  // Asymmetric beyond tolerance.
  CHECK_THROWS_AS(DensityMatrix(BasisLabel({{Subsystem::Rob, 2}}), {0.5, 0.3, 0.1, 0.5}),
                  Error);
  // Trace far from one.
  CHECK_THROWS_AS(DensityMatrix(BasisLabel({{Subsystem::Rob, 2}}), {0.9, 0.0, 0.0, 0.5}),
                  Error);
  DensityMatrix ok(BasisLabel({{Subsystem::Rob, 2}}), {0.75, 0.1, 0.1, 0.25});
  CHECK(ok.trace() == doctest::Approx(1.0));
  CHECK(ok.at(0, 1) == doctest::Approx(0.1));
}

TEST_CASE("outer product of the Bell pair has the four corner entries") {
  DensityMatrix rho = outer(bell_pair(), {});
  CHECK(rho.dim() == 4);
  CHECK(rho.at(0, 0) == doctest::Approx(0.5));
  CHECK(rho.at(0, 3) == doctest::Approx(0.5));
  CHECK(rho.at(3, 0) == doctest::Approx(0.5));
  CHECK(rho.at(3, 3) == doctest::Approx(0.5));
  CHECK(rho.at(1, 1) == doctest::Approx(0.0));
  CHECK(rho.at(1, 2) == doctest::Approx(0.0));
}

TEST_CASE("partial trace of the Bell pair gives the maximally mixed qubit") {
  DensityMatrix rho = outer(bell_pair(), {});
  for (auto keep : {Subsystem::Alice, Subsystem::Rob}) {
    DensityMatrix r = partial_trace(rho, {keep}, {});
    CHECK(r.dim() == 2);
    CHECK(r.at(0, 0) == doctest::Approx(0.5));
    CHECK(r.at(1, 1) == doctest::Approx(0.5));
    CHECK(r.at(0, 1) == doctest::Approx(0.0));
  }
  // Same reduction straight from the vector.
  DensityMatrix r2 = partial_trace_pure(bell_pair(), {Subsystem::Rob}, {});
  CHECK(r2.at(0, 0) == doctest::Approx(0.5));
  CHECK(r2.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("partial trace keeps factor order and matches a hand reduction") {
  // Three factors with distinct dimensions; trace out the middle one.
  BasisLabel b({{Subsystem::Alice, 2}, {Subsystem::Rob, 3}, {Subsystem::AntiRob, 2}});
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> amps(static_cast<size_t>(b.total_dim()));
  for (auto& a : amps) a = u(gen);
  PureStateVector v(b, amps);
  v.normalize();

  DensityMatrix viaPure = partial_trace_pure(v, {Subsystem::Alice, Subsystem::AntiRob}, {});
  DensityMatrix viaDense = partial_trace(outer(v, {}), {Subsystem::Alice, Subsystem::AntiRob}, {});
  CHECK(viaPure.dim() == 4);
  CHECK(viaPure.basis().factor(0).id == Subsystem::Alice);
  CHECK(viaPure.basis().factor(1).id == Subsystem::AntiRob);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(viaPure.at(i, j) == doctest::Approx(viaDense.at(i, j)).epsilon(1e-12));

  CHECK_THROWS_AS(partial_trace(viaDense, {Subsystem::Rob}, {}), Error);
  CHECK_THROWS_AS(partial_trace(viaDense, {}, {}), Error);
}

TEST_CASE("entropy of known spectra") {
  CHECK(entropy_bits(std::vector<double>{1.0}) == doctest::Approx(0.0));
  CHECK(entropy_bits(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy_bits(std::vector<double>{0.75, 0.25}) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(entropy_bits(std::vector<double>{0.5, 0.5, 0.0}) == doctest::Approx(1.0));

  DensityMatrix d(BasisLabel({{Subsystem::Rob, 2}}), {0.75, 0.0, 0.0, 0.25});
  CHECK(von_neumann_entropy(d, {}) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  DensityMatrix bell = outer(bell_pair(), {});
  CHECK(von_neumann_entropy(bell, {}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(von_neumann_entropy(partial_trace(bell, {Subsystem::Alice}, {}), {}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy is additive over product spectra") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> p(3), q(4);
    double ps = 0.0, qs = 0.0;
    for (auto& x : p) ps += (x = u(gen));
    for (auto& x : q) qs += (x = u(gen));
    for (auto& x : p) x /= ps;
    for (auto& x : q) x /= qs;
    std::vector<double> joint;
    for (double a : p)
      for (double b : q) joint.push_back(a * b);
    CHECK(entropy_bits(joint) ==
          doctest::Approx(entropy_bits(p) + entropy_bits(q)).epsilon(1e-12));
  }
}

TEST_CASE("spectrum clamping distinguishes noise from genuine violations") {
  Tolerances tol;
  Spectrum sp = clamp_spectrum({0.5, -1e-12, 0.5, 1.0 + 1e-12}, tol);
  CHECK(sp.clamped_count == 2);
  CHECK(sp.eigenvalues.front() == doctest::Approx(1.0));
  CHECK(sp.eigenvalues.back() == doctest::Approx(0.0));
  // Descending order.
  CHECK(std::is_sorted(sp.eigenvalues.begin(), sp.eigenvalues.end(), std::greater<>()));

  CHECK_THROWS_AS(clamp_spectrum({0.5, -1e-8}, tol), Error);
  CHECK_THROWS_AS(clamp_spectrum({1.0 + 1e-8}, tol), Error);
}

TEST_CASE("jacobi reproduces closed-form 2x2 and 3x3 spectra") {
  // [[2,1],[1,2]] -> {3,1}
  auto ev = sorted_desc(jacobi_eigenvalues({2.0, 1.0, 1.0, 2.0}, 2));
  CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-13));

  // Circulant [[0,1,1],[1,0,1],[1,1,0]] -> {2,-1,-1}
  auto ev3 = sorted_desc(jacobi_eigenvalues({0, 1, 1, 1, 0, 1, 1, 1, 0}, 3));
  CHECK(ev3[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(ev3[1] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(ev3[2] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("QL and jacobi agree on random tridiagonal matrices") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 5, 9, 17, 40}) {
    std::vector<double> d(static_cast<size_t>(n)), e(static_cast<size_t>(n - 1));
    for (auto& x : d) x = u(gen);
    for (auto& x : e) x = u(gen);
    std::vector<double> dense(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) dense[static_cast<size_t>(i) * n + i] = d[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) {
      dense[static_cast<size_t>(i) * n + i + 1] = e[static_cast<size_t>(i)];
      dense[static_cast<size_t>(i + 1) * n + i] = e[static_cast<size_t>(i)];
    }
    auto a = sorted_desc(tridiagonal_eigenvalues(d, e));
    auto b = sorted_desc(jacobi_eigenvalues(dense, n));
    for (int i = 0; i < n; ++i)
      CHECK(a[static_cast<size_t>(i)] ==
            doctest::Approx(b[static_cast<size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("structured solver splits disconnected blocks correctly") {
  // Block diagonal: a 2x2 block on indices {0,2} and a singleton {1}.
  std::vector<double> a{2.0, 0.0, 1.0,   //
                        0.0, 5.0, 0.0,   //
                        1.0, 0.0, 2.0};
  auto ev = sorted_desc(structured_symmetric_eigenvalues(a.data(), 3));
  CHECK(ev[0] == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("structured solver matches jacobi on random dense matrices") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {3, 6, 12}) {
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = u(gen);
        a[static_cast<size_t>(i) * n + j] = v;
        a[static_cast<size_t>(j) * n + i] = v;
      }
    auto s = sorted_desc(structured_symmetric_eigenvalues(a.data(), n));
    auto j = sorted_desc(jacobi_eigenvalues(a, n));
    for (int i = 0; i < n; ++i)
      CHECK(s[static_cast<size_t>(i)] ==
            doctest::Approx(j[static_cast<size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("sparse spectrum handles accumulation, zero rows and scattered blocks") {
  SparseSymmetric m;
  m.dim = 6;
  m.add(0, 0, 1.0);
  m.add(0, 0, 1.0);   // accumulates to 2
  m.add(0, 4, 0.5);
  m.add(4, 0, 0.5);   // symmetric duplicate accumulates to 1.0 off-diagonal
  m.add(4, 4, 2.0);
  m.add(2, 2, 7.0);
  m.add(1, 3, 0.0);   // exact zero: dropped, indices stay untouched
  // Component {0,4}: [[2,1],[1,2]] -> {3,1}; {2}: 7; {1,3,5}: zeros.
  auto ev = sorted_desc(sparse_symmetric_eigenvalues(m));
  REQUIRE(ev.size() == 6);
  CHECK(ev[0] == doctest::Approx(7.0));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ev[3] == doctest::Approx(0.0));
  CHECK(ev[5] == doctest::Approx(0.0));
  CHECK(m.trace() == doctest::Approx(11.0));
}

TEST_CASE("mix combines states and validates weights") {
  BasisLabel b({{Subsystem::Rob, 2}});
  DensityMatrix up(b, {1.0, 0.0, 0.0, 0.0});
  DensityMatrix dn(b, {0.0, 0.0, 0.0, 1.0});
  DensityMatrix m = mix({0.75, 0.25}, {up, dn}, {});
  CHECK(m.at(0, 0) == doctest::Approx(0.75));
  CHECK(von_neumann_entropy(m, {}) == doctest::Approx(0.8112781244591328).epsilon(1e-13));

  CHECK_THROWS_AS(mix({0.8, 0.25}, {up, dn}, {}), Error);
  CHECK_THROWS_AS(mix({-0.5, 1.5}, {up, dn}, {}), Error);
  CHECK_THROWS_AS(mix({1.0}, {up, dn}, {}), Error);
}

TEST_CASE("error objects carry their code") {
  try {
    clamp_spectrum({-1.0}, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Numerical);
    CHECK(std::string(e.what()).find("eigenvalue") != std::string::npos);
  }
}
