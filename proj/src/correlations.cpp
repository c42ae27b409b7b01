/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rindler {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kHalfPi = 0.5 * M_PI;
// Outcomes below this weight contribute nothing to the conditioned entropy
// average at double precision.
constexpr double kProbabilityFloor = 1e-14;
// Couplings below this, relative to unit trace, may be cut: the zeroed
// matrix is block-diagonal with principal-submatrix blocks (still PSD),
// the trace is untouched, and the total trace-norm perturbation stays
// under dim * 2e-14, which moves the entropy by well under 1e-9 bits
// (Fannes-Audenaert). The trailing levels then deflate for free.
constexpr double kOffSplitFloor = 1e-14;

uint64_t fnv1a(const int64_t* data, size_t count) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data);
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < count * sizeof(int64_t); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

/** Round values onto a power-of-two grid ~1e-13 relative to the largest. */
void quantize_into(const std::vector<double>& v, double maxabs, std::vector<int64_t>& out) {
  const double quantum = std::exp2(std::floor(std::log2(maxabs)) - 43.0);
  const double inv = 1.0 / quantum;
  for (double x : v) out.push_back(static_cast<int64_t>(std::llround(x * inv)));
}

double entropy_of_clamped(std::vector<double> eigenvalues, const Tolerances& tol) {
  Spectrum sp = clamp_spectrum(std::move(eigenvalues), tol);
  return entropy_bits(sp.eigenvalues);
}

/**
 * Entropy (bits) of the normalized Hermitian matrix (X + iY) / p given as
 * its real and imaginary parts; X symmetric, Y antisymmetric, p = tr X.
 * Picks the cheapest faithful route: real spectrum when Y vanishes, a
 * phase-gauged tridiagonal solve when the complex matrix is tridiagonal,
 * and a doubled real embedding otherwise (whose entropy exceeds the true
 * one by exactly one bit).
 */
double hermitian_entropy(const std::vector<double>& x, const std::vector<double>& y, int n,
                         double p, const Tolerances& tol) {
  double ymax = 0.0;
  for (double v : y) ymax = std::max(ymax, std::abs(v));

  if (ymax == 0.0) {
    std::vector<double> scaled(x);
    const double inv = 1.0 / p;
    for (double& v : scaled) v *= inv;
    return entropy_of_clamped(structured_symmetric_eigenvalues(scaled.data(), n), tol);
  }

  bool tridiagonal = true;
  for (int i = 0; i < n && tridiagonal; ++i)
    for (int j = i + 2; j < n; ++j) {
      if (x[static_cast<size_t>(i) * n + j] != 0.0 || y[static_cast<size_t>(i) * n + j] != 0.0) {
        tridiagonal = false;
        break;
      }
    }

  if (tridiagonal) {
    // Conjugation by a diagonal phase matrix moves each complex coupling
    // onto the real axis without touching the spectrum.
    std::vector<double> d(static_cast<size_t>(n)), e(static_cast<size_t>(n) - 1);
    const double inv = 1.0 / p;
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = x[static_cast<size_t>(i) * n + i] * inv;
    for (int i = 0; i + 1 < n; ++i) {
      const double xr = x[static_cast<size_t>(i) * n + i + 1];
      const double yi = y[static_cast<size_t>(i) * n + i + 1];
      e[static_cast<size_t>(i)] = std::sqrt(xr * xr + yi * yi) * inv;
    }
    return entropy_of_clamped(tridiagonal_eigenvalues(std::move(d), std::move(e)), tol);
  }

  // Doubled real embedding [[X, -Y], [Y, X]] / (2p): every eigenvalue of
  // the normalized complex matrix appears twice at half weight.
  SparseSymmetric m;
  m.dim = 2 * n;
  const double inv = 1.0 / (2.0 * p);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = x[static_cast<size_t>(i) * n + j] * inv;
      m.add(i, j, v);
      m.add(n + i, n + j, v);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.add(i, n + j, -y[static_cast<size_t>(i) * n + j] * inv);
  return entropy_of_clamped(sparse_symmetric_eigenvalues(m), tol) - 1.0;
}

struct DenseBlocks {
  int n = 0;
  const double* b00 = nullptr;
  const double* b11 = nullptr;
  const double* b01 = nullptr;
};

/** X and iY parts of <outcome| rho |outcome> for the projective outcomes. */
void outcome_parts(const DenseBlocks& blk, const MeasurementDirection& dir, int sign,
                   std::vector<double>& x, std::vector<double>& y) {
  const int n = blk.n;
  const double c = std::cos(0.5 * dir.theta);
  const double s = std::sin(0.5 * dir.theta);
  const double q = (sign > 0) ? c * c : s * s;
  const double r = 1.0 - q;
  const double cs = (sign > 0 ? 1.0 : -1.0) * c * s;
  const double cf = cs * std::cos(dir.phi);
  const double sf = cs * std::sin(dir.phi);

  x.assign(static_cast<size_t>(n) * n, 0.0);
  y.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const size_t ij = static_cast<size_t>(i) * n + j;
      const size_t ji = static_cast<size_t>(j) * n + i;
      x[ij] = q * blk.b00[ij] + r * blk.b11[ij] + cf * (blk.b01[ij] + blk.b01[ji]);
      y[ij] = sf * (blk.b01[ij] - blk.b01[ji]);
    }
}

MeasurementOutcome dense_outcome(const DenseBlocks& blk, const MeasurementDirection& dir,
                                 int sign, const Tolerances& tol) {
  std::vector<double> x, y;
  outcome_parts(blk, dir, sign, x, y);
  double p = 0.0;
  for (int i = 0; i < blk.n; ++i) p += x[static_cast<size_t>(i) * blk.n + i];
  if (p < kProbabilityFloor) return {std::max(p, 0.0), 0.0};
  return {p, hermitian_entropy(x, y, blk.n, p, tol)};
}

MeasurementDirection canonical_direction(MeasurementDirection d) {
  d.theta = std::fmod(d.theta, kTwoPi);
  if (d.theta < 0.0) d.theta += kTwoPi;
  if (d.theta > M_PI) {
    d.theta = kTwoPi - d.theta;
    d.phi += M_PI;
  }
  // Flipping the direction swaps the outcomes and leaves the conditioned
  // entropy average unchanged; fold onto the upper hemisphere.
  if (d.theta > kHalfPi) {
    d.theta = M_PI - d.theta;
    d.phi += M_PI;
  }
  d.phi = std::fmod(d.phi, kTwoPi);
  if (d.phi < 0.0) d.phi += kTwoPi;
  if (d.theta == 0.0) d.phi = 0.0;  // azimuth is meaningless on the pole
  return d;
}

}  // namespace

std::array<MeasurementOutcome, 2> measure_alice(const DensityMatrix& rho_ab,
                                                const MeasurementDirection& dir,
                                                const Tolerances& tol) {
  const BasisLabel& b = rho_ab.basis();
  if (b.factor_count() != 2 || b.factor(0).id != Subsystem::Alice)
    throw Error(Error::Code::InvalidArgument,
                "measurement expects a two-factor state with the qubit first");
  const int n = b.factor(1).dim;
  const double* base = rho_ab.data().data();
  const int full = 2 * n;
  // Block views: <a, i| rho |a', j> at (a*n + i) * full + (a'*n + j).
  std::vector<double> b00(static_cast<size_t>(n) * n), b11(b00.size()), b01(b00.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b00[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(i) * full + j];
      b11[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(n + i) * full + n + j];
      b01[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(i) * full + n + j];
    }
  DenseBlocks blk{n, b00.data(), b11.data(), b01.data()};
  return {dense_outcome(blk, dir, +1, tol), dense_outcome(blk, dir, -1, tol)};
}

double conditional_entropy_after_measurement(const DensityMatrix& rho_ab,
                                             const MeasurementDirection& dir,
                                             const Tolerances& tol) {
  auto outcomes = measure_alice(rho_ab, dir, tol);
  return outcomes[0].probability * outcomes[0].entropy +
         outcomes[1].probability * outcomes[1].entropy;
}

// ---------------------------------------------------------------------------
// AliceMeasurementScan
// ---------------------------------------------------------------------------

AliceMeasurementScan AliceMeasurementScan::from_banded(std::vector<double> d00,
                                                       std::vector<double> d11,
                                                       std::vector<double> o01,
                                                       int stripe_offset,
                                                       const Tolerances& tol) {
  const int dim = static_cast<int>(d00.size());
  if (dim < 2 || d11.size() != d00.size() || o01.size() + 1 != d00.size())
    throw Error(Error::Code::InvalidArgument, "banded scan: inconsistent block sizes");
  if (stripe_offset != 1 && stripe_offset != -1)
    throw Error(Error::Code::InvalidArgument, "banded scan: stripe offset must be +1 or -1");
  double tr = 0.0;
  for (double v : d00) tr += v;
  for (double v : d11) tr += v;
  if (std::abs(tr - 1.0) > tol.norm)
    throw Error(Error::Code::Numerical, "banded scan: blocks do not carry unit trace");

  AliceMeasurementScan scan;
  scan.banded_ = true;
  scan.dim_ = dim;
  scan.tol_ = tol;
  scan.d00_ = std::move(d00);
  scan.d11_ = std::move(d11);
  scan.o01_ = std::move(o01);
  scan.stripe_offset_ = stripe_offset;

  std::vector<double> marginal(scan.d00_.size());
  for (size_t i = 0; i < marginal.size(); ++i) marginal[i] = scan.d00_[i] + scan.d11_[i];
  scan.s_b_ = entropy_of_clamped(std::move(marginal), tol);

  // Store in reversed level order: the entries then grade upward, which is
  // the ordering the QL iteration deflates fastest. Spectra are unchanged.
  std::reverse(scan.d00_.begin(), scan.d00_.end());
  std::reverse(scan.d11_.begin(), scan.d11_.end());
  std::reverse(scan.o01_.begin(), scan.o01_.end());
  scan.stripe_offset_ = -stripe_offset;
  return scan;
}

AliceMeasurementScan AliceMeasurementScan::from_density_matrix(const DensityMatrix& rho_ab,
                                                               const Tolerances& tol) {
  const BasisLabel& b = rho_ab.basis();
  if (b.factor_count() != 2 || b.factor(0).id != Subsystem::Alice)
    throw Error(Error::Code::InvalidArgument,
                "measurement scan expects a two-factor state with the qubit first");
  const int n = b.factor(1).dim;
  const int full = 2 * n;
  const double* base = rho_ab.data().data();

  AliceMeasurementScan scan;
  scan.banded_ = false;
  scan.dim_ = n;
  scan.tol_ = tol;
  scan.b00_.resize(static_cast<size_t>(n) * n);
  scan.b11_.resize(scan.b00_.size());
  scan.b01_.resize(scan.b00_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      scan.b00_[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(i) * full + j];
      scan.b11_[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(n + i) * full + n + j];
      scan.b01_[static_cast<size_t>(i) * n + j] = base[static_cast<size_t>(i) * full + n + j];
    }

  std::vector<double> marginal(static_cast<size_t>(n) * n);
  for (size_t t = 0; t < marginal.size(); ++t) marginal[t] = scan.b00_[t] + scan.b11_[t];
  scan.s_b_ =
      entropy_of_clamped(structured_symmetric_eigenvalues(marginal.data(), n), tol);
  return scan;
}

double AliceMeasurementScan::outcome_entropy_banded(const std::vector<double>& diag,
                                                    const std::vector<double>& off,
                                                    double p) const {
  // Normalize, then memoize on the quantized matrix content: directions
  // that condition onto the same state share one eigensolve.
  const double inv = 1.0 / p;
  std::vector<double> d(diag), e(off);
  double maxabs = 0.0;
  for (double& v : d) maxabs = std::max(maxabs, std::abs(v *= inv));
  for (double& v : e) maxabs = std::max(maxabs, std::abs(v *= inv));

  std::vector<int64_t> key;
  key.reserve(d.size() + e.size() + 1);
  key.push_back(static_cast<int64_t>(d.size()));
  quantize_into(d, maxabs, key);
  quantize_into(e, maxabs, key);
  const uint64_t h = fnv1a(key.data(), key.size());
  auto& bucket = cache_[h];
  for (const CacheEntry& entry : bucket)
    if (entry.key == key) return entry.entropy;

  // Cut couplings that cannot move the entropy at working precision; the
  // solver then deflates the decoupled trailing levels immediately.
  for (double& v : e)
    if (std::abs(v) < kOffSplitFloor) v = 0.0;
  ++eigensolves_;
  const double s = entropy_of_clamped(tridiagonal_eigenvalues(std::move(d), std::move(e)), tol_);
  bucket.push_back({std::move(key), s});
  return s;
}

double AliceMeasurementScan::conditional_entropy(const MeasurementDirection& dir) const {
  ++evaluations_;
  if (!banded_) {
    DenseBlocks blk{dim_, b00_.data(), b11_.data(), b01_.data()};
    // Memoize on the post-measurement content, as in the banded path.
    double total = 0.0;
    for (int sign : {+1, -1}) {
      std::vector<double> x, y;
      outcome_parts(blk, dir, sign, x, y);
      double p = 0.0;
      for (int i = 0; i < dim_; ++i) p += x[static_cast<size_t>(i) * dim_ + i];
      if (p < kProbabilityFloor) continue;
      const double inv = 1.0 / p;
      double maxabs = 0.0;
      for (double& v : x) maxabs = std::max(maxabs, std::abs(v *= inv));
      for (double& v : y) maxabs = std::max(maxabs, std::abs(v *= inv));
      std::vector<int64_t> key;
      key.reserve(x.size() + y.size() + 1);
      key.push_back(static_cast<int64_t>(x.size()));
      quantize_into(x, maxabs, key);
      quantize_into(y, maxabs, key);
      const uint64_t h = fnv1a(key.data(), key.size());
      auto& bucket = cache_[h];
      const CacheEntry* hit = nullptr;
      for (const CacheEntry& entry : bucket)
        if (entry.key == key) {
          hit = &entry;
          break;
        }
      double s;
      if (hit) {
        s = hit->entropy;
      } else {
        ++eigensolves_;
        s = hermitian_entropy(x, y, dim_, 1.0, tol_);
        bucket.push_back({std::move(key), s});
      }
      total += p * s;
    }
    return total;
  }

  const double c = std::cos(0.5 * dir.theta);
  const double s = std::sin(0.5 * dir.theta);
  const double q = c * c;
  const double cs = std::abs(c * s);

  const size_t n = static_cast<size_t>(dim_);
  std::vector<double> diag(n), off(n - 1);
  // The coherence stripe sits one step off the diagonal, so the complex
  // coupling at (k, k+1) has magnitude |cs * o01[k]| regardless of the
  // azimuth: the diagonal phase gauge removes phi exactly.
  for (size_t k = 0; k + 1 < n; ++k) off[k] = cs * std::abs(o01_[k]);

  double total = 0.0;
  for (int sign : {+1, -1}) {
    const double w0 = (sign > 0) ? q : 1.0 - q;
    const double w1 = 1.0 - w0;
    double p = 0.0;
    for (size_t k = 0; k < n; ++k) p += (diag[k] = w0 * d00_[k] + w1 * d11_[k]);
    if (p < kProbabilityFloor) continue;
    total += p * outcome_entropy_banded(diag, off, p);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Optimization
// ---------------------------------------------------------------------------

ClassicalCorrelations classical_correlations(const AliceMeasurementScan& scan,
                                             const OptimizerSettings& opt) {
  if (opt.grid_phi < 2 || opt.grid_theta < 2)
    throw Error(Error::Code::InvalidArgument, "optimizer grid must have at least 2 points");
  const long long evals_before = scan.evaluations();
  const long long solves_before = scan.eigensolves();

  const double theta_step = kHalfPi / (opt.grid_theta - 1);
  const double phi_step = kTwoPi / opt.grid_phi;

  MeasurementDirection best;
  double fbest = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.grid_theta; ++it) {
    const double theta = it * theta_step;
    for (int ip = 0; ip < opt.grid_phi; ++ip) {
      const MeasurementDirection dir{theta, ip * phi_step};
      const double f = scan.conditional_entropy(dir);
      if (f < fbest) {
        fbest = f;
        best = dir;
      }
    }
  }

  // Nelder-Mead refinement seeded at the grid minimum.
  struct Vertex {
    double th, ph, f;
  };
  auto eval = [&](double th, double ph) { return scan.conditional_entropy({th, ph}); };
  Vertex v[3] = {{best.theta, best.phi, fbest},
                 {best.theta + 0.5 * theta_step, best.phi,
                  eval(best.theta + 0.5 * theta_step, best.phi)},
                 {best.theta, best.phi + 0.5 * phi_step,
                  eval(best.theta, best.phi + 0.5 * phi_step)}};

  bool converged = false;
  for (int iter = 0; iter < opt.nm_max_iterations; ++iter) {
    std::sort(v, v + 3, [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (v[2].f - v[0].f < opt.nm_tolerance) {
      converged = true;
      break;
    }
    const double cth = 0.5 * (v[0].th + v[1].th);
    const double cph = 0.5 * (v[0].ph + v[1].ph);
    const double rth = cth + (cth - v[2].th);
    const double rph = cph + (cph - v[2].ph);
    const double fr = eval(rth, rph);
    if (fr < v[0].f) {
      const double eth = cth + 2.0 * (cth - v[2].th);
      const double eph = cph + 2.0 * (cph - v[2].ph);
      const double fe = eval(eth, eph);
      v[2] = (fe < fr) ? Vertex{eth, eph, fe} : Vertex{rth, rph, fr};
    } else if (fr < v[1].f) {
      v[2] = {rth, rph, fr};
    } else {
      // Contraction: toward the reflected point when it improved on the
      // worst vertex, toward the inside otherwise.
      double xth, xph;
      if (fr < v[2].f) {
        xth = cth + 0.5 * (rth - cth);
        xph = cph + 0.5 * (rph - cph);
      } else {
        xth = cth + 0.5 * (v[2].th - cth);
        xph = cph + 0.5 * (v[2].ph - cph);
      }
      const double fx = eval(xth, xph);
      if (fx < std::min(fr, v[2].f)) {
        v[2] = {xth, xph, fx};
      } else {
        for (int k = 1; k < 3; ++k) {
          v[k].th = v[0].th + 0.5 * (v[k].th - v[0].th);
          v[k].ph = v[0].ph + 0.5 * (v[k].ph - v[0].ph);
          v[k].f = eval(v[k].th, v[k].ph);
        }
      }
    }
  }
  std::sort(v, v + 3, [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  if (!converged)
    throw Error(Error::Code::Numerical,
                "measurement optimization did not converge; best conditioned entropy " +
                    std::to_string(v[0].f));

  ClassicalCorrelations cc;
  cc.conditional_entropy = std::min(v[0].f, fbest);
  cc.best = canonical_direction(v[0].f <= fbest ? MeasurementDirection{v[0].th, v[0].ph} : best);
  const double j = scan.unmeasured_entropy() - cc.conditional_entropy;
  if (j < -1e-6)
    throw Error(Error::Code::Numerical,
                "classical correlations came out negative: " + std::to_string(j));
  cc.j_bits = std::max(j, 0.0);
  cc.evaluations = scan.evaluations() - evals_before;
  cc.eigensolves = scan.eigensolves() - solves_before;
  return cc;
}

ClassicalCorrelations classical_correlations(const DensityMatrix& rho_ab,
                                             const OptimizerSettings& opt,
                                             const Tolerances& tol) {
  return classical_correlations(AliceMeasurementScan::from_density_matrix(rho_ab, tol), opt);
}

// ---------------------------------------------------------------------------
// Scalar combinations
// ---------------------------------------------------------------------------

double mutual_information(const DensityMatrix& rho_ab, const Tolerances& tol) {
  const BasisLabel& b = rho_ab.basis();
  if (b.factor_count() != 2)
    throw Error(Error::Code::InvalidArgument, "mutual information expects two factors");
  const double s_a = von_neumann_entropy(partial_trace(rho_ab, {b.factor(0).id}, tol), tol);
  const double s_b = von_neumann_entropy(partial_trace(rho_ab, {b.factor(1).id}, tol), tol);
  return s_a + s_b - von_neumann_entropy(rho_ab, tol);
}

double quantum_discord(double mutual_information_bits, double j_bits) {
  const double d = mutual_information_bits - j_bits;
  if (d < -1e-6)
    throw Error(Error::Code::Numerical,
                "discord came out negative: " + std::to_string(d));
  return std::max(d, 0.0);
}

double entanglement_of_formation_kw(double unmeasured_entropy_bits, double j_bits) {
  const double e = unmeasured_entropy_bits - j_bits;
  if (e < -1e-6)
    throw Error(Error::Code::Numerical,
                "formation entanglement came out negative: " + std::to_string(e));
  return std::max(e, 0.0);
}

// ---------------------------------------------------------------------------
// Streaming pipeline
// ---------------------------------------------------------------------------

AliceMeasurementScan scan_alice_rob(const BranchAmplitudes& b, const Tolerances& tol) {
  const int n = b.cutoff;
  const size_t dim = static_cast<size_t>(n) + 2;
  std::vector<double> d00(dim, 0.0), d11(dim, 0.0), o01(dim - 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double c = b.vacuum[static_cast<size_t>(k)];
    const double d = b.one_particle[static_cast<size_t>(k)];
    d00[static_cast<size_t>(k)] = 0.5 * c * c;
    d11[static_cast<size_t>(k) + 1] = 0.5 * d * d;
    o01[static_cast<size_t>(k)] = 0.5 * c * d;
  }
  return AliceMeasurementScan::from_banded(std::move(d00), std::move(d11), std::move(o01), +1,
                                           tol);
}

AliceMeasurementScan scan_alice_antirob(const BranchAmplitudes& b, const Tolerances& tol) {
  const int n = b.cutoff;
  const size_t dim = static_cast<size_t>(n) + 1;
  std::vector<double> d00(dim, 0.0), d11(dim, 0.0), o01(dim - 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double c = b.vacuum[static_cast<size_t>(k)];
    const double d = b.one_particle[static_cast<size_t>(k)];
    d00[static_cast<size_t>(k)] = 0.5 * c * c;
    d11[static_cast<size_t>(k)] = 0.5 * d * d;
    if (k > 0) o01[static_cast<size_t>(k) - 1] = 0.5 * c * b.one_particle[static_cast<size_t>(k) - 1];
  }
  return AliceMeasurementScan::from_banded(std::move(d00), std::move(d11), std::move(o01), -1,
                                           tol);
}

CorrelationRecord assemble_record(const SqueezingParameter& alpha,
                                  const RecordSettings& settings) {
  const Tolerances& tol = settings.tol;
  const int n = settings.trunc.resolve(alpha);
  const BranchAmplitudes b = branch_amplitudes(alpha, n);
  const std::vector<double>& c = b.vacuum;
  const std::vector<double>& d = b.one_particle;

  CorrelationRecord rec;
  rec.alpha = alpha.value();
  rec.n_used = n;

  // Qubit marginal through the branch Gram matrix: the branches have
  // disjoint level support, so the off-diagonal overlap vanishes and the
  // eigenvalues are the two branch weights themselves.
  {
    double cc = 0.0, dd = 0.0;
    for (double v : c) cc += v * v;
    for (double v : d) dd += v * v;
    rec.s_a = entropy_of_clamped({0.5 * cc, 0.5 * dd}, tol);
  }

  // Single-mode marginals are diagonal in the level basis.
  {
    std::vector<double> pr(static_cast<size_t>(n) + 2, 0.0);
    for (int k = 0; k <= n; ++k) {
      pr[static_cast<size_t>(k)] += 0.5 * c[static_cast<size_t>(k)] * c[static_cast<size_t>(k)];
      pr[static_cast<size_t>(k) + 1] +=
          0.5 * d[static_cast<size_t>(k)] * d[static_cast<size_t>(k)];
    }
    rec.s_r = entropy_of_clamped(std::move(pr), tol);

    std::vector<double> pw(static_cast<size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k)
      pw[static_cast<size_t>(k)] =
          0.5 * (c[static_cast<size_t>(k)] * c[static_cast<size_t>(k)] +
                 d[static_cast<size_t>(k)] * d[static_cast<size_t>(k)]);
    rec.s_antir = entropy_of_clamped(std::move(pw), tol);
  }

  // Pair entropies through sparse reductions; storing only the nonzero
  // entries keeps them O(n) even when the dense pair state would not fit.
  {
    // Qubit + Rob: index a * (n + 2) + r.
    SparseSymmetric m;
    m.dim = 2 * (n + 2);
    for (int k = 0; k <= n; ++k) {
      const double ck = c[static_cast<size_t>(k)];
      const double dk = d[static_cast<size_t>(k)];
      m.add(k, k, 0.5 * ck * ck);
      m.add((n + 2) + k + 1, (n + 2) + k + 1, 0.5 * dk * dk);
      m.add(k, (n + 2) + k + 1, 0.5 * ck * dk);
    }
    const double s_ar = entropy_of_clamped(sparse_symmetric_eigenvalues(m), tol);

    // Qubit + AntiRob: index a * (n + 1) + w.
    SparseSymmetric m2;
    m2.dim = 2 * (n + 1);
    for (int k = 0; k <= n; ++k) {
      const double ck = c[static_cast<size_t>(k)];
      const double dk = d[static_cast<size_t>(k)];
      m2.add(k, k, 0.5 * ck * ck);
      m2.add((n + 1) + k, (n + 1) + k, 0.5 * dk * dk);
      if (k + 1 <= n)
        m2.add(k + 1, (n + 1) + k, 0.5 * c[static_cast<size_t>(k) + 1] * dk);
    }
    const double s_aantir = entropy_of_clamped(sparse_symmetric_eigenvalues(m2), tol);

    // The mode pair is an equal mixture of the two orthogonal branches, so
    // its nonzero spectrum matches the qubit marginal's.
    const double s_rantir = rec.s_a;

    rec.i_ar = rec.s_a + rec.s_r - s_ar;
    rec.i_aantir = rec.s_a + rec.s_antir - s_aantir;
    rec.i_rantir = rec.s_r + rec.s_antir - s_rantir;
  }

  const double conservation = rec.i_ar + rec.i_aantir - 2.0 * rec.s_a;
  if (std::abs(conservation) > 1e-6)
    throw Error(Error::Code::Numerical,
                "mutual-information conservation violated by " + std::to_string(conservation));

  const AliceMeasurementScan scan_r = scan_alice_rob(b, tol);
  const ClassicalCorrelations cc_r = classical_correlations(scan_r, settings.opt);
  rec.j_ar = cc_r.j_bits;
  rec.theta_ar = cc_r.best.theta;
  rec.phi_ar = cc_r.best.phi;
  rec.d_ar = quantum_discord(rec.i_ar, rec.j_ar);

  const AliceMeasurementScan scan_w = scan_alice_antirob(b, tol);
  const ClassicalCorrelations cc_w = classical_correlations(scan_w, settings.opt);
  rec.j_aantir = cc_w.j_bits;
  rec.theta_aantir = cc_w.best.theta;
  rec.phi_aantir = cc_w.best.phi;
  rec.d_aantir = quantum_discord(rec.i_aantir, rec.j_aantir);

  // Formation entanglement of the mode pair through the two complementary
  // conditioned-entropy minima; they must agree.
  rec.ef_rantir = cc_r.conditional_entropy;
  rec.ef_rantir_alt = cc_w.conditional_entropy;
  if (std::abs(rec.ef_rantir - rec.ef_rantir_alt) > 1e-5)
    throw Error(Error::Code::Numerical,
                "formation-entanglement routes disagree: " + std::to_string(rec.ef_rantir) +
                    " vs " + std::to_string(rec.ef_rantir_alt));

  return rec;
}

}  // namespace rindler
