/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

/**
 * @file fockla.hpp
 * @brief Dense linear algebra over labelled, truncated Fock tensor-product
 *        spaces: basis labels, state vectors, density matrices, partial
 *        traces, symmetric eigensolvers and von Neumann entropies.
 *
 * Everything here is real: the states this library builds have real
 * amplitudes in the Fock basis, so density matrices are real symmetric.
 * Complex matrices are not supported; the one place complex arithmetic
 * would appear (projective measurements off the x-z plane of the Bloch
 * sphere) is handled in correlations.hpp by exact real reductions.
 *
 * Entropies are in bits (base-2 logarithms) throughout.
 */

#ifndef RINDLER_FOCKLA_HPP
#define RINDLER_FOCKLA_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rindler {

/** Error category carried by every exception thrown by this library. */
class Error : public std::runtime_error {
public:
  enum class Code {
    InvalidArgument,
    TruncationOverflow,
    Numerical,
    Io,
    VerifyFailed,
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

private:
  Code code_;
};

/** Numerical tolerances shared across the library. */
struct Tolerances {
  double norm = 1e-9;  ///< admissible |trace - 1| / |norm - 1| slack
  double psd = 1e-10;  ///< eigenvalues in [-psd, 0) are clamped to 0
};

/** The parties of the tripartite system, plus an auxiliary id used only
 *  for internal real representations of complex-valued reductions. */
enum class Subsystem : unsigned char { Alice, Rob, AntiRob, Aux };

const char* subsystem_name(Subsystem s);

/** One tensor factor: which party it belongs to and its truncated dimension. */
struct BasisFactor {
  Subsystem id;
  int dim;
};

/**
 * Ordered list of tensor factors. Flat indices are row-major in factor
 * order: index = ((i0 * d1 + i1) * d2 + i2) ...
 *
 * Invariants: at least one factor, every dimension >= 1, no duplicate
 * party ids, and an Alice factor always has dimension 2.
 */
class BasisLabel {
public:
  BasisLabel() = default;
  explicit BasisLabel(std::vector<BasisFactor> factors);

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const BasisFactor& factor(int k) const { return factors_.at(static_cast<size_t>(k)); }
  const std::vector<BasisFactor>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }

  /** Position of the factor belonging to `id`, or -1 when absent. */
  int position_of(Subsystem id) const;
  bool contains(Subsystem id) const { return position_of(id) >= 0; }

  /** Row-major stride of factor k. */
  int stride(int k) const;

  friend bool operator==(const BasisLabel& a, const BasisLabel& b);
  friend bool operator!=(const BasisLabel& a, const BasisLabel& b) { return !(a == b); }

private:
  std::vector<BasisFactor> factors_;
  int total_dim_ = 0;
};

/** A pure state: dense real amplitudes over a labelled basis. */
class PureStateVector {
public:
  PureStateVector(BasisLabel basis, std::vector<double> amplitudes);

  const BasisLabel& basis() const { return basis_; }
  const std::vector<double>& amplitudes() const { return amp_; }
  double amplitude(int i) const { return amp_.at(static_cast<size_t>(i)); }
  int dim() const { return static_cast<int>(amp_.size()); }

  double norm() const;
  /** Rescale to unit norm; throws Error::Numerical when the norm is ~0. */
  void normalize();

private:
  BasisLabel basis_;
  std::vector<double> amp_;
};

/**
 * A density matrix: dense real symmetric storage over a labelled basis.
 * Construction enforces symmetry (within 1e-12 relative, then exactly
 * symmetrized) and unit trace within Tolerances::norm. Positivity is
 * checked where eigenvalues are consumed, not at construction.
 */
class DensityMatrix {
public:
  DensityMatrix(BasisLabel basis, std::vector<double> data, const Tolerances& tol = {});

  const BasisLabel& basis() const { return basis_; }
  int dim() const { return dim_; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * dim_ + j]; }
  const std::vector<double>& data() const { return data_; }
  double trace() const;

private:
  BasisLabel basis_;
  int dim_ = 0;
  std::vector<double> data_;
};

/** Eigenvalues of a density matrix, sorted descending. `clamped_count`
 *  reports how many eigenvalues were snapped into [0, 1] from within
 *  the PSD tolerance band. */
struct Spectrum {
  std::vector<double> eigenvalues;
  int clamped_count = 0;
};

// ---------------------------------------------------------------------------
// Raw symmetric eigensolvers. These operate on plain arrays and make no
// density-matrix assumptions (no clamping, no trace checks).
// ---------------------------------------------------------------------------

/**
 * Cyclic-by-rows Jacobi eigenvalues of a dense symmetric matrix (row-major,
 * n x n). Converges when the off-diagonal Frobenius norm drops below
 * 1e-12 times the Frobenius norm of the input. Returns unsorted values.
 */
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

/**
 * Implicit-shift QL eigenvalues of a symmetric tridiagonal matrix with
 * diagonal `diag` (size n) and off-diagonal `off` (size n-1). Returns
 * unsorted values.
 */
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> off);

/**
 * Eigenvalues of a dense symmetric matrix, exploiting exact structure:
 * the matrix is split into connected components of its exact-zero sparsity
 * pattern; each component is solved closed-form (size <= 2), by QL when its
 * submatrix is tridiagonal, and by Jacobi otherwise. All paths are exact
 * algorithms; the result equals a full Jacobi solve up to roundoff.
 */
std::vector<double> structured_symmetric_eigenvalues(const double* a, int n);

/** COO upper-triangle view of a symmetric matrix holding only exact
 *  nonzeros; used by the O(N)-sized reduced states of the pipeline. */
struct SparseSymmetric {
  struct Entry {
    int i, j;  ///< i <= j
    double v;
  };
  int dim = 0;
  std::vector<Entry> entries;

  void add(int i, int j, double v);  ///< accumulate, dropping exact zeros
  double trace() const;
};

/** Structured eigenvalues of a sparse symmetric matrix (same algorithm
 *  family as structured_symmetric_eigenvalues, without densifying). */
std::vector<double> sparse_symmetric_eigenvalues(const SparseSymmetric& m);

// ---------------------------------------------------------------------------
// Density-matrix level operations.
// ---------------------------------------------------------------------------

/** |v><v| for a unit vector (norm checked against tol.norm). */
DensityMatrix outer(const PureStateVector& v, const Tolerances& tol = {});

/** Convex mixture sum_k w_k rho_k; weights must be nonnegative and sum to 1
 *  within tol.norm; all states must share one basis. */
DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<DensityMatrix>& states,
                  const Tolerances& tol = {});

/** Partial trace keeping the factors whose party ids appear in `keep`
 *  (result factors preserve the original order). */
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Subsystem>& keep,
                            const Tolerances& tol = {});

/** Partial trace of |v><v| computed directly from the vector, without
 *  materializing the outer product. */
DensityMatrix partial_trace_pure(const PureStateVector& v,
                                 const std::vector<Subsystem>& keep,
                                 const Tolerances& tol = {});

/**
 * Spectrum of a density matrix. Eigenvalues within [-tol.psd, 0) or
 * (1, 1 + tol.psd] are clamped into [0, 1] and counted; anything further
 * outside raises Error::Numerical.
 */
Spectrum eigenvalues_symmetric(const DensityMatrix& rho, const Tolerances& tol = {});

/** Clamp raw eigenvalues into [0,1] under the PSD tolerance and sort
 *  descending (shared by the dense and sparse spectrum paths). */
Spectrum clamp_spectrum(std::vector<double> values, const Tolerances& tol = {});

/** -sum p log2 p over a nonnegative vector; 0 log 0 = 0. No normalization
 *  check: callers pass clamped spectra or probability vectors. */
double entropy_bits(std::span<const double> probs);

/** Von Neumann entropy in bits via eigenvalues_symmetric. */
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace rindler

#endif  // RINDLER_FOCKLA_HPP
