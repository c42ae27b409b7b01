/*
 * This file is part of rindler-corr.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "rindler/fockla.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace rindler {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double frobenius(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

/** Union-find over matrix indices, used to split exact-zero sparsity
 *  patterns into connected components. */
class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
  }

private:
  std::vector<int> parent_;
};

/** True when the component submatrix, in sorted index order, is tridiagonal. */
bool component_is_tridiagonal(const std::vector<int>& pos_of,
                              const SparseSymmetric::Entry* entries,
                              const std::vector<size_t>& which) {
  for (size_t k : which) {
    const auto& e = entries[k];
    if (std::abs(pos_of[e.i] - pos_of[e.j]) > 1) return false;
  }
  return true;
}

/** Eigenvalues of one connected component given its entries. */
void solve_component(const std::vector<int>& indices,
                     const std::vector<size_t>& which,
                     const std::vector<SparseSymmetric::Entry>& entries,
                     std::vector<double>& out) {
  const int n = static_cast<int>(indices.size());
  if (n == 1) {
    double v = 0.0;
    for (size_t k : which) v += entries[k].v;  // diagonal entry (possibly accumulated)
    out.push_back(v);
    return;
  }

  // Map original index -> position within the sorted component.
  // indices is sorted ascending; build a lookup.
  std::vector<int> pos_of(indices.back() + 1, -1);
  for (int p = 0; p < n; ++p) pos_of[indices[static_cast<size_t>(p)]] = p;

  if (component_is_tridiagonal(pos_of, entries.data(), which)) {
    std::vector<double> d(static_cast<size_t>(n), 0.0);
    std::vector<double> e(static_cast<size_t>(n - 1), 0.0);
    for (size_t k : which) {
      const auto& en = entries[k];
      int pi = pos_of[en.i], pj = pos_of[en.j];
      if (pi == pj)
        d[static_cast<size_t>(pi)] += en.v;
      else
        e[static_cast<size_t>(std::min(pi, pj))] += en.v;
    }
    auto ev = tridiagonal_eigenvalues(std::move(d), std::move(e));
    out.insert(out.end(), ev.begin(), ev.end());
    return;
  }

  // Dense fallback: Jacobi on the densified component.
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (size_t k : which) {
    const auto& en = entries[k];
    int pi = pos_of[en.i], pj = pos_of[en.j];
    a[static_cast<size_t>(pi) * n + pj] += en.v;
    if (pi != pj) a[static_cast<size_t>(pj) * n + pi] += en.v;
  }
  auto ev = jacobi_eigenvalues(std::move(a), n);
  out.insert(out.end(), ev.begin(), ev.end());
}

}  // namespace

const char* subsystem_name(Subsystem s) {
  switch (s) {
    case Subsystem::Alice: return "A";
    case Subsystem::Rob: return "R";
    case Subsystem::AntiRob: return "AntiR";
    case Subsystem::Aux: return "Aux";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// BasisLabel
// ---------------------------------------------------------------------------

BasisLabel::BasisLabel(std::vector<BasisFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty())
    throw Error(Error::Code::InvalidArgument, "basis needs at least one factor");
  long long total = 1;
  for (size_t k = 0; k < factors_.size(); ++k) {
    const auto& f = factors_[k];
    if (f.dim < 1)
      throw Error(Error::Code::InvalidArgument, "basis factor dimension must be >= 1");
    if (f.id == Subsystem::Alice && f.dim != 2)
      throw Error(Error::Code::InvalidArgument, "the Alice factor is a qubit (dim 2)");
    for (size_t j = 0; j < k; ++j)
      if (factors_[j].id == f.id)
        throw Error(Error::Code::InvalidArgument,
                    std::string("duplicate basis factor: ") + subsystem_name(f.id));
    total *= f.dim;
    if (total > (1LL << 31))
      throw Error(Error::Code::InvalidArgument, "basis dimension overflow");
  }
  total_dim_ = static_cast<int>(total);
}

int BasisLabel::position_of(Subsystem id) const {
  for (size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k].id == id) return static_cast<int>(k);
  return -1;
}

int BasisLabel::stride(int k) const {
  int s = 1;
  for (size_t j = factors_.size(); j-- > static_cast<size_t>(k) + 1;) s *= factors_[j].dim;
  return s;
}

bool operator==(const BasisLabel& a, const BasisLabel& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (size_t k = 0; k < a.factors_.size(); ++k)
    if (a.factors_[k].id != b.factors_[k].id || a.factors_[k].dim != b.factors_[k].dim)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// PureStateVector / DensityMatrix
// ---------------------------------------------------------------------------

PureStateVector::PureStateVector(BasisLabel basis, std::vector<double> amplitudes)
    : basis_(std::move(basis)), amp_(std::move(amplitudes)) {
  if (static_cast<int>(amp_.size()) != basis_.total_dim())
    throw Error(Error::Code::InvalidArgument,
                "amplitude count does not match the basis dimension");
}

double PureStateVector::norm() const {
  double s = 0.0;
  for (double x : amp_) s += x * x;
  return std::sqrt(s);
}

void PureStateVector::normalize() {
  double n = norm();
  if (!(n > 1e-300))
    throw Error(Error::Code::Numerical, "cannot normalize a null state vector");
  for (double& x : amp_) x /= n;
}

DensityMatrix::DensityMatrix(BasisLabel basis, std::vector<double> data, const Tolerances& tol)
    : basis_(std::move(basis)), dim_(basis_.total_dim()), data_(std::move(data)) {
  if (data_.size() != static_cast<size_t>(dim_) * dim_)
    throw Error(Error::Code::InvalidArgument, "density matrix storage size mismatch");
  double scale = 0.0;
  for (double x : data_) scale = std::max(scale, std::abs(x));
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      double& u = data_[static_cast<size_t>(i) * dim_ + j];
      double& l = data_[static_cast<size_t>(j) * dim_ + i];
      if (std::abs(u - l) > 1e-12 * std::max(scale, 1e-300))
        throw Error(Error::Code::InvalidArgument, "density matrix is not symmetric");
      double m = 0.5 * (u + l);
      u = l = m;
    }
  double tr = trace();
  if (std::abs(tr - 1.0) > tol.norm)
    throw Error(Error::Code::Numerical,
                "density matrix trace " + fmt_double(tr) + " deviates from 1 beyond tolerance");
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

// ---------------------------------------------------------------------------
// Eigensolvers
// ---------------------------------------------------------------------------

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  if (n == 0) return {};
  if (static_cast<size_t>(n) * n != a.size())
    throw Error(Error::Code::InvalidArgument, "jacobi: storage size mismatch");

  const double fro = frobenius(a);
  if (fro == 0.0) return std::vector<double>(static_cast<size_t>(n), 0.0);
  const double stop = 1e-12 * fro;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double v = a[static_cast<size_t>(i) * n + j];
        s += 2.0 * v * v;
      }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() < stop) {
      std::vector<double> ev(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a[static_cast<size_t>(i) * n + i];
      return ev;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[static_cast<size_t>(p) * n + q];
        if (apq == 0.0) continue;
        double app = a[static_cast<size_t>(p) * n + p];
        double aqq = a[static_cast<size_t>(q) * n + q];
        // Rotation angle chosen to annihilate a_pq.
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        a[static_cast<size_t>(p) * n + p] = app - t * apq;
        a[static_cast<size_t>(q) * n + q] = aqq + t * apq;
        a[static_cast<size_t>(p) * n + q] = 0.0;
        a[static_cast<size_t>(q) * n + p] = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[static_cast<size_t>(k) * n + p];
          double akq = a[static_cast<size_t>(k) * n + q];
          double np = akp - s * (akq + tau * akp);
          double nq = akq + s * (akp - tau * akq);
          a[static_cast<size_t>(k) * n + p] = np;
          a[static_cast<size_t>(p) * n + k] = np;
          a[static_cast<size_t>(k) * n + q] = nq;
          a[static_cast<size_t>(q) * n + k] = nq;
        }
      }
    }
  }
  throw Error(Error::Code::Numerical, "jacobi eigensolver failed to converge");
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (e.size() + 1 != d.size())
    throw Error(Error::Code::InvalidArgument, "tridiagonal: off-diagonal size mismatch");
  if (n == 1) return d;
  e.push_back(0.0);  // sentinel

  const double eps = 2.22044604925031308e-16;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[static_cast<size_t>(m)]) + std::abs(d[static_cast<size_t>(m) + 1]);
        if (std::abs(e[static_cast<size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw Error(Error::Code::Numerical, "QL eigensolver failed to converge");
        double g = (d[static_cast<size_t>(l) + 1] - d[static_cast<size_t>(l)]) /
                   (2.0 * e[static_cast<size_t>(l)]);
        double r = std::sqrt(g * g + 1.0);
        g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
            e[static_cast<size_t>(l)] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<size_t>(i)];
          double b = c * e[static_cast<size_t>(i)];
          // Entries are bounded by the unit trace, so the plain norm cannot
          // overflow; avoids the cost of std::hypot in the innermost loop.
          r = std::sqrt(f * f + g * g);
          e[static_cast<size_t>(i) + 1] = r;
          if (r == 0.0) {
            d[static_cast<size_t>(i) + 1] -= p;
            e[static_cast<size_t>(m)] = 0.0;
            break;
          }
          const double inv = 1.0 / r;
          s = f * inv;
          c = g * inv;
          g = d[static_cast<size_t>(i) + 1] - p;
          r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<size_t>(i) + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<size_t>(l)] -= p;
        e[static_cast<size_t>(l)] = g;
        e[static_cast<size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
  return d;
}

void SparseSymmetric::add(int i, int j, double v) {
  if (v == 0.0) return;
  if (i > j) std::swap(i, j);
  entries.push_back({i, j, v});
}

double SparseSymmetric::trace() const {
  double t = 0.0;
  for (const auto& e : entries)
    if (e.i == e.j) t += e.v;
  return t;
}

std::vector<double> sparse_symmetric_eigenvalues(const SparseSymmetric& m) {
  if (m.dim <= 0)
    throw Error(Error::Code::InvalidArgument, "sparse spectrum: empty matrix");

  UnionFind uf(m.dim);
  std::vector<char> touched(static_cast<size_t>(m.dim), 0);
  for (const auto& e : m.entries) {
    touched[static_cast<size_t>(e.i)] = touched[static_cast<size_t>(e.j)] = 1;
    if (e.i != e.j) uf.unite(e.i, e.j);
  }

  // Group entry indices by component root.
  std::vector<int> root(static_cast<size_t>(m.dim), -1);
  std::vector<std::vector<int>> comp_indices;
  std::vector<std::vector<size_t>> comp_entries;
  std::vector<int> comp_of_root(static_cast<size_t>(m.dim), -1);
  for (int i = 0; i < m.dim; ++i) {
    if (!touched[static_cast<size_t>(i)]) continue;  // untouched index: eigenvalue 0
    int r = uf.find(i);
    if (comp_of_root[static_cast<size_t>(r)] < 0) {
      comp_of_root[static_cast<size_t>(r)] = static_cast<int>(comp_indices.size());
      comp_indices.emplace_back();
      comp_entries.emplace_back();
    }
    comp_indices[static_cast<size_t>(comp_of_root[static_cast<size_t>(r)])].push_back(i);
  }
  for (size_t k = 0; k < m.entries.size(); ++k) {
    int r = uf.find(m.entries[k].i);
    comp_entries[static_cast<size_t>(comp_of_root[static_cast<size_t>(r)])].push_back(k);
  }

  std::vector<double> ev;
  ev.reserve(static_cast<size_t>(m.dim));
  for (size_t c = 0; c < comp_indices.size(); ++c)
    solve_component(comp_indices[c], comp_entries[c], m.entries, ev);
  // Untouched indices contribute zero eigenvalues.
  ev.resize(static_cast<size_t>(m.dim), 0.0);
  return ev;
}

std::vector<double> structured_symmetric_eigenvalues(const double* a, int n) {
  SparseSymmetric m;
  m.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.add(i, j, a[static_cast<size_t>(i) * n + j]);
  return sparse_symmetric_eigenvalues(m);
}

// ---------------------------------------------------------------------------
// Density-matrix operations
// ---------------------------------------------------------------------------

DensityMatrix outer(const PureStateVector& v, const Tolerances& tol) {
  if (std::abs(v.norm() - 1.0) > tol.norm)
    throw Error(Error::Code::Numerical, "outer: state vector is not normalized");
  const int n = v.dim();
  std::vector<double> a(static_cast<size_t>(n) * n);
  const auto& x = v.amplitudes();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
  return DensityMatrix(v.basis(), std::move(a), tol);
}

DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<DensityMatrix>& states,
                  const Tolerances& tol) {
  if (weights.empty() || weights.size() != states.size())
    throw Error(Error::Code::InvalidArgument, "mix: weights and states must pair up");
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error(Error::Code::InvalidArgument, "mix: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > tol.norm)
    throw Error(Error::Code::InvalidArgument, "mix: weights must sum to 1");
  const BasisLabel& basis = states.front().basis();
  for (const auto& s : states)
    if (s.basis() != basis)
      throw Error(Error::Code::InvalidArgument, "mix: mismatched bases");

  const int n = basis.total_dim();
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (size_t k = 0; k < states.size(); ++k) {
    const auto& d = states[k].data();
    for (size_t t = 0; t < a.size(); ++t) a[t] += weights[k] * d[t];
  }
  return DensityMatrix(basis, std::move(a), tol);
}

namespace {

/** Shared layout for both partial-trace variants: offsets of kept and
 *  traced multi-indices into the flat index space. */
struct TraceLayout {
  BasisLabel kept_basis;
  std::vector<int> kept_offsets;
  std::vector<int> traced_offsets;
};

TraceLayout trace_layout(const BasisLabel& basis, const std::vector<Subsystem>& keep) {
  if (keep.empty())
    throw Error(Error::Code::InvalidArgument, "partial trace must keep at least one factor");
  std::vector<char> keep_mask(static_cast<size_t>(basis.factor_count()), 0);
  for (Subsystem id : keep) {
    int pos = basis.position_of(id);
    if (pos < 0)
      throw Error(Error::Code::InvalidArgument,
                  std::string("partial trace: basis has no factor ") + subsystem_name(id));
    if (keep_mask[static_cast<size_t>(pos)])
      throw Error(Error::Code::InvalidArgument, "partial trace: factor kept twice");
    keep_mask[static_cast<size_t>(pos)] = 1;
  }

  std::vector<BasisFactor> kept;
  std::vector<int> kept_pos, traced_pos;
  for (int k = 0; k < basis.factor_count(); ++k) {
    if (keep_mask[static_cast<size_t>(k)]) {
      kept.push_back(basis.factor(k));
      kept_pos.push_back(k);
    } else {
      traced_pos.push_back(k);
    }
  }

  auto offsets_over = [&](const std::vector<int>& pos) {
    std::vector<int> off{0};
    for (int k : pos) {
      const int dim = basis.factor(k).dim;
      const int stride = basis.stride(k);
      std::vector<int> next;
      next.reserve(off.size() * static_cast<size_t>(dim));
      for (int base : off)
        for (int i = 0; i < dim; ++i) next.push_back(base + i * stride);
      off = std::move(next);
    }
    return off;
  };

  return TraceLayout{BasisLabel(std::move(kept)), offsets_over(kept_pos),
                     offsets_over(traced_pos)};
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Subsystem>& keep,
                            const Tolerances& tol) {
  TraceLayout lay = trace_layout(rho.basis(), keep);
  const int kd = lay.kept_basis.total_dim();
  const int full = rho.dim();
  std::vector<double> out(static_cast<size_t>(kd) * kd, 0.0);
  const auto& a = rho.data();
  for (int i = 0; i < kd; ++i)
    for (int j = i; j < kd; ++j) {
      double s = 0.0;
      for (int toff : lay.traced_offsets) {
        const int ri = lay.kept_offsets[static_cast<size_t>(i)] + toff;
        const int cj = lay.kept_offsets[static_cast<size_t>(j)] + toff;
        s += a[static_cast<size_t>(ri) * full + cj];
      }
      out[static_cast<size_t>(i) * kd + j] = s;
      out[static_cast<size_t>(j) * kd + i] = s;
    }
  return DensityMatrix(lay.kept_basis, std::move(out), tol);
}

DensityMatrix partial_trace_pure(const PureStateVector& v, const std::vector<Subsystem>& keep,
                                 const Tolerances& tol) {
  if (std::abs(v.norm() - 1.0) > tol.norm)
    throw Error(Error::Code::Numerical, "partial_trace_pure: state is not normalized");
  TraceLayout lay = trace_layout(v.basis(), keep);
  const int kd = lay.kept_basis.total_dim();
  std::vector<double> out(static_cast<size_t>(kd) * kd, 0.0);
  const auto& x = v.amplitudes();
  for (int i = 0; i < kd; ++i)
    for (int j = i; j < kd; ++j) {
      double s = 0.0;
      for (int toff : lay.traced_offsets)
        s += x[static_cast<size_t>(lay.kept_offsets[static_cast<size_t>(i)] + toff)] *
             x[static_cast<size_t>(lay.kept_offsets[static_cast<size_t>(j)] + toff)];
      out[static_cast<size_t>(i) * kd + j] = s;
      out[static_cast<size_t>(j) * kd + i] = s;
    }
  return DensityMatrix(lay.kept_basis, std::move(out), tol);
}

Spectrum clamp_spectrum(std::vector<double> values, const Tolerances& tol) {
  Spectrum sp;
  for (double& v : values) {
    if (v < 0.0) {
      if (v < -tol.psd)
        throw Error(Error::Code::Numerical,
                    "eigenvalue " + fmt_double(v) + " below the PSD tolerance");
      v = 0.0;
      ++sp.clamped_count;
    } else if (v > 1.0) {
      if (v > 1.0 + tol.psd)
        throw Error(Error::Code::Numerical,
                    "eigenvalue " + fmt_double(v) + " above 1 beyond tolerance");
      v = 1.0;
      ++sp.clamped_count;
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  sp.eigenvalues = std::move(values);
  return sp;
}

Spectrum eigenvalues_symmetric(const DensityMatrix& rho, const Tolerances& tol) {
  return clamp_spectrum(structured_symmetric_eigenvalues(rho.data().data(), rho.dim()), tol);
}

double entropy_bits(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  Spectrum sp = eigenvalues_symmetric(rho, tol);
  return entropy_bits(sp.eigenvalues);
}

}  // namespace rindler
