// Copyright 2026 The qbus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra: row-major matrices, tensor products and a
// Hermitian eigensolver (complex Householder tridiagonalization followed by
// implicit-shift QL on the resulting real tridiagonal matrix).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbus/errors.hpp"

namespace qbus {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline constexpr double kHermitianTolerance = 1e-10;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix entry count does not match shape");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  Complex* row(std::size_t i) noexcept { return entries_.data() + i * cols_; }
  const Complex* row(std::size_t i) const noexcept { return entries_.data() + i * cols_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_shape(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

// ---------------------------------------------------------------------------
// Elementary operations

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "matmul: inner dimensions differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out = c.row(i);
    const Complex* lhs = a.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex s = lhs[k];
      if (s == Complex{}) continue;
      const Complex* rhs = b.row(k);
      for (std::size_t j = 0; j < cols; ++j) out[j] += s * rhs[j];
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline StateVector matvec(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matvec: vector length differs from column count");
  }
  StateVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Complex* r = a.row(i);
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline ComplexMatrix conjugate(ComplexMatrix a) {
  for (auto& z : a.entries()) z = std::conj(z);
  return a;
}

inline Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::kDimensionMismatch, "trace of non-square matrix");
  Complex acc{};
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

/// (A⊗B)[i·p + k, j·q + l] = A[i,j]·B[k,l] for B of shape p×q.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex s = a(i, j);
      if (s == Complex{}) continue;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = s * b(k, l);
    }
  }
  return out;
}

inline StateVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  StateVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

inline double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

/// max |A − A†|
inline double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTolerance) {
  return a.is_square() && hermiticity_defect(a) <= rel_tol * max_abs(a);
}

/// (A + A†) / 2
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    h(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "inner product length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline StateVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::kDimensionMismatch, "basis index out of range");
  StateVector v(dim);
  v[index] = 1.0;
  return v;
}

/// |ψ⟩⟨ψ|
inline ComplexMatrix outer(std::span<const Complex> psi) {
  ComplexMatrix rho(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return rho;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace detail {

inline constexpr int kMaxQlIterations = 60;

/// Unitary reduction A = Q T Q† with T Hermitian tridiagonal. On return
/// `diag` holds T's diagonal and `sub[k]` the complex entry T[k+1, k].
/// `a` is destroyed. Q is accumulated only when `q` is non-null.
inline void householder_tridiagonalize(ComplexMatrix& a, std::vector<double>& diag,
                                       std::vector<Complex>& sub, ComplexMatrix* q) {
  const std::size_t n = a.rows();
  diag.assign(n, 0.0);
  sub.assign(n > 0 ? n - 1 : 0, Complex{});
  if (q != nullptr) *q = ComplexMatrix::identity(n);

  std::vector<Complex> w(n);
  std::vector<Complex> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t first = k + 1;
    const std::size_t m = n - first;

    double xnorm2 = 0.0;
    for (std::size_t i = first; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;

    const Complex lead = a(first, k);
    const double lead_abs = std::abs(lead);
    const Complex phase = lead_abs > 0.0 ? lead / lead_abs : Complex{1.0, 0.0};

    // Reflector P = I − 2ww† maps the column below the diagonal to −phase·‖x‖·e₁.
    for (std::size_t i = 0; i < m; ++i) w[i] = a(first + i, k);
    w[0] += phase * xnorm;
    const double wnorm = std::sqrt(2.0 * (xnorm2 + xnorm * lead_abs));
    for (std::size_t i = 0; i < m; ++i) w[i] /= wnorm;

    // B ← P B P on the trailing block, as B − 2(w r† + r w†) with r = Bw − (w†Bw) w.
    for (std::size_t i = 0; i < m; ++i) {
      const Complex* brow = a.row(first + i) + first;
      Complex acc{};
      for (std::size_t j = 0; j < m; ++j) acc += brow[j] * w[j];
      p[i] = acc;
    }
    double kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) kappa += (std::conj(w[i]) * p[i]).real();
    for (std::size_t i = 0; i < m; ++i) p[i] -= kappa * w[i];
    for (std::size_t i = 0; i < m; ++i) {
      Complex* brow = a.row(first + i) + first;
      const Complex wi2 = 2.0 * w[i];
      const Complex pi2 = 2.0 * p[i];
      for (std::size_t j = 0; j < m; ++j) brow[j] -= wi2 * std::conj(p[j]) + pi2 * std::conj(w[j]);
    }

    const Complex beta = -phase * xnorm;
    a(first, k) = beta;
    a(k, first) = std::conj(beta);
    for (std::size_t i = first + 1; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    if (q != nullptr) {
      for (std::size_t r = 0; r < n; ++r) {
        Complex* qrow = q->row(r) + first;
        Complex s{};
        for (std::size_t j = 0; j < m; ++j) s += qrow[j] * w[j];
        s *= 2.0;
        for (std::size_t j = 0; j < m; ++j) qrow[j] -= s * std::conj(w[j]);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  for (std::size_t k = 0; k + 1 < n; ++k) sub[k] = a(k + 1, k);
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix. `off[i]` couples
/// i and i+1 (off[n-1] is scratch). When `z` is non-null (row-major n×n,
/// initialised by the caller) the rotations are accumulated into its columns.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& off, std::vector<double>* z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  off.resize(static_cast<std::size_t>(n));
  off[static_cast<std::size_t>(n - 1)] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Couplings below eps·‖T‖ are negligible even between near-zero diagonal
  // entries, where the relative test alone may never trigger.
  double scale = 0.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(d[k]) + std::abs(off[k]));
  const double floor = eps * scale;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(off[m]) <= eps * dd || std::abs(off[m]) <= floor) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          throw Error(ErrorCode::kNoConvergence, "tridiagonal QL exceeded iteration cap");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * off[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + off[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * off[i];
          const double b = c * off[i];
          r = std::hypot(f, g);
          off[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            off[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            auto& zz = *z;
            for (int k = 0; k < n; ++k) {
              const std::size_t row = static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
              f = zz[row + i + 1];
              zz[row + i + 1] = s * zz[row + i] + c * f;
              zz[row + i] = c * zz[row + i] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

inline ComplexMatrix checked_hermitian_copy(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::kDimensionMismatch, "eigensolver needs a square matrix");
  for (const auto& z : a.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "matrix has non-finite entries");
    }
  }
  const double scale = max_abs(a);
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTolerance * scale) {
    throw Error(ErrorCode::kNotHermitian,
                "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  return hermitian_part(a);
}

/// Index sets of the connected components of the nonzero pattern of `a`.
/// A Hermitian matrix is block diagonal over these sets (up to permutation).
inline std::vector<std::vector<std::size_t>> decoupled_blocks(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Complex* row = a.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (row[j] != Complex{}) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

inline ComplexMatrix submatrix(const ComplexMatrix& a, std::span<const std::size_t> idx) {
  ComplexMatrix b(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = a(idx[i], idx[j]);
  return b;
}

/// Unsorted eigenvalues of a Hermitian matrix (consumed).
inline std::vector<double> eigenvalues_dense(ComplexMatrix& work) {
  std::vector<double> d;
  std::vector<Complex> sub;
  householder_tridiagonalize(work, d, sub, nullptr);
  std::vector<double> off(d.size(), 0.0);
  for (std::size_t k = 0; k < sub.size(); ++k) off[k] = std::abs(sub[k]);
  tridiagonal_ql(d, off, nullptr);
  return d;
}

/// Eigenpairs of a Hermitian matrix (consumed), ascending.
inline EigenDecomposition eig_dense(ComplexMatrix& work) {
  const std::size_t n = work.rows();
  std::vector<double> d;
  std::vector<Complex> sub;
  ComplexMatrix q;
  householder_tridiagonalize(work, d, sub, &q);

  // Diagonal unitary D makes the tridiagonal real: T = D T' D†.
  std::vector<Complex> phase(n, Complex{1.0, 0.0});
  std::vector<double> off(n, 0.0);
  for (std::size_t k = 0; k < sub.size(); ++k) {
    const double mag = std::abs(sub[k]);
    off[k] = mag;
    phase[k + 1] = mag > 0.0 ? phase[k] * (sub[k] / mag) : phase[k];
  }

  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  tridiagonal_ql(d, off, &z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  // V = Q · D · Z, columns permuted into ascending eigenvalue order.
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  std::vector<Complex> qd_row(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) qd_row[j] = q(r, j) * phase[j];
    Complex* vrow = out.eigenvectors.row(r);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t col = order[c];
      Complex acc{};
      for (std::size_t j = 0; j < n; ++j) acc += qd_row[j] * z[j * n + col];
      vrow[c] = acc;
    }
  }
  for (std::size_t c = 0; c < n; ++c) out.eigenvalues[c] = d[order[c]];
  return out;
}

}  // namespace detail

// Both solvers first split the matrix into decoupled blocks (exact zeros in
// the coupling pattern) and diagonalize each block on its own. Rounding
// errors then scale with the block norm rather than the full matrix norm.

/// Eigenvalues only, ascending. Skips all eigenvector accumulation.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  ComplexMatrix work = detail::checked_hermitian_copy(a);
  const auto blocks = detail::decoupled_blocks(work);
  std::vector<double> d;
  if (blocks.size() == 1) {
    d = detail::eigenvalues_dense(work);
  } else {
    for (const auto& idx : blocks) {
      ComplexMatrix b = detail::submatrix(work, idx);
      const auto part = detail::eigenvalues_dense(b);
      d.insert(d.end(), part.begin(), part.end());
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  ComplexMatrix work = detail::checked_hermitian_copy(a);
  const auto blocks = detail::decoupled_blocks(work);
  if (blocks.size() == 1) return detail::eig_dense(work);

  const std::size_t n = work.rows();
  struct Pair {
    double value;
    std::size_t block;
    std::size_t column;
  };
  std::vector<EigenDecomposition> parts;
  std::vector<Pair> pairs;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ComplexMatrix sub = detail::submatrix(work, blocks[b]);
    parts.push_back(detail::eig_dense(sub));
    for (std::size_t c = 0; c < blocks[b].size(); ++c) pairs.push_back({parts.back().eigenvalues[c], b, c});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.value < y.value; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = pairs[k];
    out.eigenvalues[k] = p.value;
    const auto& idx = blocks[p.block];
    for (std::size_t i = 0; i < idx.size(); ++i) out.eigenvectors(idx[i], k) = parts[p.block].eigenvectors(i, p.column);
  }
  return out;
}

/// V diag(f(λ)) V† for a Hermitian matrix with eigendecomposition V, λ.
template <typename F>
ComplexMatrix func_hermitian(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<double> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = static_cast<double>(f(eig.eigenvalues[k]));
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex* vi = v.row(i);
      const Complex* vj = v.row(j);
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += vi[k] * fl[k] * std::conj(vj[k]);
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

template <typename F>
ComplexMatrix func_hermitian(const ComplexMatrix& a, F&& f) {
  return func_hermitian(hermitian_eig(a), std::forward<F>(f));
}

}  // namespace qbus
