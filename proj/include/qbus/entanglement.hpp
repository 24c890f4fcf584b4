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

// Reduced states, partial transposition and entanglement measures.
//
// Multipartite states are described by a dimension list, e.g. {2, 2, M+1}
// for Q1 ⊗ Q2 ⊗ R. Subsystem 0 is the most significant digit of the flat
// basis index.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "qbus/errors.hpp"
#include "qbus/linalg.hpp"

namespace qbus {

using Dims = std::vector<std::size_t>;

/// Eigenvalues of magnitude below this are treated as zero in negativity sums.
inline constexpr double kNegativityZeroThreshold = 1e-12;

enum class Bipartition { kQubitQubit, kQubitsVsResonator };

inline std::string_view bipartition_name(Bipartition b) {
  return b == Bipartition::kQubitQubit ? "QQ" : "QQ_vs_R";
}

struct NegativityResult {
  double value = 0.0;
  Bipartition bipartition = Bipartition::kQubitQubit;
  std::vector<double> negative_eigenvalues;
};

namespace detail {

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

/// For each flat index: its index within the kept subsystems and within the traced ones.
struct SplitIndex {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

inline SplitIndex split_indices(std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw Error(ErrorCode::kDimensionMismatch, "kept subsystem index out of range");
    if (is_kept[k]) throw Error(ErrorCode::kInvalidArgument, "kept subsystem listed twice");
    is_kept[k] = true;
  }
  SplitIndex s;
  const std::size_t total = product(dims);
  s.kept.resize(total);
  s.traced.resize(total);
  for (std::size_t k = 0; k < dims.size(); ++k) (is_kept[k] ? s.kept_dim : s.traced_dim) *= dims[k];
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::size_t kept_idx = 0, kept_stride = 1, traced_idx = 0, traced_stride = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      const std::size_t digit = rem % dims[k];
      rem /= dims[k];
      if (is_kept[k]) {
        kept_idx += digit * kept_stride;
        kept_stride *= dims[k];
      } else {
        traced_idx += digit * traced_stride;
        traced_stride *= dims[k];
      }
    }
    s.kept[flat] = kept_idx;
    s.traced[flat] = traced_idx;
  }
  return s;
}

/// Flat indices grouped by their traced-out multi-index.
inline std::vector<std::vector<std::size_t>> group_by_traced(const SplitIndex& s) {
  std::vector<std::vector<std::size_t>> groups(s.traced_dim);
  for (std::size_t flat = 0; flat < s.kept.size(); ++flat) groups[s.traced[flat]].push_back(flat);
  return groups;
}

inline void require_dims(std::size_t actual, std::span<const std::size_t> dims) {
  if (actual != product(dims)) {
    throw Error(ErrorCode::kDimensionMismatch, "state dimension does not match subsystem dimensions");
  }
}

}  // namespace detail

inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  if (!rho.is_square()) throw Error(ErrorCode::kDimensionMismatch, "density matrix must be square");
  detail::require_dims(rho.rows(), dims);
  const auto split = detail::split_indices(dims, keep);
  ComplexMatrix out(split.kept_dim, split.kept_dim);
  for (const auto& group : detail::group_by_traced(split)) {
    for (std::size_t i : group)
      for (std::size_t j : group) out(split.kept[i], split.kept[j]) += rho(i, j);
  }
  return out;
}

inline ComplexMatrix partial_trace(std::span<const Complex> psi, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  detail::require_dims(psi.size(), dims);
  const auto split = detail::split_indices(dims, keep);
  ComplexMatrix out(split.kept_dim, split.kept_dim);
  for (const auto& group : detail::group_by_traced(split)) {
    for (std::size_t i : group) {
      if (psi[i] == Complex{}) continue;
      for (std::size_t j : group) out(split.kept[i], split.kept[j]) += psi[i] * std::conj(psi[j]);
    }
  }
  return out;
}

/// ρ_{Q1Q2} of a Q1 ⊗ Q2 ⊗ R pure state with `fock_dim` resonator levels.
inline ComplexMatrix reduce_to_qubits(std::span<const Complex> psi, std::size_t fock_dim) {
  if (psi.size() != 4 * fock_dim) throw Error(ErrorCode::kDimensionMismatch, "state is not 4·(M+1) long");
  // Direct contraction over n; equivalent to partial_trace(psi, {2,2,F}, {0,1}).
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      Complex acc{};
      const Complex* pi = psi.data() + i * fock_dim;
      const Complex* pj = psi.data() + j * fock_dim;
      for (std::size_t n = 0; n < fock_dim; ++n) acc += pi[n] * std::conj(pj[n]);
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

inline ComplexMatrix reduce_to_qubits(const ComplexMatrix& rho, std::size_t fock_dim) {
  const std::size_t dims[] = {2, 2, fock_dim};
  const std::size_t keep[] = {0, 1};
  return partial_trace(rho, dims, keep);
}

/// Transposes the indices of one subsystem; an involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                       std::size_t subsystem) {
  if (!rho.is_square()) throw Error(ErrorCode::kDimensionMismatch, "density matrix must be square");
  detail::require_dims(rho.rows(), dims);
  if (subsystem >= dims.size()) throw Error(ErrorCode::kDimensionMismatch, "subsystem index out of range");
  std::size_t stride = 1;
  for (std::size_t k = subsystem + 1; k < dims.size(); ++k) stride *= dims[k];
  const std::size_t d = dims[subsystem];
  const std::size_t n = rho.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = (i / stride) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = (j / stride) % d;
      const std::size_t ii = i + (dj - di) * stride;  // modular arithmetic keeps this exact
      const std::size_t jj = j + (di - dj) * stride;
      out(ii, jj) = rho(i, j);
    }
  }
  return out;
}

inline NegativityResult negativity_from_spectrum(std::span<const double> eigenvalues, Bipartition b) {
  NegativityResult r;
  r.bipartition = b;
  double sum = 0.0;
  for (double l : eigenvalues) {
    if (l < -kNegativityZeroThreshold) {
      r.negative_eigenvalues.push_back(l);
      sum += l;
    }
  }
  r.value = std::max(0.0, -sum);
  return r;
}

/// max(0, −Σ negative eigenvalues of ρ^Γ). For kQubitQubit, `dims` may be
/// {2, 2} or {2, 2, F} (the resonator is traced out first) and qubit 2 is
/// transposed; for kQubitsVsResonator `dims` must be {2, 2, F} and the
/// resonator factor is transposed (unnormalized, may exceed ½).
inline NegativityResult negativity(const ComplexMatrix& rho, std::span<const std::size_t> dims, Bipartition b) {
  if (b == Bipartition::kQubitQubit) {
    if (dims.size() == 3 && dims[0] == 2 && dims[1] == 2) {
      const std::size_t keep[] = {0, 1};
      const std::size_t qq[] = {2, 2};
      return negativity_from_spectrum(
          hermitian_eigenvalues(partial_transpose(partial_trace(rho, dims, keep), qq, 1)), b);
    }
    if (dims.size() == 2 && dims[0] == 2 && dims[1] == 2) {
      return negativity_from_spectrum(hermitian_eigenvalues(partial_transpose(rho, dims, 1)), b);
    }
    throw Error(ErrorCode::kDimensionMismatch, "QQ negativity needs dims {2,2} or {2,2,F}");
  }
  if (dims.size() != 3 || dims[0] != 2 || dims[1] != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "QQ_vs_R negativity needs dims {2,2,F}");
  }
  return negativity_from_spectrum(hermitian_eigenvalues(partial_transpose(rho, dims, 2)), b);
}

/// Two-qubit negativity of a 4×4 density matrix.
inline double negativity_qq(const ComplexMatrix& rho_qq) {
  const std::size_t qq[] = {2, 2};
  return negativity(rho_qq, qq, Bipartition::kQubitQubit).value;
}

/// Negativity across (qubits | resonator) for a pure state from its Schmidt
/// coefficients σᵢ: N = ((Σ σᵢ)² − 1)/2. The 4×F coefficient matrix Ψ is
/// compressed to a 4×4 triangular factor by Householder QR of Ψ†, and the σᵢ
/// are read off the spectrum of the Hermitian dilation [[0, R], [R†, 0]].
/// This keeps small coefficients accurate to rounding (squaring them first
/// would not). Agrees with the partial-transpose route for pure states.
inline double negativity_qq_r_pure(std::span<const Complex> psi, std::size_t fock_dim) {
  if (psi.size() != 4 * fock_dim) throw Error(ErrorCode::kDimensionMismatch, "state is not 4·(M+1) long");
  const std::size_t rank = std::min<std::size_t>(4, fock_dim);
  // cols[j] holds column j of Ψ†, i.e. the conjugated qubit-row j of Ψ.
  std::array<std::vector<Complex>, 4> cols;
  for (std::size_t j = 0; j < 4; ++j) {
    cols[j].resize(fock_dim);
    for (std::size_t k = 0; k < fock_dim; ++k) cols[j][k] = std::conj(psi[j * fock_dim + k]);
  }
  for (std::size_t j = 0; j < rank; ++j) {
    auto& x = cols[j];
    double len2 = 0.0;
    for (std::size_t k = j; k < fock_dim; ++k) len2 += std::norm(x[k]);
    const double len = std::sqrt(len2);
    if (len == 0.0) continue;
    const Complex phase = std::abs(x[j]) > 0.0 ? x[j] / std::abs(x[j]) : Complex{1.0, 0.0};
    const Complex head = -phase * len;
    std::vector<Complex> v(x.begin() + static_cast<std::ptrdiff_t>(j), x.end());
    v[0] -= head;
    double vv = 0.0;
    for (const auto& e : v) vv += std::norm(e);
    if (vv == 0.0) continue;
    for (std::size_t c = j + 1; c < 4; ++c) {
      Complex dot{};
      for (std::size_t k = 0; k < v.size(); ++k) dot += std::conj(v[k]) * cols[c][j + k];
      const Complex f = 2.0 * dot / vv;
      for (std::size_t k = 0; k < v.size(); ++k) cols[c][j + k] -= f * v[k];
    }
    x[j] = head;
    for (std::size_t k = j + 1; k < fock_dim; ++k) x[k] = 0.0;
  }
  const std::size_t n = rank + 4;
  ComplexMatrix dilation(n, n);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      dilation(i, rank + j) = cols[j][i];
      dilation(rank + j, i) = std::conj(cols[j][i]);
    }
  }
  const auto spectrum = hermitian_eigenvalues(dilation);
  double s = 0.0;
  for (std::size_t k = 0; k < rank; ++k) s += std::max(spectrum[n - 1 - k], 0.0);
  const double value = 0.5 * (s * s - 1.0);
  return value > kNegativityZeroThreshold ? value : 0.0;
}

/// Wootters concurrence max(0, λ₁ − λ₂ − λ₃ − λ₄), with λᵢ the descending
/// square roots of the spectrum of √ρ ρ̃ √ρ, ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
inline double concurrence(const ComplexMatrix& rho_qq) {
  if (rho_qq.rows() != 4 || rho_qq.cols() != 4) {
    throw Error(ErrorCode::kDimensionMismatch, "concurrence needs a 4×4 density matrix");
  }
  ComplexMatrix flip(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix tilde = flip * conjugate(rho_qq) * flip;
  const ComplexMatrix root = func_hermitian(rho_qq, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  auto spectrum = hermitian_eigenvalues(hermitian_part(root * tilde * root));
  std::vector<double> lambda(spectrum.size());
  std::transform(spectrum.begin(), spectrum.end(), lambda.begin(),
                 [](double x) { return std::sqrt(std::max(x, 0.0)); });
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

/// tr ρ²
inline double purity(const ComplexMatrix& rho) {
  if (!rho.is_square()) throw Error(ErrorCode::kDimensionMismatch, "density matrix must be square");
  double s = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) s += (rho(i, j) * rho(j, i)).real();
  return s;
}

/// Population in the `top_k` highest retained Fock levels (last subsystem).
inline double leakage(std::span<const Complex> psi, std::size_t fock_dim, std::size_t top_k) {
  if (top_k > fock_dim) throw Error(ErrorCode::kInvalidArgument, "top_k exceeds the number of Fock levels");
  if (psi.size() % fock_dim != 0) throw Error(ErrorCode::kDimensionMismatch, "state length not a multiple of F");
  double p = 0.0;
  for (std::size_t block = 0; block < psi.size() / fock_dim; ++block)
    for (std::size_t n = fock_dim - top_k; n < fock_dim; ++n) p += std::norm(psi[block * fock_dim + n]);
  return p;
}

inline double leakage(const ComplexMatrix& rho, std::size_t fock_dim, std::size_t top_k) {
  if (top_k > fock_dim) throw Error(ErrorCode::kInvalidArgument, "top_k exceeds the number of Fock levels");
  if (!rho.is_square() || rho.rows() % fock_dim != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "density matrix size not a multiple of F");
  }
  double p = 0.0;
  for (std::size_t block = 0; block < rho.rows() / fock_dim; ++block)
    for (std::size_t n = fock_dim - top_k; n < fock_dim; ++n) {
      const std::size_t k = block * fock_dim + n;
      p += rho(k, k).real();
    }
  return p;
}

}  // namespace qbus
