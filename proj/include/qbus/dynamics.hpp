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

// Time evolution: exact unitary propagation through the spectrum of H, and
// fixed-step classical Runge–Kutta integration of the Lindblad equation
//   ρ̇ = −i[H, ρ] − ½ Σₖ (Cₖ†Cₖρ + ρCₖ†Cₖ − 2CₖρCₖ†).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbus/errors.hpp"
#include "qbus/linalg.hpp"
#include "qbus/model.hpp"

namespace qbus {

struct PureTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

struct MixedTrajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<double> min_eigenvalues;  // per sample; empty when positivity checks are off
  double max_trace_drift = 0.0;
  double step = 0.0;                    // step actually used
};

namespace detail {

inline void require_sample_times(std::span<const double> times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || !std::isfinite(times[k])) {
      throw Error(ErrorCode::kInvalidArgument, "sample times must be finite and non-negative");
    }
    if (k > 0 && times[k] < times[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "sample times must be ascending");
    }
  }
}

}  // namespace detail

/// Caches the eigendecomposition of a time-independent Hamiltonian.
class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const ComplexMatrix& hamiltonian) : eig_(hermitian_eig(hamiltonian)) {}

  std::size_t dim() const { return eig_.eigenvalues.size(); }
  const EigenDecomposition& spectrum() const { return eig_; }

  /// V†ψ
  StateVector to_eigenbasis(std::span<const Complex> psi) const {
    if (psi.size() != dim()) throw Error(ErrorCode::kDimensionMismatch, "state length differs from H");
    const std::size_t n = dim();
    StateVector c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex* vrow = eig_.eigenvectors.row(i);
      const Complex amp = psi[i];
      if (amp == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) c[k] += std::conj(vrow[k]) * amp;
    }
    return c;
  }

  /// V e^{−iλt} c
  StateVector from_eigenbasis(std::span<const Complex> coeffs, double t) const {
    const std::size_t n = dim();
    StateVector phased(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -eig_.eigenvalues[k] * t;
      phased[k] = coeffs[k] * Complex{std::cos(angle), std::sin(angle)};
    }
    return matvec(eig_.eigenvectors, phased);
  }

  StateVector evolve(std::span<const Complex> psi0, double t) const {
    if (t == 0.0) {
      if (psi0.size() != dim()) throw Error(ErrorCode::kDimensionMismatch, "state length differs from H");
      return StateVector(psi0.begin(), psi0.end());
    }
    return from_eigenbasis(to_eigenbasis(psi0), t);
  }

 private:
  EigenDecomposition eig_;
};

inline PureTrajectory evolve_unitary(const UnitaryPropagator& propagator, std::span<const Complex> psi0,
                                     std::span<const double> times) {
  if (psi0.size() != propagator.dim()) throw Error(ErrorCode::kDimensionMismatch, "state length differs from H");
  if (std::abs(norm(psi0) - 1.0) > 1e-10) throw Error(ErrorCode::kInvalidArgument, "initial state not normalized");
  detail::require_sample_times(times);
  PureTrajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  const StateVector coeffs = propagator.to_eigenbasis(psi0);
  for (double t : times) {
    traj.states.push_back(t == 0.0 ? StateVector(psi0.begin(), psi0.end()) : propagator.from_eigenbasis(coeffs, t));
  }
  return traj;
}

inline PureTrajectory evolve_unitary(const ComplexMatrix& hamiltonian, std::span<const Complex> psi0,
                                     std::span<const double> times) {
  if (hamiltonian.rows() != psi0.size()) throw Error(ErrorCode::kDimensionMismatch, "state length differs from H");
  return evolve_unitary(UnitaryPropagator(hamiltonian), psi0, times);
}

// ---------------------------------------------------------------------------
// Open-system dynamics

/// Damping lifetimes in seconds. `omega_phys` (rad/s) converts a lifetime T
/// into the dimensionless rate 1/(T·ω_phys). An infinite lifetime disables
/// the channel. With `standard_lowering` the qubit jump operator is
/// |g⟩⟨e| instead of the factor-2 σ⁻ used by the Hamiltonian.
struct LindbladSpec {
  double t_r = 5e-5;
  double t_q1 = 1e-5;
  double t_q2 = 1e-5;
  double omega_phys = 2.0 * std::numbers::pi * 5e9;
  bool standard_lowering = false;
  double step = 0.05;

  double rate(double lifetime) const { return std::isinf(lifetime) ? 0.0 : 1.0 / (lifetime * omega_phys); }

  void validate() const {
    for (double t : {t_r, t_q1, t_q2}) {
      if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lifetimes must be positive");
    }
    if (!(omega_phys > 0.0) || !std::isfinite(omega_phys)) {
      throw Error(ErrorCode::kInvalidArgument, "omega_phys must be positive");
    }
    if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::kInvalidArgument, "step must be positive");
  }

  friend bool operator==(const LindbladSpec&, const LindbladSpec&) = default;
};

/// A = a/√(T_R ω), Σᵢ = σ⁻ᵢ/√(T_Qi ω) on Q1 ⊗ Q2 ⊗ R. Channels with zero rate are omitted.
inline std::vector<ComplexMatrix> collapse_operators(const LindbladSpec& spec, std::size_t fock_cutoff) {
  spec.validate();
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix ir = ComplexMatrix::identity(fock_cutoff + 1);
  ComplexMatrix lowering = sigma_minus();
  if (spec.standard_lowering) lowering *= 0.5;

  std::vector<ComplexMatrix> ops;
  if (const double r = spec.rate(spec.t_r); r > 0.0) ops.push_back(std::sqrt(r) * embed(i2, i2, annihilation(fock_cutoff)));
  if (const double r = spec.rate(spec.t_q1); r > 0.0) ops.push_back(std::sqrt(r) * embed(lowering, i2, ir));
  if (const double r = spec.rate(spec.t_q2); r > 0.0) ops.push_back(std::sqrt(r) * embed(i2, lowering, ir));
  return ops;
}

/// Dense reference evaluation of the Lindblad right-hand side.
inline ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian,
                                  std::span<const ComplexMatrix> collapse_ops) {
  if (!rho.is_square() || rho.rows() != hamiltonian.rows() || !hamiltonian.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch, "lindblad_rhs: rho and H shapes differ");
  }
  const Complex minus_i{0.0, -1.0};
  ComplexMatrix out = minus_i * (hamiltonian * rho - rho * hamiltonian);
  for (const auto& c : collapse_ops) {
    if (c.rows() != rho.rows() || c.cols() != rho.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "lindblad_rhs: collapse operator shape differs");
    }
    const ComplexMatrix cd = adjoint(c);
    const ComplexMatrix cdc = cd * c;
    out -= 0.5 * (cdc * rho + rho * cdc);
    out += c * rho * cd;
  }
  return out;
}

namespace detail {

/// Row-compressed complex matrix used internally by the integrator.
struct CompressedRows {
  std::size_t rows = 0;
  std::vector<std::size_t> offsets;  // rows + 1
  std::vector<std::size_t> columns;
  std::vector<Complex> values;
  bool real_valued = true;

  /// Entries with |x| ≤ drop·max|A| are discarded.
  static CompressedRows from_dense(const ComplexMatrix& a, double drop = 1e-15) {
    CompressedRows s;
    s.rows = a.rows();
    s.offsets.reserve(a.rows() + 1);
    s.offsets.push_back(0);
    const double cut = drop * max_abs(a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const Complex v = a(i, j);
        if (std::abs(v) > cut) {
          s.columns.push_back(j);
          s.values.push_back(v);
          if (v.imag() != 0.0) s.real_valued = false;
        }
      }
      s.offsets.push_back(s.columns.size());
    }
    return s;
  }

  bool empty() const { return values.empty(); }

  /// out = this · dense (square, row-major). Works on the interleaved
  /// (re, im) storage so the inner loops vectorize.
  void multiply(const ComplexMatrix& dense, ComplexMatrix& out) const { product(dense, out, false); }

  /// out += this · dense
  void multiply_add(const ComplexMatrix& dense, ComplexMatrix& out) const { product(dense, out, true); }

 private:
  void product(const ComplexMatrix& dense, ComplexMatrix& out, bool accumulate) const {
    const std::size_t width = 2 * dense.cols();
    for (std::size_t i = 0; i < rows; ++i) {
      double* o = reinterpret_cast<double*>(out.row(i));
      if (!accumulate) std::fill(o, o + width, 0.0);
      std::size_t k = offsets[i];
      if (real_valued) {
        // Four source rows per pass halve the load/store traffic on `o`.
        for (; k + 4 <= offsets[i + 1]; k += 4) {
          const double* s0 = reinterpret_cast<const double*>(dense.row(columns[k]));
          const double* s1 = reinterpret_cast<const double*>(dense.row(columns[k + 1]));
          const double* s2 = reinterpret_cast<const double*>(dense.row(columns[k + 2]));
          const double* s3 = reinterpret_cast<const double*>(dense.row(columns[k + 3]));
          const double v0 = values[k].real();
          const double v1 = values[k + 1].real();
          const double v2 = values[k + 2].real();
          const double v3 = values[k + 3].real();
          for (std::size_t j = 0; j < width; ++j) o[j] += v0 * s0[j] + v1 * s1[j] + v2 * s2[j] + v3 * s3[j];
        }
      }
      for (; k < offsets[i + 1]; ++k) {
        const double* src = reinterpret_cast<const double*>(dense.row(columns[k]));
        const double vr = values[k].real();
        if (real_valued) {
          for (std::size_t j = 0; j < width; ++j) o[j] += vr * src[j];
        } else {
          const double vi = values[k].imag();
          for (std::size_t j = 0; j < width; j += 2) {
            o[j] += vr * src[j] - vi * src[j + 1];
            o[j + 1] += vr * src[j + 1] + vi * src[j];
          }
        }
      }
    }
  }
};

inline void hermitize_in_place(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
}


/// dst ← src† (square), in cache-sized tiles.
inline void adjoint_into(const ComplexMatrix& src, ComplexMatrix& dst) {
  constexpr std::size_t kTile = 16;
  const std::size_t n = src.rows();
  for (std::size_t ib = 0; ib < n; ib += kTile) {
    for (std::size_t jb = 0; jb < n; jb += kTile) {
      const std::size_t ie = std::min(ib + kTile, n);
      const std::size_t je = std::min(jb + kTile, n);
      for (std::size_t i = ib; i < ie; ++i)
        for (std::size_t j = jb; j < je; ++j) dst(j, i) = std::conj(src(i, j));
    }
  }
}

}  // namespace detail

/// Sparse evaluation of the Lindblad generator for Hermitian ρ:
/// ρ̇ = W + W† + Σ C (Cρ)†, with W = −iHρ − ½(Σ C†C)ρ.
class LindbladGenerator {
 public:
  LindbladGenerator(const ComplexMatrix& hamiltonian, std::span<const ComplexMatrix> collapse_ops)
      : dim_(hamiltonian.rows()) {
    if (!hamiltonian.is_square()) throw Error(ErrorCode::kDimensionMismatch, "H must be square");
    ComplexMatrix decay(dim_, dim_);
    for (const auto& c : collapse_ops) {
      if (c.rows() != dim_ || c.cols() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "collapse operator shape differs from H");
      }
      decay += adjoint(c) * c;
      jumps_.push_back(detail::CompressedRows::from_dense(c));
    }
    hamiltonian_ = detail::CompressedRows::from_dense(hamiltonian);
    decay_ = detail::CompressedRows::from_dense(decay);
    k_ = ComplexMatrix(dim_, dim_);
    l_ = ComplexMatrix(dim_, dim_);
    t_ = ComplexMatrix(dim_, dim_);
  }

  std::size_t dim() const { return dim_; }

  /// out ← L[ρ]; ρ is assumed Hermitian.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) {
    const std::size_t count = 2 * dim_ * dim_;
    hamiltonian_.multiply(rho, k_);
    double* w = reinterpret_cast<double*>(k_.entries().data());
    // W = −iK: (re, im) → (im, −re)
    for (std::size_t e = 0; e < count; e += 2) {
      const double re = w[e];
      w[e] = w[e + 1];
      w[e + 1] = -re;
    }
    if (!decay_.empty()) {
      decay_.multiply(rho, l_);
      const double* l = reinterpret_cast<const double*>(l_.entries().data());
      for (std::size_t e = 0; e < count; ++e) w[e] -= 0.5 * l[e];
    }
    detail::adjoint_into(k_, out);
    double* o = reinterpret_cast<double*>(out.entries().data());
    for (std::size_t e = 0; e < count; ++e) o[e] += w[e];
    for (const auto& c : jumps_) {
      c.multiply(rho, t_);
      detail::adjoint_into(t_, l_);
      c.multiply_add(l_, out);
    }
  }

 private:
  std::size_t dim_;
  detail::CompressedRows hamiltonian_;
  detail::CompressedRows decay_;
  std::vector<detail::CompressedRows> jumps_;
  ComplexMatrix k_;
  ComplexMatrix l_;
  ComplexMatrix t_;
};

struct LindbladOptions {
  double step = 0.05;
  double trace_tolerance = 1e-6;
  double negativity_tolerance = 1e-6;  // allowed depth of negative eigenvalues of ρ
  bool check_positivity = true;
};

/// Fixed-step RK4. Between consecutive sample times the interval is split
/// into ⌈Δ/step⌉ equal steps, so every sample is hit exactly.
inline MixedTrajectory integrate_lindblad(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                                          std::span<const ComplexMatrix> collapse_ops,
                                          std::span<const double> times, const LindbladOptions& options) {
  if (!rho0.is_square() || rho0.rows() != hamiltonian.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "rho0 and H shapes differ");
  }
  if (!(options.step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "step must be positive");
  detail::require_sample_times(times);
  if (std::abs(trace(rho0) - 1.0) > 1e-8 || !is_hermitian(rho0, 1e-10)) {
    throw Error(ErrorCode::kInvalidArgument, "rho0 must be Hermitian with unit trace");
  }

  LindbladGenerator generator(hamiltonian, collapse_ops);
  const std::size_t n = rho0.rows();
  ComplexMatrix rho = hermitian_part(rho0);
  ComplexMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n);

  auto axpy = [n](const ComplexMatrix& base, double h, const ComplexMatrix& k, ComplexMatrix& dst) {
    const Complex* b = base.entries().data();
    const Complex* kk = k.entries().data();
    Complex* d = dst.entries().data();
    for (std::size_t e = 0; e < n * n; ++e) d[e] = b[e] + h * kk[e];
  };
  auto rk4_step = [&](double h) {
    generator.apply(rho, k1);
    axpy(rho, 0.5 * h, k1, stage);
    generator.apply(stage, k2);
    axpy(rho, 0.5 * h, k2, stage);
    generator.apply(stage, k3);
    axpy(rho, h, k3, stage);
    generator.apply(stage, k4);
    Complex* r = rho.entries().data();
    const double w = h / 6.0;
    for (std::size_t e = 0; e < n * n; ++e) {
      r[e] += w * (k1.entries()[e] + 2.0 * k2.entries()[e] + 2.0 * k3.entries()[e] + k4.entries()[e]);
    }
    detail::hermitize_in_place(rho);
  };

  MixedTrajectory traj;
  traj.step = options.step;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  double now = 0.0;
  for (double target : times) {
    const double span = target - now;
    if (span > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(span / options.step - 1e-9));
      const double h = span / static_cast<double>(std::max<std::size_t>(steps, 1));
      for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) rk4_step(h);
      now = target;
    }
    const double drift = std::abs(trace(rho) - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (!(drift <= options.trace_tolerance)) {
      throw Error(ErrorCode::kTraceDrift, "trace drifted by " + std::to_string(drift) + " at t=" + std::to_string(target));
    }
    if (options.check_positivity) {
      const double lowest = hermitian_eigenvalues(rho).front();
      traj.min_eigenvalues.push_back(lowest);
      if (!(lowest >= -options.negativity_tolerance)) {
        throw Error(ErrorCode::kNegativeEigenvalue,
                    "density matrix eigenvalue " + std::to_string(lowest) + " at t=" + std::to_string(target));
      }
    }
    traj.states.push_back(target == 0.0 ? rho0 : rho);
  }
  return traj;
}

/// Lindblad evolution with the damping channels of `spec`, halving the step
/// (up to four times) while the trace drift exceeds tolerance.
inline MixedTrajectory evolve_lindblad(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                                       const LindbladSpec& spec, std::span<const double> times, double step) {
  spec.validate();
  if (hamiltonian.rows() % 4 != 0 || hamiltonian.rows() < 8) {
    throw Error(ErrorCode::kDimensionMismatch, "H is not a Q1 ⊗ Q2 ⊗ R operator");
  }
  const std::size_t fock_cutoff = hamiltonian.rows() / 4 - 1;
  const auto ops = collapse_operators(spec, fock_cutoff);
  LindbladOptions options;
  options.step = step;
  constexpr int kMaxHalvings = 4;
  for (int attempt = 0;; ++attempt) {
    try {
      return integrate_lindblad(hamiltonian, rho0, ops, times, options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTraceDrift || attempt == kMaxHalvings) throw;
      options.step *= 0.5;
    }
  }
}

}  // namespace qbus
