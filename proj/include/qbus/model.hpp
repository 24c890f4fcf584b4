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

// Operators of the two-qubit + single-mode resonator system.
//
// Conventions used throughout the library:
//   * qubit basis ordering |e⟩ = 0, |g⟩ = 1, so σ_z = diag(+1, −1);
//   * σ⁺ = σ_x + iσ_y = [[0, 2], [0, 0]] and σ⁻ = (σ⁺)†, i.e. the raising and
//     lowering operators carry a factor 2 (σ⁻|e⟩ = 2|g⟩). This is what makes
//     the one-excitation Rabi frequency √2·γ;
//   * tensor ordering Q1 ⊗ Q2 ⊗ R, basis index (q1, q2, n) ↦ 2(M+1)q1 + (M+1)q2 + n;
//   * energies in units of the resonator frequency, times as dimensionless ωt.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbus/errors.hpp"
#include "qbus/linalg.hpp"

namespace qbus {

inline constexpr std::size_t kExcited = 0;
inline constexpr std::size_t kGround = 1;

enum class Nonlinearity { kNone, kQuadratic, kCosine };

inline std::string_view nonlinearity_name(Nonlinearity kind) {
  switch (kind) {
    case Nonlinearity::kNone: return "none";
    case Nonlinearity::kQuadratic: return "quadratic";
    case Nonlinearity::kCosine: return "cosine";
  }
  return "none";
}

inline Nonlinearity parse_nonlinearity(std::string_view name) {
  if (name == "none") return Nonlinearity::kNone;
  if (name == "quadratic") return Nonlinearity::kQuadratic;
  if (name == "cosine") return Nonlinearity::kCosine;
  throw Error(ErrorCode::kConfig, "unknown nonlinearity '" + std::string(name) + "'");
}

struct SystemSpec {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double omega_r = 1.0;
  double gamma = 0.01;
  Nonlinearity nonlinearity = Nonlinearity::kNone;
  double alpha = 0.0;
  std::size_t fock_cutoff = 40;

  std::size_t fock_dim() const { return fock_cutoff + 1; }
  std::size_t dim() const { return 4 * fock_dim(); }

  void validate() const {
    if (!(gamma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be non-negative");
    if (fock_cutoff < 1) throw Error(ErrorCode::kInvalidArgument, "fock_cutoff must be at least 1");
    if (nonlinearity == Nonlinearity::kNone && alpha != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "alpha given but nonlinearity is 'none'");
    }
    for (double v : {omega1, omega2, omega_r, gamma, alpha}) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "system parameters must be finite");
    }
  }

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

inline std::size_t basis_index(std::size_t q1, std::size_t q2, std::size_t n, std::size_t fock_cutoff) {
  const std::size_t f = fock_cutoff + 1;
  return 2 * f * q1 + f * q2 + n;
}

// ---------------------------------------------------------------------------
// Single-subsystem operators

inline ComplexMatrix sigma_z() {
  ComplexMatrix s(2, 2);
  s(kExcited, kExcited) = 1.0;
  s(kGround, kGround) = -1.0;
  return s;
}

inline ComplexMatrix sigma_x() {
  ComplexMatrix s(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix s(2, 2);
  s(0, 1) = Complex{0.0, -1.0};
  s(1, 0) = Complex{0.0, 1.0};
  return s;
}

/// σ_x + iσ_y; maps |g⟩ to 2|e⟩.
inline ComplexMatrix sigma_plus() {
  ComplexMatrix s(2, 2);
  s(kExcited, kGround) = 2.0;
  return s;
}

inline ComplexMatrix sigma_minus() { return adjoint(sigma_plus()); }

/// a on Fock levels 0..M: a[n−1, n] = √n.
inline ComplexMatrix annihilation(std::size_t fock_cutoff) {
  if (fock_cutoff < 1) throw Error(ErrorCode::kInvalidArgument, "fock_cutoff must be at least 1");
  ComplexMatrix a(fock_cutoff + 1, fock_cutoff + 1);
  for (std::size_t n = 1; n <= fock_cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline ComplexMatrix creation(std::size_t fock_cutoff) { return adjoint(annihilation(fock_cutoff)); }

/// a + a† on the truncated space.
inline ComplexMatrix quadrature(std::size_t fock_cutoff) {
  const ComplexMatrix a = annihilation(fock_cutoff);
  return a + adjoint(a);
}

/// α cos(a + a†), the cosine of the truncated quadrature.
inline ComplexMatrix cosine_potential(std::size_t fock_cutoff, double alpha) {
  const std::size_t f = fock_cutoff + 1;
  if (alpha == 0.0) {
    annihilation(fock_cutoff);  // validates the cutoff
    return ComplexMatrix(f, f);
  }
  return func_hermitian(quadrature(fock_cutoff), [alpha](double x) { return alpha * std::cos(x); });
}

/// α (a² + a†²)
inline ComplexMatrix quadratic_potential(std::size_t fock_cutoff, double alpha) {
  const ComplexMatrix a = annihilation(fock_cutoff);
  const ComplexMatrix a2 = a * a;
  return alpha * (a2 + adjoint(a2));
}

inline ComplexMatrix resonator_potential(const SystemSpec& spec) {
  switch (spec.nonlinearity) {
    case Nonlinearity::kCosine: return cosine_potential(spec.fock_cutoff, spec.alpha);
    case Nonlinearity::kQuadratic: return quadratic_potential(spec.fock_cutoff, spec.alpha);
    case Nonlinearity::kNone: break;
  }
  return ComplexMatrix(spec.fock_dim(), spec.fock_dim());
}

/// Embeds single-subsystem operators into Q1 ⊗ Q2 ⊗ R.
inline ComplexMatrix embed(const ComplexMatrix& q1, const ComplexMatrix& q2, const ComplexMatrix& r) {
  return kron(kron(q1, q2), r);
}

/// H = Σᵢ Ωᵢσ_z⁽ⁱ⁾/2 + ω_R(a†a + ½) + V_R − (γ/2) Σᵢ (aσᵢ⁺ + a†σᵢ⁻)
inline ComplexMatrix build_hamiltonian(const SystemSpec& spec) {
  spec.validate();
  const std::size_t m = spec.fock_cutoff;
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix ir = ComplexMatrix::identity(m + 1);
  const ComplexMatrix a = annihilation(m);
  const ComplexMatrix ad = adjoint(a);
  const ComplexMatrix sz = sigma_z();
  const ComplexMatrix sp = sigma_plus();
  const ComplexMatrix sm = sigma_minus();

  ComplexMatrix h_r = spec.omega_r * (ad * a + 0.5 * ir);
  h_r += resonator_potential(spec);

  ComplexMatrix h = (0.5 * spec.omega1) * embed(sz, i2, ir);
  h += (0.5 * spec.omega2) * embed(i2, sz, ir);
  h += embed(i2, i2, h_r);
  if (spec.gamma != 0.0) {
    ComplexMatrix coupling = embed(sp, i2, a) + embed(sm, i2, ad) + embed(i2, sp, a) + embed(i2, sm, ad);
    h -= (0.5 * spec.gamma) * coupling;
  }
  return hermitian_part(h);
}

/// Total excitation count σ⁺σ⁻/4 ⊗ I ⊗ I + I ⊗ σ⁺σ⁻/4 ⊗ I + I ⊗ I ⊗ a†a.
inline ComplexMatrix excitation_number(std::size_t fock_cutoff) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix ir = ComplexMatrix::identity(fock_cutoff + 1);
  const ComplexMatrix qubit = 0.25 * (sigma_plus() * sigma_minus());
  const ComplexMatrix a = annihilation(fock_cutoff);
  return embed(qubit, i2, ir) + embed(i2, qubit, ir) + embed(i2, i2, adjoint(a) * a);
}

// ---------------------------------------------------------------------------
// Initial product states

struct QubitState {
  Complex excited{0.0, 0.0};
  Complex ground{1.0, 0.0};

  static QubitState e() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
  static QubitState g() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }

  friend bool operator==(const QubitState&, const QubitState&) = default;
};

/// Resonator factor: a Fock occupation number or explicit amplitudes ⟨n|ψ_R⟩.
using PhotonState = std::variant<std::size_t, std::vector<Complex>>;

struct ProductStateSpec {
  QubitState q1 = QubitState::g();
  QubitState q2 = QubitState::g();
  PhotonState photons = std::size_t{0};

  friend bool operator==(const ProductStateSpec&, const ProductStateSpec&) = default;
};

/// Parses shorthand such as "eg0" or "gg12": two qubit letters then a photon number.
inline ProductStateSpec parse_product_label(std::string_view label) {
  auto qubit = [&](char c) {
    if (c == 'e') return QubitState::e();
    if (c == 'g') return QubitState::g();
    throw Error(ErrorCode::kConfig, "bad product-state label '" + std::string(label) + "'");
  };
  if (label.size() < 3) throw Error(ErrorCode::kConfig, "bad product-state label '" + std::string(label) + "'");
  std::size_t n = 0;
  for (char c : label.substr(2)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kConfig, "bad product-state label '" + std::string(label) + "'");
    }
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return ProductStateSpec{qubit(label[0]), qubit(label[1]), n};
}

/// Inverse of parse_product_label for basis product states; empty otherwise.
inline std::string product_label(const ProductStateSpec& spec) {
  auto letter = [](const QubitState& q) -> char {
    if (q == QubitState::e()) return 'e';
    if (q == QubitState::g()) return 'g';
    return '\0';
  };
  const char a = letter(spec.q1);
  const char b = letter(spec.q2);
  const auto* n = std::get_if<std::size_t>(&spec.photons);
  if (a == '\0' || b == '\0' || n == nullptr) return {};
  return std::string{a, b} + std::to_string(*n);
}

inline StateVector product_state(const ProductStateSpec& spec, std::size_t fock_cutoff) {
  constexpr double kNormTolerance = 1e-12;
  auto check_norm = [](std::span<const Complex> v, const char* what) {
    if (std::abs(norm(v) - 1.0) > kNormTolerance) {
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " amplitudes are not normalized");
    }
  };
  const StateVector q1{spec.q1.excited, spec.q1.ground};
  const StateVector q2{spec.q2.excited, spec.q2.ground};
  check_norm(q1, "qubit 1");
  check_norm(q2, "qubit 2");

  StateVector r(fock_cutoff + 1);
  if (const auto* n = std::get_if<std::size_t>(&spec.photons)) {
    if (*n > fock_cutoff) {
      throw Error(ErrorCode::kPhotonOverflow, "photon number " + std::to_string(*n) +
                                                  " exceeds Fock cutoff " + std::to_string(fock_cutoff));
    }
    r[*n] = 1.0;
  } else {
    const auto& amps = std::get<std::vector<Complex>>(spec.photons);
    if (amps.size() > fock_cutoff + 1) {
      throw Error(ErrorCode::kPhotonOverflow, "resonator amplitudes exceed Fock cutoff");
    }
    check_norm(amps, "resonator");
    std::copy(amps.begin(), amps.end(), r.begin());
  }
  return kron(kron(q1, q2), r);
}

/// α = 2 E_J⁰ cos(π φ_c/φ₀)
inline double alpha_from_flux(double ej0, double flux_ratio) {
  return 2.0 * ej0 * std::cos(std::numbers::pi * flux_ratio);
}

}  // namespace qbus
