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

// Closed-form one-excitation dynamics of the linear resonator (V_R = 0) on
// resonance. Amplitudes are on the basis (|eg0⟩, |ge0⟩, |gg1⟩) and omit the
// common phase e^{−iωt/2}; compare through density matrices or negativities.

#include <array>
#include <cmath>
#include <cstddef>

#include "qbus/linalg.hpp"
#include "qbus/model.hpp"

namespace qbus::oracle {

using Amplitudes = std::array<Complex, 3>;

struct LinearOracleParams {
  double gamma = 0.01;
  double gamma_tilde = std::sqrt(2.0) * 0.01;

  static LinearOracleParams from_gamma(double gamma) { return {gamma, std::sqrt(2.0) * gamma}; }
};

inline Amplitudes state_eg0(double t, const LinearOracleParams& p) {
  const double c = std::cos(p.gamma_tilde * t);
  const double s = std::sin(p.gamma_tilde * t);
  return {Complex{0.5 * (1.0 + c), 0.0}, Complex{-0.5 * (1.0 - c), 0.0}, Complex{0.0, s / std::sqrt(2.0)}};
}

inline Amplitudes state_gg1(double t, const LinearOracleParams& p) {
  const double c = std::cos(p.gamma_tilde * t);
  const double s = std::sin(p.gamma_tilde * t);
  const Complex i_s{0.0, s / std::sqrt(2.0)};
  return {i_s, i_s, Complex{c, 0.0}};
}

/// N_QQ = sin²(γ̃t)(√2 − 1)/4
inline double negativity_eg0(double t, const LinearOracleParams& p) {
  const double s = std::sin(p.gamma_tilde * t);
  return s * s * (std::sqrt(2.0) - 1.0) / 4.0;
}

/// N_QQ = (√((1−p)² + p²) − (1−p))/2 with p = sin²(γ̃t)
inline double negativity_gg1(double t, const LinearOracleParams& params) {
  const double s = std::sin(params.gamma_tilde * t);
  const double p = s * s;
  return 0.5 * (std::sqrt((1.0 - p) * (1.0 - p) + p * p) - (1.0 - p));
}

/// Places oracle amplitudes into the full Q1 ⊗ Q2 ⊗ R space.
inline StateVector embed(const Amplitudes& amps, std::size_t fock_cutoff) {
  StateVector psi(4 * (fock_cutoff + 1));
  psi[basis_index(kExcited, kGround, 0, fock_cutoff)] = amps[0];
  psi[basis_index(kGround, kExcited, 0, fock_cutoff)] = amps[1];
  psi[basis_index(kGround, kGround, 1, fock_cutoff)] = amps[2];
  return psi;
}

}  // namespace qbus::oracle
