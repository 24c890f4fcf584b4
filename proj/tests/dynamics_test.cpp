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

#include "qbus/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qbus/entanglement.hpp"
#include "qbus/oracle.hpp"
#include "test_util.hpp"

using namespace qbus;
using qbus::testing::max_diff;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemSpec small_system(double alpha, std::size_t cutoff = 6) {
  SystemSpec s;
  s.nonlinearity = Nonlinearity::kCosine;
  s.alpha = alpha;
  s.fock_cutoff = cutoff;
  return s;
}

std::vector<double> linspace(double t_max, std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = t_max * static_cast<double>(k) / static_cast<double>(count - 1);
  return t;
}

/// Lindblad spec whose dimensionless rates are 1/(lifetime·omega_phys).
LindbladSpec rates(double t_r, double t_q1, double t_q2, double omega_phys = 1.0) {
  LindbladSpec l;
  l.t_r = t_r;
  l.t_q1 = t_q1;
  l.t_q2 = t_q2;
  l.omega_phys = omega_phys;
  return l;
}

}  // namespace

TEST(EvolveUnitary, InitialSampleIsExact) {
  const auto h = build_hamiltonian(small_system(0.1));
  const auto psi0 = qbus::testing::random_state(h.rows());
  const double times[] = {0.0, 1.0};
  const auto traj = evolve_unitary(h, psi0, times);
  EXPECT_EQ(traj.states[0], psi0);
}

TEST(EvolveUnitary, UncoupledPopulationsAreConstant) {
  SystemSpec s;
  s.gamma = 0.0;
  s.fock_cutoff = 3;
  const auto h = build_hamiltonian(s);
  for (const char* label : {"eg0", "gg1", "ee2"}) {
    const auto psi0 = product_state(parse_product_label(label), s.fock_cutoff);
    const auto traj = evolve_unitary(h, psi0, linspace(300.0, 7));
    for (const auto& psi : traj.states)
      for (std::size_t k = 0; k < psi.size(); ++k) EXPECT_NEAR(std::norm(psi[k]), std::norm(psi0[k]), 1e-12);
  }
}

TEST(EvolveUnitary, BellPointMatchesOracle) {
  SystemSpec s;
  s.fock_cutoff = 40;
  const auto params = oracle::LinearOracleParams::from_gamma(s.gamma);
  const double t = std::numbers::pi / 2.0 / params.gamma_tilde;
  const double times[] = {t};
  const auto traj = evolve_unitary(build_hamiltonian(s), product_state(parse_product_label("gg1"), 40), times);
  const auto expected = oracle::embed(oracle::state_gg1(t, params), 40);
  const double fidelity = std::norm(inner(expected, traj.states[0]));
  EXPECT_GE(fidelity, 1.0 - 1e-10);
}

TEST(EvolveUnitary, NormAndGroupProperty) {
  std::uniform_real_distribution<double> time(0.0, 50.0);
  for (std::size_t n : {4u, 11u, 32u}) {
    const auto h = qbus::testing::random_hermitian(n);
    const auto psi0 = qbus::testing::random_state(n);
    const UnitaryPropagator u(h);
    for (int rep = 0; rep < 5; ++rep) {
      const double t1 = time(qbus::testing::rng());
      const double t2 = time(qbus::testing::rng());
      const auto psi1 = u.evolve(psi0, t1);
      EXPECT_NEAR(norm(psi1), 1.0, 1e-10);
      EXPECT_LE(max_diff(u.evolve(psi0, t1 + t2), u.evolve(psi1, t2)), 1e-9);
    }
  }
}

TEST(EvolveUnitary, Errors) {
  const auto h = build_hamiltonian(small_system(0.0, 2));
  const double times[] = {0.0};
  EXPECT_THROW(evolve_unitary(h, StateVector(5, 1.0), times), Error);
  EXPECT_THROW(evolve_unitary(h, StateVector(h.rows(), 1.0), times), Error);  // not normalized
  const double backwards[] = {2.0, 1.0};
  EXPECT_THROW(evolve_unitary(h, product_state(parse_product_label("eg0"), 2), backwards), Error);
}

TEST(LindbladRhs, ClosedSystemStationaryState) {
  const auto h = build_hamiltonian(small_system(0.2, 3));
  const auto eig = hermitian_eig(h);
  StateVector v(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) v[i] = eig.eigenvectors(i, 2);
  const auto out = lindblad_rhs(outer(v), h, {});
  EXPECT_LE(max_abs(out), 1e-12);
}

TEST(LindbladRhs, TracelessAndHermitian) {
  const auto h = build_hamiltonian(small_system(0.05, 3));
  const auto ops = collapse_operators(rates(3.0, 1.0, 2.0), 3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto rho = qbus::testing::random_density(h.rows());
    const auto out = lindblad_rhs(rho, h, ops);
    EXPECT_LE(std::abs(trace(out)), 1e-12 * frobenius_norm(rho) * 10);
    EXPECT_LE(hermiticity_defect(out), 1e-12);
  }
}

TEST(LindbladRhs, SingleQubitDecayRateUsesFactorTwo) {
  const double lifetime = 7.0;
  ComplexMatrix rho(2, 2);
  rho(kExcited, kExcited) = 1.0;
  const ComplexMatrix c = (1.0 / std::sqrt(lifetime)) * sigma_minus();
  const ComplexMatrix ops[] = {c};
  const auto out = lindblad_rhs(rho, ComplexMatrix(2, 2), ops);
  EXPECT_NEAR(out(kExcited, kExcited).real(), -4.0 / lifetime, 1e-15);
  EXPECT_NEAR(out(kGround, kGround).real(), 4.0 / lifetime, 1e-15);

  // Small explicit Euler steps of the same generator approach e^{−4t/T}.
  ComplexMatrix r = rho;
  const double dt = 1e-4;
  for (int k = 0; k < 10000; ++k) r += dt * lindblad_rhs(r, ComplexMatrix(2, 2), ops);
  EXPECT_NEAR(r(kExcited, kExcited).real(), std::exp(-4.0 / lifetime), 1e-4);
}

TEST(LindbladRhs, DimensionMismatch) {
  const ComplexMatrix ops[] = {ComplexMatrix(3, 3)};
  EXPECT_THROW(lindblad_rhs(ComplexMatrix(2, 2), ComplexMatrix(2, 2), ops), Error);
  EXPECT_THROW(lindblad_rhs(ComplexMatrix(2, 2), ComplexMatrix(3, 3), {}), Error);
}

TEST(LindbladGenerator, MatchesDenseReference) {
  const auto h = build_hamiltonian(small_system(0.3, 4));
  for (bool standard : {false, true}) {
    auto spec = rates(2.0, 0.5, 1.5);
    spec.standard_lowering = standard;
    const auto ops = collapse_operators(spec, 4);
    LindbladGenerator gen(h, ops);
    ComplexMatrix out(h.rows(), h.rows());
    for (int rep = 0; rep < 3; ++rep) {
      const auto rho = qbus::testing::random_density(h.rows());
      gen.apply(rho, out);
      EXPECT_LE(max_diff(out, lindblad_rhs(rho, h, ops)), 1e-13);
    }
  }
  // Complex-valued operators take the general multiply path.
  const auto hc = qbus::testing::random_hermitian(6);
  const ComplexMatrix cops[] = {qbus::testing::random_matrix(6, 6)};
  LindbladGenerator gen(hc, cops);
  ComplexMatrix out(6, 6);
  const auto rho = qbus::testing::random_density(6);
  gen.apply(rho, out);
  EXPECT_LE(max_diff(out, lindblad_rhs(rho, hc, cops)), 1e-12);
}

TEST(CollapseOperators, RatesAndConvention) {
  const auto ops = collapse_operators(rates(4.0, 2.0, kInf, 0.5), 2);
  ASSERT_EQ(ops.size(), 2u);  // second qubit channel disabled
  // resonator: √(1/(T ω)) · a
  EXPECT_NEAR(ops[0](basis_index(kExcited, kExcited, 0, 2), basis_index(kExcited, kExcited, 1, 2)).real(),
              std::sqrt(1.0 / 2.0), 1e-15);
  // qubit: factor-2 lowering, rate 1/(2·0.5)
  EXPECT_NEAR(ops[1](basis_index(kGround, kExcited, 0, 2), basis_index(kExcited, kExcited, 0, 2)).real(), 2.0, 1e-15);
  auto standard = rates(4.0, 2.0, kInf, 0.5);
  standard.standard_lowering = true;
  EXPECT_NEAR(collapse_operators(standard, 2)[1](basis_index(kGround, kExcited, 0, 2),
                                                 basis_index(kExcited, kExcited, 0, 2)).real(),
              1.0, 1e-15);
  EXPECT_THROW(collapse_operators(rates(-1.0, 1.0, 1.0), 2), Error);
  EXPECT_TRUE(collapse_operators(rates(kInf, kInf, kInf), 2).empty());
}

TEST(EvolveLindblad, ClosedLimitMatchesUnitary) {
  const auto s = small_system(0.0035, 6);
  const auto h = build_hamiltonian(s);
  const auto psi0 = product_state(parse_product_label("eg0"), s.fock_cutoff);
  const auto times = linspace(200.0, 21);
  const auto pure = evolve_unitary(h, psi0, times);
  const std::size_t dims[] = {2, 2, s.fock_dim()};
  // N_QQ meets 1e-8 at the default step. The resonator coherences carry the
  // largest RK4 phase error (about 3e-7 in N_QQ_vs_R at ωt = 200 with h = 0.05),
  // so that bipartition is checked at h = 0.025.
  const auto coarse = evolve_lindblad(h, outer(psi0), rates(kInf, kInf, kInf), times, 0.05);
  const auto fine = evolve_lindblad(h, outer(psi0), rates(kInf, kInf, kInf), times, 0.025);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double n_pure = negativity_qq(reduce_to_qubits(pure.states[k], s.fock_dim()));
    EXPECT_NEAR(negativity(coarse.states[k], dims, Bipartition::kQubitQubit).value, n_pure, 1e-8) << times[k];
    EXPECT_NEAR(negativity(fine.states[k], dims, Bipartition::kQubitsVsResonator).value,
                negativity_qq_r_pure(pure.states[k], s.fock_dim()), 1e-8)
        << times[k];
  }
  EXPECT_EQ(coarse.states[0], outer(psi0));
}

TEST(EvolveLindblad, SingleQubitExponentialDecay) {
  SystemSpec s;
  s.gamma = 0.0;
  s.fock_cutoff = 1;
  const auto h = build_hamiltonian(s);
  const auto rho0 = outer(product_state(parse_product_label("eg0"), 1));
  const double rate = 1.0 / (10.0 * 10.0);  // T_Q1 = 10, ω = 10
  const auto times = linspace(50.0, 11);
  const auto traj = evolve_lindblad(h, rho0, rates(kInf, 10.0, kInf, 10.0), times, 0.05);
  const std::size_t eg0 = basis_index(kExcited, kGround, 0, 1);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = std::exp(-4.0 * rate * times[k]);
    EXPECT_NEAR(traj.states[k](eg0, eg0).real() / expected, 1.0, 1e-6);
  }
  EXPECT_LE(traj.max_trace_drift, 1e-12);
}

TEST(EvolveLindblad, StandardLoweringDecaysFourTimesSlower) {
  SystemSpec s;
  s.gamma = 0.0;
  s.fock_cutoff = 1;
  auto spec = rates(kInf, 10.0, kInf, 10.0);
  spec.standard_lowering = true;
  const double times[] = {0.0, 40.0};
  const auto traj =
      evolve_lindblad(build_hamiltonian(s), outer(product_state(parse_product_label("eg0"), 1)), spec, times, 0.05);
  const std::size_t eg0 = basis_index(kExcited, kGround, 0, 1);
  EXPECT_NEAR(traj.states[1](eg0, eg0).real(), std::exp(-40.0 / 100.0), 1e-9);
}

TEST(EvolveLindblad, DampingOnlyPurityFollowsClosedForm) {
  // Amplitude damping is non-unital: purity p² + (1 − p)² dips to ½ and recovers.
  SystemSpec s;
  s.gamma = 0.0;
  s.fock_cutoff = 1;
  const ComplexMatrix h(s.dim(), s.dim());
  const auto ops = collapse_operators(rates(kInf, 10.0, kInf, 10.0), 1);
  LindbladOptions options;
  options.step = 0.05;
  const auto times = linspace(100.0, 201);
  const auto traj = integrate_lindblad(h, outer(product_state(parse_product_label("eg0"), 1)), ops, times, options);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double p = std::exp(-4.0 * times[k] / 100.0);
    EXPECT_NEAR(purity(traj.states[k]), p * p + (1.0 - p) * (1.0 - p), 1e-9);
  }
}

TEST(EvolveLindblad, PureStatePurityDropsUnderDamping) {
  const std::size_t m = 3;
  const ComplexMatrix h(4 * (m + 1), 4 * (m + 1));
  const auto psi0 = product_state(ProductStateSpec{{Complex{0.6, 0.0}, Complex{0.8, 0.0}}, QubitState::e(),
                                                   std::vector<Complex>{0.0, Complex{0.0, 0.6}, 0.8}},
                                  m);
  const auto ops = collapse_operators(rates(20.0, 30.0, 50.0), m);
  LindbladOptions options;
  const auto times = linspace(2.0, 41);
  const auto traj = integrate_lindblad(h, outer(psi0), ops, times, options);
  EXPECT_NEAR(purity(traj.states[0]), 1.0, 1e-12);
  for (std::size_t k = 1; k < times.size(); ++k) EXPECT_LE(purity(traj.states[k]), purity(traj.states[k - 1]) + 1e-9);
}

TEST(EvolveLindblad, FourthOrderConvergence) {
  const auto s = small_system(0.0035, 4);
  const auto h = build_hamiltonian(s);
  const auto rho0 = outer(product_state(parse_product_label("eg0"), s.fock_cutoff));
  const auto spec = rates(200.0, 100.0, 100.0);
  const double times[] = {0.0, 30.0};
  auto final_state = [&](double step) { return evolve_lindblad(h, rho0, spec, times, step).states[1]; };
  const auto coarse = final_state(0.05);
  const auto half = final_state(0.025);
  const auto quarter = final_state(0.0125);
  const double e1 = max_abs(coarse - half);
  const double e2 = max_abs(half - quarter);
  EXPECT_LE(e1, 1e-7);
  EXPECT_NEAR(e1 / e2, 16.0, 2.0);
}

TEST(EvolveLindblad, NegativeInitialEigenvalueIsReported) {
  const ComplexMatrix h(8, 8);
  ComplexMatrix rho0(8, 8);
  rho0(0, 0) = 1.5;
  rho0(1, 1) = -0.5;
  const double times[] = {0.0};
  try {
    evolve_lindblad(h, rho0, rates(kInf, kInf, kInf), times, 0.05);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeEigenvalue);
  }
}

TEST(EvolveLindblad, UnstableStepReportsTraceDrift) {
  const auto h = 50.0 * qbus::testing::random_hermitian(8);
  const auto rho0 = qbus::testing::random_density(8);
  LindbladOptions options;
  options.step = 1.0;
  options.check_positivity = false;
  const ComplexMatrix ops[] = {3.0 * qbus::testing::random_matrix(8, 8)};
  const auto times = linspace(2000.0, 3);
  try {
    integrate_lindblad(h, rho0, ops, times, options);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTraceDrift);
  }
}

TEST(EvolveLindblad, RejectsBadInputs) {
  const ComplexMatrix h(8, 8);
  const double times[] = {0.0, 1.0};
  EXPECT_THROW(evolve_lindblad(h, ComplexMatrix(8, 8), rates(1, 1, 1), times, 0.05), Error);  // trace 0
  EXPECT_THROW(evolve_lindblad(h, outer(basis_vector(8, 0)), rates(1, 1, 1), times, 0.0), Error);
  EXPECT_THROW(evolve_lindblad(h, outer(basis_vector(4, 0)), rates(1, 1, 1), times, 0.05), Error);
}
