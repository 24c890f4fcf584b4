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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "qbus/dynamics.hpp"
#include "qbus/entanglement.hpp"
#include "qbus/errors.hpp"
#include "qbus/linalg.hpp"
#include "qbus/model.hpp"
#include "qbus/oracle.hpp"

namespace qbus {

/// Samples per unit ωt when a config does not set `sample_count`.
inline constexpr double kDefaultSamplesPerUnit = 2.0;
/// Population allowed in the top kLeakageLevels Fock levels before a run is
/// repeated with a larger cutoff.
inline constexpr double kLeakageTolerance = 1e-6;
inline constexpr std::size_t kLeakageLevels = 5;
inline constexpr std::size_t kCutoffIncrement = 20;
inline constexpr int kMaxCutoffIncrements = 3;

inline std::size_t default_sample_count(double time_max) {
  return static_cast<std::size_t>(std::llround(time_max * kDefaultSamplesPerUnit)) + 1;
}

struct ScenarioConfig {
  std::string name;
  SystemSpec system;
  std::vector<ProductStateSpec> initial;  // one run per state (and per α)
  double time_max = 300.0;
  std::size_t sample_count = default_sample_count(300.0);
  std::optional<std::vector<double>> alpha_grid;  // overrides system.alpha
  std::optional<LindbladSpec> lindblad;
  std::vector<double> snapshots;

  /// α values to run, in configured order.
  std::vector<double> alphas() const { return alpha_grid ? *alpha_grid : std::vector<double>{system.alpha}; }

  std::vector<double> sample_times() const {
    std::vector<double> t(sample_count);
    const double last = static_cast<double>(sample_count - 1);
    for (std::size_t k = 0; k < sample_count; ++k) t[k] = time_max * (static_cast<double>(k) / last);
    t.back() = time_max;
    return t;
  }

  /// File-name-safe identifier of initial state `k`: its label, or "psi<k>".
  std::string initial_label(std::size_t k) const {
    auto label = product_label(initial.at(k));
    return label.empty() ? "psi" + std::to_string(k) : label;
  }

  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfig, what); };
    if (name.empty()) fail("scenario name is empty");
    for (char c : name) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
        fail("scenario name '" + name + "' has characters outside [A-Za-z0-9_.-]");
      }
    }
    if (initial.empty()) fail("no initial state");
    if (!(time_max > 0.0) || !std::isfinite(time_max)) fail("time_max must be positive");
    if (sample_count < 2) fail("sample_count must be at least 2");
    if (alpha_grid) {
      if (alpha_grid->empty()) fail("alpha_grid is empty");
      if (system.nonlinearity == Nonlinearity::kNone) fail("alpha_grid needs a nonlinearity");
    }
    for (double a : alphas()) {
      SystemSpec s = system;
      s.alpha = a;
      s.validate();
    }
    if (lindblad) lindblad->validate();
    for (double t : snapshots) {
      if (!(t >= 0.0 && t <= time_max)) fail("snapshot time " + std::to_string(t) + " outside [0, time_max]");
    }
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < initial.size(); ++k) {
      product_state(initial[k], system.fock_cutoff);  // normalization and photon-overflow checks
      labels.push_back(initial_label(k));
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) fail("duplicate initial states");
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct SampleRecord {
  double omega_t = 0.0;
  double n_qq = 0.0;
  double n_qq_r = 0.0;
  double concurrence = 0.0;
  double purity_qq = 0.0;
  double leakage = 0.0;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Reduced two-qubit state at a requested time, basis (ee, eg, ge, gg).
struct Snapshot {
  double omega_t = 0.0;
  ComplexMatrix rho_qq;
  double negativity = 0.0;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// One evolution: a single initial state at a single α.
struct Run {
  std::string label;
  double alpha = 0.0;
  std::size_t fock_cutoff = 0;  // cutoff actually used
  std::vector<SampleRecord> records;
  std::vector<Snapshot> snapshots;
  // Peak of N_QQ. Unitary runs refine it between neighbouring samples, so it
  // can lie off the sample grid; open-system runs report the best sample.
  double max_n_qq = 0.0;
  double argmax_omega_t = 0.0;
  double n_qq_r_at_max = 0.0;
  double max_leakage = 0.0;
  // Open-system diagnostics; zero for unitary runs.
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double step = 0.0;

  friend bool operator==(const Run&, const Run&) = default;
};

struct ScenarioResult {
  std::string name;
  std::vector<Run> runs;  // initial-state major, then α in configured order
  std::vector<std::string> warnings;

  const Run& run(std::string_view label, double alpha) const {
    for (const auto& r : runs)
      if (r.label == label && r.alpha == alpha) return r;
    throw Error(ErrorCode::kInvalidArgument, "no run " + std::string(label) + " at alpha " + std::to_string(alpha));
  }

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

namespace detail {

/// Fills the summary from the records; returns the index of the best sample.
inline std::size_t finish_summary(Run& run) {
  std::size_t best = 0;
  run.max_leakage = 0.0;
  for (std::size_t k = 0; k < run.records.size(); ++k) {
    if (run.records[k].n_qq > run.records[best].n_qq) best = k;
    run.max_leakage = std::max(run.max_leakage, run.records[k].leakage);
  }
  if (!run.records.empty()) {
    run.max_n_qq = run.records[best].n_qq;
    run.argmax_omega_t = run.records[best].omega_t;
    run.n_qq_r_at_max = run.records[best].n_qq_r;
  }
  return best;
}

/// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_maximum(F&& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && b - a > 1e-10 * std::max(1.0, std::abs(b)); ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

inline Run run_unitary(const SystemSpec& system, const StateVector& psi0, std::span<const double> times,
                       std::span<const double> snapshot_times) {
  const std::size_t fock_dim = system.fock_dim();
  const std::size_t top_k = std::min(kLeakageLevels, fock_dim);
  const UnitaryPropagator propagator(build_hamiltonian(system));
  const StateVector coeffs = propagator.to_eigenbasis(psi0);
  auto state_at = [&](double t) { return t == 0.0 ? psi0 : propagator.from_eigenbasis(coeffs, t); };

  Run run;
  run.alpha = system.alpha;
  run.fock_cutoff = system.fock_cutoff;
  run.records.reserve(times.size());
  for (double t : times) {
    const StateVector psi = state_at(t);
    const ComplexMatrix rho_qq = reduce_to_qubits(psi, fock_dim);
    run.records.push_back({t, negativity_qq(rho_qq), negativity_qq_r_pure(psi, fock_dim), concurrence(rho_qq),
                           purity(rho_qq), leakage(psi, fock_dim, top_k)});
  }
  for (double t : snapshot_times) {
    const ComplexMatrix rho_qq = reduce_to_qubits(state_at(t), fock_dim);
    run.snapshots.push_back({t, rho_qq, negativity_qq(rho_qq)});
  }
  const std::size_t best = finish_summary(run);
  if (run.max_n_qq > 0.0) {
    const double lo = times[best > 0 ? best - 1 : 0];
    const double hi = times[std::min(best + 1, times.size() - 1)];
    const auto [t, n] = golden_maximum([&](double x) { return negativity_qq(reduce_to_qubits(state_at(x), fock_dim)); },
                                       lo, hi);
    if (n > run.max_n_qq) {
      run.max_n_qq = n;
      run.argmax_omega_t = t;
      run.n_qq_r_at_max = negativity_qq_r_pure(state_at(t), fock_dim);
    }
  }
  return run;
}

inline Run run_open(const SystemSpec& system, const LindbladSpec& lindblad, const StateVector& psi0,
                    std::span<const double> times, std::span<const double> snapshot_times) {
  const std::size_t fock_dim = system.fock_dim();
  const std::size_t top_k = std::min(kLeakageLevels, fock_dim);
  const std::size_t dims[] = {2, 2, fock_dim};

  std::vector<double> all(times.begin(), times.end());
  all.insert(all.end(), snapshot_times.begin(), snapshot_times.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const auto traj = evolve_lindblad(build_hamiltonian(system), outer(psi0), lindblad, all, lindblad.step);
  auto state_at = [&](double t) -> const ComplexMatrix& {
    return traj.states[static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), t) - all.begin())];
  };

  Run run;
  run.alpha = system.alpha;
  run.fock_cutoff = system.fock_cutoff;
  run.max_trace_drift = traj.max_trace_drift;
  run.min_eigenvalue = traj.min_eigenvalues.empty()
                           ? 0.0
                           : *std::min_element(traj.min_eigenvalues.begin(), traj.min_eigenvalues.end());
  run.step = traj.step;
  run.records.reserve(times.size());
  for (double t : times) {
    const ComplexMatrix& rho = state_at(t);
    const ComplexMatrix rho_qq = reduce_to_qubits(rho, fock_dim);
    run.records.push_back({t, negativity_qq(rho_qq), negativity(rho, dims, Bipartition::kQubitsVsResonator).value,
                           concurrence(rho_qq), purity(rho_qq), leakage(rho, fock_dim, top_k)});
  }
  for (double t : snapshot_times) {
    const ComplexMatrix rho_qq = reduce_to_qubits(state_at(t), fock_dim);
    run.snapshots.push_back({t, rho_qq, negativity_qq(rho_qq)});
  }
  finish_summary(run);
  return run;
}

/// Runs `count` jobs on up to `threads` workers (0 = hardware concurrency).
/// Each job writes only its own slot; the first failure in job order is rethrown.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        job(k);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

}  // namespace detail

struct RunOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Evolves every (initial state, α) pair of `cfg` and collects observables.
/// Unitary runs whose leakage exceeds kLeakageTolerance are repeated with a
/// larger Fock cutoff; each extension is reported in `warnings`.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {}) {
  cfg.validate();
  const auto times = cfg.sample_times();
  const auto alphas = cfg.alphas();
  const std::size_t jobs = cfg.initial.size() * alphas.size();

  ScenarioResult result;
  result.name = cfg.name;
  result.runs.resize(jobs);
  std::vector<std::vector<std::string>> notes(jobs);

  detail::parallel_for(jobs, options.threads, [&](std::size_t job) {
    const std::size_t which = job / alphas.size();
    SystemSpec system = cfg.system;
    system.alpha = alphas[job % alphas.size()];
    Run run;
    for (int extension = 0;; ++extension) {
      const StateVector psi0 = product_state(cfg.initial[which], system.fock_cutoff);
      run = cfg.lindblad ? detail::run_open(system, *cfg.lindblad, psi0, times, cfg.snapshots)
                         : detail::run_unitary(system, psi0, times, cfg.snapshots);
      if (run.max_leakage <= kLeakageTolerance) break;
      char buf[256];
      std::snprintf(buf, sizeof buf, "truncation: %s alpha=%g leakage %.3g at M=%zu", cfg.initial_label(which).c_str(),
                    system.alpha, run.max_leakage, system.fock_cutoff);
      notes[job].emplace_back(buf);
      if (cfg.lindblad || extension == kMaxCutoffIncrements) break;
      system.fock_cutoff += kCutoffIncrement;
      notes[job].back() += ", re-running at M=" + std::to_string(system.fock_cutoff);
    }
    run.label = cfg.initial_label(which);
    result.runs[job] = std::move(run);
  });
  for (auto& n : notes) result.warnings.insert(result.warnings.end(), n.begin(), n.end());
  return result;
}

/// One independent scenario per α of `grid`, in grid order.
inline std::vector<ScenarioResult> sweep(const ScenarioConfig& base, std::span<const double> grid,
                                         const RunOptions& options = {}) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep grid is empty");
  std::vector<ScenarioConfig> configs(grid.size(), base);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    configs[k].alpha_grid.reset();
    configs[k].system.alpha = grid[k];
    configs[k].validate();
  }
  std::vector<ScenarioResult> results(grid.size());
  detail::parallel_for(grid.size(), options.threads, [&](std::size_t k) { results[k] = run_scenario(configs[k]); });
  return results;
}

struct OracleCheck {
  std::size_t samples = 0;
  double max_deviation_eg0 = 0.0;
  double max_deviation_gg1 = 0.0;
  double max_deviation() const { return std::max(max_deviation_eg0, max_deviation_gg1); }
};

/// Compares numerical N_QQ of the linear resonator (α = 0) against the closed
/// forms for |eg0⟩ and |gg1⟩ at `samples` uniform random times in [0, t_max].
inline OracleCheck run_oracle_check(std::size_t samples = 200, double t_max = 500.0, std::size_t fock_cutoff = 40,
                                    double gamma = 0.01, std::uint64_t seed = 20260101) {
  SystemSpec system;
  system.gamma = gamma;
  system.fock_cutoff = fock_cutoff;
  const auto params = oracle::LinearOracleParams::from_gamma(gamma);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, t_max);
  std::vector<double> times(samples);
  for (auto& t : times) t = uniform(rng);
  std::sort(times.begin(), times.end());

  const UnitaryPropagator propagator(build_hamiltonian(system));
  OracleCheck check;
  check.samples = samples;
  auto deviation = [&](std::string_view label, double (*closed)(double, const oracle::LinearOracleParams&)) {
    const auto traj = evolve_unitary(propagator, product_state(parse_product_label(label), fock_cutoff), times);
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double n = negativity_qq(reduce_to_qubits(traj.states[k], system.fock_dim()));
      worst = std::max(worst, std::abs(n - closed(times[k], params)));
    }
    return worst;
  };
  check.max_deviation_eg0 = deviation("eg0", oracle::negativity_eg0);
  check.max_deviation_gg1 = deviation("gg1", oracle::negativity_gg1);
  return check;
}

// ---------------------------------------------------------------------------
// Built-in presets

struct PresetInfo {
  std::string_view name;
  std::string_view caption;
};

inline const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog{
      {"fig1", "eg0 and gg1, alpha=0, wt<=300: QQ and QQ-R negativity, linear resonator"},
      {"fig2", "eg0, alpha in {0,0.001,0.002,0.0035,0.005}, wt<=1000: entanglement gain"},
      {"fig3", "eg0, alpha in {0.5,1,2}, wt<=3000 (25000 with --long): large nonlinearity"},
      {"fig4", "gg1, alpha in {0,0.001,0.002,0.0035,0.005}, wt<=1000: entanglement suppression"},
      {"fig5", "eg1, alpha in {0,0.0035,0.01,0.1,0.7}, wt<=2000"},
      {"fig6", "eg2, alpha in {0,0.0035,0.01,0.1,0.7}, wt<=2000"},
      {"fig7", "eg0, alpha=0, snapshot of rho_QQ at wt=111"},
      {"fig8", "eg0, alpha=0.0035, snapshot of rho_QQ at wt=435 (real part)"},
      {"fig9", "eg0, alpha=0.0035, snapshot of rho_QQ at wt=435 (imaginary part)"},
      {"fig10", "eg0, alpha=0.0035, wt<=2000, damping T_R=5e-5 s, T_Q=1e-5 s"},
      {"ee0", "ee0, alpha in {0,0.0035,0.7}, wt<=2000: qubits stay disentangled"},
      {"gg2", "gg2, alpha in {0,0.0035,0.7}, wt<=2000"},
  };
  return catalog;
}

/// Built-in scenario `name`; all presets use Ω₁ = Ω₂ = ω_R = 1, γ = 0.01 and
/// the cosine potential. `long_run` extends fig3 to ωt = 25000.
inline ScenarioConfig preset(std::string_view name, bool long_run = false) {
  ScenarioConfig c;
  c.name = std::string(name);
  c.system.nonlinearity = Nonlinearity::kCosine;
  auto set = [&](std::vector<std::string_view> labels, double time_max) {
    c.initial.clear();
    for (auto l : labels) c.initial.push_back(parse_product_label(l));
    c.time_max = time_max;
    c.sample_count = default_sample_count(time_max);
  };
  const std::vector<double> weak{0.0, 0.001, 0.002, 0.0035, 0.005};
  const std::vector<double> broad{0.0, 0.0035, 0.01, 0.1, 0.7};
  const std::vector<double> null_grid{0.0, 0.0035, 0.7};

  if (name == "fig1") {
    set({"eg0", "gg1"}, 300.0);
  } else if (name == "fig2") {
    set({"eg0"}, 1000.0);
    c.alpha_grid = weak;
  } else if (name == "fig3") {
    set({"eg0"}, long_run ? 25000.0 : 3000.0);
    c.alpha_grid = std::vector<double>{0.5, 1.0, 2.0};
  } else if (name == "fig4") {
    set({"gg1"}, 1000.0);
    c.alpha_grid = weak;
  } else if (name == "fig5" || name == "fig6") {
    set({name == "fig5" ? "eg1" : "eg2"}, 2000.0);
    c.alpha_grid = broad;
  } else if (name == "fig7") {
    set({"eg0"}, 300.0);
    c.snapshots = {111.0};
  } else if (name == "fig8" || name == "fig9") {
    set({"eg0"}, 1000.0);
    c.system.alpha = 0.0035;
    c.snapshots = {435.0};
  } else if (name == "fig10") {
    set({"eg0"}, 2000.0);
    c.system.alpha = 0.0035;
    c.sample_count = 1001;  // every 2 ωt; each sample needs a full diagonalization
    c.lindblad = LindbladSpec{};
  } else if (name == "ee0" || name == "gg2") {
    set({name}, 2000.0);
    c.alpha_grid = null_grid;
  } else {
    throw Error(ErrorCode::kUnknownPreset, "unknown preset '" + std::string(name) + "'");
  }
  return c;
}

}  // namespace qbus
