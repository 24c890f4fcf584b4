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

// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// values. Exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <unistd.h>
#include <vector>

#include "qbus/io.hpp"
#include "qbus/model.hpp"
#include "qbus/scenarios.hpp"

namespace {

using namespace qbus;
namespace fs = std::filesystem;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_n_qq(const ScenarioResult& r, double alpha) {
  double m = 0.0;
  for (const auto& run : r.runs)
    if (run.alpha == alpha) m = std::max(m, run.max_n_qq);
  return m;
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_oracle_check(200, 500.0);
  const double elapsed = seconds_since(t0);
  report(1, r.max_deviation() <= 1e-8 && elapsed < 5.0, "oracle equivalence",
         "max |dN| eg0 " + fmt("%.2e", r.max_deviation_eg0) + ", gg1 " + fmt("%.2e", r.max_deviation_gg1) +
             " (<= 1e-8), runtime " + fmt("%.2f", elapsed) + " s (< 5 s)");
}

double fig7_max_imag = 0.0;

void criterion_2() {
  const auto r = run_scenario(preset("fig7"));
  const auto& snap = r.runs.at(0).snapshots.at(0);
  for (const auto& z : snap.rho_qq.entries()) fig7_max_imag = std::max(fig7_max_imag, std::abs(z.imag()));
  report(2, std::abs(snap.negativity - 0.104) <= 0.002, "fig7 snapshot",
         "N_QQ(wt=111, alpha=0) = " + fmt("%.6f", snap.negativity) + " (0.104 +- 0.002)");
}

void criterion_3() {
  const auto r = run_scenario(preset("fig8"));
  const double n = r.runs.at(0).snapshots.at(0).negativity;
  const bool anchor = std::abs(n - 0.492) <= 0.010;
  const bool imag = fig7_max_imag <= 1e-12;
  report(3, anchor && imag, "fig8 snapshot",
         "N_QQ(wt=435, alpha=0.0035) = " + fmt("%.6f", n) + " (0.492 +- 0.010) " + (anchor ? "ok" : "MISS") +
             "; fig7 max |Im rho_QQ| = " + fmt("%.2e", fig7_max_imag) + " (<= 1e-12) " + (imag ? "ok" : "MISS"));
}

void criterion_4() {
  const auto r = run_scenario(preset("fig1"));
  const auto& gg1 = r.run("gg1", 0.0);
  const bool pass = std::abs(gg1.max_n_qq - 0.5) <= 1e-3 && std::abs(gg1.argmax_omega_t - 111.1) <= 0.5 &&
                    gg1.n_qq_r_at_max <= 1e-6;
  report(4, pass, "Bell point",
         "max N_QQ = " + fmt("%.7f", gg1.max_n_qq) + " at wt = " + fmt("%.3f", gg1.argmax_omega_t) +
             ", N_QQ_vs_R there = " + fmt("%.2e", gg1.n_qq_r_at_max));
}

void criterion_5_6() {
  const auto gain = run_scenario(preset("fig2"));
  const double with = max_n_qq(gain, 0.0035);
  const double without = max_n_qq(gain, 0.0);
  report(5, with >= 0.45 && without <= 0.104 + 1e-3, "gain regime",
         "max N_QQ(eg0, alpha=0.0035, wt<=1000) = " + fmt("%.6f", with) + " (>= 0.45); alpha=0: " +
             fmt("%.6f", without) + " (<= 0.105)");

  const auto supp = run_scenario(preset("fig4"));
  bool pass = true;
  std::string detail;
  for (double a : {0.001, 0.0035, 0.005}) {
    const double m = max_n_qq(supp, a);
    pass = pass && m < 0.499;
    detail += "alpha=" + fmt("%g", a) + ": " + fmt("%.6f", m) + "  ";
  }
  report(6, pass, "suppression regime", detail + "(each < 0.499)");
}

void criterion_7() {
  const auto gg2 = run_scenario(preset("gg2"));
  const double n_gg2 = max_n_qq(gg2, 0.0);
  bool pass = std::abs(n_gg2 - 0.18) <= 0.01;
  std::string detail = "gg2 alpha=0: " + fmt("%.6f", n_gg2) + " (0.18 +- 0.01)";
  for (const char* fig : {"fig5", "fig6"}) {
    const auto cfg = preset(fig);
    const auto r = run_scenario(cfg);
    const double base = max_n_qq(r, 0.0);
    double best = 0.0;
    double best_alpha = 0.0;
    for (double a : *cfg.alpha_grid) {
      if (max_n_qq(r, a) > best) {
        best = max_n_qq(r, a);
        best_alpha = a;
      }
    }
    pass = pass && base <= 0.2 && best >= 0.35;
    detail += "; " + cfg.initial_label(0) + " alpha=0: " + fmt("%.4f", base) + " (<= 0.2), best " + fmt("%.4f", best) +
              " at alpha=" + fmt("%g", best_alpha) + " (>= 0.35)";
  }
  report(7, pass, "multi-excitation", detail);
}

void criterion_8() {
  const auto r = run_scenario(preset("ee0"));
  bool pass = true;
  std::string detail;
  for (double a : {0.0, 0.0035, 0.7}) {
    const double m = max_n_qq(r, a);
    pass = pass && m <= 1e-3;
    detail += "alpha=" + fmt("%g", a) + ": " + fmt("%.3e", m) + "  ";
  }
  report(8, pass, "null case", detail + "(each <= 1e-3)");
}

void criterion_9() {
  const auto c40 = cosine_potential(40, 1.0);
  const auto c60 = cosine_potential(60, 1.0);
  const double vacuum = std::abs(c40(0, 0).real() - std::exp(-0.5));
  double stability = 0.0;
  for (std::size_t m = 0; m <= 10; ++m)
    for (std::size_t n = 0; n <= 10; ++n) stability = std::max(stability, std::abs(c40(m, n) - c60(m, n)));
  report(9, vacuum <= 1e-10 && stability <= 1e-8, "cosine operator",
         "|<0|cos X|0> - e^-1/2| = " + fmt("%.2e", vacuum) + " (<= 1e-10); max |dC| m,n<=10 M=40 vs 60 = " +
             fmt("%.2e", stability) + " (<= 1e-8)");
}

void criterion_10() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = preset("fig10");
  const auto open = run_scenario(cfg);
  auto closed_cfg = cfg;
  closed_cfg.lindblad.reset();
  const auto closed = run_scenario(closed_cfg);
  const auto& run = open.runs.at(0);
  const double peak = run.max_n_qq;
  const double unitary = closed.runs.at(0).max_n_qq;
  const bool pass = run.max_trace_drift <= 1e-6 && run.min_eigenvalue >= -1e-6 && peak < unitary && peak >= 0.4;
  report(10, pass, "Lindblad integrity",
         "trace drift " + fmt("%.2e", run.max_trace_drift) + ", min eig " + fmt("%.2e", run.min_eigenvalue) +
             ", peak N_QQ " + fmt("%.4f", peak) + " at wt=" + fmt("%g", run.argmax_omega_t) + " vs unitary " +
             fmt("%.4f", unitary) + " (below, >= 0.4), step " + fmt("%g", run.step) + ", " +
             fmt("%.0f", seconds_since(t0)) + " s");
}

void criterion_11() {
  const fs::path root = fs::temp_directory_path() / ("qbus_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  bool identical = true;
  bool header = true;
  std::size_t files = 0;
  for (const char* name : {"fig1", "fig7", "fig8"}) {
    const auto cfg = preset(name);
    const auto a = write_results(run_scenario(cfg, RunOptions{1}), root / "a");
    const auto b = write_results(run_scenario(cfg, RunOptions{4}), root / "b");
    identical = identical && a.size() == b.size();
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
      const auto text = read_file(a[k]);
      identical = identical && text == read_file(b[k]);
      if (a[k].ends_with(".csv")) header = header && text.substr(0, text.find('\n')) == kCsvHeader;
      ++files;
    }
  }
  fs::remove_all(root);
  report(11, identical && header, "determinism and formats",
         std::to_string(files) + " CSV/JSON files byte-identical across runs: " + (identical ? "yes" : "NO") +
             "; CSV header exact: " + (header ? "yes" : "NO"));
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
