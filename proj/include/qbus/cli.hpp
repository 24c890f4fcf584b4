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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbus/errors.hpp"
#include "qbus/io.hpp"
#include "qbus/scenarios.hpp"

namespace qbus {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2 };

struct CliOverrides {
  std::string out_dir = "./results";
  std::optional<std::size_t> fock;
  std::optional<std::size_t> samples;
  unsigned threads = 0;
};

namespace detail {

inline void apply_overrides(ScenarioConfig& cfg, const CliOverrides& o) {
  if (o.fock) cfg.system.fock_cutoff = *o.fock;
  if (o.samples) cfg.sample_count = *o.samples;
}

inline void execute(const ScenarioConfig& cfg, const CliOverrides& o, std::ostream& out, std::ostream& err) {
  cfg.validate();
  RunManifest manifest;
  manifest.config_digest = config_digest(cfg);
  manifest.started = utc_timestamp(std::chrono::system_clock::now());
  const ScenarioResult result = run_scenario(cfg, RunOptions{o.threads});
  for (const auto& w : result.warnings) err << "WARNING " << w << "\n";

  const std::filesystem::path dir(o.out_dir);
  manifest.output_paths = write_results(result, dir);
  manifest.warnings = result.warnings;
  manifest.finished = utc_timestamp(std::chrono::system_clock::now());
  const auto manifest_path = dir / (cfg.name + "_manifest.json");
  write_file(manifest_path, format_manifest(manifest, cfg));

  char buf[256];
  for (const auto& r : result.runs) {
    std::snprintf(buf, sizeof buf, "%s alpha=%g M=%zu max n_qq=%.6f at omega_t=%g\n", r.label.c_str(), r.alpha,
                  r.fock_cutoff, r.max_n_qq, r.argmax_omega_t);
    out << buf;
  }
  for (const auto& p : manifest.output_paths) out << "wrote " << p << "\n";
  out << "wrote " << manifest_path.string() << "\n";
}

}  // namespace detail

/// Entry point behind the `qbus` executable. Errors are reported on `err` as
/// `ERROR <code>: <message>`; returns 0, 1 (configuration) or 2 (numerical).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two qubits coupled through a (nonlinear) resonator: entanglement dynamics", "qbus"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CliOverrides o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--fock", o.fock, "Fock cutoff M (overrides the config)")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.samples, "Number of time samples")->check(CLI::Range(2, 100000000));
    cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a scenario from a JSON config file");
  run->add_option("config", config_path, "Config file")->required();
  add_common(run);

  std::string preset_name;
  bool long_run = false;
  auto* pre = app.add_subcommand("preset", "Run a built-in scenario");
  pre->add_option("name", preset_name, "Preset name (see `list`)")->required();
  pre->add_flag("--long", long_run, "Use the 25000 omega_t horizon for fig3");
  add_common(pre);

  auto* list = app.add_subcommand("list", "List built-in scenarios");
  auto* check = app.add_subcommand("oracle-check", "Compare numerics against the linear-resonator closed forms");

  std::vector<const char*> argv{"qbus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ERROR " << code_name(ErrorCode::kConfig) << ": " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*list) {
      char buf[256];
      for (const auto& p : preset_catalog()) {
        std::snprintf(buf, sizeof buf, "%-6s %s\n", std::string(p.name).c_str(), std::string(p.caption).c_str());
        out << buf;
      }
      out << "all presets: Omega1 = Omega2 = omega_R = 1, gamma = 0.01, cosine potential\n";
    } else if (*check) {
      const auto r = run_oracle_check();
      char buf[256];
      std::snprintf(buf, sizeof buf, "oracle-check: %zu times, max |dN| eg0 = %.3e, gg1 = %.3e, overall = %.3e\n",
                    r.samples, r.max_deviation_eg0, r.max_deviation_gg1, r.max_deviation());
      out << buf;
      if (!(r.max_deviation() <= 1e-8)) {
        err << "ERROR " << code_name(ErrorCode::kNoConvergence) << ": oracle deviation above 1e-8\n";
        return kExitNumerical;
      }
    } else if (*run) {
      auto cfg = load_config(config_path);
      detail::apply_overrides(cfg, o);
      detail::execute(cfg, o, out, err);
    } else {
      auto cfg = preset(preset_name, long_run);
      detail::apply_overrides(cfg, o);
      detail::execute(cfg, o, out, err);
    }
  } catch (const Error& e) {
    err << "ERROR " << code_name(e.code()) << ": " << e.what() << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    err << "ERROR " << code_name(ErrorCode::kIo) << ": " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace qbus
