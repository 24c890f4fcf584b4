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

// Configuration documents (JSON), time-series tables (CSV), density-matrix
// snapshots (JSON) and the run manifest.

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qbus/entanglement.hpp"
#include "qbus/errors.hpp"
#include "qbus/scenarios.hpp"

#ifndef QBUS_VERSION
#define QBUS_VERSION "0.0.0"
#endif

namespace qbus {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kCsvHeader = "omega_t,alpha,n_qq,n_qq_r,concurrence,purity_qq,leakage";
inline constexpr std::string_view kToolVersion = QBUS_VERSION;

namespace detail {

inline void require_keys(const Json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw Error(ErrorCode::kConfig, std::string(where) + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw Error(ErrorCode::kConfig, "unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

inline double get_number(const Json& v, std::string_view what) {
  if (!v.is_number()) throw Error(ErrorCode::kConfig, std::string(what) + " must be a number");
  return v.get<double>();
}

inline std::size_t get_count(const Json& v, std::string_view what) {
  if (!v.is_number_unsigned()) throw Error(ErrorCode::kConfig, std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

/// Lifetimes: a number of seconds, or null for an infinite lifetime.
inline double get_lifetime(const Json& v, std::string_view what) {
  return v.is_null() ? std::numeric_limits<double>::infinity() : get_number(v, what);
}

inline Json lifetime_json(double t) { return std::isinf(t) ? Json(nullptr) : Json(t); }

inline Complex get_complex(const Json& v, std::string_view what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(ErrorCode::kConfig, std::string(what) + " must be a number or [re, im]");
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline QubitState parse_qubit(const Json& v, std::string_view what) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "e") return QubitState::e();
    if (s == "g") return QubitState::g();
    throw Error(ErrorCode::kConfig, std::string(what) + " must be \"e\", \"g\" or an amplitude object");
  }
  require_keys(v, {"excited", "ground"}, what);
  QubitState q{{}, {}};
  if (v.contains("excited")) q.excited = get_complex(v["excited"], "excited");
  if (v.contains("ground")) q.ground = get_complex(v["ground"], "ground");
  return q;
}

inline Json qubit_json(const QubitState& q) {
  if (q == QubitState::e()) return "e";
  if (q == QubitState::g()) return "g";
  return Json{{"excited", complex_json(q.excited)}, {"ground", complex_json(q.ground)}};
}

inline ProductStateSpec parse_initial(const Json& v) {
  if (v.is_string()) return parse_product_label(v.get<std::string>());
  require_keys(v, {"q1", "q2", "photons"}, "initial state");
  ProductStateSpec spec;
  if (v.contains("q1")) spec.q1 = parse_qubit(v["q1"], "q1");
  if (v.contains("q2")) spec.q2 = parse_qubit(v["q2"], "q2");
  if (v.contains("photons")) {
    const auto& p = v["photons"];
    if (p.is_array()) {
      std::vector<Complex> amps;
      for (const auto& a : p) amps.push_back(get_complex(a, "photon amplitude"));
      spec.photons = std::move(amps);
    } else {
      spec.photons = get_count(p, "photons");
    }
  }
  return spec;
}

inline Json initial_json(const ProductStateSpec& spec) {
  const auto label = product_label(spec);
  if (!label.empty()) return label;
  Json photons;
  if (const auto* n = std::get_if<std::size_t>(&spec.photons)) {
    photons = *n;
  } else {
    photons = Json::array();
    for (const auto& a : std::get<std::vector<Complex>>(spec.photons)) photons.push_back(complex_json(a));
  }
  return Json{{"q1", qubit_json(spec.q1)}, {"q2", qubit_json(spec.q2)}, {"photons", photons}};
}

inline std::vector<double> get_numbers(const Json& v, std::string_view what) {
  if (!v.is_array()) throw Error(ErrorCode::kConfig, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_number(x, what));
  return out;
}

}  // namespace detail

inline Json to_json(const SystemSpec& s) {
  return Json{{"omega1", s.omega1},
              {"omega2", s.omega2},
              {"omega_r", s.omega_r},
              {"gamma", s.gamma},
              {"nonlinearity", std::string(nonlinearity_name(s.nonlinearity))},
              {"alpha", s.alpha},
              {"fock_cutoff", s.fock_cutoff}};
}

inline Json to_json(const LindbladSpec& l) {
  return Json{{"t_r", detail::lifetime_json(l.t_r)},
              {"t_q1", detail::lifetime_json(l.t_q1)},
              {"t_q2", detail::lifetime_json(l.t_q2)},
              {"omega_phys", l.omega_phys},
              {"standard_lowering", l.standard_lowering},
              {"step", l.step}};
}

inline Json to_json(const ScenarioConfig& c) {
  Json j{{"name", c.name}, {"system", to_json(c.system)}};
  Json initial = Json::array();
  for (const auto& s : c.initial) initial.push_back(detail::initial_json(s));
  j["initial"] = initial;
  j["time_max"] = c.time_max;
  j["sample_count"] = c.sample_count;
  if (c.alpha_grid) j["alpha_grid"] = *c.alpha_grid;
  if (c.lindblad) j["lindblad"] = to_json(*c.lindblad);
  if (!c.snapshots.empty()) j["snapshots"] = c.snapshots;
  return j;
}

inline SystemSpec system_from_json(const Json& j) {
  detail::require_keys(j, {"omega1", "omega2", "omega_r", "gamma", "nonlinearity", "alpha", "fock_cutoff"}, "system");
  SystemSpec s;
  if (j.contains("omega1")) s.omega1 = detail::get_number(j["omega1"], "omega1");
  if (j.contains("omega2")) s.omega2 = detail::get_number(j["omega2"], "omega2");
  if (j.contains("omega_r")) s.omega_r = detail::get_number(j["omega_r"], "omega_r");
  if (j.contains("gamma")) s.gamma = detail::get_number(j["gamma"], "gamma");
  if (j.contains("nonlinearity")) {
    if (!j["nonlinearity"].is_string()) throw Error(ErrorCode::kConfig, "nonlinearity must be a string");
    s.nonlinearity = parse_nonlinearity(j["nonlinearity"].get<std::string>());
  }
  if (j.contains("alpha")) s.alpha = detail::get_number(j["alpha"], "alpha");
  if (j.contains("fock_cutoff")) s.fock_cutoff = detail::get_count(j["fock_cutoff"], "fock_cutoff");
  return s;
}

inline LindbladSpec lindblad_from_json(const Json& j) {
  detail::require_keys(j, {"t_r", "t_q1", "t_q2", "omega_phys", "standard_lowering", "step"}, "lindblad");
  LindbladSpec l;
  if (j.contains("t_r")) l.t_r = detail::get_lifetime(j["t_r"], "t_r");
  if (j.contains("t_q1")) l.t_q1 = detail::get_lifetime(j["t_q1"], "t_q1");
  if (j.contains("t_q2")) l.t_q2 = detail::get_lifetime(j["t_q2"], "t_q2");
  if (j.contains("omega_phys")) l.omega_phys = detail::get_number(j["omega_phys"], "omega_phys");
  if (j.contains("standard_lowering")) {
    if (!j["standard_lowering"].is_boolean()) throw Error(ErrorCode::kConfig, "standard_lowering must be a boolean");
    l.standard_lowering = j["standard_lowering"].get<bool>();
  }
  if (j.contains("step")) l.step = detail::get_number(j["step"], "step");
  return l;
}

/// Strict parse: unknown keys anywhere are rejected. `sample_count` defaults
/// to a spacing of 0.5 in ωt; `initial` may be one state or a list.
inline ScenarioConfig config_from_json(const Json& j) {
  detail::require_keys(j, {"name", "system", "initial", "time_max", "sample_count", "alpha_grid", "lindblad", "snapshots"},
                       "config");
  for (const char* key : {"name", "initial", "time_max"}) {
    if (!j.contains(key)) throw Error(ErrorCode::kConfig, std::string("config is missing '") + key + "'");
  }
  ScenarioConfig c;
  if (!j["name"].is_string()) throw Error(ErrorCode::kConfig, "name must be a string");
  c.name = j["name"].get<std::string>();
  c.system = j.contains("system") ? system_from_json(j["system"]) : SystemSpec{};
  c.initial.clear();
  if (j["initial"].is_array()) {
    for (const auto& v : j["initial"]) c.initial.push_back(detail::parse_initial(v));
  } else {
    c.initial.push_back(detail::parse_initial(j["initial"]));
  }
  c.time_max = detail::get_number(j["time_max"], "time_max");
  c.sample_count = j.contains("sample_count") ? detail::get_count(j["sample_count"], "sample_count")
                                              : default_sample_count(c.time_max);
  if (j.contains("alpha_grid")) c.alpha_grid = detail::get_numbers(j["alpha_grid"], "alpha_grid");
  if (j.contains("lindblad")) c.lindblad = lindblad_from_json(j["lindblad"]);
  if (j.contains("snapshots")) c.snapshots = detail::get_numbers(j["snapshots"], "snapshots");
  return c;
}

inline ScenarioConfig parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline std::string serialize_config(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScenarioConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Results

/// CSV text for the runs labelled `label` (all runs when empty), sorted by
/// (alpha, omega_t), with 12 significant digits.
inline std::string format_csv(const ScenarioResult& result, std::string_view label = {}) {
  std::vector<const Run*> runs;
  for (const auto& r : result.runs)
    if (label.empty() || r.label == label) runs.push_back(&r);
  if (label.empty()) {
    for (const auto* r : runs) {
      if (r->label != runs.front()->label) {
        throw Error(ErrorCode::kInvalidArgument, "result holds several initial states; pass a label");
      }
    }
  } else if (runs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no runs labelled " + std::string(label));
  }
  struct Row {
    double alpha;
    const SampleRecord* rec;
  };
  std::vector<Row> rows;
  for (const auto* r : runs)
    for (const auto& rec : r->records) rows.push_back({r->alpha, &rec});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.alpha != b.alpha ? a.alpha < b.alpha : a.rec->omega_t < b.rec->omega_t;
  });
  std::string out(kCsvHeader);
  out += '\n';
  char buf[320];
  for (const auto& row : rows) {
    const auto& r = *row.rec;
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.omega_t, row.alpha, r.n_qq, r.n_qq_r,
                  r.concurrence, r.purity_qq, r.leakage);
    out += buf;
  }
  return out;
}

inline void emit_csv(const ScenarioResult& result, const std::filesystem::path& path, std::string_view label = {}) {
  write_file(path, format_csv(result, label));
}

struct SnapshotMeta {
  double omega_t = 0.0;
  double alpha = 0.0;
  std::string label;
};

/// JSON snapshot of a 4×4 two-qubit density matrix, basis (ee, eg, ge, gg).
inline std::string format_snapshot(const ComplexMatrix& rho_qq, const SnapshotMeta& meta) {
  if (rho_qq.rows() != 4 || rho_qq.cols() != 4) {
    throw Error(ErrorCode::kDimensionMismatch, "snapshot needs a 4×4 density matrix");
  }
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      rr.push_back(rho_qq(i, j).real());
      ri.push_back(rho_qq(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  Json j{{"omega_t", meta.omega_t}, {"alpha", meta.alpha}};
  if (!meta.label.empty()) j["initial"] = meta.label;
  j["basis"] = Json::array({"ee", "eg", "ge", "gg"});
  j["real"] = re;
  j["imag"] = im;
  j["negativity"] = negativity_qq(rho_qq);
  return j.dump(2) + "\n";
}

inline void emit_snapshot(const ComplexMatrix& rho_qq, const SnapshotMeta& meta, const std::filesystem::path& path) {
  write_file(path, format_snapshot(rho_qq, meta));
}

// ---------------------------------------------------------------------------
// Manifest

/// Hex SHA-256 of `data`.
inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

/// Digest of the canonical (compact) serialization of a resolved config.
inline std::string config_digest(const ScenarioConfig& c) { return sha256_hex(to_json(c).dump()); }

inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string config_digest;
  std::string tool_version{kToolVersion};
  std::string started;
  std::string finished;
  std::vector<std::string> output_paths;
  std::vector<std::string> warnings;
};

inline std::string format_manifest(const RunManifest& m, const ScenarioConfig& c) {
  Json j{{"config_digest", m.config_digest}, {"tool_version", m.tool_version}, {"started", m.started},
         {"finished", m.finished},           {"output_paths", m.output_paths}, {"warnings", m.warnings},
         {"config", to_json(c)}};
  return j.dump(2) + "\n";
}

/// Writes one CSV per initial state (`<name>_<label>.csv`), the snapshots
/// (`<name>_snapshot.json`, or `<name>_snapshot_<k>.json` when there are
/// several) and returns the written paths in order.
inline std::vector<std::string> write_results(const ScenarioResult& result, const std::filesystem::path& dir) {
  std::vector<std::string> paths;
  std::vector<std::string> labels;
  std::size_t snapshot_count = 0;
  for (const auto& r : result.runs) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
    snapshot_count += r.snapshots.size();
  }
  for (const auto& label : labels) {
    const auto path = dir / (result.name + "_" + label + ".csv");
    emit_csv(result, path, label);
    paths.push_back(path.string());
  }
  std::size_t k = 0;
  for (const auto& r : result.runs) {
    for (const auto& s : r.snapshots) {
      const std::string file = snapshot_count == 1 ? result.name + "_snapshot.json"
                                                   : result.name + "_snapshot_" + std::to_string(k) + ".json";
      emit_snapshot(s.rho_qq, {s.omega_t, r.alpha, r.label}, dir / file);
      paths.push_back((dir / file).string());
      ++k;
    }
  }
  return paths;
}

}  // namespace qbus
