// Copyright 2026 The quantum-grueneisen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QG_CLI_HPP
#define QG_CLI_HPP

// Command-line front end. `run` is the whole program; tools/qg_cli.cpp only
// forwards argv to it so that tests can drive it in-process.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qg/acceptance.hpp"
#include "qg/entanglement.hpp"
#include "qg/error.hpp"
#include "qg/gamma.hpp"
#include "qg/kane.hpp"
#include "qg/parallel.hpp"
#include "qg/report_io.hpp"
#include "qg/tfim.hpp"
#include "qg/version.hpp"

namespace qg::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kIoError = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::string model;
  std::map<std::string, double> fixed;
  std::string sweep;
  std::vector<double> grid;
  std::vector<std::string> outputs;
  std::optional<int> n_sites;
  std::string output_path;  // empty: standard output
  std::string format;  // csv or json; empty selects the command default
  // entanglement only
  std::string state_path;
  std::vector<int> keep;
};

// ---------------------------------------------------------------------------
// Parsing helpers

inline double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(what + ": cannot parse '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(what + ": cannot parse '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 2) throw ConfigError("grid: count must be >= 2");
  if (!(start < stop)) throw ConfigError("grid: start must be < stop");
  return gamma::linspace(start, stop, count);
}

/// "start:stop:count".
inline std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw ConfigError("grid: expected start:stop:count, got '" + spec + "'");
  return linear_grid(parse_double(parts[0], "grid start"), parse_double(parts[1], "grid stop"),
                     parse_int(parts[2], "grid count"));
}

inline std::vector<double> grid_from_json(const json& j) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  if (j.is_array()) {
    auto v = j.get<std::vector<double>>();
    if (v.size() < 2) throw ConfigError("grid: need at least 2 points");
    return v;
  }
  if (j.is_object()) {
    return linear_grid(j.at("start").get<double>(), j.at("stop").get<double>(),
                       j.at("count").get<int>());
  }
  throw ConfigError("grid: expected a string, a list or {start, stop, count}");
}

inline std::vector<int> parse_keep(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, "keep"));
  return out;
}

inline std::vector<std::string> parse_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& part : split(s, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

/// Reads a JSON config document into `cfg`. Unknown keys are rejected.
inline void apply_config_json(const json& j, SweepConfig& cfg) {
  static const std::set<std::string> known{"model", "fixed", "sweep", "grid",
                                           "outputs", "n_sites", "output", "format",
                                           "state", "keep"};
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  try {
    if (j.contains("model")) cfg.model = j["model"].get<std::string>();
    if (j.contains("fixed")) {
      for (const auto& [k, v] : j["fixed"].items()) cfg.fixed[k] = v.get<double>();
    }
    if (j.contains("sweep")) cfg.sweep = j["sweep"].get<std::string>();
    if (j.contains("grid")) cfg.grid = grid_from_json(j["grid"]);
    if (j.contains("outputs")) cfg.outputs = j["outputs"].get<std::vector<std::string>>();
    if (j.contains("n_sites")) cfg.n_sites = j["n_sites"].get<int>();
    if (j.contains("output")) cfg.output_path = j["output"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("state")) cfg.state_path = j["state"].get<std::string>();
    if (j.contains("keep")) cfg.keep = j["keep"].get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string(what) + ": cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Model descriptions

struct ModelSpec {
  std::map<std::string, double> defaults;
  std::vector<std::string> sweeps;  // first entry is the default
  std::vector<std::string> outputs;
  std::vector<std::string> default_outputs;
};

inline const ModelSpec& model_spec(const std::string& model) {
  static const std::map<std::string, ModelSpec> specs{
      {"tfim",
       {{{"B", 1.0}, {"J", 0.5}},
        {"lambda", "J", "B"},
        {"e0", "cross", "second", "gamma", "entropy_bits", "concurrence"},
        {"e0", "cross", "second", "gamma"}}},
      {"kane",
       {{{"A", 1e-3}, {"Jp", 0.25}, {"muBB", 1.0}},
        {"Jp", "muBB"},
        {"splitting", "cross", "second", "second_term", "gamma", "ed_splitting"},
        {"splitting", "cross", "second_term", "gamma"}}},
      {"tilted", {{{"h", 1.0}, {"g", 1.0}}, {"g", "h"}, {}, {}}},
  };
  if (model == "custom") {
    throw ConfigError("model 'custom' is available through the library API only");
  }
  auto it = specs.find(model);
  if (it == specs.end()) {
    throw ConfigError("unknown model '" + model + "' (expected tfim, kane or tilted)");
  }
  return it->second;
}

/// Fills defaults and checks names. Grid checks are left to the commands.
inline void normalize(SweepConfig& cfg) {
  const auto& spec = model_spec(cfg.model);
  for (const auto& [k, _] : cfg.fixed) {
    if (!spec.defaults.count(k)) {
      throw ConfigError("parameter '" + k + "' does not apply to model " + cfg.model);
    }
  }
  for (const auto& [k, v] : spec.defaults) cfg.fixed.try_emplace(k, v);
  for (const auto& [k, v] : cfg.fixed) {
    if (!std::isfinite(v)) throw ConfigError("parameter '" + k + "' must be finite");
  }
  if (cfg.sweep.empty()) cfg.sweep = spec.sweeps.front();
  if (std::find(spec.sweeps.begin(), spec.sweeps.end(), cfg.sweep) == spec.sweeps.end()) {
    throw ConfigError("cannot sweep '" + cfg.sweep + "' for model " + cfg.model);
  }
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format must be csv or json");
  }
  if (cfg.grid.empty()) throw ConfigError("a grid is required (--grid start:stop:count)");
  for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
    if (!(cfg.grid[i] > cfg.grid[i - 1])) throw ConfigError("grid must be strictly increasing");
  }
}

// ---------------------------------------------------------------------------
// Tables

struct Table {
  std::string model;
  std::vector<std::string> columns;  // numeric columns; "status" is appended
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> status;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline std::string header_line(const std::string& model) {
  return std::string("# ") + kProgramName + " v" + kVersion + "; model=" + model +
         "; units: muB=1";
}

inline void write_csv(const Table& t, std::ostream& out) {
  out << header_line(t.model) << '\n';
  for (const auto& c : t.columns) out << c << ',';
  out << "status\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (const auto& cell : t.rows[r]) {
      if (cell && std::isfinite(*cell)) out << format_double(*cell);
      out << ',';
    }
    out << t.status[r] << '\n';
  }
}

inline json table_json(const Table& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    json row = json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const auto& cell = t.rows[r][c];
      row[t.columns[c]] = cell && std::isfinite(*cell) ? json(*cell) : json(nullptr);
    }
    row["status"] = t.status[r];
    rows.push_back(std::move(row));
  }
  auto columns = t.columns;
  columns.emplace_back("status");
  return json{{"program", kProgramName}, {"version", kVersion}, {"model", t.model},
              {"units", "muB=1"},        {"columns", columns},   {"rows", rows}};
}

inline std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    out << table_json(t).dump(2) << '\n';
  } else {
    write_csv(t, out);
  }
  return out.str();
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

inline std::vector<std::string> resolve_outputs(const SweepConfig& cfg) {
  const auto& spec = model_spec(cfg.model);
  auto outs = cfg.outputs.empty() ? spec.default_outputs : cfg.outputs;
  if (cfg.outputs.empty() && cfg.model == "tfim" && cfg.n_sites) {
    outs.emplace_back("entropy_bits");
    outs.emplace_back("concurrence");
  }
  std::set<std::string> seen;
  for (const auto& o : outs) {
    if (std::find(spec.outputs.begin(), spec.outputs.end(), o) == spec.outputs.end()) {
      throw ConfigError("output '" + o + "' is not available for model " + cfg.model);
    }
    if (!seen.insert(o).second) throw ConfigError("output '" + o + "' requested twice");
  }
  return outs;
}

inline bool wants(const std::vector<std::string>& outs, const char* name) {
  return std::find(outs.begin(), outs.end(), name) != outs.end();
}

struct Row {
  std::map<std::string, double> values;
  std::string status = "ok";
};

inline Table assemble(const std::string& model, std::vector<std::string> lead,
                      const std::vector<std::string>& outs, const std::vector<Row>& rows) {
  Table t;
  t.model = model;
  t.columns = std::move(lead);
  t.columns.insert(t.columns.end(), outs.begin(), outs.end());
  for (const auto& r : rows) {
    std::vector<std::optional<double>> cells;
    for (const auto& c : t.columns) {
      auto it = r.values.find(c);
      cells.push_back(it == r.values.end() ? std::nullopt : std::optional<double>(it->second));
    }
    t.rows.push_back(std::move(cells));
    t.status.push_back(r.status);
  }
  return t;
}

// ---------------------------------------------------------------------------
// tfim-sweep

inline Table tfim_sweep_table(SweepConfig cfg) {
  cfg.model = "tfim";
  normalize(cfg);
  const auto outs = resolve_outputs(cfg);
  const bool needs_chain = wants(outs, "entropy_bits") || wants(outs, "concurrence");
  if (needs_chain) {
    if (!cfg.n_sites) throw ConfigError("entropy_bits and concurrence need --n-sites");
    if (*cfg.n_sites < 2 || *cfg.n_sites > ed::kMaxEdSites) {
      throw ConfigError("n-sites must lie in [2, 14]");
    }
  }
  const double B0 = cfg.fixed.at("B");
  const double J0 = cfg.fixed.at("J");
  struct Point {
    double lambda, B, J;
  };
  std::vector<Point> pts;
  for (double x : cfg.grid) {
    Point p{};
    if (cfg.sweep == "lambda") {
      p = {x, B0, x * B0};
    } else if (cfg.sweep == "J") {
      p = {x / B0, B0, x};
    } else {
      p = {J0 / x, x, J0};
    }
    if (!(p.B > 0.0) || !(p.J >= 0.0)) {
      throw ConfigError("tfim-sweep needs B > 0 and J >= 0 at every grid point");
    }
    pts.push_back(p);
  }
  const int n_sites = cfg.n_sites.value_or(0);
  auto rows = parallel::ordered_map(pts, [&](const Point& p) {
    Row row;
    row.values["lambda"] = p.lambda;
    row.values["B"] = p.B;
    row.values["J"] = p.J;
    const tfim::TfimParams tp{p.B, p.J};
    if (wants(outs, "e0")) row.values["e0"] = tfim::e0_per_site(tp);
    if (wants(outs, "cross") || wants(outs, "second") || wants(outs, "gamma")) {
      try {
        const auto d = tfim::derivatives(tp);
        row.values["cross"] = d.cross;
        row.values["second"] = d.second;
        if (d.second != 0.0) {
          row.values["gamma"] = -d.cross / (p.B * d.second);
        } else if (wants(outs, "gamma")) {
          row.status = "gamma_undefined";
        }
      } catch (const singularity_error&) {
        row.status = "singular";
      }
    }
    if (needs_chain) {
      const auto prof = entanglement::tfim_entanglement_profile(n_sites, tp);
      row.values["entropy_bits"] = prof.entropy.bits;
      row.values["concurrence"] = prof.nn_concurrence;
    }
    return row;
  });
  return assemble("tfim", {"lambda", "B", "J"}, outs, rows);
}

// ---------------------------------------------------------------------------
// kane-sweep

inline Table kane_sweep_table(SweepConfig cfg) {
  cfg.model = "kane";
  normalize(cfg);
  const auto outs = resolve_outputs(cfg);
  const double A = cfg.fixed.at("A");
  if (!(A >= 0.0)) throw ConfigError("kane-sweep needs A >= 0");
  std::vector<kane::KaneParams> pts;
  for (double x : cfg.grid) {
    kane::KaneParams p{A, cfg.fixed.at("Jp"), cfg.fixed.at("muBB")};
    (cfg.sweep == "Jp" ? p.Jp : p.muBB) = x;
    if (!(p.Jp >= 0.0) || !(p.muBB > 0.0)) {
      throw ConfigError("kane-sweep needs Jp >= 0 and muBB > 0 at every grid point");
    }
    pts.push_back(p);
  }
  auto rows = parallel::ordered_map(pts, [&](const kane::KaneParams& p) {
    Row row;
    row.values["Jp"] = p.Jp;
    row.values["muBB"] = p.muBB;
    row.values["A"] = p.A;
    row.values["ratio"] = kane::locus_ratio(p);
    try {
      row.values["splitting"] = kane::splitting(p);
      const auto d = kane::derivatives(p);
      row.values["cross"] = d.cross;
      row.values["second"] = d.second;
      row.values["second_term"] = d.second_term;
      if (p.Jp > 0.0 && p.A > 0.0) {
        row.values["gamma"] = kane::gamma0k_kane(p);
      } else if (wants(outs, "gamma")) {
        row.status = "gamma_undefined";
      }
    } catch (const singularity_error&) {
      row.status = "singular";
      return row;
    }
    if (wants(outs, "ed_splitting")) {
      if (2.0 * p.Jp < p.muBB) {
        row.values["ed_splitting"] = kane::ed_splitting(p);
      } else if (row.status == "ok") {
        row.status = "ed_unavailable";
      }
    }
    return row;
  });
  return assemble("kane", {"Jp", "muBB", "A", "ratio"}, outs, rows);
}

// ---------------------------------------------------------------------------
// scan

inline gamma::ScanReport scan_report(SweepConfig cfg) {
  if (cfg.model.empty()) throw ConfigError("scan needs a model (--model tfim|kane|tilted)");
  if (cfg.model == "tfim" && cfg.sweep.empty()) cfg.sweep = "J";
  if (cfg.model == "tfim" && cfg.sweep == "lambda") {
    throw ConfigError("scan sweeps a model parameter: use J or B for tfim");
  }
  normalize(cfg);
  if (!cfg.outputs.empty()) throw ConfigError("scan does not take --outputs");
  if (cfg.format == "csv") throw ConfigError("scan writes a JSON report only");
  if (cfg.grid.size() < 8) throw ConfigError("scan needs at least 8 grid points");
  gamma::TwoParamModel model;
  if (cfg.model == "tfim") {
    model = gamma::tfim_energy_model();
  } else if (cfg.model == "kane") {
    if (!(cfg.fixed.at("A") > 0.0)) throw ConfigError("scan of kane needs A > 0");
    model = gamma::kane_model(cfg.fixed.at("A"));
  } else {
    model = gamma::tilted_field_model();
  }
  const auto axis = cfg.sweep == model.h_name ? gamma::Axis::h : gamma::Axis::g;
  const double fixed =
      cfg.fixed.at(axis == gamma::Axis::h ? model.g_name : model.h_name);
  for (double x : cfg.grid) {
    const double h = axis == gamma::Axis::h ? x : fixed;
    const double g = axis == gamma::Axis::h ? fixed : x;
    if (!model.domain.contains(h, g)) {
      throw ConfigError("grid point " + format_double(x) + " lies outside the model domain");
    }
  }
  return gamma::scan(model, fixed, cfg.grid, axis);
}

// ---------------------------------------------------------------------------
// entanglement

inline entanglement::Vector read_state(const std::string& path) {
  const json j = read_json_file(path, "state file");
  if (!j.is_array() || j.empty()) throw ConfigError("state file: expected a list of [re, im] pairs");
  entanglement::Vector psi(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& a = j[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ConfigError("state file: entry " + std::to_string(i) + " is not [re, im]");
    }
    psi(static_cast<Eigen::Index>(i)) = {a[0].get<double>(), a[1].get<double>()};
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ConfigError("state file: norm " + format_double(norm) + " differs from 1");
  }
  psi /= norm;
  return psi;
}

inline Table entanglement_table(const SweepConfig& cfg) {
  if (cfg.state_path.empty()) throw ConfigError("entanglement needs --state <path>");
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format must be csv or json");
  }
  const auto psi = read_state(cfg.state_path);
  const auto dim = psi.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1 || n > entanglement::kMaxStateQubits) {
    throw ConfigError("state file: length must be 2^n with 1 <= n <= 14");
  }
  auto keep = cfg.keep;
  if (keep.empty()) {
    for (int i = 0; i < std::max(1, n / 2); ++i) keep.push_back(i);
  }
  std::set<int> uniq(keep.begin(), keep.end());
  if (uniq.size() != keep.size() || *uniq.begin() < 0 || *uniq.rbegin() >= n) {
    throw ConfigError("keep: qubit indices must be distinct and lie in [0, n)");
  }
  const auto rho = static_cast<int>(keep.size()) == n
                       ? entanglement::DensityMatrix::pure(psi)
                       : entanglement::partial_trace(psi, n, keep);
  Row row;
  row.values["n_qubits"] = n;
  row.values["kept"] = static_cast<double>(keep.size());
  const auto s = entanglement::von_neumann_entropy(rho);
  row.values["entropy_bits"] = s.bits;
  row.values["entropy_nats"] = s.nats;
  std::vector<std::string> outs{"entropy_bits", "entropy_nats"};
  if (keep.size() == 2) {
    row.values["concurrence"] = entanglement::concurrence(rho);
    outs.emplace_back("concurrence");
  }
  return assemble("state", {"n_qubits", "kept"}, outs, {row});
}

// ---------------------------------------------------------------------------
// selftest

inline int selftest(std::ostream& out) {
  bool all = true;
  for (const auto& r : acceptance::run_core()) {
    out << acceptance::format(r) << '\n';
    all = all && r.pass;
  }
  out << (all ? "selftest: all criteria passed" : "selftest: FAILED") << '\n';
  return all ? kOk : kNumericError;
}

// ---------------------------------------------------------------------------
// Entry point

struct Flags {
  std::string config, grid, output, format, outputs, sweep, model, state, keep;
  int n_sites = 0;
  std::map<std::string, double> params;
  std::map<std::string, CLI::Option*> param_opts;
  CLI::Option* n_sites_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

inline void add_common(CLI::App* sub, Flags& f, const std::vector<std::string>& params) {
  sub->add_option("--config", f.config, "JSON config file (flags take precedence)");
  sub->add_option("--grid", f.grid, "Linear grid start:stop:count");
  sub->add_option("--output", f.output, "Output file (default: standard output)");
  f.format_opt = sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--sweep", f.sweep, "Swept parameter");
  for (const auto& p : params) {
    f.param_opts[p] = sub->add_option("--" + p, f.params[p], "Fixed value of " + p);
  }
}

inline SweepConfig merge(const Flags& f, const std::string& model) {
  SweepConfig cfg;
  if (!f.config.empty()) apply_config_json(read_json_file(f.config, "config"), cfg);
  if (!model.empty()) {
    if (!cfg.model.empty() && cfg.model != model) {
      throw ConfigError("config model '" + cfg.model + "' does not match command (" + model + ")");
    }
    cfg.model = model;
  }
  if (!f.model.empty()) cfg.model = f.model;
  for (const auto& [name, opt] : f.param_opts) {
    if (opt->count()) cfg.fixed[name] = f.params.at(name);
  }
  if (!f.grid.empty()) cfg.grid = parse_grid(f.grid);
  if (!f.output.empty()) cfg.output_path = f.output;
  if (f.format_opt && f.format_opt->count()) cfg.format = f.format;
  if (!f.sweep.empty()) cfg.sweep = f.sweep;
  if (!f.outputs.empty()) cfg.outputs = parse_list(f.outputs);
  if (f.n_sites_opt && f.n_sites_opt->count()) cfg.n_sites = f.n_sites;
  if (!f.state.empty()) cfg.state_path = f.state;
  if (!f.keep.empty()) cfg.keep = parse_keep(f.keep);
  return cfg;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kProgramName) + " " + kVersion +
               ": zero-temperature Grueneisen ratios and entanglement of spin models"};
  app.name("qgrun");
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Flags tf, kf, sf, ef;
  auto* tfim_cmd = app.add_subcommand("tfim-sweep", "Transverse-field Ising chain over a grid");
  add_common(tfim_cmd, tf, {"B", "J"});
  tf.n_sites_opt = tfim_cmd->add_option("--n-sites", tf.n_sites, "Chain length for ED columns");
  tfim_cmd->add_option("--outputs", tf.outputs, "Comma-separated output columns");

  auto* kane_cmd = app.add_subcommand("kane-sweep", "Two-donor exchange splitting over a grid");
  add_common(kane_cmd, kf, {"A", "Jp", "muBB"});
  kane_cmd->add_option("--outputs", kf.outputs, "Comma-separated output columns");

  auto* scan_cmd = app.add_subcommand("scan", "Divergence and sign-change scan of a model");
  add_common(scan_cmd, sf, {"B", "J", "A", "Jp", "muBB", "h", "g"});
  scan_cmd->add_option("--model", sf.model, "tfim, kane or tilted");

  auto* ent_cmd = app.add_subcommand("entanglement", "Entropy and concurrence of a state file");
  ent_cmd->add_option("--state", ef.state, "JSON list of [re, im] amplitudes");
  ent_cmd->add_option("--keep", ef.keep, "Comma-separated kept qubits (default: first half)");
  ent_cmd->add_option("--config", ef.config, "JSON config file");
  ent_cmd->add_option("--output", ef.output, "Output file (default: standard output)");
  ef.format_opt = ent_cmd->add_option("--format", ef.format, "csv or json");

  auto* self_cmd = app.add_subcommand("selftest", "Run the built-in acceptance checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const char* op = "qgrun";
  try {
    if (*tfim_cmd) {
      op = "tfim-sweep";
      const auto cfg = merge(tf, "tfim");
      emit(render(tfim_sweep_table(cfg), cfg.format), cfg.output_path, out);
    } else if (*kane_cmd) {
      op = "kane-sweep";
      const auto cfg = merge(kf, "kane");
      emit(render(kane_sweep_table(cfg), cfg.format), cfg.output_path, out);
    } else if (*scan_cmd) {
      op = "scan";
      const auto cfg = merge(sf, "");
      const auto rep = scan_report(cfg);
      emit(io::to_json(rep).dump(2) + "\n", cfg.output_path, out);
    } else if (*ent_cmd) {
      op = "entanglement";
      const auto cfg = merge(ef, "");
      emit(render(entanglement_table(cfg), cfg.format), cfg.output_path, out);
    } else if (*self_cmd) {
      return selftest(out);
    }
  } catch (const ConfigError& e) {
    err << op << ": configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << op << ": I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << op << ": numeric failure: " << e.what() << '\n';
    return kNumericError;
  }
  return kOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace qg::cli

#endif  // QG_CLI_HPP
