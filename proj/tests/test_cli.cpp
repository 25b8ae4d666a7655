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

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qg/cli.hpp"
#include "qg/report_io.hpp"

namespace {

using qg::cli::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = qg::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string data_path(const std::string& name) {
  return std::string(QG_TEST_DATA) + "/" + name;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("qg_test_cli_" + std::to_string(::getpid()) + "_" + name);
}

struct Csv {
  std::string header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    ADD_FAILURE() << "no column " << name;
    return 0;
  }
  [[nodiscard]] std::optional<double> num(std::size_t r, const std::string& name) const {
    const auto& cell = rows[r][col(name)];
    if (cell.empty()) return std::nullopt;
    return std::stod(cell);
  }
  [[nodiscard]] const std::string& status(std::size_t r) const {
    return rows[r][col("status")];
  }
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  std::getline(in, csv.header);
  std::getline(in, line);
  csv.columns = split_csv(line);
  while (std::getline(in, line)) {
    if (!line.empty()) csv.rows.push_back(split_csv(line));
  }
  return csv;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

TEST(Parse, GridSpec) {
  const auto g = qg::cli::parse_grid("0.2:2.0:37");
  ASSERT_EQ(g.size(), 37u);
  EXPECT_DOUBLE_EQ(g.front(), 0.2);
  EXPECT_DOUBLE_EQ(g.back(), 2.0);
  EXPECT_NEAR(g[16], 1.0, 1e-15);
  EXPECT_THROW((void)qg::cli::parse_grid("0.2:2.0:1"), qg::cli::ConfigError);
  EXPECT_THROW((void)qg::cli::parse_grid("2.0:0.2:5"), qg::cli::ConfigError);
  EXPECT_THROW((void)qg::cli::parse_grid("0.2:2.0"), qg::cli::ConfigError);
  EXPECT_THROW((void)qg::cli::parse_grid("a:2.0:5"), qg::cli::ConfigError);
  EXPECT_THROW((void)qg::cli::parse_grid("0.2:2.0:5x"), qg::cli::ConfigError);
}

TEST(Parse, GridFromJsonForms) {
  EXPECT_EQ(qg::cli::grid_from_json(json("0:1:3")).size(), 3u);
  EXPECT_EQ(qg::cli::grid_from_json(json::parse("[0.1, 0.5, 0.7]")).size(), 3u);
  EXPECT_EQ(qg::cli::grid_from_json(json::parse(R"({"start":0,"stop":1,"count":5})")).size(), 5u);
  EXPECT_THROW((void)qg::cli::grid_from_json(json(3)), qg::cli::ConfigError);
  EXPECT_THROW((void)qg::cli::grid_from_json(json::parse("[1.0]")), qg::cli::ConfigError);
}

TEST(Parse, ConfigRejectsUnknownKeys) {
  qg::cli::SweepConfig cfg;
  EXPECT_THROW(qg::cli::apply_config_json(json::parse(R"({"modle":"tfim"})"), cfg),
               qg::cli::ConfigError);
  EXPECT_THROW(qg::cli::apply_config_json(json::parse(R"({"n_sites":"ten"})"), cfg),
               qg::cli::ConfigError);
}

TEST(Parse, FormatDoubleIsFixedAndHasNoNegativeZero) {
  EXPECT_EQ(qg::cli::format_double(-0.0), "0");
  EXPECT_EQ(qg::cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(qg::cli::format_double(-2.5), "-2.5");
}

// ---------------------------------------------------------------------------
// Exit codes

TEST(ExitCodes, ConfigErrorsReturnTwo) {
  EXPECT_EQ(run_cli({"tfim-sweep", "--grid", "2:1:5"}).code, 2);
  EXPECT_EQ(run_cli({"tfim-sweep", "--grid", "0.2:2:5", "--outputs", "splitting"}).code, 2);
  EXPECT_EQ(run_cli({"tfim-sweep", "--grid", "0.2:2:5", "--outputs", "entropy_bits"}).code, 2);
  EXPECT_EQ(run_cli({"tfim-sweep", "--grid", "0.2:2:5", "--n-sites", "15"}).code, 2);
  EXPECT_EQ(run_cli({"kane-sweep", "--grid", "0.1:0.9:5", "--sweep", "lambda"}).code, 2);
  EXPECT_EQ(run_cli({"scan", "--grid", "0.2:2:10"}).code, 2);
  EXPECT_EQ(run_cli({"scan", "--model", "tfim", "--grid", "0.2:2:5"}).code, 2);
  EXPECT_EQ(run_cli({"scan", "--model", "tfim", "--grid", "0.2:2:10", "--format", "csv"}).code, 2);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  const auto bad = run_cli({"tfim-sweep", "--grid", "0.2:2:1"});
  EXPECT_NE(bad.err.find("tfim-sweep"), std::string::npos) << bad.err;
}

TEST(ExitCodes, CustomModelIsLibraryOnly) {
  const auto o = run_cli({"scan", "--model", "custom", "--grid", "0.2:2:10"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("library"), std::string::npos) << o.err;
}

TEST(ExitCodes, NumericFailureReturnsThree) {
  // Strong hyperfine coupling mixes the nuclear states beyond identification.
  const auto o = run_cli({"kane-sweep", "--A", "1", "--grid", "0.1:0.4:4", "--outputs",
                          "splitting,ed_splitting"});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("kane-sweep"), std::string::npos) << o.err;
}

TEST(ExitCodes, IoFailuresReturnFour) {
  EXPECT_EQ(run_cli({"tfim-sweep", "--config", "/nonexistent/cfg.json"}).code, 4);
  EXPECT_EQ(run_cli({"tfim-sweep", "--grid", "0.2:2:5", "--output",
                     "/nonexistent/dir/out.csv"}).code, 4);
  EXPECT_EQ(run_cli({"entanglement", "--state", "/nonexistent/psi.json"}).code, 4);
}

TEST(ExitCodes, HelpAndVersionSucceed) {
  const auto help = run_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("tfim-sweep"), std::string::npos);
  EXPECT_EQ(run_cli({"--version"}).code, 0);
}

// ---------------------------------------------------------------------------
// tfim-sweep

TEST(TfimSweep, CsvHeaderAndColumns) {
  const auto o = run_cli({"tfim-sweep", "--grid", "0.5:1.5:3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  EXPECT_EQ(csv.header, "# quantum-grueneisen v0.1.0; model=tfim; units: muB=1");
  EXPECT_EQ(csv.columns, (std::vector<std::string>{"lambda", "B", "J", "e0", "cross",
                                                   "second", "gamma", "status"}));
  ASSERT_EQ(csv.rows.size(), 3u);
  EXPECT_NEAR(*csv.num(0, "e0"), qg::tfim::e0_per_site({1.0, 0.5}), 1e-15);
}

TEST(TfimSweep, CrossPeaksNextToCriticalPoint) {
  const auto o = run_cli({"tfim-sweep", "--grid", "0.2:2.0:37", "--n-sites", "10"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  ASSERT_EQ(csv.rows.size(), 37u);
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (const auto c = csv.num(r, "cross"); c && std::abs(*c) > best) {
      best = std::abs(*c);
      arg = r;
    }
  }
  const double at = *csv.num(arg, "lambda");
  EXPECT_NEAR(std::abs(at - 1.0), 0.05, 1e-12) << at;
}

TEST(TfimSweep, SingularRowHasStatusAndEmptyCells) {
  const auto o = run_cli({"tfim-sweep", "--grid", "0.2:2.0:37", "--n-sites", "10"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  int singular = 0;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (csv.status(r) == "ok") {
      for (const char* c : {"e0", "cross", "second", "gamma", "entropy_bits", "concurrence"}) {
        EXPECT_TRUE(csv.num(r, c).has_value()) << r << " " << c;
      }
      continue;
    }
    ++singular;
    EXPECT_EQ(csv.status(r), "singular");
    EXPECT_NEAR(*csv.num(r, "lambda"), 1.0, 1e-12);
    for (const char* c : {"cross", "second", "gamma"}) {
      EXPECT_FALSE(csv.num(r, c).has_value()) << c;
    }
  }
  EXPECT_EQ(singular, 1);
}

TEST(TfimSweep, EntropyApproachesOneBitDeepInOrderedPhase) {
  const auto o = run_cli({"tfim-sweep", "--grid", "5:40:8", "--n-sites", "10"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  ASSERT_EQ(csv.rows.size(), 8u);
  // The cat state dressed by field fluctuations sits just above one bit.
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double gap = *csv.num(r, "entropy_bits") - 1.0;
    EXPECT_GT(gap, 0.0) << r;
    EXPECT_LT(gap, prev) << r;
    prev = gap;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(TfimSweep, EntropySmallInDisorderedPhase) {
  const auto o = run_cli({"tfim-sweep", "--grid", "0.2:0.4:3", "--n-sites", "10"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  ASSERT_EQ(csv.rows.size(), 3u);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    EXPECT_LT(*csv.num(r, "entropy_bits"), 0.2) << r;
  }
}

TEST(TfimSweep, SweepOverFieldAtFixedExchange) {
  const auto o = run_cli({"tfim-sweep", "--sweep", "B", "--J", "0.5", "--grid", "0.25:2:8",
                          "--outputs", "cross,second"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double B = *csv.num(r, "B");
    if (std::abs(0.5 / B - 1.0) < 1e-6) continue;
    const auto d = qg::tfim::derivatives({B, 0.5});
    EXPECT_DOUBLE_EQ(*csv.num(r, "cross"), d.cross);
    EXPECT_DOUBLE_EQ(*csv.num(r, "J"), 0.5);
  }
}

TEST(TfimSweep, JsonFormat) {
  const auto o = run_cli({"tfim-sweep", "--grid", "0.5:1.5:3", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json::parse(o.out);
  EXPECT_EQ(j.at("model"), "tfim");
  EXPECT_EQ(j.at("version"), "0.1.0");
  ASSERT_EQ(j.at("rows").size(), 3u);
  EXPECT_EQ(j["rows"][1]["status"], "singular");
  EXPECT_TRUE(j["rows"][1]["cross"].is_null());
  EXPECT_TRUE(j["rows"][0]["cross"].is_number());
}

TEST(TfimSweep, ConfigFileWithFlagOverride) {
  const auto from_config = run_cli({"tfim-sweep", "--config", data_path("tfim_fig1.json")});
  ASSERT_EQ(from_config.code, 0) << from_config.err;
  const auto csv = parse_csv(from_config.out);
  EXPECT_EQ(csv.rows.size(), 37u);
  EXPECT_NE(std::find(csv.columns.begin(), csv.columns.end(), "entropy_bits"),
            csv.columns.end());

  const auto overridden = run_cli({"tfim-sweep", "--config", data_path("tfim_fig1.json"),
                                   "--grid", "0.2:0.4:3", "--format", "json"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  const auto j = json::parse(overridden.out);
  EXPECT_EQ(j.at("rows").size(), 3u);
}

TEST(TfimSweep, WritesOutputFileIdenticalToStdout) {
  const auto path = scratch("sweep.csv");
  const auto to_file =
      run_cli({"tfim-sweep", "--grid", "0.2:2.0:10", "--output", path.string()});
  ASSERT_EQ(to_file.code, 0) << to_file.err;
  EXPECT_TRUE(to_file.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), {});
  std::filesystem::remove(path);
  EXPECT_EQ(written, run_cli({"tfim-sweep", "--grid", "0.2:2.0:10"}).out);
}

TEST(TfimSweep, OutputIndependentOfThreadCount) {
  const std::vector<std::string> args{"tfim-sweep", "--grid", "0.2:2.0:19", "--n-sites", "8"};
  ::setenv("QG_THREADS", "1", 1);
  const auto serial = run_cli(args);
  ::setenv("QG_THREADS", "3", 1);
  const auto threaded = run_cli(args);
  ::unsetenv("QG_THREADS");
  ASSERT_EQ(serial.code, 0);
  EXPECT_EQ(serial.out, threaded.out);
}

// ---------------------------------------------------------------------------
// kane-sweep

TEST(KaneSweep, SignChangeBracketsLocus) {
  const auto o = run_cli({"kane-sweep", "--grid", "0.05:1.0:96", "--muBB", "1", "--A", "1e-3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  ASSERT_EQ(csv.rows.size(), 96u);
  for (const char* col : {"cross", "second_term"}) {
    int flips = 0;
    std::optional<double> prev_v;
    double prev_x = 0.0;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
      const auto v = csv.num(r, col);
      if (!v) continue;
      const double x = *csv.num(r, "Jp");
      if (prev_v && (*prev_v > 0.0) != (*v > 0.0)) {
        ++flips;
        EXPECT_LE(prev_x, 0.5) << col;
        EXPECT_GE(x, 0.5) << col;
      }
      prev_v = v;
      prev_x = x;
    }
    EXPECT_EQ(flips, 1) << col;
  }
}

TEST(KaneSweep, GammaMatchesClosedForm) {
  const auto o = run_cli({"kane-sweep", "--grid", "0.05:1.0:96"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  int checked = 0;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double Jp = *csv.num(r, "Jp");
    if (csv.status(r) != "ok") {
      EXPECT_EQ(csv.status(r), "singular");
      EXPECT_NEAR(Jp, 0.5, 1e-12);
      EXPECT_FALSE(csv.num(r, "splitting").has_value());
      continue;
    }
    EXPECT_NEAR(*csv.num(r, "gamma"), 1.0 / (2.0 * Jp), 1e-4) << Jp;
    ++checked;
  }
  EXPECT_EQ(checked, 95);
}

TEST(KaneSweep, ZeroHyperfineGivesZeroSplitting) {
  const auto o = run_cli({"kane-sweep", "--A", "0", "--grid", "0.05:0.95:10"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    EXPECT_EQ(*csv.num(r, "splitting"), 0.0);
    EXPECT_EQ(csv.status(r), "gamma_undefined");
    EXPECT_FALSE(csv.num(r, "gamma").has_value());
  }
}

TEST(KaneSweep, EdColumnAgreesBelowLocusAndFlagsAbove) {
  const auto o = run_cli({"kane-sweep", "--grid", "0.1:0.8:8", "--outputs",
                          "splitting,ed_splitting"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = parse_csv(o.out);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double Jp = *csv.num(r, "Jp");
    if (Jp < 0.45) {
      EXPECT_EQ(csv.status(r), "ok");
      const double exact = *csv.num(r, "splitting");
      EXPECT_NEAR(*csv.num(r, "ed_splitting"), exact, 1e-2 * std::abs(exact)) << Jp;
    } else if (Jp > 0.55) {
      EXPECT_EQ(csv.status(r), "ed_unavailable");
      EXPECT_FALSE(csv.num(r, "ed_splitting").has_value());
    }
  }
}

// ---------------------------------------------------------------------------
// scan

TEST(Scan, TfimFindsCriticalCandidate) {
  const auto o = run_cli({"scan", "--model", "tfim", "--grid", "0.2:2.0:37"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rep = qg::io::scan_report_from_json(json::parse(o.out));
  ASSERT_EQ(rep.divergence_candidates.size(), 1u);
  EXPECT_LE(rep.divergence_candidates[0].lo, 1.0);
  EXPECT_GE(rep.divergence_candidates[0].hi, 1.0);
}

TEST(Scan, TiltedIsQuiet) {
  const auto o = run_cli({"scan", "--model", "tilted", "--grid", "0.1:2.0:40"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rep = qg::io::scan_report_from_json(json::parse(o.out));
  EXPECT_TRUE(rep.divergence_candidates.empty());
  EXPECT_TRUE(rep.sign_changes.empty());
}

TEST(Scan, KaneCandidateAndSignChangeAtLocus) {
  const auto o = run_cli({"scan", "--model", "kane", "--grid", "0.05:1.0:96"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rep = qg::io::scan_report_from_json(json::parse(o.out));
  ASSERT_FALSE(rep.divergence_candidates.empty());
  bool candidate = false;
  for (const auto& c : rep.divergence_candidates) {
    candidate = candidate || (c.lo <= 0.5 && c.hi >= 0.5);
  }
  EXPECT_TRUE(candidate);
  bool bracket = false;
  for (const auto& s : rep.sign_changes) bracket = bracket || (s.lo <= 0.5 && s.hi >= 0.5);
  EXPECT_TRUE(bracket);
}

TEST(Scan, JsonRoundTrip) {
  const auto o = run_cli({"scan", "--model", "kane", "--grid", "0.05:1.0:40"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json::parse(o.out);
  EXPECT_EQ(qg::io::to_json(qg::io::scan_report_from_json(j)), j);
}

TEST(Scan, RejectsPointsOutsideDomain) {
  EXPECT_EQ(run_cli({"scan", "--model", "kane", "--grid", "-0.5:1.0:20"}).code, 2);
  EXPECT_EQ(run_cli({"scan", "--model", "kane", "--A", "0", "--grid", "0.05:1.0:20"}).code, 2);
}

// ---------------------------------------------------------------------------
// entanglement

TEST(Entanglement, BellStateFile) {
  const auto o = run_cli({"entanglement", "--state", data_path("bell_state.json"), "--keep",
                          "0,1", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto row = json::parse(o.out).at("rows").at(0);
  EXPECT_NEAR(row.at("entropy_bits").get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(row.at("concurrence").get<double>(), 1.0, 1e-12);

  const auto half = run_cli({"entanglement", "--state", data_path("bell_state.json")});
  ASSERT_EQ(half.code, 0) << half.err;
  const auto csv = parse_csv(half.out);
  EXPECT_NEAR(*csv.num(0, "entropy_bits"), 1.0, 1e-12);
  EXPECT_NEAR(*csv.num(0, "entropy_nats"), std::log(2.0), 1e-12);
  EXPECT_EQ(*csv.num(0, "kept"), 1.0);
}

TEST(Entanglement, RejectsMalformedStates) {
  const auto path = scratch("psi.json");
  auto write = [&](const std::string& text) {
    std::ofstream(path) << text;
    return run_cli({"entanglement", "--state", path.string()}).code;
  };
  EXPECT_EQ(write("[[1, 0], [0, 0], [0, 0]]"), 2);         // not a power of 2
  EXPECT_EQ(write("[[1, 0], [1, 0]]"), 2);                 // not normalized
  EXPECT_EQ(write("[[1, 0], [0]]"), 2);                    // bad pair
  EXPECT_EQ(write("{not json"), 2);
  EXPECT_EQ(write("[[1, 0], [0, 0], [0, 0], [0, 0]]"), 0);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"entanglement", "--state", data_path("bell_state.json"), "--keep",
                     "0,2"}).code, 2);
}

// ---------------------------------------------------------------------------
// Built executable

TEST(Executable, MatchesInProcessOutputAndExitCodes) {
  const std::string cli = QG_CLI_PATH;
  auto shell = [&](const std::string& args, std::string& out) {
    out.clear();
    FILE* pipe = ::popen(("QG_THREADS=2 '" + cli + "' " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    const int status = ::pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string out;
  ASSERT_EQ(shell("tfim-sweep --grid 0.2:2.0:37 --n-sites 6", out), 0);
  EXPECT_EQ(out, run_cli({"tfim-sweep", "--grid", "0.2:2.0:37", "--n-sites", "6"}).out);
  EXPECT_EQ(shell("tfim-sweep --grid 2:1:3", out), 2);
  EXPECT_EQ(shell("tfim-sweep --grid 0.2:2:5 --output /nonexistent/x.csv", out), 4);
  EXPECT_EQ(shell("kane-sweep --A 1 --grid 0.1:0.4:4 --outputs ed_splitting", out), 3);
}
