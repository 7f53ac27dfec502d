// Copyright 2026 The qgame Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/game.hpp"
#include "qgame/io.hpp"
#include "qgame/strategy.hpp"
#include "qgame/sweep.hpp"

namespace {

using namespace qgame;

std::string parse_failure(const std::string& text) {
  try {
    parse_game_json(text, "t");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& message, const std::string& needle) {
  return message.find(needle) != std::string::npos;
}

std::string emit_to_string(const std::vector<GammaSweepRecord>& records) {
  std::ostringstream ss;
  emit_csv(records, ss);
  return ss.str();
}

std::vector<GammaSweepRecord> parse_from_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_csv(ss);
}

GammaSweepRecord make_record(double gamma, const std::string& regime, const std::string& eq,
                             int players, std::vector<double> payoffs) {
  GammaSweepRecord r;
  r.gamma = gamma;
  r.entropy = entanglement_entropy(gamma);
  r.regime = regime;
  r.equilibrium = eq;
  r.players = players;
  r.payoffs = std::move(payoffs);
  return r;
}

const GammaSweepRecord* find_row(const std::vector<GammaSweepRecord>& recs, double gamma,
                                 const std::string& eq) {
  for (const GammaSweepRecord& r : recs)
    if (std::abs(r.gamma - gamma) < 1e-12 && r.equilibrium == eq) return &r;
  return nullptr;
}

int count_at(const std::vector<GammaSweepRecord>& recs, double gamma) {
  int n = 0;
  for (const GammaSweepRecord& r : recs)
    if (std::abs(r.gamma - gamma) < 1e-12) ++n;
  return n;
}

}  // namespace

TEST_CASE("game json parses the documented schema") {
  const std::string text = R"({"players": 2, "gamma": 0.7,
    "payoffs": {"CC": [3, 3], "CD": [0, 5], "DC": [5, 0], "DD": [1, 1]}})";
  const GameDefinition g = parse_game_json(text, "inline");
  REQUIRE(g.players() == 2);
  REQUIRE(g.gamma() == 0.7);
  REQUIRE(g.outcomes() == 4);
  REQUIRE(g.payoff_row(0) == std::vector<double>{3, 3});
  REQUIRE(g.payoff_row(1) == std::vector<double>{0, 5});
  REQUIRE(g.payoff_row(2) == std::vector<double>{5, 0});
  REQUIRE(g.payoff_row(3) == std::vector<double>{1, 1});

  // gamma is optional and defaults to the unentangled game.
  const GameDefinition g0 = parse_game_json(
      R"({"players": 2, "payoffs": {"CC": [3,3], "CD": [0,5], "DC": [5,0], "DD": [1,1]}})", "t");
  REQUIRE(g0.gamma() == 0.0);

  // Key order inside "payoffs" does not matter.
  const GameDefinition g3 = parse_game_json(
      R"({"players": 3, "gamma": 1.0, "payoffs": {
        "DDD": [1,1,1], "CCC": [3,3,3], "CCD": [2,2,5], "CDC": [2,5,2],
        "DCC": [5,2,2], "CDD": [0,4,4], "DCD": [4,0,4], "DDC": [4,4,0]}})",
      "t");
  REQUIRE(g3.players() == 3);
  REQUIRE(g3.payoff_row(3) == std::vector<double>{0, 4, 4});
}

TEST_CASE("game json names the offending field on rejection") {
  REQUIRE(mentions(parse_failure("{"), "invalid JSON"));
  REQUIRE(mentions(parse_failure("[1, 2]"), "top level"));
  REQUIRE(mentions(parse_failure(R"({"payoffs": {}})"), "\"players\" must be an integer"));
  REQUIRE(mentions(parse_failure(R"({"players": 2.5, "payoffs": {}})"),
                   "\"players\" must be an integer"));
  REQUIRE(mentions(parse_failure(R"({"players": 4, "payoffs": {}})"), "must be 2 or 3"));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "gamma": "x", "payoffs": {}})"),
                   "\"gamma\" must be a number"));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "gamma": 3.2, "payoffs": {}})"),
                   "[0, pi/2]"));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "gamma": -0.1, "payoffs": {}})"),
                   "[0, pi/2]"));
  REQUIRE(mentions(parse_failure(R"({"players": 2})"), "\"payoffs\" must be an object"));

  // Missing, malformed, and unknown outcomes are named.
  REQUIRE(mentions(
      parse_failure(R"({"players": 2, "payoffs": {"CC": [3,3], "CD": [0,5], "DC": [5,0]}})"),
      "missing outcome \"DD\""));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "payoffs":
      {"CC": [3,3], "CD": [0,5,9], "DC": [5,0], "DD": [1,1]}})"),
                   "payoff tuple \"CD\" must be an array of 2"));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "payoffs":
      {"CC": [3,3], "CD": [0,"x"], "DC": [5,0], "DD": [1,1]}})"),
                   "only numbers"));
  REQUIRE(mentions(parse_failure(R"({"players": 2, "payoffs":
      {"CC": [3,3], "CD": [0,5], "DC": [5,0], "DD": [1,1], "DDD": [1,1]}})"),
                   "unknown outcome \"DDD\""));

  const std::string three = R"({"players": 3, "payoffs": {
      "DDD": [1,1,1], "CCC": [3,3,3], "CCD": [2,2,5],
      "DCC": [5,2,2], "CDD": [0,4,4], "DCD": [4,0,4], "DDC": [4,4,0]}})";
  REQUIRE(mentions(parse_failure(three), "missing outcome \"CDC\""));
}

TEST_CASE("game configs load from files and named defaults") {
  const std::string path = "/tmp/qgame_io_game.json";
  {
    std::ofstream out(path);
    out << R"({"players": 3, "gamma": 0.8, "payoffs": {
      "CCC": [9,8,7], "CCD": [2,2,5], "CDC": [2,5,2], "DCC": [5,2,2],
      "CDD": [0,4,4], "DCD": [4,0,4], "DDC": [4,4,0], "DDD": [1,1,1]}})";
  }
  const GameDefinition g = parse_game_config(path);
  REQUIRE(g.players() == 3);
  REQUIRE(g.gamma() == 0.8);
  REQUIRE(g.payoff_row(0) == std::vector<double>{9, 8, 7});

  const GameDefinition via_load = load_game(path);
  REQUIRE(via_load.payoff_row(0) == std::vector<double>{9, 8, 7});
  std::filesystem::remove(path);

  REQUIRE(load_game("pd2").players() == 2);
  REQUIRE(load_game("pd2").gamma() == 0.0);
  REQUIRE(load_game("pd3").players() == 3);
  REQUIRE(load_game("pd3").payoff_row(7) == std::vector<double>{1, 1, 1});

  REQUIRE_THROWS_AS(parse_game_config("/tmp/qgame_definitely_missing.json"), ParseError);
  try {
    parse_game_config("/tmp/qgame_definitely_missing.json");
  } catch (const ParseError& e) {
    REQUIRE(mentions(e.what(), "cannot open"));
  }
}

TEST_CASE("csv emission pins the documented format") {
  std::vector<GammaSweepRecord> recs;
  recs.push_back(make_record(0.0, "classical", "DxD", 2, {1, 1}));
  recs.push_back(make_record(0.3, "classical", "DxD", 2, {1, 1}));
  REQUIRE(emit_to_string(recs) ==
          "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n"
          "0.000000000000,0.000000000000,classical,DxD,1,1,,\n"
          "0.300000000000,0.106980177647,classical,DxD,1,1,,\n");

  // Family parameters fill the trailing columns for three players.
  GammaSweepRecord fam = make_record(0.62, "quantum", "famA+xfamA+xfamA+", 3,
                                     {1.99365891155, 1.99365891155, 1.99365891155});
  fam.has_family = true;
  fam.a = 0.950180357491;
  fam.b = 0.311700638817;
  REQUIRE(emit_to_string({fam}) ==
          "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,payoff_3,a,b\n"
          "0.620000000000,0.309562712063,quantum,famA+xfamA+xfamA+,"
          "1.99365891155,1.99365891155,1.99365891155,0.950180357491,0.311700638817\n");

  // Fields holding commas or quotes are quoted per RFC 4180.
  GammaSweepRecord q = make_record(0.5, "quantum", "su2(0.1,0.2)x\"odd\"", 2, {2, 2});
  const std::string text = emit_to_string({q});
  REQUIRE(mentions(text, ",\"su2(0.1,0.2)x\"\"odd\"\"\","));

  // A none-row leaves equilibrium, payoffs, and family cells empty.
  GammaSweepRecord none = make_record(0.0, "none", "", 2, {});
  REQUIRE(mentions(emit_to_string({none}), "0.000000000000,0.000000000000,none,,,,,\n"));

  // Line endings are LF only.
  REQUIRE(emit_to_string(recs).find('\r') == std::string::npos);
}

TEST_CASE("csv refuses empty record sets without touching the disk") {
  std::ostringstream ss;
  REQUIRE_THROWS_AS(emit_csv(std::vector<GammaSweepRecord>{}, ss), std::domain_error);

  const std::string path = "/tmp/qgame_empty_refused.csv";
  std::filesystem::remove(path);
  REQUIRE_THROWS_AS(emit_csv(std::vector<GammaSweepRecord>{}, path), std::domain_error);
  REQUIRE(!std::filesystem::exists(path));
}

TEST_CASE("csv round-trips bytes exactly") {
  std::vector<GammaSweepRecord> recs;
  recs.push_back(make_record(0.0, "classical", "DxD", 2, {1, 1}));
  GammaSweepRecord quoted = make_record(
      0.3, "quantum", "su2(0.000000,0.866025,0.500000,0.000000)xiSy", 2, {1.174664385, 2.0});
  recs.push_back(quoted);
  GammaSweepRecord fam = make_record(0.62, "coexistence", "famA+xfamA+", 2, {1.99, 1.99});
  fam.has_family = true;
  fam.a = 0.950180357491;
  fam.b = 0.311700638817;
  recs.push_back(fam);
  recs.push_back(make_record(0.7, "none", "", 2, {}));

  const std::string once = emit_to_string(recs);
  const std::vector<GammaSweepRecord> back = parse_from_string(once);
  REQUIRE(back.size() == recs.size());
  REQUIRE(emit_to_string(back) == once);

  REQUIRE(back[1].equilibrium == "su2(0.000000,0.866025,0.500000,0.000000)xiSy");
  REQUIRE(back[1].payoffs.size() == 2);
  REQUIRE(!back[1].has_family);
  REQUIRE(back[2].has_family);
  REQUIRE(back[2].a == Catch::Approx(0.950180357491).margin(1e-12));
  REQUIRE(back[2].b == Catch::Approx(0.311700638817).margin(1e-12));
  REQUIRE(back[3].payoffs.empty());
  REQUIRE(back[3].equilibrium.empty());

  // File-backed round trip preserves bytes as well.
  const std::string path = "/tmp/qgame_roundtrip.csv";
  emit_csv(recs, path);
  const std::vector<GammaSweepRecord> from_disk = parse_csv(path);
  REQUIRE(emit_to_string(from_disk) == once);
  std::filesystem::remove(path);
}

TEST_CASE("csv parsing rejects malformed input") {
  REQUIRE_THROWS_AS(parse_from_string(""), ParseError);
  REQUIRE_THROWS_AS(parse_from_string("gamma,entropy,regime,payoff_1,a,b\n"), ParseError);
  REQUIRE_THROWS_AS(parse_from_string("x,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n"),
                    ParseError);

  const std::string head = "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n";
  REQUIRE_THROWS_AS(parse_from_string(head + "0.1,0.2,quantum,QxQ,3\n"), ParseError);
  REQUIRE_THROWS_AS(parse_from_string(head + "oops,0.2,quantum,QxQ,3,3,,\n"), ParseError);
  REQUIRE_THROWS_AS(parse_from_string(head + "0.1,0.2,\"broken,QxQ,3,3,,\n"), ParseError);
  REQUIRE_THROWS_AS(parse_csv("/tmp/qgame_definitely_missing.csv"), ParseError);

  // CRLF input is tolerated; blank lines are skipped.
  const std::vector<GammaSweepRecord> recs = parse_from_string(
      "gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\r\n"
      "0.100000000000,0.012373765945,classical,DxD,1,1,,\r\n"
      "\r\n");
  REQUIRE(recs.size() == 1);
  REQUIRE(recs[0].gamma == Catch::Approx(0.1).margin(1e-15));
  REQUIRE(recs[0].equilibrium == "DxD");
}

TEST_CASE("two player diagonal sweep walks the regime ladder") {
  SweepConfig cfg;
  cfg.game = GameDefinition::pd2();
  cfg.space = StrategySpace::two_param_diag;
  cfg.start = 0.2;
  cfg.stop = 1.2;
  cfg.count = 3;
  const std::vector<GammaSweepRecord> recs = run_sweep(cfg);

  REQUIRE(count_at(recs, 0.2) == 1);
  const GammaSweepRecord* low = find_row(recs, 0.2, "DxD");
  REQUIRE(low != nullptr);
  REQUIRE(low->regime == "classical");
  REQUIRE(low->payoffs.size() == 2);
  REQUIRE(std::abs(low->payoffs[0] - 1.0) <= 1e-9);
  REQUIRE(std::abs(low->payoffs[1] - 1.0) <= 1e-9);
  REQUIRE(std::abs(low->entropy - entanglement_entropy(0.2)) <= 1e-12);
  REQUIRE(!low->has_family);

  for (double g : {0.7, 1.2}) {
    REQUIRE(count_at(recs, g) == 1);
    const GammaSweepRecord* high = find_row(recs, g, "QxQ");
    REQUIRE(high != nullptr);
    REQUIRE(high->regime == "quantum");
    REQUIRE(std::abs(high->payoffs[0] - 3.0) <= 1e-9);
    REQUIRE(std::abs(high->payoffs[1] - 3.0) <= 1e-9);
  }

  // Between the boundaries the asymmetric pair rules.
  SearchConfig point_cfg;
  const std::vector<GammaSweepRecord> mid =
      sweep_point(GameDefinition::pd2(0.6), StrategySpace::two_param_diag, point_cfg);
  REQUIRE(mid.size() == 2);
  REQUIRE(mid[0].equilibrium == "DxQ");
  REQUIRE(mid[1].equilibrium == "QxD");
  const double s2 = std::sin(0.6) * std::sin(0.6);
  for (const GammaSweepRecord& r : mid) {
    REQUIRE(r.regime == "transition");
    const double hi = *std::max_element(r.payoffs.begin(), r.payoffs.end());
    const double lo = *std::min_element(r.payoffs.begin(), r.payoffs.end());
    REQUIRE(std::abs(hi - 5 * (1 - s2)) <= 1e-9);
    REQUIRE(std::abs(lo - 5 * s2) <= 1e-9);
  }
  REQUIRE(std::abs(mid[0].payoffs[0] - 5 * (1 - s2)) <= 1e-9);
  REQUIRE(std::abs(mid[1].payoffs[0] - 5 * s2) <= 1e-9);
}

TEST_CASE("three player off-diagonal sweep has no transition rung") {
  SearchConfig cfg;
  double prev = 0.0;
  for (double g : {0.0, 0.3, 1.0, kPi / 2}) {
    const std::vector<GammaSweepRecord> recs =
        sweep_point(GameDefinition::pd3(g), StrategySpace::two_param_offdiag, cfg);
    const double expect = 1.0 + 2.0 * std::sin(g) * std::sin(g);
    for (const GammaSweepRecord& r : recs) {
      REQUIRE(r.regime == (g == 0.0 ? "classical" : "quantum"));
      REQUIRE(r.payoffs.size() == 3);
      for (double p : r.payoffs) REQUIRE(std::abs(p - expect) <= 1e-9);
    }
    // The unanimous defect row is always present, and the payoff it carries
    // climbs with the entanglement; no asymmetric rung ever appears.
    const std::string id = g == 0.0 ? "DxDxD" : "iSyxiSyxiSy";
    REQUIRE(find_row(recs, g, id) != nullptr);
    REQUIRE(expect >= prev);
    prev = expect;
  }

  // At strong entanglement the mixed triples drop out.
  const std::vector<GammaSweepRecord> strong =
      sweep_point(GameDefinition::pd3(1.0), StrategySpace::two_param_offdiag, cfg);
  REQUIRE(strong.size() == 1);
  REQUIRE(strong[0].equilibrium == "iSyxiSyxiSy");
}

TEST_CASE("full strategy space sweep is deterministic and family-aware") {
  SweepConfig cfg;
  cfg.game = GameDefinition::pd3();
  cfg.space = StrategySpace::su2;
  cfg.start = 0.3;
  cfg.stop = 0.62;
  cfg.count = 2;
  cfg.search.multistarts = 24;

  const std::string once = emit_to_string(run_sweep(cfg));
  const std::string twice = emit_to_string(run_sweep(cfg));
  REQUIRE(once == twice);

  const std::vector<GammaSweepRecord> recs = parse_from_string(once);
  REQUIRE(count_at(recs, 0.3) == 3);
  REQUIRE(count_at(recs, 0.62) == 3);

  const GammaSweepRecord* axis = find_row(recs, 0.3, "iSyxiSyxiSy");
  REQUIRE(axis != nullptr);
  REQUIRE(axis->regime == "quantum");
  REQUIRE(!axis->has_family);
  const double axis_pay = 1.0 + 2.0 * std::sin(0.3) * std::sin(0.3);
  REQUIRE(std::abs(axis->payoffs[0] - axis_pay) <= 1e-6);

  const GammaSweepRecord* fam = find_row(recs, 0.62, "famA+xfamA+xfamA+");
  REQUIRE(fam != nullptr);
  REQUIRE(fam->regime == "quantum");
  REQUIRE(fam->has_family);
  REQUIRE(std::abs(fam->a * fam->a + fam->b * fam->b - 1.0) <= 1e-9);
  REQUIRE(fam->a > fam->b);
  // The family equilibrium beats the defect ladder inside its window.
  REQUIRE(fam->payoffs[0] > 1.0 + 2.0 * std::sin(0.62) * std::sin(0.62));

  const GammaSweepRecord* bpp = find_row(recs, 0.62, "famB++xfamB++xfamB++");
  const GammaSweepRecord* bmm = find_row(recs, 0.62, "famB--xfamB--xfamB--");
  REQUIRE(bpp != nullptr);
  REQUIRE(bmm != nullptr);
  REQUIRE(std::abs(bpp->a - fam->b) <= 1e-6);
  REQUIRE(std::abs(bpp->b - fam->a) <= 1e-6);
  REQUIRE(std::abs(bpp->payoffs[0] - fam->payoffs[0]) <= 1e-6);
  REQUIRE(std::abs(bmm->payoffs[0] - fam->payoffs[0]) <= 1e-6);
}

TEST_CASE("sweep grids are validated") {
  SweepConfig cfg;
  cfg.count = 1;
  REQUIRE_THROWS_AS(run_sweep(cfg), std::domain_error);
  cfg.count = 2;
  cfg.start = -0.1;
  REQUIRE_THROWS_AS(run_sweep(cfg), std::domain_error);
  cfg.start = 0.9;
  cfg.stop = 0.5;
  REQUIRE_THROWS_AS(run_sweep(cfg), std::domain_error);
  cfg.start = 0.0;
  cfg.stop = kPi / 2 + 0.2;
  REQUIRE_THROWS_AS(run_sweep(cfg), std::domain_error);
}
