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

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// validation error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgame/qgame.hpp"

namespace {

using qgame::StrategyPoint;

// Splits a profile string on commas that sit outside parentheses, so
// "su2(0,1,0,0),D" yields two entries.
std::vector<std::string> split_profile(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_args_list(const std::string& inner, size_t expect,
                                    const std::string& what) {
  std::vector<double> vals;
  std::string cur;
  std::istringstream ss(inner);
  while (std::getline(ss, cur, ',')) {
    try {
      vals.push_back(std::stod(cur));
    } catch (const std::exception&) {
      throw qgame::ParseError("malformed number in " + what);
    }
  }
  if (vals.size() != expect)
    throw qgame::ParseError(what + " expects " + std::to_string(expect) + " arguments");
  return vals;
}

StrategyPoint parse_strategy(const std::string& token) {
  for (const std::string& name : qgame::catalog_names())
    if (token == name) return qgame::catalog_lookup(name);
  auto call = [&](const std::string& fn) -> std::optional<std::string> {
    if (token.rfind(fn + "(", 0) == 0 && token.back() == ')')
      return token.substr(fn.size() + 1, token.size() - fn.size() - 2);
    return std::nullopt;
  };
  if (auto inner = call("diag")) {
    const auto v = parse_args_list(*inner, 2, "diag(theta,phi)");
    return StrategyPoint::diag(v[0], v[1]);
  }
  if (auto inner = call("offdiag")) {
    const auto v = parse_args_list(*inner, 2, "offdiag(theta,phi)");
    return StrategyPoint::offdiag(v[0], v[1]);
  }
  if (auto inner = call("su2")) {
    const auto v = parse_args_list(*inner, 4, "su2(w,x,y,z)");
    return StrategyPoint::su2_point({v[0], v[1], v[2], v[3]});
  }
  throw qgame::ParseError("unknown strategy: " + token +
                          " (use a catalog name, diag(t,p), offdiag(t,p), or su2(w,x,y,z))");
}

std::vector<StrategyPoint> parse_profile(const std::string& s, int players) {
  std::vector<StrategyPoint> profile;
  for (const std::string& tok : split_profile(s)) profile.push_back(parse_strategy(tok));
  if (static_cast<int>(profile.size()) != players)
    throw qgame::ParseError("profile must list exactly " + std::to_string(players) +
                            " strategies");
  return profile;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void print_payoffs(std::ostream& os, const qgame::PayoffVector& pay) {
  for (size_t i = 0; i < pay.size(); ++i) os << (i ? " " : "") << fmt(pay[i]);
}

struct CommonOpts {
  std::string game_spec = "pd2";
  double gamma = -1.0;  // negative: keep the game file / default value
  std::string space = "su2";
  double eps = 1e-7;
  int grid = 181;
  int starts = 64;
  std::uint64_t seed = 0;
  std::string out;

  qgame::GameDefinition game() const {
    qgame::GameDefinition g = qgame::load_game(game_spec);
    if (gamma >= 0.0) g = g.with_gamma(gamma);
    return g;
  }
  qgame::GridSpec grid_spec() const { return {grid, (grid + 1) / 2}; }
  qgame::SearchConfig search() const {
    qgame::SearchConfig cfg;
    cfg.multistarts = starts;
    cfg.seed = seed;
    cfg.eps = eps;
    cfg.grid = grid_spec();
    return cfg;
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw qgame::ParseError("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum dilemma game engine and equilibrium tools"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string profile_str;
  double start = 0.0, stop = qgame::kPi / 2;
  int count = 17;

  auto add_common = [&](CLI::App* sub, bool with_search) {
    sub->add_option("--game", opt.game_spec, "game file path or pd2 / pd3")
        ->capture_default_str();
    sub->add_option("--gamma", opt.gamma, "entanglement parameter in [0, pi/2]");
    sub->add_option("--eps", opt.eps, "epsilon for NE acceptance")->capture_default_str();
    sub->add_option("--grid", opt.grid, "theta resolution of two-parameter scans")
        ->capture_default_str();
    if (with_search) {
      sub->add_option("--starts", opt.starts, "multistart count")->capture_default_str();
      sub->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    }
  };

  CLI::App* eval = app.add_subcommand("eval", "payoffs for an explicit strategy profile");
  add_common(eval, false);
  eval->add_option("--profile", profile_str, "comma-separated strategies, one per player")
      ->required();

  CLI::App* verify = app.add_subcommand("verify-ne", "check a profile for eps-Nash stability");
  add_common(verify, false);
  verify->add_option("--profile", profile_str, "comma-separated strategies, one per player")
      ->required();
  std::string verify_space;
  verify->add_option("--space", verify_space,
                     "pin the deviation space (default: each strategy's own)");

  CLI::App* search = app.add_subcommand("search-ne", "search symmetric equilibria");
  add_common(search, true);
  search->add_option("--space", opt.space, "classical | 2p-diag | 2p-offdiag | su2")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "gamma sweep, CSV output");
  add_common(sweep, true);
  sweep->add_option("--space", opt.space, "classical | 2p-diag | 2p-offdiag | su2")
      ->capture_default_str();
  sweep->add_option("--start", start, "first gamma")->capture_default_str();
  sweep->add_option("--stop", stop, "last gamma")->capture_default_str();
  sweep->add_option("--count", count, "grid points")->capture_default_str();
  sweep->add_option("--out", opt.out, "output path (default: stdout)");

  CLI::App* thresholds = app.add_subcommand("thresholds", "bisect the entanglement thresholds");
  add_common(thresholds, false);

  CLI::App* entropy = app.add_subcommand("entropy", "entanglement entropy of the initial state");
  entropy->add_option("--gamma", opt.gamma, "single gamma (otherwise a CSV grid is emitted)");
  entropy->add_option("--start", start, "first gamma")->capture_default_str();
  entropy->add_option("--stop", stop, "last gamma")->capture_default_str();
  entropy->add_option("--count", count, "grid points")->capture_default_str();
  entropy->add_option("--out", opt.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(eval)) {
      const qgame::GameDefinition game = opt.game();
      const auto profile = parse_profile(profile_str, game.players());
      std::vector<qgame::ComplexMatrix> mats;
      for (const auto& p : profile) mats.push_back(qgame::to_unitary(p, game.players()));
      const qgame::FinalStateReport fs = qgame::final_state(game, mats);
      const qgame::PayoffVector pay = qgame::payoffs(game, mats);
      std::cout << "gamma: " << fmt(game.gamma()) << "\n";
      std::cout << "entropy: " << fmt(qgame::entanglement_entropy(game.gamma())) << "\n";
      std::cout << "payoffs:";
      for (double p : pay) std::cout << ' ' << fmt(p);
      std::cout << "\noutcome probabilities:\n";
      for (int b = 0; b < game.outcomes(); ++b)
        std::cout << "  " << qgame::outcome_name(b, game.players()) << " "
                  << fmt(fs.outcome_probabilities[static_cast<size_t>(b)]) << "\n";
      return 0;
    }

    if (app.got_subcommand(verify)) {
      const qgame::GameDefinition game = opt.game();
      const auto profile = parse_profile(profile_str, game.players());
      std::optional<qgame::StrategySpace> dev;
      if (!verify_space.empty()) dev = qgame::parse_space(verify_space);
      const qgame::NashVerdict v =
          qgame::verify_nash(game, profile, opt.eps, opt.grid_spec(), dev);
      std::vector<qgame::ComplexMatrix> mats;
      for (const auto& p : profile) mats.push_back(qgame::to_unitary(p, game.players()));
      std::cout << "profile: " << qgame::detail::profile_id(profile, game.players()) << "\n";
      std::cout << "payoffs: ";
      print_payoffs(std::cout, qgame::payoffs(game, mats));
      std::cout << "\nequilibrium: " << (v.is_equilibrium ? "yes" : "no")
                << " (eps=" << fmt(v.epsilon) << ")\n";
      std::cout << "strict: " << (v.strict ? "yes" : "no") << "\n";
      std::cout << "deviation gains:";
      for (double g : v.deviation_gain) std::cout << ' ' << fmt(g);
      std::cout << "\n";
      return 0;
    }

    if (app.got_subcommand(search)) {
      const qgame::GameDefinition game = opt.game();
      const qgame::SearchResult res =
          qgame::search_symmetric_ne(game, qgame::parse_space(opt.space), opt.search());
      std::cout << "protocol: " << res.protocol() << "\n";
      if (res.equilibria.empty()) {
        std::cout << "no symmetric eps-NE found under this protocol\n";
        return 0;
      }
      std::cout << "found " << res.equilibria.size() << " symmetric equilibria:\n";
      for (const qgame::EquilibriumReport& eq : res.equilibria) {
        std::cout << "  " << eq.id << "  payoffs:";
        for (double p : eq.payoff) std::cout << ' ' << fmt(p);
        std::cout << "  strict: " << (eq.strict ? "yes" : "no")
                  << "  max-gain: " << fmt(eq.max_gain);
        if (eq.family.valid)
          std::cout << "  a: " << fmt(eq.family.a) << "  b: " << fmt(eq.family.b);
        std::cout << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(sweep)) {
      qgame::SweepConfig cfg;
      cfg.game = opt.game();
      cfg.space = qgame::parse_space(opt.space);
      cfg.start = start;
      cfg.stop = stop;
      cfg.count = count;
      cfg.search = opt.search();
      const std::vector<qgame::GammaSweepRecord> records = qgame::run_sweep(cfg);
      std::ofstream file;
      qgame::emit_csv(records, open_out(opt.out, file));
      return 0;
    }

    if (app.got_subcommand(thresholds)) {
      const qgame::GameDefinition game = opt.game();
      const auto battery = game.players() == 2 ? qgame::two_player_thresholds(game)
                                               : qgame::three_player_thresholds(game);
      for (const qgame::ThresholdBatteryEntry& e : battery) {
        std::cout << e.name << ": ";
        if (!e.report.found) {
          std::cout << "no switch in range\n";
          continue;
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9f", e.report.gamma_star);
        std::cout << buf << "  (bracket " << fmt(e.report.bracket_width) << ", "
                  << (e.report.true_below ? "true below" : "true above") << ": "
                  << e.report.predicate << ")\n";
      }
      return 0;
    }

    if (app.got_subcommand(entropy)) {
      std::ofstream file;
      std::ostream& os = open_out(opt.out, file);
      if (opt.gamma >= 0.0) {
        os << fmt(qgame::entanglement_entropy(opt.gamma)) << "\n";
        return 0;
      }
      if (count < 2) throw std::domain_error("entropy grid needs at least 2 points");
      os << "gamma,entropy\n";
      for (int i = 0; i < count; ++i) {
        const double g = start + (stop - start) * i / (count - 1);
        os << qgame::detail::format_fixed12(g) << ','
           << qgame::detail::format_fixed12(qgame::entanglement_entropy(g)) << "\n";
      }
      return 0;
    }
  } catch (const qgame::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const qgame::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
