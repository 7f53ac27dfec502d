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

// Walks the two-player dilemma from the classical corner to the fully
// entangled game: where the defect pair stops being stable, where the
// quantum pair takes over, and what the full strategy sphere changes.

#include <cmath>
#include <cstdio>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/strategy.hpp"
#include "qgame/sweep.hpp"

using namespace qgame;

int main() {
  std::printf("two-player dilemma, diagonal two-parameter strategies\n");
  std::printf("%8s  %-10s  %-6s  %s\n", "gamma", "regime", "eq", "payoffs");

  SweepConfig cfg;
  cfg.game = GameDefinition::pd2();
  cfg.space = StrategySpace::two_param_diag;
  cfg.start = 0.0;
  cfg.stop = kPi / 2;
  cfg.count = 9;
  for (const GammaSweepRecord& r : run_sweep(cfg)) {
    std::printf("%8.4f  %-10s  %-6s ", r.gamma, r.regime.c_str(), r.equilibrium.c_str());
    for (double p : r.payoffs) std::printf(" %7.4f", p);
    std::printf("\n");
  }

  std::printf("\nentanglement thresholds (bisected to 1e-7)\n");
  for (const ThresholdBatteryEntry& e : two_player_thresholds(GameDefinition::pd2())) {
    if (e.report.found)
      std::printf("  %-18s gamma* = %.7f\n", e.name.c_str(), e.report.gamma_star);
    else
      std::printf("  %-18s no switch in range\n", e.name.c_str());
  }
  std::printf("  closed forms: asin in sqrt(1/5) = %.7f, sqrt(2/5) = %.7f, sqrt(1/3) = %.7f\n",
              std::asin(std::sqrt(0.2)), std::asin(std::sqrt(0.4)), std::asin(std::sqrt(1.0 / 3)));

  std::printf("\nfull-sphere symmetric search (32 starts)\n");
  SearchConfig sc;
  sc.multistarts = 32;
  for (double gamma : {0.30, 0.61, 0.70}) {
    const SearchResult sr = search_symmetric_ne(GameDefinition::pd2(gamma), StrategySpace::su2, sc);
    if (sr.equilibria.empty()) {
      std::printf("  gamma %.2f: none found under %s\n", gamma, sr.protocol().c_str());
      continue;
    }
    for (const EquilibriumReport& eq : sr.equilibria)
      std::printf("  gamma %.2f: %-44s payoff %.6f (1+2sin^2 = %.6f)\n", gamma, eq.id.c_str(),
                  eq.payoff[0], 1 + 2 * std::sin(gamma) * std::sin(gamma));
  }
  std::printf("\nthe defect pair pays (1,1); at full entanglement QxQ pays (3,3), the\n");
  std::printf("cooperative optimum, and no unilateral move improves on it.\n");
  return 0;
}
