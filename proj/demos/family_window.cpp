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

// Tours the three-player game: the defect ladder, the one-parameter family
// of symmetric equilibria that opens at moderate entanglement, the band
// where both kinds coexist, and the balance crossover.

#include <cmath>
#include <cstdio>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/strategy.hpp"

using namespace qgame;

static void show_search(double gamma, const SearchConfig& sc) {
  const SearchResult sr = search_symmetric_ne(GameDefinition::pd3(gamma), StrategySpace::su2, sc);
  std::printf("gamma %.4f: %zu symmetric equilibria\n", gamma, sr.equilibria.size());
  for (const EquilibriumReport& eq : sr.equilibria) {
    std::printf("  %-10s payoff %.6f", eq.id.c_str(), eq.payoff[0]);
    if (eq.family.valid) std::printf("  (a = %.6f, b = %.6f)", eq.family.a, eq.family.b);
    std::printf("\n");
  }
}

int main() {
  std::printf("three-player dilemma, full strategy sphere\n\n");

  std::printf("entanglement thresholds (bisected to 1e-7)\n");
  const GameDefinition game = GameDefinition::pd3();
  for (const ThresholdBatteryEntry& e : three_player_thresholds(game)) {
    if (e.report.found)
      std::printf("  %-16s gamma* = %.7f\n", e.name.c_str(), e.report.gamma_star);
    else
      std::printf("  %-16s no switch in range\n", e.name.c_str());
  }
  std::printf("  landmarks: asin of sqrt(1/3) = %.7f, pi/4 = %.7f\n\n",
              std::asin(std::sqrt(1.0 / 3)), kPi / 4);

  SearchConfig sc;
  sc.multistarts = 32;

  std::printf("below the family onset the axis trio rules:\n");
  show_search(0.30, sc);

  std::printf("\ninside the coexistence band both kinds verify:\n");
  show_search(0.606, sc);

  std::printf("\npast the axis boundary only the family survives:\n");
  show_search(0.66, sc);

  std::printf("\npast the detach point the search certifies none, pi/4 included:\n");
  show_search(kPi / 4, sc);

  std::printf("\nat full entanglement the six balanced points appear:\n");
  show_search(kPi / 2, sc);

  std::printf("\npi/4 is not an equilibrium point; it is where the family circle's best\n");
  std::printf("payoff evens its two parameters, at 11/4 = 2.75, the same payoff the six\n");
  std::printf("balanced points carry once gamma reaches pi/2.\n");
  return 0;
}
