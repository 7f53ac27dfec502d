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

// Gamma sweeps: per-point equilibrium enumeration, regime classification,
// and the flat records consumed by CSV emission.

#ifndef QGAME_SWEEP_HPP_
#define QGAME_SWEEP_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/strategy.hpp"

namespace qgame {

struct SweepConfig {
  GameDefinition game = GameDefinition::pd2();
  StrategySpace space = StrategySpace::su2;
  double start = 0.0;
  double stop = kPi / 2;
  int count = 2;
  SearchConfig search;
};

struct GammaSweepRecord {
  double gamma = 0.0;
  double entropy = 0.0;
  std::string regime;       // classical | transition | quantum | coexistence | none
  std::string equilibrium;  // per-player ids joined with 'x'; empty when none
  int players = 0;          // sizes the payoff columns even for none-rows
  std::vector<double> payoffs;
  bool has_family = false;
  double a = 0.0, b = 0.0;
};

namespace detail {

// Candidate strategies enumerated exhaustively (as full profiles) in the
// finite and two-parameter spaces. The named corners cover every equilibrium
// those spaces admit for the dilemma payoffs.
inline std::vector<StrategyPoint> space_candidates(StrategySpace space) {
  switch (space) {
    case StrategySpace::classical:
      return {StrategyPoint::classical('C'), StrategyPoint::classical('D')};
    case StrategySpace::two_param_diag:
      return {StrategyPoint::diag(0.0, 0.0), StrategyPoint::diag(kPi, 0.0),
              StrategyPoint::diag(0.0, kPi / 2)};
    case StrategySpace::two_param_offdiag:
      return {StrategyPoint::offdiag(0.0, 0.0), StrategyPoint::offdiag(kPi, 0.0),
              StrategyPoint::offdiag(kPi, kPi / 2)};
    case StrategySpace::su2:
      return {};
  }
  throw std::domain_error("invalid strategy space");
}

inline std::string profile_id(const std::vector<StrategyPoint>& profile, int players) {
  std::string id;
  for (size_t i = 0; i < profile.size(); ++i) {
    if (i) id += 'x';
    id += point_id(profile[i], players);
  }
  return id;
}

struct RecordCandidate {
  GammaSweepRecord record;
  std::vector<double> distribution;
};

// Profiles whose final state is (numerically) a deterministic computational
// outcome are interchangeable descriptions of the same classical play, e.g.
// every flip combination at gamma = 0. Such duplicates collapse into the
// lexicographically smallest id so unentangled sweeps stay readable.
inline std::vector<GammaSweepRecord> merge_deterministic(std::vector<RecordCandidate> cands) {
  std::vector<GammaSweepRecord> out;
  std::vector<bool> used(cands.size(), false);
  for (size_t i = 0; i < cands.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    GammaSweepRecord best = cands[i].record;
    const auto& di = cands[i].distribution;
    const auto arg = static_cast<size_t>(
        std::max_element(di.begin(), di.end()) - di.begin());
    const bool deterministic = di[arg] >= 1.0 - 1e-9;
    if (deterministic) {
      for (size_t j = i + 1; j < cands.size(); ++j) {
        if (used[j]) continue;
        const auto& dj = cands[j].distribution;
        if (dj[arg] < 1.0 - 1e-9) continue;
        bool same_pay = true;
        for (size_t p = 0; p < best.payoffs.size(); ++p)
          if (std::abs(best.payoffs[p] - cands[j].record.payoffs[p]) > 1e-9) same_pay = false;
        if (!same_pay) continue;
        used[j] = true;
        if (cands[j].record.equilibrium < best.equilibrium) best = cands[j].record;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace detail

// Classifies the set of verified equilibria at one gamma. The order of the
// rules matters: emptiness, then the all-defect signature, then family /
// non-family coexistence, then payoff asymmetry.
inline std::string classify_regime(const GameDefinition& game,
                                   const std::vector<GammaSweepRecord>& records) {
  if (records.empty()) return "none";
  const std::vector<double>& defect = game.payoff_row(game.outcomes() - 1);
  bool all_classical = true;
  bool any_family = false, any_other = false, any_asymmetric = false;
  for (const GammaSweepRecord& r : records) {
    for (size_t p = 0; p < r.payoffs.size(); ++p)
      if (std::abs(r.payoffs[p] - defect[p]) > 1e-9) all_classical = false;
    if (r.has_family) any_family = true;
    else any_other = true;
    const auto [mn, mx] = std::minmax_element(r.payoffs.begin(), r.payoffs.end());
    if (*mx - *mn > 1e-9) any_asymmetric = true;
  }
  if (all_classical) return "classical";
  if (game.players() == 3 && any_family && any_other) return "coexistence";
  if (any_asymmetric) return "transition";
  return "quantum";
}

// Equilibrium records for a single game instance (gamma comes from the game).
inline std::vector<GammaSweepRecord> sweep_point(const GameDefinition& game, StrategySpace space,
                                                 const SearchConfig& cfg) {
  std::vector<detail::RecordCandidate> cands;
  auto push = [&](const std::vector<StrategyPoint>& profile, const FamilyFit& family) {
    detail::RecordCandidate c;
    std::vector<ComplexMatrix> mats;
    for (const StrategyPoint& p : profile) mats.push_back(to_unitary(p, game.players()));
    const FinalStateReport fs = final_state(game, mats);
    c.distribution = fs.outcome_probabilities;
    c.record.gamma = game.gamma();
    c.record.entropy = entanglement_entropy(game.gamma());
    c.record.equilibrium = detail::profile_id(profile, game.players());
    c.record.players = game.players();
    c.record.payoffs = payoffs(game, mats);
    if (family.valid) {
      c.record.has_family = true;
      c.record.a = family.a;
      c.record.b = family.b;
    }
    cands.push_back(std::move(c));
  };

  if (space == StrategySpace::su2) {
    const SearchResult sr = search_symmetric_ne(game, space, cfg);
    for (const EquilibriumReport& eq : sr.equilibria) push(eq.profile, eq.family);
  } else {
    const std::vector<StrategyPoint> candidates = detail::space_candidates(space);
    const int n = game.players();
    int total = 1;
    for (int p = 0; p < n; ++p) total *= static_cast<int>(candidates.size());
    for (int code = 0; code < total; ++code) {
      std::vector<StrategyPoint> profile;
      int rem = code;
      for (int p = 0; p < n; ++p) {
        profile.push_back(candidates[static_cast<size_t>(rem) % candidates.size()]);
        rem /= static_cast<int>(candidates.size());
      }
      const NashVerdict verdict = verify_nash(game, profile, cfg.eps, cfg.grid);
      if (verdict.is_equilibrium) push(profile, FamilyFit{});
    }
  }

  std::vector<GammaSweepRecord> records = detail::merge_deterministic(std::move(cands));
  std::sort(records.begin(), records.end(),
            [](const GammaSweepRecord& x, const GammaSweepRecord& y) {
              return x.equilibrium < y.equilibrium;
            });
  const std::string regime = classify_regime(game, records);
  if (records.empty()) {
    GammaSweepRecord none;
    none.gamma = game.gamma();
    none.entropy = entanglement_entropy(game.gamma());
    none.regime = regime;
    none.players = game.players();
    return {none};
  }
  for (GammaSweepRecord& r : records) r.regime = regime;
  return records;
}

inline std::vector<GammaSweepRecord> run_sweep(const SweepConfig& config) {
  if (!(config.start >= 0.0 && config.start <= config.stop && config.stop <= kPi / 2 + 1e-12))
    throw std::domain_error("sweep grid must satisfy 0 <= start <= stop <= pi/2");
  if (config.count < 2) throw std::domain_error("sweep grid needs at least 2 points");
  std::vector<GammaSweepRecord> out;
  for (int i = 0; i < config.count; ++i) {
    const double gamma =
        config.start + (config.stop - config.start) * i / (config.count - 1);
    std::vector<GammaSweepRecord> recs =
        sweep_point(config.game.with_gamma(gamma), config.space, config.search);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

}  // namespace qgame

#endif  // QGAME_SWEEP_HPP_
