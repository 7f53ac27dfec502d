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

// Game definitions and the quantization pipeline: the initial entangled
// state, final states J^dag (U_1 x ... x U_n) J |0...0>, outcome
// probabilities, expected payoffs, and the entanglement entropy of the
// initial state.

#ifndef QGAME_GAME_HPP_
#define QGAME_GAME_HPP_

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qgame/linalg.hpp"

namespace qgame {

// Outcome string for a basis index: player 0 is the most significant bit,
// bit 0 spells C and bit 1 spells D.
inline std::string outcome_name(int basis_index, int players) {
  std::string s(static_cast<size_t>(players), 'C');
  for (int p = 0; p < players; ++p)
    if ((basis_index >> (players - 1 - p)) & 1) s[static_cast<size_t>(p)] = 'D';
  return s;
}

class GameDefinition {
 public:
  // table maps outcome strings over {C,D} (length == players) to one payoff
  // per player. The table must be complete: 2^players entries.
  GameDefinition(int players, double gamma, const std::map<std::string, std::vector<double>>& table)
      : players_(players), gamma_(gamma) {
    if (players != 2 && players != 3) throw std::domain_error("players must be 2 or 3");
    if (!(gamma >= 0.0 && gamma <= kPi / 2)) throw std::domain_error("gamma must lie in [0, pi/2]");
    const int n_outcomes = 1 << players;
    payoffs_by_outcome_.resize(static_cast<size_t>(n_outcomes));
    for (int b = 0; b < n_outcomes; ++b) {
      const std::string key = outcome_name(b, players);
      auto it = table.find(key);
      if (it == table.end()) throw std::domain_error("payoff table is missing outcome " + key);
      if (static_cast<int>(it->second.size()) != players)
        throw std::domain_error("payoff tuple for outcome " + key + " must have one entry per player");
      payoffs_by_outcome_[static_cast<size_t>(b)] = it->second;
    }
    if (static_cast<int>(table.size()) != n_outcomes)
      for (const auto& entry : table) {
        bool known = static_cast<int>(entry.first.size()) == players;
        for (char c : entry.first) known = known && (c == 'C' || c == 'D');
        if (!known) throw std::domain_error("unknown outcome " + entry.first + " in payoff table");
      }
  }

  static GameDefinition pd2(double gamma = 0.0) {
    return GameDefinition(2, gamma,
                          {{"CC", {3, 3}}, {"CD", {0, 5}}, {"DC", {5, 0}}, {"DD", {1, 1}}});
  }

  // Three-player dilemma: 3 for unanimous cooperation, 1 for unanimous
  // defection, a lone defector gets 5 against 2, a lone cooperator gets 0
  // against 4.
  static GameDefinition pd3(double gamma = 0.0) {
    std::map<std::string, std::vector<double>> t;
    for (int b = 0; b < 8; ++b) {
      const std::string key = outcome_name(b, 3);
      std::vector<double> row(3);
      int defectors = 0;
      for (int p = 0; p < 3; ++p) defectors += key[static_cast<size_t>(p)] == 'D' ? 1 : 0;
      for (int p = 0; p < 3; ++p) {
        const bool me = key[static_cast<size_t>(p)] == 'D';
        double pay = 0.0;
        if (defectors == 0) pay = 3;
        else if (defectors == 3) pay = 1;
        else if (defectors == 1) pay = me ? 5 : 2;
        else pay = me ? 4 : 0;
        row[static_cast<size_t>(p)] = pay;
      }
      t[key] = row;
    }
    return GameDefinition(3, gamma, t);
  }

  GameDefinition with_gamma(double gamma) const {
    GameDefinition g = *this;
    if (!(gamma >= 0.0 && gamma <= kPi / 2)) throw std::domain_error("gamma must lie in [0, pi/2]");
    g.gamma_ = gamma;
    return g;
  }

  int players() const { return players_; }
  double gamma() const { return gamma_; }
  int outcomes() const { return 1 << players_; }
  const std::vector<double>& payoff_row(int basis_index) const {
    return payoffs_by_outcome_[static_cast<size_t>(basis_index)];
  }

  double min_table_payoff() const {
    double m = payoffs_by_outcome_[0][0];
    for (const auto& row : payoffs_by_outcome_)
      for (double p : row) m = std::min(m, p);
    return m;
  }
  double max_table_payoff() const {
    double m = payoffs_by_outcome_[0][0];
    for (const auto& row : payoffs_by_outcome_)
      for (double p : row) m = std::max(m, p);
    return m;
  }

 private:
  int players_;
  double gamma_;
  std::vector<std::vector<double>> payoffs_by_outcome_;
};

struct PayoffOperator {
  std::vector<double> diagonal;  // one payoff per basis outcome
};

struct FinalStateReport {
  StateVector state;
  std::vector<double> outcome_probabilities;
  double density_matrix_trace = 0.0;
};

using PayoffVector = std::vector<double>;

inline StateVector initial_state(const GameDefinition& game) {
  return apply(entangler(game.players(), game.gamma()),
               StateVector::basis(game.outcomes(), 0));
}

inline FinalStateReport final_state(const GameDefinition& game,
                                    const std::vector<ComplexMatrix>& profile) {
  if (static_cast<int>(profile.size()) != game.players())
    throw std::domain_error("profile must supply one matrix per player");
  for (const ComplexMatrix& u : profile) {
    if (u.rows() != 2 || u.cols() != 2) throw std::domain_error("strategies must be 2x2");
    if (!u.is_unitary(1e-9)) throw std::domain_error("strategies must be unitary");
  }
  ComplexMatrix op = profile[0];
  for (size_t p = 1; p < profile.size(); ++p) op = kron(op, profile[p]);

  const ComplexMatrix j = entangler(game.players(), game.gamma());
  FinalStateReport r;
  r.state = apply(j.dagger(), apply(op, apply(j, StateVector::basis(game.outcomes(), 0))));
  r.outcome_probabilities.resize(static_cast<size_t>(game.outcomes()));
  for (int b = 0; b < game.outcomes(); ++b) {
    r.outcome_probabilities[static_cast<size_t>(b)] = std::norm(r.state.amplitudes[static_cast<size_t>(b)]);
    r.density_matrix_trace += r.outcome_probabilities[static_cast<size_t>(b)];
  }
  return r;
}

// Expected payoffs tr($_i rho_f). The payoff operators are diagonal in the
// computational basis, so the trace reduces to a probability-weighted sum
// over the outcome table.
inline PayoffVector payoffs(const GameDefinition& game, const std::vector<ComplexMatrix>& profile) {
  const FinalStateReport fs = final_state(game, profile);
  PayoffVector pay(static_cast<size_t>(game.players()), 0.0);
  for (int b = 0; b < game.outcomes(); ++b)
    for (int p = 0; p < game.players(); ++p)
      pay[static_cast<size_t>(p)] +=
          game.payoff_row(b)[static_cast<size_t>(p)] * fs.outcome_probabilities[static_cast<size_t>(b)];
  return pay;
}

inline PayoffOperator payoff_operator(const GameDefinition& game, int player) {
  if (player < 0 || player >= game.players()) throw std::domain_error("player index out of range");
  PayoffOperator op;
  op.diagonal.resize(static_cast<size_t>(game.outcomes()));
  for (int b = 0; b < game.outcomes(); ++b)
    op.diagonal[static_cast<size_t>(b)] = game.payoff_row(b)[static_cast<size_t>(player)];
  return op;
}

// Von Neumann entropy of either qubit of J|00>; it grows monotonically from
// 0 at gamma=0 to ln 2 at gamma=pi/2 and serves as the entanglement measure.
inline double entanglement_entropy(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kPi / 2))
    throw std::domain_error("gamma must lie in [0, pi/2]");
  const double s2 = std::sin(gamma / 2) * std::sin(gamma / 2);
  const double c2 = 1.0 - s2;
  double e = 0.0;
  if (s2 > 0.0) e -= s2 * std::log(s2);
  if (c2 > 0.0) e -= c2 * std::log(c2);
  return e;
}

}  // namespace qgame

#endif  // QGAME_GAME_HPP_
