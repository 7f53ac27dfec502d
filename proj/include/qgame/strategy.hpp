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

// Uniform representation of the strategy spaces (classical moves, the two
// two-parameter families, and full SU(2) coefficient vectors), the named
// strategy catalog, and deterministic grid / sphere-sampling generators.

#ifndef QGAME_STRATEGY_HPP_
#define QGAME_STRATEGY_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qgame/linalg.hpp"

namespace qgame {

enum class StrategySpace { classical, two_param_diag, two_param_offdiag, su2 };

inline std::string space_name(StrategySpace s) {
  switch (s) {
    case StrategySpace::classical: return "classical";
    case StrategySpace::two_param_diag: return "2p-diag";
    case StrategySpace::two_param_offdiag: return "2p-offdiag";
    case StrategySpace::su2: return "su2";
  }
  return "?";
}

inline StrategySpace parse_space(const std::string& s) {
  if (s == "classical") return StrategySpace::classical;
  if (s == "2p-diag") return StrategySpace::two_param_diag;
  if (s == "2p-offdiag") return StrategySpace::two_param_offdiag;
  if (s == "su2") return StrategySpace::su2;
  throw ParseError("unknown strategy space: " + s);
}

struct StrategyPoint {
  StrategySpace space = StrategySpace::su2;
  char move = 'C';               // classical
  double theta = 0.0, phi = 0.0; // two-parameter spaces
  Vec4 v{1.0, 0.0, 0.0, 0.0};    // su2

  static StrategyPoint classical(char m) {
    if (m != 'C' && m != 'D') throw std::domain_error("classical move must be C or D");
    StrategyPoint p;
    p.space = StrategySpace::classical;
    p.move = m;
    return p;
  }
  static StrategyPoint diag(double theta, double phi) {
    check_two_param(theta, phi);
    StrategyPoint p;
    p.space = StrategySpace::two_param_diag;
    p.theta = theta;
    p.phi = phi;
    return p;
  }
  static StrategyPoint offdiag(double theta, double phi) {
    check_two_param(theta, phi);
    StrategyPoint p;
    p.space = StrategySpace::two_param_offdiag;
    p.theta = theta;
    p.phi = phi;
    return p;
  }
  static StrategyPoint su2_point(const Vec4& v) {
    StrategyPoint p;
    p.space = StrategySpace::su2;
    p.v = normalized4(v);
    return p;
  }

 private:
  static void check_two_param(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= kPi)) throw std::domain_error("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi <= kPi / 2)) throw std::domain_error("phi must lie in [0, pi/2]");
  }
};

// The classical defect move must commute with the entangler to reproduce the
// classical game at every gamma; the right flip operator therefore depends on
// the player count ([[0,1],[-1,0]] for two players, i sx for three).
inline ComplexMatrix classical_flip(int players) {
  if (players == 3) return Complex(0.0, 1.0) * sigma_x();
  return dhat();
}

inline ComplexMatrix to_unitary(const StrategyPoint& p, int players = 2) {
  switch (p.space) {
    case StrategySpace::classical:
      return p.move == 'C' ? identity2() : classical_flip(players);
    case StrategySpace::two_param_diag:
      return unitary_from_two_param_diag(p.theta, p.phi);
    case StrategySpace::two_param_offdiag:
      return unitary_from_two_param_offdiag(p.theta, p.phi);
    case StrategySpace::su2:
      return unitary_from_su2(p.v);
  }
  throw std::domain_error("invalid strategy space");
}

// SU(2) coefficient vector of a point (any space embeds in SU(2) up to
// global phase; the two-parameter embeddings are exact, not just projective).
inline Vec4 su2_coeffs(const StrategyPoint& p, int players = 2) {
  switch (p.space) {
    case StrategySpace::classical:
      if (p.move == 'C') return {1, 0, 0, 0};
      return players == 3 ? Vec4{0, 1, 0, 0} : Vec4{0, 0, 1, 0};
    case StrategySpace::two_param_diag: {
      const double c = std::cos(p.theta / 2), s = std::sin(p.theta / 2);
      return {std::cos(p.phi) * c, 0.0, s, std::sin(p.phi) * c};
    }
    case StrategySpace::two_param_offdiag: {
      const double c = std::cos(p.theta / 2), s = std::sin(p.theta / 2);
      return {c, std::sin(p.phi) * s, std::cos(p.phi) * s, 0.0};
    }
    case StrategySpace::su2:
      return p.v;
  }
  throw std::domain_error("invalid strategy space");
}

// Named catalog. Exact spellings are the stable identifiers used on the CLI
// and in CSV output. C and D resolve to the classical moves, so their
// unitary depends on the player count (see classical_flip).
inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"C", "D", "Q", "I", "iSx", "iSy",
                                                 "iSz", "K1", "K2", "K3", "K4", "K5", "K6"};
  return names;
}

inline StrategyPoint catalog_lookup(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);   // 1/sqrt(2)
  const double h = 0.5 / std::sqrt(2.0);   // 1/(2 sqrt(2))
  const double g = std::sqrt(3.0) / (2.0 * std::sqrt(2.0));
  if (name == "C") return StrategyPoint::classical('C');
  if (name == "D") return StrategyPoint::classical('D');
  if (name == "Q") return StrategyPoint::diag(0.0, kPi / 2);
  if (name == "I") return StrategyPoint::su2_point({1, 0, 0, 0});
  if (name == "iSx") return StrategyPoint::su2_point({0, 1, 0, 0});
  if (name == "iSy") return StrategyPoint::su2_point({0, 0, 1, 0});
  if (name == "iSz") return StrategyPoint::su2_point({0, 0, 0, 1});
  if (name == "K1") return StrategyPoint::su2_point({r, 0, r, 0});
  if (name == "K2") return StrategyPoint::su2_point({r, 0, -r, 0});
  if (name == "K3") return StrategyPoint::su2_point({-h, g, h, g});
  if (name == "K4") return StrategyPoint::su2_point({h, -g, h, g});
  if (name == "K5") return StrategyPoint::su2_point({h, g, -h, g});
  if (name == "K6") return StrategyPoint::su2_point({h, g, h, -g});
  throw ParseError("unknown strategy name: " + name);
}

struct StrategyGrid {
  StrategySpace space;
  std::vector<StrategyPoint> points;
};

// Uniform inclusive theta x phi lattice over [0,pi] x [0,pi/2].
inline StrategyGrid grid_two_param(StrategySpace space, int n_theta, int n_phi) {
  if (space != StrategySpace::two_param_diag && space != StrategySpace::two_param_offdiag)
    throw std::domain_error("grid_two_param expects a two-parameter space");
  if (n_theta < 2 || n_phi < 2) throw std::domain_error("degenerate grid resolution");
  StrategyGrid g;
  g.space = space;
  g.points.reserve(static_cast<size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const double theta = kPi * i / (n_theta - 1);
      const double phi = (kPi / 2) * j / (n_phi - 1);
      g.points.push_back(space == StrategySpace::two_param_diag ? StrategyPoint::diag(theta, phi)
                                                                : StrategyPoint::offdiag(theta, phi));
    }
  return g;
}

// Deterministic low-discrepancy covering of the unit 3-sphere. The first
// eight points are always the signed coordinate axes; the remainder comes
// from a Kronecker (additive recurrence) sequence pushed through the
// cylinder-style area-preserving map
//   (u, a, b) -> (sqrt(1-u) cos a, sqrt(1-u) sin a, sqrt(u) cos b, sqrt(u) sin b),
// the S3 analogue of a spherical Fibonacci lattice. The seed only rotates
// the two angular phases, so any seed still yields a uniform cover and
// seed 0 is the canonical one.
inline std::vector<Vec4> sample_s3(int size, std::uint64_t seed = 0) {
  if (size < 8) throw std::domain_error("s3 sample size must be at least 8 (axis points are forced)");
  std::vector<Vec4> pts;
  pts.reserve(static_cast<size_t>(size));
  for (int axis = 0; axis < 4; ++axis)
    for (double sgn : {1.0, -1.0}) {
      Vec4 v{0, 0, 0, 0};
      v[static_cast<size_t>(axis)] = sgn;
      pts.push_back(v);
    }
  const int m = size - 8;
  if (m == 0) return pts;
  // Kronecker generators 1/rho, 1/rho^2 for the plastic constant rho.
  const double a1 = 0.7548776662466927;
  const double a2 = 0.5698402909980532;
  auto frac = [](double x) { return x - std::floor(x); };
  const double off1 = frac(static_cast<double>(seed) * 0.6180339887498949);
  const double off2 = frac(static_cast<double>(seed) * 0.4142135623730951);
  for (int k = 0; k < m; ++k) {
    const double u = (k + 0.5) / m;
    const double a = 2 * kPi * frac(k * a1 + off1);
    const double b = 2 * kPi * frac(k * a2 + off2);
    pts.push_back({std::sqrt(1.0 - u) * std::cos(a), std::sqrt(1.0 - u) * std::sin(a),
                   std::sqrt(u) * std::cos(b), std::sqrt(u) * std::sin(b)});
  }
  return pts;
}

inline StrategyGrid grid_su2(int size, std::uint64_t seed = 0) {
  StrategyGrid g;
  g.space = StrategySpace::su2;
  for (const Vec4& v : sample_s3(size, seed)) g.points.push_back(StrategyPoint::su2_point(v));
  return g;
}

inline StrategyGrid grid_classical() {
  StrategyGrid g;
  g.space = StrategySpace::classical;
  g.points = {StrategyPoint::classical('C'), StrategyPoint::classical('D')};
  return g;
}

}  // namespace qgame

#endif  // QGAME_STRATEGY_HPP_
