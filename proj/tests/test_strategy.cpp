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

#include <cmath>
#include <set>

#include "qgame/errors.hpp"
#include "qgame/strategy.hpp"

namespace {

using namespace qgame;

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_entry_diff(u.dagger() * u, ComplexMatrix::identity(u.rows()));
}

}  // namespace

TEST_CASE("space names parse and print") {
  for (StrategySpace s : {StrategySpace::classical, StrategySpace::two_param_diag,
                          StrategySpace::two_param_offdiag, StrategySpace::su2})
    REQUIRE(parse_space(space_name(s)) == s);
  REQUIRE(space_name(StrategySpace::two_param_diag) == "2p-diag");
  REQUIRE_THROWS_AS(parse_space("3p-diag"), ParseError);
}

TEST_CASE("catalog entries") {
  REQUIRE(catalog_names().size() == 13);

  REQUIRE(max_entry_diff(to_unitary(catalog_lookup("C"), 2), identity2()) <= 1e-15);
  REQUIRE(max_entry_diff(to_unitary(catalog_lookup("C"), 3), identity2()) <= 1e-15);

  // The defect move depends on the player count: the two-player flip is the
  // antisymmetric U(pi,0), the three-player flip is i sigma_x.
  REQUIRE(max_entry_diff(to_unitary(catalog_lookup("D"), 2), dhat()) <= 1e-15);
  REQUIRE(max_entry_diff(to_unitary(catalog_lookup("D"), 3), Complex(0.0, 1.0) * sigma_x()) <=
          1e-15);
  const Vec4 d2 = su2_coeffs(catalog_lookup("D"), 2);
  const Vec4 d3 = su2_coeffs(catalog_lookup("D"), 3);
  REQUIRE(norm4({d2[0], d2[1], d2[2] - 1.0, d2[3]}) <= 1e-12);
  REQUIRE(norm4({d3[0], d3[1] - 1.0, d3[2], d3[3]}) <= 1e-12);

  const ComplexMatrix q = to_unitary(catalog_lookup("Q"), 2);
  REQUIRE(std::abs(q.at(0, 0) - Complex(0.0, 1.0)) <= 1e-15);
  REQUIRE(std::abs(q.at(1, 1) - Complex(0.0, -1.0)) <= 1e-15);

  const Vec4 k3 = su2_coeffs(catalog_lookup("K3"), 3);
  const double h = 0.5 / std::sqrt(2.0), g = std::sqrt(3.0) / (2.0 * std::sqrt(2.0));
  REQUIRE(std::abs(k3[0] + h) <= 1e-12);
  REQUIRE(std::abs(k3[1] - g) <= 1e-12);
  REQUIRE(std::abs(k3[2] - h) <= 1e-12);
  REQUIRE(std::abs(k3[3] - g) <= 1e-12);

  for (const std::string& name : catalog_names()) {
    for (int players : {2, 3}) {
      const StrategyPoint p = catalog_lookup(name);
      REQUIRE(unitarity_defect(to_unitary(p, players)) <= 1e-12);
      REQUIRE(std::abs(norm4(su2_coeffs(p, players)) - 1.0) <= 1e-9);
    }
  }

  REQUIRE_THROWS_AS(catalog_lookup("K7"), ParseError);
}

TEST_CASE("strategy points convert to the documented matrices") {
  const ComplexMatrix isx = to_unitary(StrategyPoint::su2_point({0, 1, 0, 0}), 2);
  REQUIRE(std::abs(isx.at(0, 1) - Complex(0.0, 1.0)) <= 1e-15);
  REQUIRE(std::abs(isx.at(1, 0) - Complex(0.0, 1.0)) <= 1e-15);

  REQUIRE(max_entry_diff(to_unitary(StrategyPoint::offdiag(kPi, 0.0), 2), dhat()) <= 1e-15);
  REQUIRE(max_entry_diff(to_unitary(StrategyPoint::classical('C'), 3), identity2()) <= 1e-15);

  REQUIRE_THROWS_AS(StrategyPoint::diag(-0.5, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(StrategyPoint::offdiag(0.0, 2.0), std::domain_error);
  REQUIRE_THROWS_AS(StrategyPoint::su2_point({0, 0, 0, 0}), std::domain_error);
  REQUIRE_THROWS_AS(StrategyPoint::classical('X'), std::domain_error);
}

TEST_CASE("two-parameter grids cover the rectangle inclusively") {
  const StrategyGrid g = grid_two_param(StrategySpace::two_param_diag, 3, 3);
  REQUIRE(g.points.size() == 9);
  bool corner00 = false, corner_end = false;
  for (const StrategyPoint& p : g.points) {
    if (std::abs(p.theta) <= 1e-15 && std::abs(p.phi) <= 1e-15) corner00 = true;
    if (std::abs(p.theta - kPi) <= 1e-15 && std::abs(p.phi - kPi / 2) <= 1e-15) corner_end = true;
  }
  REQUIRE(corner00);
  REQUIRE(corner_end);

  const StrategyGrid fine = grid_two_param(StrategySpace::two_param_offdiag, 181, 91);
  REQUIRE(fine.points.size() == 181u * 91u);
  REQUIRE(std::abs(fine.points[91].theta - kPi / 180.0) <= 1e-12);
  REQUIRE(std::abs(fine.points[1].phi - kPi / 180.0) <= 1e-12);

  REQUIRE_THROWS_AS(grid_two_param(StrategySpace::two_param_diag, 1, 3), std::domain_error);
}

TEST_CASE("s3 sampler forces the axes and stays deterministic") {
  const std::vector<Vec4> pts = sample_s3(16, 0);
  REQUIRE(pts.size() == 16);
  for (int axis = 0; axis < 4; ++axis) {
    for (double sign : {1.0, -1.0}) {
      bool found = false;
      for (const Vec4& v : pts) {
        Vec4 want{0, 0, 0, 0};
        want[static_cast<size_t>(axis)] = sign;
        Vec4 d{v[0] - want[0], v[1] - want[1], v[2] - want[2], v[3] - want[3]};
        if (norm4(d) <= 1e-12) found = true;
      }
      REQUIRE(found);
    }
  }
  for (const Vec4& v : pts) REQUIRE(std::abs(norm4(v) - 1.0) <= 1e-12);

  const std::vector<Vec4> again = sample_s3(16, 0);
  for (size_t i = 0; i < pts.size(); ++i)
    for (int c = 0; c < 4; ++c) REQUIRE(pts[i][static_cast<size_t>(c)] == again[i][static_cast<size_t>(c)]);

  // A different seed rotates the free points but keeps the axes.
  const std::vector<Vec4> other = sample_s3(16, 9);
  bool differs = false;
  for (size_t i = 8; i < other.size(); ++i)
    for (int c = 0; c < 4; ++c)
      if (pts[i][static_cast<size_t>(c)] != other[i][static_cast<size_t>(c)]) differs = true;
  REQUIRE(differs);

  REQUIRE_THROWS_AS(sample_s3(4, 0), std::domain_error);
}

TEST_CASE("classical grid and su2 grid compose") {
  REQUIRE(grid_classical().points.size() == 2);
  const StrategyGrid g = grid_su2(24, 3);
  REQUIRE(g.points.size() == 24);
  for (const StrategyPoint& p : g.points) REQUIRE(p.space == StrategySpace::su2);
}
