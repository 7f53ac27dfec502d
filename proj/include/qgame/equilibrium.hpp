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

// Best-response computation, eps-Nash verification, symmetric equilibrium
// search, and entanglement-threshold detection.
//
// Over the full SU(2) space a player's payoff against fixed opponents is an
// exact quadratic form v^T M v in the coefficient vector, so best responses
// are eigenvector problems and verification is exact up to the eigensolver.
// Over the two-parameter spaces best responses are located by a grid scan of
// the same quadratic form restricted to the embedded surface, then polished
// by coordinate-wise golden-section refinement.

#ifndef QGAME_EQUILIBRIUM_HPP_
#define QGAME_EQUILIBRIUM_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/game.hpp"
#include "qgame/strategy.hpp"

namespace qgame {

namespace detail {

// Payoff of `player` when it plays the su2 vector v and everyone else plays
// the fixed matrices in `others` (player order preserved).
inline double payoff_at_su2(const GameDefinition& game, int player,
                            const std::vector<ComplexMatrix>& others, const Vec4& v) {
  std::vector<ComplexMatrix> profile;
  profile.reserve(static_cast<size_t>(game.players()));
  size_t oi = 0;
  for (int p = 0; p < game.players(); ++p) {
    if (p == player) profile.push_back(unitary_from_su2(v));
    else profile.push_back(others[oi++]);
  }
  return payoffs(game, profile)[static_cast<size_t>(player)];
}

inline Vec4 axpy4(double a, const Vec4& x, double b, const Vec4& y) {
  return {a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2], a * x[3] + b * y[3]};
}

inline double max_abs4(const Vec4& v) {
  return std::max(std::max(std::abs(v[0]), std::abs(v[1])), std::max(std::abs(v[2]), std::abs(v[3])));
}

// Golden-section maximization of a unimodal-enough 1-d slice.
inline double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = 0.6180339887498949;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

inline bool same_unitary_mod_phase(const ComplexMatrix& u, const ComplexMatrix& v, double tol = 1e-9) {
  Complex tr = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tr += std::conj(u.at(j, i)) * v.at(j, i);
  return std::abs(tr) >= 2.0 - tol;
}

}  // namespace detail

// The exact quadratic form M with payoff(player; v) = v^T M v over unit su2
// coefficient vectors, everyone else fixed. Entries are recovered from the
// payoffs at the four basis vectors and the six pairwise mixes (e_i+e_j)/sqrt2.
inline SymmetricMatrix4 quadratic_form(const GameDefinition& game, int player,
                                       const std::vector<ComplexMatrix>& others) {
  if (static_cast<int>(others.size()) != game.players() - 1)
    throw std::domain_error("quadratic_form: need one fixed matrix per other player");
  static const Vec4 e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  SymmetricMatrix4 m;
  double diag[4];
  for (int i = 0; i < 4; ++i) {
    diag[i] = detail::payoff_at_su2(game, player, others, e[i]);
    m.set(i, i, diag[i]);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Vec4 mix = detail::axpy4(inv_sqrt2, e[i], inv_sqrt2, e[j]);
      const double pm = detail::payoff_at_su2(game, player, others, mix);
      m.set(i, j, pm - 0.5 * (diag[i] + diag[j]));
    }
  return m;
}

struct BestResponse {
  enum class Method { eigen, grid };
  StrategySpace space = StrategySpace::su2;
  double value = 0.0;
  std::vector<StrategyPoint> argmax_set;
  Method method = Method::eigen;
  // grid method only: another probed cell ties the optimum with a genuinely
  // different unitary (used by strictness checks)
  bool tied_distinct = false;
};

struct GridSpec {
  int n_theta = 181;
  int n_phi = 91;
};

inline BestResponse best_response(const GameDefinition& game, int player,
                                  const std::vector<ComplexMatrix>& others, StrategySpace space,
                                  const GridSpec& grid = GridSpec{}) {
  BestResponse br;
  br.space = space;

  if (space == StrategySpace::su2) {
    const SymmetricMatrix4 m = quadratic_form(game, player, others);
    const EigenDecomposition4 d = jacobi_eigs(m);
    br.method = BestResponse::Method::eigen;
    br.value = d.eigenvalues[0];
    for (const Vec4& v : d.top_eigenspace) br.argmax_set.push_back(StrategyPoint::su2_point(v));
    return br;
  }

  if (space == StrategySpace::classical) {
    br.method = BestResponse::Method::grid;
    const StrategyPoint c = StrategyPoint::classical('C'), d = StrategyPoint::classical('D');
    const double pc = detail::payoff_at_su2(game, player, others, su2_coeffs(c, game.players()));
    const double pd = detail::payoff_at_su2(game, player, others, su2_coeffs(d, game.players()));
    br.value = std::max(pc, pd);
    br.argmax_set.push_back(pc >= pd ? c : d);
    br.tied_distinct = std::abs(pc - pd) <= 1e-12;
    return br;
  }

  // Two-parameter spaces: the payoff restricted to the embedded surface is
  // still v(theta,phi)^T M v(theta,phi), so the scan only pays for the form
  // once.
  const SymmetricMatrix4 m = quadratic_form(game, player, others);
  const bool diag_space = space == StrategySpace::two_param_diag;
  auto value_at = [&](double theta, double phi) {
    const StrategyPoint p =
        diag_space ? StrategyPoint::diag(theta, phi) : StrategyPoint::offdiag(theta, phi);
    return m.quadratic(su2_coeffs(p, game.players()));
  };

  if (grid.n_theta < 2 || grid.n_phi < 2) throw std::domain_error("degenerate grid resolution");
  double best_theta = 0.0, best_phi = 0.0, best_val = -1e300;
  ComplexMatrix best_u = identity2();
  bool tied = false;
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j) {
      const double theta = kPi * i / (grid.n_theta - 1);
      const double phi = (kPi / 2) * j / (grid.n_phi - 1);
      const double val = value_at(theta, phi);
      if (val > best_val + 1e-12) {
        best_val = val;
        best_theta = theta;
        best_phi = phi;
        best_u = diag_space ? unitary_from_two_param_diag(theta, phi)
                            : unitary_from_two_param_offdiag(theta, phi);
        tied = false;
      } else if (val > best_val - 1e-12) {
        // Equal-value cell; lowest (theta, phi) wins, but remember whether a
        // genuinely different unitary ties the optimum.
        const ComplexMatrix u = diag_space ? unitary_from_two_param_diag(theta, phi)
                                           : unitary_from_two_param_offdiag(theta, phi);
        if (!detail::same_unitary_mod_phase(best_u, u)) tied = true;
      }
    }

  // Alternating golden-section polish inside a window that starts at one grid
  // cell and halves each round.
  double ht = kPi / (grid.n_theta - 1), hp = (kPi / 2) / (grid.n_phi - 1);
  double theta = best_theta, phi = best_phi;
  for (int round = 0; round < 45 && (ht > 1e-9 || hp > 1e-9); ++round) {
    theta = detail::golden_max([&](double t) { return value_at(t, phi); },
                               std::max(0.0, theta - ht), std::min(kPi, theta + ht), 1e-10);
    phi = detail::golden_max([&](double p) { return value_at(theta, p); },
                             std::max(0.0, phi - hp), std::min(kPi / 2, phi + hp), 1e-10);
    ht *= 0.5;
    hp *= 0.5;
  }

  br.method = BestResponse::Method::grid;
  br.value = value_at(theta, phi);
  br.argmax_set.push_back(diag_space ? StrategyPoint::diag(theta, phi)
                                     : StrategyPoint::offdiag(theta, phi));
  br.tied_distinct = tied;
  return br;
}

struct NashVerdict {
  bool is_equilibrium = false;
  std::vector<double> deviation_gain;  // per player: best alternative minus current
  double epsilon = 0.0;
  bool strict = false;
};

// Verifies a profile against unilateral deviations. Deviations for each
// player range over that player's declared space unless deviation_space
// pins a common one (e.g. checking a named su2 profile against only the
// two-parameter set).
inline NashVerdict verify_nash(const GameDefinition& game, const std::vector<StrategyPoint>& profile,
                               double eps, const GridSpec& grid = GridSpec{},
                               std::optional<StrategySpace> deviation_space = std::nullopt) {
  if (static_cast<int>(profile.size()) != game.players())
    throw std::domain_error("verify_nash: need one strategy per player");
  std::vector<ComplexMatrix> mats;
  for (const StrategyPoint& p : profile) mats.push_back(to_unitary(p, game.players()));
  const PayoffVector current = payoffs(game, mats);

  NashVerdict verdict;
  verdict.epsilon = eps;
  verdict.is_equilibrium = true;
  verdict.strict = true;
  for (int player = 0; player < game.players(); ++player) {
    std::vector<ComplexMatrix> others;
    for (int p = 0; p < game.players(); ++p)
      if (p != player) others.push_back(mats[static_cast<size_t>(p)]);

    const StrategySpace space =
        deviation_space ? *deviation_space : profile[static_cast<size_t>(player)].space;
    const BestResponse br = best_response(game, player, others, space, grid);
    const double gain = br.value - current[static_cast<size_t>(player)];
    verdict.deviation_gain.push_back(gain);
    if (gain > eps) verdict.is_equilibrium = false;

    // Strictness: the optimum must be attained at this player's strategy
    // alone (up to phase / sign), with no distinct tying alternative.
    bool player_strict;
    if (br.method == BestResponse::Method::eigen) {
      player_strict = br.argmax_set.size() == 1 &&
                      detail::same_unitary_mod_phase(to_unitary(br.argmax_set[0], game.players()),
                                                     mats[static_cast<size_t>(player)]);
    } else {
      player_strict = !br.tied_distinct && !br.argmax_set.empty() &&
                      detail::same_unitary_mod_phase(to_unitary(br.argmax_set[0], game.players()),
                                                     mats[static_cast<size_t>(player)]);
    }
    if (!player_strict) verdict.strict = false;
  }
  if (!verdict.is_equilibrium) verdict.strict = false;
  return verdict;
}

// Family-template membership for the three-player symmetric equilibria:
//   A: +-[a (0,0,1,0) - b (0,0,0,+-1)]
//   B: +-[a (sqrt3/2,0,0,+-1/2) - b (0,sqrt3/2,+-1/2,0)]
// with a, b > 0 and a^2 + b^2 = 1.
struct FamilyFit {
  bool valid = false;
  char type = 'A';
  double a = 0.0, b = 0.0;
  int s1 = 1, s2 = 1;  // the two inner sign choices (A uses s1 only)
  std::string id() const {
    if (!valid) return "";
    std::string s = std::string("fam") + type;
    s += s1 > 0 ? '+' : '-';
    if (type == 'B') s += s2 > 0 ? '+' : '-';
    return s;
  }
};

// The residual tolerance absorbs the positional noise of refined search
// output (the deviation gain is quadratically flat around an equilibrium, so
// points land within about 1e-6 of the exact template).
inline FamilyFit fit_family(const Vec4& v_in, double residual_tol = 5e-5) {
  FamilyFit fit;
  const double sqrt3_2 = std::sqrt(3.0) / 2;

  // Template A: (0, 0, a, -s1 b) after fixing the overall sign so y > 0.
  {
    Vec4 v = v_in;
    if (v[2] < 0) v = {-v[0], -v[1], -v[2], -v[3]};
    const double a = v[2], b = std::abs(v[3]);
    const double resid = std::hypot(v[0], v[1]);
    if (resid <= residual_tol && a > 1e-3 && b > 1e-3) {
      const double scale = std::hypot(a, b);
      fit.valid = true;
      fit.type = 'A';
      fit.a = a / scale;
      fit.b = b / scale;
      fit.s1 = v[3] < 0 ? 1 : -1;
      fit.s2 = 0;
      return fit;
    }
  }

  // Template B: (a sqrt3/2, -b sqrt3/2, -s2 b/2, s1 a/2) after fixing the
  // overall sign so w > 0.
  {
    Vec4 v = v_in;
    if (v[0] < 0) v = {-v[0], -v[1], -v[2], -v[3]};
    const double a = v[0] / sqrt3_2;
    const double b = -v[1] / sqrt3_2;
    if (a > 1e-3 && b > 1e-3) {
      const int s2 = v[2] < 0 ? 1 : -1;
      const int s1 = v[3] > 0 ? 1 : -1;
      const Vec4 t = {a * sqrt3_2, -b * sqrt3_2, -s2 * b / 2, s1 * a / 2};
      const Vec4 d = detail::axpy4(1.0, v, -1.0, t);
      if (norm4(d) <= residual_tol) {
        const double scale = std::hypot(a, b);
        fit.valid = true;
        fit.type = 'B';
        fit.a = a / scale;
        fit.b = b / scale;
        fit.s1 = s1;
        fit.s2 = s2;
        return fit;
      }
    }
  }
  return fit;
}

struct EquilibriumReport {
  std::vector<StrategyPoint> profile;
  PayoffVector payoff;
  double gamma = 0.0;
  bool strict = false;
  double max_gain = 0.0;       // largest per-player deviation gain
  FamilyFit family;            // valid only when the point matches a template
  std::string id;              // catalog name, family id, or formatted vector
};

// Canonical name of a strategy point for reports: a catalog identifier when
// the point coincides with one (mod sign / phase), else a family id, else
// the formatted su2 vector.
inline std::string point_id(const StrategyPoint& p, int players) {
  if (p.space == StrategySpace::classical) return std::string(1, p.move);
  const ComplexMatrix u = to_unitary(p, players);
  // Catalog order matters: C/D win over their su2 aliases, so the classical
  // flip prints as D in either game while iSy stays iSy for three players.
  for (const std::string& name : catalog_names()) {
    if (detail::same_unitary_mod_phase(to_unitary(catalog_lookup(name), players), u, 1e-6))
      return name;
  }
  if (p.space != StrategySpace::su2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "U(%.6f,%.6f)", p.theta, p.phi);
    return buf;
  }
  Vec4 v = su2_coeffs(p, players);
  const FamilyFit fit = fit_family(v);
  if (fit.valid) return fit.id();
  // Canonical formatting: snap printing noise to zero, first nonzero
  // component positive (the overall sign is a pure phase).
  for (double& c : v)
    if (std::abs(c) < 5e-7) c = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (v[static_cast<size_t>(i)] == 0.0) continue;
    if (v[static_cast<size_t>(i)] < 0)
      for (int j = 0; j < 4; ++j) v[static_cast<size_t>(j)] = -v[static_cast<size_t>(j)];
    break;
  }
  // The sign flip can mint negative zeros; print them as plain zeros.
  for (double& c : v)
    if (c == 0.0) c = 0.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "su2(%.6f,%.6f,%.6f,%.6f)", v[0], v[1], v[2], v[3]);
  return buf;
}

struct SearchConfig {
  int multistarts = 64;
  std::uint64_t seed = 0;
  double eps = 1e-7;
  double damping = 0.5;
  int max_iterations = 500;
  GridSpec grid;  // two-parameter search resolution
};

struct SearchResult {
  std::vector<EquilibriumReport> equilibria;
  SearchConfig config;
  int starts_used = 0;
  // Nonexistence is only ever certified relative to this protocol.
  std::string protocol() const {
    std::ostringstream os;
    os << "multistart=" << config.multistarts << " seed=" << config.seed << " eps=" << config.eps
       << " damping=" << config.damping << " max_iterations=" << config.max_iterations
       << " starts_used=" << starts_used;
    return os.str();
  }
};

namespace detail {

// Deviation gain of the symmetric su2 profile at v: how much one player can
// improve by the exact eigen best response while everyone else holds v.
inline double symmetric_gain(const GameDefinition& game, const Vec4& v) {
  std::vector<ComplexMatrix> others(static_cast<size_t>(game.players() - 1), unitary_from_su2(v));
  const SymmetricMatrix4 m = quadratic_form(game, 0, others);
  return jacobi_eigs(m).eigenvalues[0] - m.quadratic(v);
}

// Deterministic tangent-space pattern search that descends the symmetric
// deviation gain. The damped best-response iteration is an excellent global
// transporter but does not contract near degenerate or cycling regions, so
// converged-enough candidates are always polished here before verification.
inline Vec4 refine_symmetric(const GameDefinition& game, Vec4 v, double h0 = 0.25,
                             double hmin = 1e-10) {
  v = normalized4(v);
  double g = symmetric_gain(game, v);
  double h = h0;
  while (h > hmin) {
    bool improved = false;
    for (int axis = 0; axis < 4; ++axis) {
      Vec4 e{0, 0, 0, 0};
      e[static_cast<size_t>(axis)] = 1.0;
      const double proj = dot4(e, v);
      Vec4 tangent = axpy4(1.0, e, -proj, v);
      const double tn = norm4(tangent);
      if (tn < 1e-8) continue;
      tangent = {tangent[0] / tn, tangent[1] / tn, tangent[2] / tn, tangent[3] / tn};
      for (double sgn : {1.0, -1.0}) {
        const Vec4 trial = normalized4(axpy4(1.0, v, sgn * h, tangent));
        const double gt = symmetric_gain(game, trial);
        if (gt < g - 1e-15) {
          v = trial;
          g = gt;
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return v;
}

struct IterationOutcome {
  Vec4 v;          // final iterate
  Vec4 best;       // lowest-gain iterate seen
  double best_gain = 1e300;
  bool converged = false;
};

// Damped symmetric best-response iteration
//   v <- normalize((1-d) v + d proj_top(v)),
// where proj_top projects v onto the top eigenspace of its own response form
// (sign-matched so antipodal representatives cannot oscillate).
inline IterationOutcome damped_iteration(const GameDefinition& game, Vec4 v,
                                         const SearchConfig& cfg) {
  IterationOutcome out;
  v = normalized4(v);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    std::vector<ComplexMatrix> others(static_cast<size_t>(game.players() - 1), unitary_from_su2(v));
    const SymmetricMatrix4 m = quadratic_form(game, 0, others);
    const EigenDecomposition4 d = jacobi_eigs(m);

    const double gain = d.eigenvalues[0] - m.quadratic(v);
    if (gain < out.best_gain) {
      out.best_gain = gain;
      out.best = v;
    }

    Vec4 target{0, 0, 0, 0};
    for (const Vec4& e : d.top_eigenspace) target = axpy4(1.0, target, dot4(e, v), e);
    if (norm4(target) < 1e-9) target = d.top_eigenspace[0];
    target = normalized4(target);
    if (dot4(target, v) < 0) target = {-target[0], -target[1], -target[2], -target[3]};

    const Vec4 vn = normalized4(axpy4(1.0 - cfg.damping, v, cfg.damping, target));
    const double step = std::min(max_abs4(axpy4(1, vn, -1, v)), max_abs4(axpy4(1, vn, 1, v)));
    v = vn;
    if (step < 1e-10) {
      out.converged = true;
      break;
    }
  }
  out.v = v;
  if (out.best_gain == 1e300) {
    out.best = v;
    out.best_gain = symmetric_gain(game, v);
  }
  return out;
}

inline Vec4 canonical_sign(Vec4 v) {
  for (double c : v) {
    if (c > 1e-9) return v;
    if (c < -1e-9) return {-v[0], -v[1], -v[2], -v[3]};
  }
  return v;
}

}  // namespace detail

// Symmetric Nash equilibrium search. SU(2): damped best-response iteration
// from the deterministic multistart set (low-discrepancy S3 sample plus all
// catalog points), pattern-search polish, exact verification, then
// deduplication up to v ~ -v. Two-parameter spaces: exhaustive symmetric grid
// scan with golden-section refinement of the deviation gain.
inline SearchResult search_symmetric_ne(const GameDefinition& game, StrategySpace space,
                                        const SearchConfig& cfg = SearchConfig{}) {
  SearchResult result;
  result.config = cfg;

  auto accept = [&](const StrategyPoint& point) {
    std::vector<StrategyPoint> profile(static_cast<size_t>(game.players()), point);
    const NashVerdict verdict = verify_nash(game, profile, cfg.eps, cfg.grid);
    if (!verdict.is_equilibrium) return;

    // Deduplicate by strategy identity (mod sign / phase).
    const ComplexMatrix u = to_unitary(point, game.players());
    for (const EquilibriumReport& r : result.equilibria) {
      const ComplexMatrix v = to_unitary(r.profile[0], game.players());
      if (detail::same_unitary_mod_phase(u, v, 1e-6)) return;
      if (u.max_abs_diff(v) <= 1e-6 || (Complex(-1, 0) * u).max_abs_diff(v) <= 1e-6) return;
    }

    EquilibriumReport rep;
    rep.profile = profile;
    std::vector<ComplexMatrix> mats(static_cast<size_t>(game.players()), u);
    rep.payoff = payoffs(game, mats);
    rep.gamma = game.gamma();
    rep.strict = verdict.strict;
    rep.max_gain = *std::max_element(verdict.deviation_gain.begin(), verdict.deviation_gain.end());
    if (space == StrategySpace::su2 && game.players() == 3)
      rep.family = fit_family(su2_coeffs(point, game.players()));
    rep.id = point_id(point, game.players());
    if (rep.family.valid) rep.id = rep.family.id();
    result.equilibria.push_back(rep);
  };

  if (space == StrategySpace::su2) {
    std::vector<Vec4> starts = sample_s3(std::max(8, cfg.multistarts), cfg.seed);
    for (const std::string& name : catalog_names())
      starts.push_back(su2_coeffs(catalog_lookup(name), game.players()));
    result.starts_used = static_cast<int>(starts.size());

    for (const Vec4& start : starts) {
      detail::IterationOutcome it = detail::damped_iteration(game, start, cfg);
      Vec4 candidate = it.converged ? it.v : it.best;
      double gain = detail::symmetric_gain(game, candidate);
      if (gain > cfg.eps) {
        candidate = detail::refine_symmetric(game, candidate);
        gain = detail::symmetric_gain(game, candidate);
      }
      if (gain <= cfg.eps) accept(StrategyPoint::su2_point(detail::canonical_sign(candidate)));
    }
  } else if (space == StrategySpace::classical) {
    result.starts_used = 2;
    for (const StrategyPoint& p : grid_classical().points) accept(p);
  } else {
    // Symmetric deviation gain over the (theta, phi) lattice, refined where
    // it dips, verified where it bottoms out.
    const StrategyGrid grid = grid_two_param(space, cfg.grid.n_theta, cfg.grid.n_phi);
    result.starts_used = static_cast<int>(grid.points.size());
    const bool diag_space = space == StrategySpace::two_param_diag;

    auto gain_at = [&](double theta, double phi) {
      const StrategyPoint p =
          diag_space ? StrategyPoint::diag(theta, phi) : StrategyPoint::offdiag(theta, phi);
      std::vector<ComplexMatrix> others(static_cast<size_t>(game.players() - 1),
                                        to_unitary(p, game.players()));
      const BestResponse br = best_response(game, 0, others, space, cfg.grid);
      const SymmetricMatrix4 m = quadratic_form(game, 0, others);
      return br.value - m.quadratic(su2_coeffs(p, game.players()));
    };

    // Coarse pass on a thinned lattice keeps the scan quadratic-cost-free.
    const int nt = std::min(cfg.grid.n_theta, 61), np = std::min(cfg.grid.n_phi, 31);
    const double coarse_bar = 5e-2;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < np; ++j) {
        const double theta = kPi * i / (nt - 1);
        const double phi = (kPi / 2) * j / (np - 1);
        if (gain_at(theta, phi) > coarse_bar) continue;
        double t = theta, p = phi;
        double ht = kPi / (nt - 1), hp = (kPi / 2) / (np - 1);
        for (int round = 0; round < 40 && (ht > 1e-9 || hp > 1e-9); ++round) {
          t = detail::golden_max([&](double tt) { return -gain_at(tt, p); }, std::max(0.0, t - ht),
                                 std::min(kPi, t + ht), 1e-10);
          p = detail::golden_max([&](double pp) { return -gain_at(t, pp); }, std::max(0.0, p - hp),
                                 std::min(kPi / 2, p + hp), 1e-10);
          ht *= 0.5;
          hp *= 0.5;
        }
        accept(diag_space ? StrategyPoint::diag(t, p) : StrategyPoint::offdiag(t, p));
      }
  }

  std::sort(result.equilibria.begin(), result.equilibria.end(),
            [&](const EquilibriumReport& a, const EquilibriumReport& b) {
              if (std::abs(a.payoff[0] - b.payoff[0]) > 1e-12) return a.payoff[0] > b.payoff[0];
              const Vec4 va = su2_coeffs(a.profile[0], game.players());
              const Vec4 vb = su2_coeffs(b.profile[0], game.players());
              for (int i = 0; i < 4; ++i)
                if (std::abs(va[static_cast<size_t>(i)] - vb[static_cast<size_t>(i)]) > 1e-9)
                  return va[static_cast<size_t>(i)] < vb[static_cast<size_t>(i)];
              return false;
            });
  return result;
}

struct ThresholdPredicate {
  std::string description;
  std::function<bool(double)> fn;
};

struct ThresholdReport {
  std::string predicate;
  bool found = false;
  double gamma_star = 0.0;
  double bracket_width = 0.0;
  bool true_below = false;  // predicate value on the low side of the switch
};

// Bisect the single switch point of a boolean predicate of gamma. A coarse
// 64-point pre-scan guards the single-switch assumption; several switches is
// an error that reports every bracket found.
inline ThresholdReport find_threshold(const ThresholdPredicate& pred, double lo = 0.0,
                                      double hi = kPi / 2, double tol = 1e-6) {
  if (!(lo >= 0.0 && hi <= kPi / 2 && lo < hi)) throw std::domain_error("bad threshold range");
  ThresholdReport report;
  report.predicate = pred.description;

  constexpr int kScan = 64;
  std::vector<bool> values(kScan);
  std::vector<double> xs(kScan);
  for (int i = 0; i < kScan; ++i) {
    xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (kScan - 1);
    values[static_cast<size_t>(i)] = pred.fn(xs[static_cast<size_t>(i)]);
  }
  std::vector<std::pair<double, double>> brackets;
  for (int i = 0; i + 1 < kScan; ++i)
    if (values[static_cast<size_t>(i)] != values[static_cast<size_t>(i + 1)])
      brackets.emplace_back(xs[static_cast<size_t>(i)], xs[static_cast<size_t>(i + 1)]);

  if (brackets.empty()) {
    report.found = false;
    return report;
  }
  if (brackets.size() > 1) {
    std::ostringstream os;
    os << "predicate '" << pred.description << "' switches " << brackets.size()
       << " times; brackets:";
    for (const auto& b : brackets) os << " [" << b.first << ", " << b.second << "]";
    throw NumericalError(os.str());
  }

  double a = brackets[0].first, b = brackets[0].second;
  const bool fa = pred.fn(a);
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (pred.fn(mid) == fa) a = mid;
    else b = mid;
  }
  report.found = true;
  report.gamma_star = 0.5 * (a + b);
  report.bracket_width = b - a;
  report.true_below = fa;
  return report;
}

// Named predicate: a fixed profile stays an eps-NE as gamma varies.
inline ThresholdPredicate pred_profile_ne(const GameDefinition& game,
                                          const std::vector<StrategyPoint>& profile, double eps,
                                          const GridSpec& grid = GridSpec{}) {
  std::string desc = "profile ";
  for (size_t i = 0; i < profile.size(); ++i) {
    if (i) desc += "x";
    desc += point_id(profile[i], game.players());
  }
  desc += " is an eps-NE";
  return {desc, [game, profile, eps, grid](double gamma) {
            return verify_nash(game.with_gamma(gamma), profile, eps, grid).is_equilibrium;
          }};
}

namespace detail {

// Minimum symmetric deviation gain over the family-template circles
// (both A orientations and all four B sign choices), excluding a margin near
// the axis points so the axis equilibria cannot masquerade as families.
inline double family_min_gain(const GameDefinition& game, double t_floor = 0.02, int nt = 240) {
  const double sqrt3_2 = std::sqrt(3.0) / 2;
  std::vector<std::function<Vec4(double)>> curves;
  // A: (0,0,cos t, sin t), t in (0, pi) covers both inner signs mod overall sign.
  curves.push_back([](double t) { return Vec4{0, 0, std::cos(t), std::sin(t)}; });
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      curves.push_back([s1, s2, sqrt3_2](double t) {
        const double a = std::cos(t), b = std::sin(t);
        return Vec4{a * sqrt3_2, -b * sqrt3_2, -s2 * b / 2, s1 * a / 2};
      });

  double best = 1e300;
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    const double lo = t_floor;
    const double hi = (ci == 0 ? kPi : kPi / 2) - t_floor;
    auto gain_of = [&](double t) { return symmetric_gain(game, normalized4(curves[ci](t))); };
    double arg = lo, val = 1e300;
    for (int k = 0; k < nt; ++k) {
      const double t = lo + (hi - lo) * k / (nt - 1);
      const double g = gain_of(t);
      if (g < val) {
        val = g;
        arg = t;
      }
    }
    const double step = (hi - lo) / (nt - 1);
    const double t_star = golden_max([&](double t) { return -gain_of(t); },
                                     std::max(lo, arg - step), std::min(hi, arg + step), 1e-12);
    best = std::min(best, std::min(val, gain_of(t_star)));
  }
  return best;
}

// Location of the symmetric-payoff maximum along the family-A circle
// (0, 0, cos t, sin t). The payoff is smooth in t, so a dense scan plus one
// golden-section polish resolves the argmax far below the bisection needs.
inline double family_payoff_argmax(const GameDefinition& game, double t_floor = 0.02,
                                   int nt = 600) {
  auto pay_of = [&](double t) {
    const Vec4 v{0, 0, std::cos(t), std::sin(t)};
    std::vector<ComplexMatrix> others(static_cast<size_t>(game.players() - 1),
                                      unitary_from_su2(v));
    const SymmetricMatrix4 m = quadratic_form(game, 0, others);
    return m.quadratic(v);
  };
  const double lo = t_floor, hi = kPi - t_floor;
  double arg = lo, val = -1e300;
  for (int k = 0; k < nt; ++k) {
    const double t = lo + (hi - lo) * k / (nt - 1);
    const double p = pay_of(t);
    if (p > val) {
      val = p;
      arg = t;
    }
  }
  const double step = (hi - lo) / (nt - 1);
  return golden_max(pay_of, std::max(lo, arg - step), std::min(hi, arg + step), 1e-12);
}

}  // namespace detail

// Named predicate: some family-template profile is an exact symmetric NE.
inline ThresholdPredicate pred_family_ne(const GameDefinition& game, double eps = 1e-9) {
  return {"a family-template symmetric NE exists",
          [game, eps](double gamma) {
            return detail::family_min_gain(game.with_gamma(gamma)) <= eps;
          }};
}

// Named predicate: the family-A payoff argmax leans toward its first
// parameter (a >= b). The lean flips exactly once as gamma grows, at the
// distinguished point where the best family payoff bottoms out, so the flip
// is bisectable even where the family has stopped being a Nash point.
inline ThresholdPredicate pred_family_balance(const GameDefinition& game) {
  return {"family payoff argmax satisfies a >= b",
          [game](double gamma) {
            const double t = detail::family_payoff_argmax(game.with_gamma(gamma));
            return std::abs(std::cos(t)) >= std::abs(std::sin(t));
          }};
}

// Named predicate: the configured symmetric search finds at least one NE.
inline ThresholdPredicate pred_symmetric_ne_exists(const GameDefinition& game, StrategySpace space,
                                                   const SearchConfig& cfg) {
  return {"a symmetric pure NE is found by the search protocol",
          [game, space, cfg](double gamma) {
            return !search_symmetric_ne(game.with_gamma(gamma), space, cfg).equilibria.empty();
          }};
}

struct ThresholdBatteryEntry {
  std::string name;
  ThresholdReport report;
};

// Canonical two-player battery over the dilemma defaults: where the
// classical defect pair stops being an NE of the diagonal two-parameter
// space, where QxQ starts being one, and where the symmetric su2 equilibria
// disappear.
inline std::vector<ThresholdBatteryEntry> two_player_thresholds(const GameDefinition& game,
                                                                double tol = 1e-7) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ThresholdBatteryEntry> out;
  const std::vector<StrategyPoint> dd(2, StrategyPoint::diag(kPi, 0.0));
  out.push_back({"classical-boundary",
                 find_threshold(pred_profile_ne(game, dd, 1e-9), 0.0, kPi / 2, tol)});
  const std::vector<StrategyPoint> qq(2, StrategyPoint::diag(0.0, kPi / 2));
  out.push_back(
      {"quantum-onset", find_threshold(pred_profile_ne(game, qq, 1e-9), 0.0, kPi / 2, tol)});
  const std::vector<StrategyPoint> mix(2, StrategyPoint::su2_point({0, r, r, 0}));
  out.push_back(
      {"su2-boundary", find_threshold(pred_profile_ne(game, mix, 1e-9), 0.0, kPi / 2, tol)});
  return out;
}

// Canonical three-player battery: family onset and detach (the same
// existence predicate bisected on either side of the family window), the
// axis-equilibrium boundary, and the family balance crossover. The range
// split at 0.645 separates the two switches of the existence predicate.
inline std::vector<ThresholdBatteryEntry> three_player_thresholds(const GameDefinition& game,
                                                                  double tol = 1e-7) {
  std::vector<ThresholdBatteryEntry> out;
  out.push_back(
      {"family-onset", find_threshold(pred_family_ne(game, 1e-10), 0.35, 0.645, tol)});
  const std::vector<StrategyPoint> axis(3, StrategyPoint::su2_point({0, 0, 1, 0}));
  out.push_back(
      {"axis-boundary", find_threshold(pred_profile_ne(game, axis, 1e-9), 0.0, 0.75, tol)});
  out.push_back(
      {"family-detach", find_threshold(pred_family_ne(game, 1e-10), 0.645, 0.78, tol)});
  out.push_back({"family-balance", find_threshold(pred_family_balance(game), 0.65, 0.9, tol)});
  return out;
}

}  // namespace qgame

#endif  // QGAME_EQUILIBRIUM_HPP_
