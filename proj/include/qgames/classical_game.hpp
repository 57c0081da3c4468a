#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgames {

/// Classical 2x2 bimatrix game: a[i][j] is Alice's payoff, b[i][j] Bob's,
/// for joint pure strategy (i, j).
struct PayoffBimatrix {
  std::array<std::array<double, 2>, 2> a{};
  std::array<std::array<double, 2>, 2> b{};
  std::string name;

  static PayoffBimatrix from(std::array<std::array<double, 2>, 2> a,
                             std::array<std::array<double, 2>, 2> b,
                             std::string name = "") {
    for (const auto& m : {a, b})
      for (const auto& row : m)
        for (double x : row)
          if (!std::isfinite(x))
            throw std::invalid_argument("PayoffBimatrix: non-finite payoff");
    return PayoffBimatrix{a, b, std::move(name)};
  }

  static PayoffBimatrix prisoners_dilemma() {
    // canonical cooperate/defect payoffs: defecting yields five instead of
    // three against a cooperator, one instead of zero against a defector
    return from({{{3.0, 0.0}, {5.0, 1.0}}}, {{{3.0, 5.0}, {0.0, 1.0}}},
                "prisoners_dilemma");
  }

  static PayoffBimatrix battle_of_sexes() {
    return from({{{2.0, 0.0}, {0.0, 1.0}}}, {{{1.0, 0.0}, {0.0, 2.0}}},
                "battle_of_sexes");
  }

  static PayoffBimatrix zero_game() {
    return from({{{0.0, 0.0}, {0.0, 0.0}}}, {{{0.0, 0.0}, {0.0, 0.0}}},
                "zero_game");
  }
};

struct MixedProfile {
  std::array<double, 2> x{1.0, 0.0};  // Alice's distribution over {0, 1}
  std::array<double, 2> y{1.0, 0.0};  // Bob's

  static MixedProfile pure(int i, int j) {
    MixedProfile p;
    p.x = {i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0};
    p.y = {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0};
    return p;
  }

  bool valid() const {
    auto ok = [](const std::array<double, 2>& p) {
      return p[0] >= 0.0 && p[1] >= 0.0 && std::abs(p[0] + p[1] - 1.0) <= 1e-12;
    };
    return ok(x) && ok(y);
  }
};

struct Dominance {
  int strategy = 0;
  bool strict = false;
};

struct GameClassification {
  bool s_symmetric = false;  // B_ji == A_ij
  bool t_symmetric = false;  // B_{1-j,1-i} == A_ij
  std::optional<Dominance> dominant_alice;
  std::optional<Dominance> dominant_bob;
};

namespace detail {

/// Weak dominance over the two-strategy row/column player; smallest index
/// wins ties among weak dominators, strictness flagged separately.
inline std::optional<Dominance> dominant_strategy(
    const std::array<std::array<double, 2>, 2>& payoff, bool row_player) {
  auto value = [&](int own, int other) {
    return row_player ? payoff[own][other] : payoff[other][own];
  };
  for (int cand : {0, 1}) {
    const int rival = 1 - cand;
    bool weak = true, strict = true;
    for (int other : {0, 1}) {
      if (value(cand, other) < value(rival, other)) weak = false;
      if (value(cand, other) <= value(rival, other)) strict = false;
    }
    if (weak) return Dominance{cand, strict};
  }
  return std::nullopt;
}

}  // namespace detail

inline GameClassification classify(const PayoffBimatrix& g) {
  GameClassification out;
  out.s_symmetric = true;
  out.t_symmetric = true;
  for (int i : {0, 1})
    for (int j : {0, 1}) {
      if (g.b[j][i] != g.a[i][j]) out.s_symmetric = false;
      if (g.b[1 - j][1 - i] != g.a[i][j]) out.t_symmetric = false;
    }
  out.dominant_alice = detail::dominant_strategy(g.a, /*row_player=*/true);
  out.dominant_bob = detail::dominant_strategy(g.b, /*row_player=*/false);
  return out;
}

inline std::pair<double, double> expected_payoffs(const PayoffBimatrix& g,
                                                  const MixedProfile& p) {
  if (!p.valid())
    throw std::invalid_argument("expected_payoffs: invalid mixed profile");
  double pa = 0.0, pb = 0.0;
  for (int i : {0, 1})
    for (int j : {0, 1}) {
      pa += p.x[i] * g.a[i][j] * p.y[j];
      pb += p.x[i] * g.b[i][j] * p.y[j];
    }
  return {pa, pb};
}

/// All pure Nash equilibria, lexicographically ordered.
inline std::vector<std::pair<int, int>> pure_nash(const PayoffBimatrix& g) {
  std::vector<std::pair<int, int>> out;
  for (int i : {0, 1})
    for (int j : {0, 1}) {
      const bool alice_ok = g.a[i][j] >= g.a[1 - i][j];
      const bool bob_ok = g.b[i][j] >= g.b[i][1 - j];
      if (alice_ok && bob_ok) out.emplace_back(i, j);
    }
  return out;
}

/// Pure profiles maximizing the payoff sum, ties all returned.
inline std::vector<std::pair<int, int>> pareto_optimal(const PayoffBimatrix& g) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i : {0, 1})
    for (int j : {0, 1}) best = std::max(best, g.a[i][j] + g.b[i][j]);
  std::vector<std::pair<int, int>> out;
  for (int i : {0, 1})
    for (int j : {0, 1})
      if (g.a[i][j] + g.b[i][j] == best) out.emplace_back(i, j);
  return out;
}

/// Best pure-reply improvement available to either player at profile p;
/// zero (up to rounding) exactly at a Nash equilibrium.
inline double best_response_improvement(const PayoffBimatrix& g,
                                        const MixedProfile& p) {
  const auto [pa, pb] = expected_payoffs(g, p);
  double best_a = pa, best_b = pb;
  for (int i : {0, 1}) {
    MixedProfile q = p;
    q.x = {i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0};
    best_a = std::max(best_a, expected_payoffs(g, q).first);
  }
  for (int j : {0, 1}) {
    MixedProfile q = p;
    q.y = {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0};
    best_b = std::max(best_b, expected_payoffs(g, q).second);
  }
  return std::max(best_a - pa, best_b - pb);
}

struct MixedNashResult {
  std::vector<MixedProfile> profiles;  // pure equilibria first, then interior
  bool degenerate = false;  // an indifference denominator vanished
};

/// Pure equilibria plus the interior indifference candidate when its
/// denominators are nonzero and the probabilities land in [0, 1]. Every
/// returned profile is re-verified by a best-response check.
inline MixedNashResult mixed_nash_2x2(const PayoffBimatrix& g) {
  MixedNashResult out;
  for (const auto& [i, j] : pure_nash(g))
    out.profiles.push_back(MixedProfile::pure(i, j));

  const double denom_x = g.b[0][0] - g.b[0][1] - g.b[1][0] + g.b[1][1];
  const double denom_y = g.a[0][0] - g.a[0][1] - g.a[1][0] + g.a[1][1];
  if (denom_x == 0.0 || denom_y == 0.0) {
    out.degenerate = true;
  } else {
    const double x0 = (g.b[1][1] - g.b[1][0]) / denom_x;
    const double y0 = (g.a[1][1] - g.a[0][1]) / denom_y;
    if (x0 >= 0.0 && x0 <= 1.0 && y0 >= 0.0 && y0 <= 1.0) {
      MixedProfile interior;
      interior.x = {x0, 1.0 - x0};
      interior.y = {y0, 1.0 - y0};
      bool duplicate = false;
      for (const auto& p : out.profiles)
        if (std::abs(p.x[0] - x0) <= 1e-12 && std::abs(p.y[0] - y0) <= 1e-12)
          duplicate = true;
      if (!duplicate) out.profiles.push_back(interior);
    }
  }

  const double scale = [&] {
    double s = 1.0;
    for (int i : {0, 1})
      for (int j : {0, 1})
        s = std::max({s, std::abs(g.a[i][j]), std::abs(g.b[i][j])});
    return s;
  }();
  std::erase_if(out.profiles, [&](const MixedProfile& p) {
    return best_response_improvement(g, p) > 1e-12 * scale;
  });
  return out;
}

}  // namespace qgames
