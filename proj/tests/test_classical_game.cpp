#include <catch2/catch_amalgamated.hpp>

#include "qgames/classical_game.hpp"
#include "qgames/random.hpp"

using namespace qgames;

TEST_CASE("classification of the bundled games", "[classical]") {
  const GameClassification pd = classify(PayoffBimatrix::prisoners_dilemma());
  REQUIRE(pd.s_symmetric);
  REQUIRE_FALSE(pd.t_symmetric);
  REQUIRE(pd.dominant_alice.has_value());
  REQUIRE(pd.dominant_alice->strategy == 1);
  REQUIRE(pd.dominant_alice->strict);
  REQUIRE(pd.dominant_bob.has_value());
  REQUIRE(pd.dominant_bob->strategy == 1);
  REQUIRE(pd.dominant_bob->strict);

  const PayoffBimatrix bos = PayoffBimatrix::battle_of_sexes();
  const GameClassification bc = classify(bos);
  REQUIRE(bc.t_symmetric);
  REQUIRE_FALSE(bc.s_symmetric);
  REQUIRE(bos.a[0][1] == bos.a[1][0]);
  REQUIRE_FALSE(bc.dominant_alice.has_value());
  REQUIRE_FALSE(bc.dominant_bob.has_value());

  const GameClassification zero = classify(PayoffBimatrix::zero_game());
  REQUIRE(zero.s_symmetric);
  REQUIRE(zero.t_symmetric);
  REQUIRE(zero.dominant_alice.has_value());
  REQUIRE_FALSE(zero.dominant_alice->strict);
}

TEST_CASE("expected payoffs", "[classical]") {
  const PayoffBimatrix pd = PayoffBimatrix::prisoners_dilemma();
  const auto dd = expected_payoffs(pd, MixedProfile::pure(1, 1));
  REQUIRE(dd.first == 1.0);
  REQUIRE(dd.second == 1.0);
  const auto cc = expected_payoffs(pd, MixedProfile::pure(0, 0));
  REQUIRE(cc.first == 3.0);
  REQUIRE(cc.second == 3.0);
  MixedProfile half;
  half.x = {0.5, 0.5};
  half.y = {0.5, 0.5};
  const auto hh = expected_payoffs(pd, half);
  REQUIRE(hh.first == Catch::Approx(2.25).margin(1e-15));
  REQUIRE(hh.second == Catch::Approx(2.25).margin(1e-15));
}

TEST_CASE("pure Nash equilibria", "[classical]") {
  const auto pd = pure_nash(PayoffBimatrix::prisoners_dilemma());
  REQUIRE(pd == std::vector<std::pair<int, int>>{{1, 1}});

  const auto bos = pure_nash(PayoffBimatrix::battle_of_sexes());
  REQUIRE(bos == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});

  const auto zero = pure_nash(PayoffBimatrix::zero_game());
  REQUIRE(zero.size() == 4);
}

TEST_CASE("Pareto optimal profiles", "[classical]") {
  const auto pd = pareto_optimal(PayoffBimatrix::prisoners_dilemma());
  REQUIRE(pd == std::vector<std::pair<int, int>>{{0, 0}});
  REQUIRE(pareto_optimal(PayoffBimatrix::zero_game()).size() == 4);
  const auto bos = pareto_optimal(PayoffBimatrix::battle_of_sexes());
  REQUIRE(bos == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("mixed Nash equilibria", "[classical]") {
  // BoS: indifference equations solved by hand give x = (2/3, 1/3),
  // y = (1/3, 2/3) along with the two pure equilibria
  const MixedNashResult bos = mixed_nash_2x2(PayoffBimatrix::battle_of_sexes());
  REQUIRE_FALSE(bos.degenerate);
  REQUIRE(bos.profiles.size() == 3);
  const MixedProfile interior = bos.profiles.back();
  REQUIRE(interior.x[0] == Catch::Approx(2.0 / 3.0).margin(1e-14));
  REQUIRE(interior.y[0] == Catch::Approx(1.0 / 3.0).margin(1e-14));

  // PD: dominance kills the interior candidate
  const MixedNashResult pd = mixed_nash_2x2(PayoffBimatrix::prisoners_dilemma());
  REQUIRE_FALSE(pd.degenerate);
  REQUIRE(pd.profiles.size() == 1);
  REQUIRE(pd.profiles[0].x[1] == 1.0);
  REQUIRE(pd.profiles[0].y[1] == 1.0);

  // matching pennies: unique interior equilibrium at (1/2, 1/2)
  const PayoffBimatrix mp = PayoffBimatrix::from(
      {{{1.0, -1.0}, {-1.0, 1.0}}}, {{{-1.0, 1.0}, {1.0, -1.0}}}, "mp");
  const MixedNashResult m = mixed_nash_2x2(mp);
  REQUIRE(m.profiles.size() == 1);
  REQUIRE(m.profiles[0].x[0] == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(m.profiles[0].y[0] == Catch::Approx(0.5).margin(1e-15));

  // zero game: both denominators vanish
  REQUIRE(mixed_nash_2x2(PayoffBimatrix::zero_game()).degenerate);
}

TEST_CASE("epsilon best-response audit on a 1001-point grid", "[classical]") {
  for (const PayoffBimatrix& g :
       {PayoffBimatrix::prisoners_dilemma(), PayoffBimatrix::battle_of_sexes()}) {
    for (const MixedProfile& p : mixed_nash_2x2(g).profiles) {
      const auto base = expected_payoffs(g, p);
      for (int k = 0; k <= 1000; ++k) {
        const double w = k / 1000.0;
        MixedProfile dx = p;
        dx.x = {w, 1.0 - w};
        REQUIRE(expected_payoffs(g, dx).first <= base.first + 1e-9);
        MixedProfile dy = p;
        dy.y = {w, 1.0 - w};
        REQUIRE(expected_payoffs(g, dy).second <= base.second + 1e-9);
      }
    }
  }
}

TEST_CASE("classification invariant under payoff shifts", "[classical]") {
  SampleSource src(2024);
  for (int trial = 0; trial < 20; ++trial) {
    PayoffBimatrix g;
    for (int i : {0, 1})
      for (int j : {0, 1}) {
        g.a[i][j] = std::floor(src.uniform(-5.0, 5.0));
        g.b[i][j] = std::floor(src.uniform(-5.0, 5.0));
      }
    if (trial % 2 == 0)  // make half of them S-symmetric
      for (int i : {0, 1})
        for (int j : {0, 1}) g.b[j][i] = g.a[i][j];
    const GameClassification before = classify(g);
    const double c = std::floor(src.uniform(-3.0, 3.0));
    PayoffBimatrix shifted = g;
    for (int i : {0, 1})
      for (int j : {0, 1}) {
        shifted.a[i][j] += c;
        shifted.b[i][j] += c;
      }
    const GameClassification after = classify(shifted);
    REQUIRE(before.s_symmetric == after.s_symmetric);
    REQUIRE(before.t_symmetric == after.t_symmetric);
  }
}

TEST_CASE("symmetry mirrors pure equilibria", "[classical]") {
  SampleSource src(99);
  for (int trial = 0; trial < 40; ++trial) {
    PayoffBimatrix g;
    for (int i : {0, 1})
      for (int j : {0, 1}) g.a[i][j] = std::floor(src.uniform(-4.0, 5.0));
    if (trial % 2 == 0) {
      for (int i : {0, 1})
        for (int j : {0, 1}) g.b[j][i] = g.a[i][j];  // S-symmetric
      const auto nash = pure_nash(g);
      for (const auto& [i, j] : nash)
        REQUIRE(std::find(nash.begin(), nash.end(), std::make_pair(j, i)) !=
                nash.end());
    } else {
      for (int k : {0, 1})
        for (int l : {0, 1}) g.b[k][l] = g.a[1 - l][1 - k];  // T-symmetric
      const auto nash = pure_nash(g);
      for (const auto& [i, j] : nash)
        REQUIRE(std::find(nash.begin(), nash.end(),
                          std::make_pair(1 - j, 1 - i)) != nash.end());
    }
  }
}

TEST_CASE("expected payoffs are bilinear", "[classical]") {
  const PayoffBimatrix g = PayoffBimatrix::battle_of_sexes();
  SampleSource src(55);
  for (int trial = 0; trial < 20; ++trial) {
    const double y0 = src.uniform(0.0, 1.0);
    // second difference in x at fixed y must vanish (affine in x)
    auto value = [&](double x0) {
      MixedProfile p;
      p.x = {x0, 1.0 - x0};
      p.y = {y0, 1.0 - y0};
      return expected_payoffs(g, p).first;
    };
    const double second_diff = value(0.2) - 2.0 * value(0.45) + value(0.7);
    REQUIRE(std::abs(second_diff) <= 1e-12);
  }
}
