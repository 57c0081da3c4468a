#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "qgames/scenarios.hpp"

using namespace qgames;

namespace {

std::string fixture(const std::string& name) {
  return std::string(QGAMES_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("pennyflip always favors the quantum player", "[scenarios]") {
  for (double p : {0.0, 1.0, 0.37}) {
    const RunReport r = run_pennyflip(p, 1e-12);
    REQUIRE(r.pass);
    REQUIRE(std::abs(r.payload["results"]["p_bob_wins"].get<double>() - 1.0) <=
            1e-12);
    REQUIRE(r.payload["results"]["classical_baseline"].get<double>() == 0.5);
  }
  REQUIRE_THROWS_AS(run_pennyflip(1.5), std::invalid_argument);
}

TEST_CASE("game definition files", "[scenarios]") {
  const PayoffBimatrix pd = load_game_file(fixture("pd.json"));
  REQUIRE(pd.a[1][0] == 5.0);
  REQUIRE(pd.b[0][1] == 5.0);  // derived S-symmetric: B = A^T
  const GameClassification pd_class = classify(pd);
  REQUIRE(pd_class.s_symmetric);

  const PayoffBimatrix bos = load_game_file(fixture("bos.json"));
  REQUIRE(classify(bos).t_symmetric);
  REQUIRE(bos.b[0][0] == 1.0);
  REQUIRE(bos.b[1][1] == 2.0);

  // schema violations carry field context
  using nlohmann::json;
  REQUIRE_THROWS_WITH(
      parse_game_definition(json::parse(R"({"name":"x","A":[[1,2],[3,4]]})")),
      Catch::Matchers::ContainsSubstring("symmetry_hint"));
  REQUIRE_THROWS_WITH(
      parse_game_definition(json::parse(
          R"({"name":"x","A":[[1,2],[3,4]],"B":[[1,2],[3,4]],"symmetry_hint":"S"})")),
      Catch::Matchers::ContainsSubstring("exactly one"));
  REQUIRE_THROWS_WITH(
      parse_game_definition(
          json::parse(R"({"name":"x","A":[[1,2],[3]],"symmetry_hint":"S"})")),
      Catch::Matchers::ContainsSubstring("row 1"));
  REQUIRE_THROWS_WITH(
      parse_game_definition(json::parse(
          R"({"name":"x","A":[[1,2],[3,4]],"symmetry_hint":"Q"})")),
      Catch::Matchers::ContainsSubstring("symmetry_hint"));
  REQUIRE_THROWS_AS(load_game_file(fixture("missing.json")),
                    std::invalid_argument);
}

TEST_CASE("classical command on the bundled fixtures", "[scenarios]") {
  const RunReport pd = run_classical(load_game_file(fixture("pd.json")));
  REQUIRE(pd.pass);
  REQUIRE(pd.payload["results"]["pure_nash"] == Json::parse("[[1,1]]"));
  REQUIRE(pd.payload["results"]["pareto_optimal"] == Json::parse("[[0,0]]"));
  REQUIRE(pd.payload["results"]["dominant_alice"]["strategy"] == 1);

  const RunReport bos = run_classical(load_game_file(fixture("bos.json")));
  REQUIRE(bos.payload["results"]["pure_nash"].size() == 2);
  REQUIRE(bos.payload["results"]["mixed_nash"].size() == 3);

  const RunReport zero = run_classical(load_game_file(fixture("zero.json")));
  REQUIRE(zero.payload["results"]["saturated"].get<bool>());
}

TEST_CASE("qgame payoff and nash commands", "[scenarios]") {
  const PayoffBimatrix pd = load_game_file(fixture("pd.json"));
  const RunReport payoff = run_qgame_payoff(pd, {0.0, 0.0}, {0.0, 0.0},
                                            {0.0, 0.0}, 1e-10, 17);
  REQUIRE(payoff.pass);
  REQUIRE(payoff.payload["results"]["payoff_alice"].get<double>() ==
          Catch::Approx(3.0).margin(1e-12));
  REQUIRE(payoff.payload["results"]["payoff_bob"].get<double>() ==
          Catch::Approx(3.0).margin(1e-12));

  const RunReport nash = run_qgame_nash(pd, {0.0, 0.0}, 16, 1e-6, 1e-10, 17);
  REQUIRE(nash.pass);
  REQUIRE(nash.payload["results"]["ne_count"].get<int>() == 1);
  const auto cluster = nash.payload["results"]["clusters"][0];
  REQUIRE(cluster["alice"]["theta"].get<double>() ==
          Catch::Approx(std::numbers::pi).margin(1e-9));
  REQUIRE(cluster["payoffs"][0].get<double>() ==
          Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("qgame sweep command", "[scenarios]") {
  const PayoffBimatrix bos = load_game_file(fixture("bos.json"));
  const SweepResult sweep = run_qgame_sweep(bos, 16, 8, 1e-6, 1e-10, 17);
  REQUIRE(sweep.report.pass);
  REQUIRE(sweep.report.payload["results"]["max_symmetric_t_residual"]
              .get<double>() <= 1e-10);
  REQUIRE(sweep.csv.rfind("gamma1,gamma2,ne_count,theta_a,phi_a,theta_b,"
                          "phi_b,payoff_a,payoff_b,s_residual,t_residual\n",
                          0) == 0);
  // every row of the T-symmetric sweep keeps the twisted relation tight
  std::istringstream lines(sweep.csv);
  std::string line;
  std::getline(lines, line);  // header
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    const std::size_t last_comma = line.rfind(',');
    REQUIRE(std::stod(line.substr(last_comma + 1)) <= 1e-10);
    ++rows;
  }
  REQUIRE(rows == sweep.report.payload["results"]["rows"].get<std::size_t>());

  // deterministic: repeated runs give byte-identical CSV and payload
  const SweepResult again = run_qgame_sweep(bos, 16, 8, 1e-6, 1e-10, 17);
  REQUIRE(sweep.csv == again.csv);
  REQUIRE(sweep.report.payload.dump() == again.report.payload.dump());
}

TEST_CASE("braid verify command", "[scenarios]") {
  const RunReport normal = run_braid_verify(false);
  REQUIRE(normal.pass);
  REQUIRE(normal.payload["corrections"].size() == 3);

  const RunReport strict = run_braid_verify(true);
  REQUIRE_FALSE(strict.pass);
  bool saw_fail = false;
  for (const auto& check : strict.payload["results"]["checks"])
    if (check["name"] == "printed_r_unitarity" && !check["pass"].get<bool>())
      saw_fail = true;
  REQUIRE(saw_fail);
}

TEST_CASE("ssqm command", "[scenarios]") {
  SsqmOptions opt;
  opt.potential = "linear";
  opt.n = 600;
  opt.levels = 4;
  const RunReport r = run_ssqm(opt);
  REQUIRE(r.pass);
  REQUIRE(r.payload["results"]["paired"].size() >= 3);
  REQUIRE(r.payload["results"]["sqrt_not"]["pass"].get<bool>());

  SsqmOptions zero;
  zero.potential = "zero";
  zero.n = 300;
  const RunReport rz = run_ssqm(zero);
  REQUIRE(rz.pass);
  REQUIRE(rz.payload["results"]["zero_modes_h0"].get<int>() == 0);

  // poly:0,1 is the linear superpotential
  SsqmOptions poly;
  poly.potential = "poly:0,1";
  poly.n = 300;
  REQUIRE(run_ssqm(poly).pass);

  REQUIRE_THROWS_AS(parse_potential("cubic"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_potential("poly:"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_potential("poly:1,abc"), std::invalid_argument);
}

TEST_CASE("entangle command", "[scenarios]") {
  const double s = 1.0 / std::sqrt(2.0);
  const RunReport bell = run_entangle({s, 0, 0, 0, 0, 0, s, 0});
  REQUIRE_FALSE(bell.payload["results"]["product"].get<bool>());
  REQUIRE(bell.payload["results"]["concurrence"].get<double>() ==
          Catch::Approx(1.0).margin(1e-12));

  const RunReport z = run_entangle({0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0});
  REQUIRE(z.payload["results"]["product"].get<bool>());
  REQUIRE_FALSE(z.payload["results"]["factorization"].is_null());

  const RunReport e01 = run_entangle({0, 0, 1, 0, 0, 0, 0, 0});
  REQUIRE(e01.payload["results"]["product"].get<bool>());

  REQUIRE_THROWS_AS(run_entangle({0, 0, 0, 0, 0, 0, 0, 0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_entangle({0.9, 0, 0, 0, 0, 0, 0, 0}),
                    std::invalid_argument);

  // mild deviation renormalizes with a warning
  const double off = s * (1.0 + 1e-8);
  const RunReport warned = run_entangle({off, 0, 0, 0, 0, 0, off, 0});
  REQUIRE(warned.payload["results"]["renormalized"].get<bool>());
}
