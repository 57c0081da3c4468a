#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgames/braid_gates.hpp"
#include "qgames/classical_game.hpp"
#include "qgames/entanglement.hpp"
#include "qgames/equilibrium_search.hpp"
#include "qgames/game_io.hpp"
#include "qgames/quantum_game.hpp"
#include "qgames/ssqm.hpp"

namespace qgames {

using Json = nlohmann::ordered_json;

/// Deterministic command result: no timestamps, field order fixed.
struct RunReport {
  Json payload;
  bool pass = true;
};

namespace detail {

inline Json strategy_json(const QubitStrategy& s) {
  return Json{{"theta", s.theta}, {"phi", s.phi}};
}

inline Json bimatrix_json(const PayoffBimatrix& g) {
  return Json{{"name", g.name},
              {"A", {{g.a[0][0], g.a[0][1]}, {g.a[1][0], g.a[1][1]}}},
              {"B", {{g.b[0][0], g.b[0][1]}, {g.b[1][0], g.b[1][1]}}}};
}

inline Json symmetry_json(const SymmetryCheck& c) {
  return Json{{"operator_identity", c.operator_identity},
              {"operator_residual", c.operator_residual},
              {"max_relation_residual", c.max_relation_residual},
              {"samples", c.samples}};
}

}  // namespace detail

/// Penny flip: |0> -> H -> (Alice: identity w.p. 1-p, bit flip w.p. p, as an
/// incoherent mixture) -> H -> measurement. The quantum player wins with
/// certainty for every p; the classical baseline is a fair coin.
inline RunReport run_pennyflip(double alice_flip_prob, double tol = 1e-10) {
  if (!(alice_flip_prob >= 0.0 && alice_flip_prob <= 1.0))
    throw std::invalid_argument("pennyflip: probability outside [0, 1]");
  const ComplexMatrix h = hadamard();
  const ComplexMatrix f = bit_flip();
  const std::vector<Complex> heads{1.0, 0.0};
  const auto branch_identity = mat_vec(h, mat_vec(h, heads));
  const auto branch_flip = mat_vec(h, mat_vec(f, mat_vec(h, heads)));
  const double win_identity = std::norm(branch_identity[0]);
  const double win_flip = std::norm(branch_flip[0]);
  const double p_win = (1.0 - alice_flip_prob) * win_identity +
                       alice_flip_prob * win_flip;
  const double residual = std::abs(p_win - 1.0);

  RunReport out;
  out.pass = residual <= tol;
  out.payload = Json{
      {"command", "pennyflip"},
      {"inputs", Json{{"alice_flip_prob", alice_flip_prob}, {"tol", tol}}},
      {"results", Json{{"p_bob_wins", p_win},
                       {"branch_identity_win", win_identity},
                       {"branch_flip_win", win_flip},
                       {"classical_baseline", 0.5}}},
      {"residuals", Json{{"p_win_vs_one", residual}}},
      {"pass", out.pass}};
  return out;
}

inline RunReport run_classical(const PayoffBimatrix& g) {
  const GameClassification cls = classify(g);
  const auto pure = pure_nash(g);
  const MixedNashResult mixed = mixed_nash_2x2(g);
  const auto pareto = pareto_optimal(g);

  Json pure_json = Json::array();
  for (const auto& [i, j] : pure) pure_json.push_back({i, j});
  Json pareto_json = Json::array();
  for (const auto& [i, j] : pareto) pareto_json.push_back({i, j});
  Json mixed_json = Json::array();
  for (const MixedProfile& p : mixed.profiles) {
    const auto [pa, pb] = expected_payoffs(g, p);
    mixed_json.push_back(Json{{"x", {p.x[0], p.x[1]}},
                              {"y", {p.y[0], p.y[1]}},
                              {"payoffs", {pa, pb}}});
  }
  auto dominance_json = [](const std::optional<Dominance>& d) {
    if (!d) return Json(nullptr);
    return Json{{"strategy", d->strategy}, {"strict", d->strict}};
  };

  RunReport out;
  out.payload = Json{
      {"command", "classical"},
      {"inputs", detail::bimatrix_json(g)},
      {"results",
       Json{{"s_symmetric", cls.s_symmetric},
            {"t_symmetric", cls.t_symmetric},
            {"dominant_alice", dominance_json(cls.dominant_alice)},
            {"dominant_bob", dominance_json(cls.dominant_bob)},
            {"pure_nash", pure_json},
            {"mixed_nash", mixed_json},
            {"mixed_nash_degenerate", mixed.degenerate},
            {"pareto_optimal", pareto_json},
            {"saturated", pure.size() == 4}}},
      {"residuals", Json::object()},
      {"pass", true}};
  return out;
}

inline RunReport run_qgame_payoff(const PayoffBimatrix& g,
                                  const Correlation& c,
                                  const QubitStrategy& alice,
                                  const QubitStrategy& bob, double tol,
                                  std::uint64_t seed) {
  const QuantumGame q = QuantumGame::from_bimatrix(g);
  const auto [pa, pb] = payoffs(q, alice, bob, c);
  const SymmetryCheck s = check_s_symmetry(q, c, 32, seed);
  const SymmetryCheck t = check_t_symmetry(q, c, 32, seed);
  RunReport out;
  const double sym_residual =
      std::max(s.operator_identity ? s.max_relation_residual : 0.0,
               t.operator_identity ? t.max_relation_residual : 0.0);
  out.pass = sym_residual <= tol;
  out.payload = Json{
      {"command", "qgame payoff"},
      {"inputs", Json{{"game", detail::bimatrix_json(g)},
                      {"gamma1", c.gamma1},
                      {"gamma2", c.gamma2},
                      {"alice", detail::strategy_json(alice)},
                      {"bob", detail::strategy_json(bob)},
                      {"tol", tol}}},
      {"results", Json{{"payoff_alice", pa},
                       {"payoff_bob", pb},
                       {"s_symmetry", detail::symmetry_json(s)},
                       {"t_symmetry", detail::symmetry_json(t)}}},
      {"residuals", Json{{"symmetry_relation", sym_residual}}},
      {"pass", out.pass}};
  return out;
}

inline RunReport run_qgame_nash(const PayoffBimatrix& g, const Correlation& c,
                                int grid_n, double epsilon, double tol,
                                std::uint64_t seed) {
  const QuantumGame q = QuantumGame::from_bimatrix(g);
  const EquilibriumReport ne = nash_search(q, c, grid_n, epsilon);
  const SymmetryCheck s = check_s_symmetry(q, c, 32, seed);
  const SymmetryCheck t = check_t_symmetry(q, c, 32, seed);
  Json clusters = Json::array();
  for (std::size_t k = 0; k < ne.profiles.size(); ++k)
    clusters.push_back(Json{{"alice", detail::strategy_json(ne.profiles[k].first)},
                            {"bob", detail::strategy_json(ne.profiles[k].second)},
                            {"payoffs", {ne.payoffs[k].first, ne.payoffs[k].second}}});
  RunReport out;
  const double sym_residual =
      std::max(s.operator_identity ? s.max_relation_residual : 0.0,
               t.operator_identity ? t.max_relation_residual : 0.0);
  out.pass = sym_residual <= tol;
  out.payload = Json{
      {"command", "qgame nash"},
      {"inputs", Json{{"game", detail::bimatrix_json(g)},
                      {"gamma1", c.gamma1},
                      {"gamma2", c.gamma2},
                      {"grid", grid_n},
                      {"epsilon", epsilon},
                      {"tol", tol}}},
      {"results", Json{{"ne_count", ne.profiles.size()},
                       {"clusters", clusters},
                       {"saturated", ne.saturated},
                       {"epsilon_nash_pairs", ne.epsilon_nash_pairs},
                       {"refined", ne.refined},
                       {"s_symmetry", detail::symmetry_json(s)},
                       {"t_symmetry", detail::symmetry_json(t)}}},
      {"residuals", Json{{"symmetry_relation", sym_residual}}},
      {"pass", out.pass}};
  return out;
}

struct SweepResult {
  RunReport report;
  std::string csv;
};

inline SweepResult run_qgame_sweep(const PayoffBimatrix& g, int grid_gamma,
                                   int grid_strategy, double epsilon,
                                   double tol, std::uint64_t seed) {
  const QuantumGame q = QuantumGame::from_bimatrix(g);
  const std::vector<SweepRow> rows =
      gamma_sweep(q, grid_gamma, grid_strategy, epsilon, seed);
  std::ostringstream csv;
  write_sweep_csv(rows, csv);
  double max_s = 0.0, max_t = 0.0;
  const GameClassification cls = classify(g);
  for (const SweepRow& r : rows) {
    if (cls.s_symmetric) max_s = std::max(max_s, r.s_residual);
    if (cls.t_symmetric) max_t = std::max(max_t, r.t_residual);
  }
  SweepResult out;
  out.csv = csv.str();
  out.report.pass = std::max(max_s, max_t) <= tol;
  out.report.payload = Json{
      {"command", "qgame sweep"},
      {"inputs", Json{{"game", detail::bimatrix_json(g)},
                      {"gamma_grid", grid_gamma},
                      {"strategy_grid", grid_strategy},
                      {"epsilon", epsilon},
                      {"tol", tol}}},
      {"results", Json{{"rows", rows.size()},
                       {"max_symmetric_s_residual", max_s},
                       {"max_symmetric_t_residual", max_t}}},
      {"residuals", Json{{"symmetry_relation", std::max(max_s, max_t)}}},
      {"pass", out.report.pass}};
  return out;
}

inline RunReport run_braid_verify(bool strict_paper, double tol = 1e-12) {
  const BraidVerificationReport report = braid_verify(strict_paper, tol);
  Json checks = Json::array();
  for (const CheckResult& c : report.checks)
    checks.push_back(Json{{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  RunReport out;
  out.pass = report.pass;
  out.payload = Json{{"command", strict_paper ? "braid verify --strict-paper"
                                              : "braid verify"},
                     {"inputs", Json{{"strict_paper", strict_paper}, {"tol", tol}}},
                     {"results", Json{{"checks", checks}}},
                     {"corrections", report.corrections},
                     {"pass", out.pass}};
  return out;
}

struct SsqmOptions {
  std::string potential = "linear";  // zero | linear | tanh | poly:c0,c1,...
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 500;
  std::size_t levels = 5;
  double tol = 1e-10;
};

inline Superpotential parse_potential(const std::string& spec) {
  if (spec == "zero") return Superpotential::zero();
  if (spec == "linear") return Superpotential::linear();
  if (spec == "tanh") return Superpotential::tanh_well();
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        coeffs.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("ssqm: bad polynomial coefficient '" +
                                    item + "'");
      }
    }
    if (coeffs.empty())
      throw std::invalid_argument("ssqm: poly potential needs coefficients");
    return Superpotential::polynomial(coeffs);
  }
  throw std::invalid_argument("ssqm: unknown potential '" + spec + "'");
}

inline RunReport run_ssqm(const SsqmOptions& opt) {
  const Superpotential sp = parse_potential(opt.potential);
  const Grid grid(opt.x_min, opt.x_max, opt.n);
  const DiscretizedSSQM d = build(sp, grid);
  const SuperalgebraResiduals algebra = check_superalgebra(d);
  const SpectrumReport spectrum = partner_spectra(d, opt.levels);
  const SqrtNotReport sqrt_not = sqrt_not_check();

  const double algebra_scale = std::max(algebra.h_norm, 1.0);
  const double algebra_worst = std::max(
      {algebra.q_plus_squared, algebra.q_minus_squared,
       algebra.anticommutator_vs_h, algebra.commutator_h_q_plus,
       algebra.commutator_h_q_minus, algebra.grading_anticommutator,
       algebra.grading_h_commutator});
  double worst_gap = 0.0;
  for (const SpectrumPair& p : spectrum.paired)
    worst_gap = std::max(worst_gap, p.gap);

  Json pairs = Json::array();
  for (const SpectrumPair& p : spectrum.paired)
    pairs.push_back(Json{{"lambda0", p.lambda0},
                         {"lambda1", p.lambda1},
                         {"gap", p.gap},
                         {"within_tol", p.within_tol}});

  RunReport out;
  out.pass = algebra_worst <= 1e-12 * algebra_scale && worst_gap <= 1e-8 &&
             sqrt_not.pass;
  out.payload = Json{
      {"command", "ssqm spectrum"},
      {"inputs", Json{{"potential", opt.potential},
                      {"xmin", opt.x_min},
                      {"xmax", opt.x_max},
                      {"n", opt.n},
                      {"levels", opt.levels},
                      {"tol", opt.tol}}},
      {"results",
       Json{{"eigs_h0", spectrum.eigs_h0},
            {"eigs_h1", spectrum.eigs_h1},
            {"paired", pairs},
            {"zero_modes_h0", spectrum.zero_modes_h0},
            {"zero_modes_h1", spectrum.zero_modes_h1},
            {"zero_threshold", spectrum.zero_threshold},
            {"stencil_consistency", d.stencil_consistency},
            {"sqrt_not",
             Json{{"square_vs_x_residual", sqrt_not.square_vs_x_residual},
                  {"unitary_residual", sqrt_not.unitarity.residual},
                  {"action_0_to_1_residual", sqrt_not.action_0_to_1_residual},
                  {"action_1_to_0_residual", sqrt_not.action_1_to_0_residual},
                  {"pass", sqrt_not.pass}}}}},
      {"residuals",
       Json{{"superalgebra_worst", algebra_worst},
            {"superalgebra_scale", algebra_scale},
            {"intertwine_plus", spectrum.intertwine_plus_residual},
            {"intertwine_minus", spectrum.intertwine_minus_residual},
            {"worst_pair_gap", worst_gap}}},
      {"pass", out.pass}};
  return out;
}

inline RunReport run_entangle(const std::array<double, 8>& amps,
                              double tol = 1e-10) {
  std::array<Complex, 4> c{};
  for (int k = 0; k < 4; ++k) c[k] = Complex{amps[2 * k], amps[2 * k + 1]};
  double norm = 0.0;
  for (Complex z : c) norm += std::norm(z);
  norm = std::sqrt(norm);
  if (norm <= 1e-12)
    throw std::invalid_argument("entangle: zero amplitude vector");
  const double deviation = std::abs(norm - 1.0);
  if (deviation > 1e-6)
    throw std::invalid_argument(
        "entangle: amplitudes not normalized (|norm - 1| = " +
        std::to_string(deviation) + ")");
  bool renormalized = false;
  if (deviation > 1e-12) {
    for (Complex& z : c) z /= norm;
    renormalized = true;
  }
  const TwoQubitState state{c};
  const EntanglementVerdict v = is_product(state, tol);
  const Factorization f = factorize(state, 1e-10);

  Json factor_json(nullptr);
  if (f.success) {
    factor_json = Json{
        {"alice", {f.alice[0].real(), f.alice[0].imag(), f.alice[1].real(),
                   f.alice[1].imag()}},
        {"bob", {f.bob[0].real(), f.bob[0].imag(), f.bob[1].real(),
                 f.bob[1].imag()}},
        {"reconstruction_residual", f.reconstruction_residual}};
  }
  RunReport out;
  out.pass = true;
  out.payload = Json{
      {"command", "entangle"},
      {"inputs", Json{{"amplitudes", amps}, {"tol", tol}}},
      {"results", Json{{"product", v.product},
                       {"concurrence", v.concurrence},
                       {"renormalized", renormalized},
                       {"factorization", factor_json},
                       {"equation_residuals", f.equation_residuals}}},
      {"residuals", Json{{"determinant", v.residual}}},
      {"pass", out.pass}};
  return out;
}

}  // namespace qgames
