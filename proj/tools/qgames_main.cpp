#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qgames/scenarios.hpp"

namespace {

void emit(const qgames::RunReport& report, const std::string& out_path) {
  const std::string text = report.payload.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum 2x2 games, braid gates and SUSY partner spectra"};
  app.require_subcommand(1);

  std::string out_path;
  double tol = 1e-10;
  std::uint64_t seed = 17;
  app.add_option("--out", out_path, "write the JSON report here (default stdout)");
  app.add_option("--tol", tol, "residual tolerance for pass/fail gating");
  app.add_option("--seed", seed, "seed for randomized property sampling");

  // pennyflip
  auto* pennyflip = app.add_subcommand("pennyflip", "quantized penny flip");
  pennyflip->fallthrough();
  double flip_prob = 0.0;
  pennyflip->add_option("--p", flip_prob, "Alice's flip probability")
      ->check(CLI::Range(0.0, 1.0));

  // classical
  auto* classical =
      app.add_subcommand("classical", "classical 2x2 game analysis");
  classical->fallthrough();
  std::string classical_path;
  classical->add_option("file", classical_path, "game definition JSON")
      ->required();

  // qgame
  auto* qgame = app.add_subcommand("qgame", "quantized game");
  qgame->fallthrough();
  std::string qgame_path, subaction = "payoff";
  double gamma1 = 0.0, gamma2 = 0.0;
  double theta_a = 0.0, phi_a = 0.0, theta_b = 0.0, phi_b = 0.0;
  int grid_n = 16, gamma_grid = 8;
  double epsilon = 1e-6;
  std::string csv_path;
  qgame->add_option("file", qgame_path, "game definition JSON")->required();
  qgame->add_option("action", subaction, "payoff | nash | sweep")
      ->check(CLI::IsMember({"payoff", "nash", "sweep"}));
  qgame->add_option("--gamma1", gamma1, "correlation angle gamma1")
      ->check(CLI::Range(0.0, 6.2831853071795862));
  qgame->add_option("--gamma2", gamma2, "correlation angle gamma2")
      ->check(CLI::Range(0.0, 6.2831853071795862));
  qgame->add_option("--theta-a", theta_a, "Alice theta (payoff action)");
  qgame->add_option("--phi-a", phi_a, "Alice phi");
  qgame->add_option("--theta-b", theta_b, "Bob theta");
  qgame->add_option("--phi-b", phi_b, "Bob phi");
  qgame->add_option("--grid", grid_n, "strategy grid resolution (>= 8)");
  qgame->add_option("--gamma-grid", gamma_grid, "gamma grid resolution (sweep)");
  qgame->add_option("--epsilon", epsilon, "equilibrium tolerance");
  qgame->add_option("--csv", csv_path, "sweep CSV output path");

  // braid verify
  auto* braid = app.add_subcommand("braid", "Yang-Baxter machinery");
  braid->fallthrough();
  auto* braid_verify_cmd =
      braid->add_subcommand("verify", "run the verification suite");
  braid_verify_cmd->fallthrough();
  bool strict_paper = false;
  braid_verify_cmd->add_flag("--strict-paper", strict_paper,
                             "audit the literal printed matrices");
  braid->require_subcommand(1);

  // ssqm spectrum
  auto* ssqm = app.add_subcommand("ssqm", "SUSY quantum mechanics");
  ssqm->fallthrough();
  auto* ssqm_spectrum =
      ssqm->add_subcommand("spectrum", "partner spectra and superalgebra");
  ssqm_spectrum->fallthrough();
  qgames::SsqmOptions ssqm_opt;
  ssqm_spectrum->add_option("--potential", ssqm_opt.potential,
                            "zero | linear | tanh | poly:c0,c1,...");
  ssqm_spectrum->add_option("--xmin", ssqm_opt.x_min, "left endpoint");
  ssqm_spectrum->add_option("--xmax", ssqm_opt.x_max, "right endpoint");
  ssqm_spectrum->add_option("--n", ssqm_opt.n, "interior grid points");
  ssqm_spectrum->add_option("--levels", ssqm_opt.levels, "eigenvalues per sector");
  ssqm->require_subcommand(1);

  // entangle
  auto* entangle = app.add_subcommand("entangle", "two-qubit state analysis");
  entangle->fallthrough();
  std::vector<double> amps;
  entangle
      ->add_option("--amps", amps,
                   "8 reals: re/im amplitude pairs for |00>,|01>,|10>,|11>")
      ->expected(8)
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    qgames::RunReport report;
    if (*pennyflip) {
      report = qgames::run_pennyflip(flip_prob, tol);
    } else if (*classical) {
      report = qgames::run_classical(qgames::load_game_file(classical_path));
    } else if (*qgame) {
      const qgames::PayoffBimatrix g = qgames::load_game_file(qgame_path);
      const qgames::Correlation c{gamma1, gamma2};
      if (subaction == "payoff") {
        report = qgames::run_qgame_payoff(
            g, c, qgames::QubitStrategy{theta_a, phi_a},
            qgames::QubitStrategy{theta_b, phi_b}, tol, seed);
      } else if (subaction == "nash") {
        report = qgames::run_qgame_nash(g, c, grid_n, epsilon, tol, seed);
      } else {
        qgames::SweepResult sweep = qgames::run_qgame_sweep(
            g, gamma_grid, grid_n, epsilon, tol, seed);
        if (csv_path.empty()) {
          sweep.report.payload["results"]["csv"] = sweep.csv;
        } else {
          std::ofstream csv(csv_path);
          if (!csv)
            throw std::runtime_error("cannot open CSV output " + csv_path);
          csv << sweep.csv;
          sweep.report.payload["results"]["csv_path"] = csv_path;
        }
        report = sweep.report;
      }
    } else if (*braid) {
      report = qgames::run_braid_verify(strict_paper, tol == 1e-10 ? 1e-12 : tol);
    } else if (*ssqm) {
      ssqm_opt.tol = tol;
      report = qgames::run_ssqm(ssqm_opt);
    } else if (*entangle) {
      std::array<double, 8> a{};
      std::copy(amps.begin(), amps.end(), a.begin());
      report = qgames::run_entangle(a, tol);
    }
    emit(report, out_path);
    return report.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
