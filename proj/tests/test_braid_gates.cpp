#include <catch2/catch_amalgamated.hpp>

#include "qgames/braid_gates.hpp"
#include "qgames/entanglement.hpp"
#include "qgames/random.hpp"

using namespace qgames;

TEST_CASE("printed R is singular, the last-row correction is unique", "[braid]") {
  const BellRReport report = bell_r_report();
  REQUIRE_FALSE(report.printed_unitarity.pass);
  REQUIRE(std::abs(report.printed_determinant) <= 1e-15);

  // among the eight single-entry sign flips exactly one lies in the last row
  // and passes both unitarity and the braid relation; a mirror flip in the
  // first row also passes (it yields the inverse solution)
  REQUIRE(report.variants.size() == 8);
  REQUIRE(report.passing_last_row_variants == 1);
  std::size_t global_passes = 0;
  for (const SignVariant& v : report.variants)
    if (v.pass) ++global_passes;
  REQUIRE(global_passes == 2);

  REQUIRE(report.corrected.unitarity.pass);
  REQUIRE(report.corrected.label == "bell_r_corrected");
  REQUIRE(verdict(bell_r(), MatrixProperty::unitary, 1e-15).pass);
  REQUIRE(report.corrected_braid_residual <= 1e-12);
}

TEST_CASE("braid relation residuals", "[braid]") {
  REQUIRE(check_braid(ComplexMatrix::identity(4)) == 0.0);
  REQUIRE(check_braid(bell_r()) <= 1e-12);
  REQUIRE(check_braid(cnot_matrix()) > 0.1);
}

TEST_CASE("CNOT action on the basis", "[braid]") {
  const ComplexMatrix c = cnot_matrix();
  const std::vector<Complex> e10{0, 0, 1, 0}, e11{0, 0, 0, 1};
  REQUIRE(mat_vec(c, e10) == e11);
  REQUIRE(mat_vec(c, e11) == e10);
}

TEST_CASE("CNOT decomposition M R N", "[braid]") {
  const CnotDecompositionReport report = cnot_decomposition();
  REQUIRE(report.pass);
  REQUIRE(report.residual <= 1e-10);
  // exact identity: the phase anchor works out to +1
  REQUIRE(std::abs(report.phase - Complex{1.0, 0.0}) <= 1e-12);
  REQUIRE(report.row_signs == std::array<int, 4>{1, 1, 1, 1});
  REQUIRE(report.tried.size() == 16);
  REQUIRE(verdict(report.m, MatrixProperty::unitary, 1e-12).pass);
  REQUIRE(verdict(report.n, MatrixProperty::unitary, 1e-12).pass);
  // the printed N2 needed its normalization restored
  REQUIRE(report.corrections.size() == 1);
  REQUIRE(report.corrections[0].find("N2") != std::string::npos);
}

TEST_CASE("eight-vertex BGR matrix", "[braid]") {
  SampleSource src(112);
  for (int sign : {1, -1}) {
    for (int k = 0; k < 10; ++k) {
      const double phi = src.uniform(0.0, 2.0 * std::numbers::pi);
      const auto eigs = bgr_eigenvalues(sign, phi);
      // doubly degenerate pair 1 +/- i
      REQUIRE(std::abs(eigs[0] - Complex{1.0, -1.0}) <= 1e-12);
      REQUIRE(std::abs(eigs[1] - Complex{1.0, -1.0}) <= 1e-12);
      REQUIRE(std::abs(eigs[2] - Complex{1.0, 1.0}) <= 1e-12);
      REQUIRE(std::abs(eigs[3] - Complex{1.0, 1.0}) <= 1e-12);

      const ComplexMatrix bn = bgr_b(sign, phi, true);
      REQUIRE(verdict(bn, MatrixProperty::unitary, 1e-12).pass);
      REQUIRE(check_braid(bn) <= 1e-12);

      // normalized eigenvalues are the e^{+/- i pi/4} phased pair
      const Complex lam = Complex{1.0, 1.0} / std::sqrt(2.0);
      REQUIRE(std::abs(lam - std::polar(1.0, std::numbers::pi / 4.0)) <= 1e-15);
    }
    // the printed (3,4) entry breaks unitarity of b/sqrt(2)
    const ComplexMatrix printed =
        Complex{1.0 / std::sqrt(2.0), 0.0} * bgr_b_printed(sign, 0.9);
    REQUIRE_FALSE(verdict(printed, MatrixProperty::unitary, 1e-10).pass);
  }
}

TEST_CASE("Yang-Baxterization", "[braid]") {
  const double phi = 1.3;
  for (int sign : {1, -1}) {
    // x = 1 kills every (1 - x) entry: twice the identity
    REQUIRE(frobenius_norm(yang_baxterize(sign, phi, 1.0) -
                           Complex{2.0, 0.0} * ComplexMatrix::identity(4)) <=
            1e-15);
    // x = 0 reduces to the unnormalized BGR matrix
    REQUIRE(frobenius_norm(yang_baxterize(sign, phi, 0.0) -
                           bgr_b(sign, phi, false)) == 0.0);
    REQUIRE(yang_baxterize_construction_residual(sign, phi, 0.63) <= 1e-12);
  }
}

TEST_CASE("spectral QYBE on the parameter grid", "[braid]") {
  for (int sign : {1, -1})
    for (double phi : {0.0, 1.1, std::numbers::pi / 3.0}) {
      double worst = 0.0;
      for (int ix = 0; ix < 5; ++ix)
        for (int iy = 0; iy < 5; ++iy) {
          const double x = 0.2 + 1.8 * ix / 4.0;
          const double y = 0.2 + 1.8 * iy / 4.0;
          worst = std::max(worst, spectral_qybe_residual(sign, phi, x, y));
        }
      REQUIRE(worst <= 1e-10);
    }
}

TEST_CASE("r_theta family", "[braid]") {
  const double phi = 0.8;
  for (int sign : {1, -1}) {
    REQUIRE(frobenius_norm(r_theta(sign, phi, 0.0) - bgr_b(sign, phi, true)) <=
            1e-15);
    // theta = pi/4 is the x = 1 image: the identity
    REQUIRE(frobenius_norm(r_theta(sign, phi, std::numbers::pi / 4.0) -
                           ComplexMatrix::identity(4)) <= 1e-14);
    for (double theta : {0.1, 0.5, 1.0, 1.5}) {
      REQUIRE(verdict(r_theta(sign, phi, theta), MatrixProperty::unitary, 1e-12)
                  .pass);
      REQUIRE(r_theta_proportionality_residual(sign, phi, theta) <= 1e-12);
    }
  }
  REQUIRE_THROWS_AS(r_theta(1, 0.0, -0.1), std::invalid_argument);
}

TEST_CASE("braid Hamiltonian", "[braid]") {
  SampleSource src(113);
  for (int sign : {1, -1}) {
    for (double phi : {0.0, std::numbers::pi / 3.0, std::numbers::pi}) {
      const HamiltonianReport h = hamiltonian_report(sign, phi);
      REQUIRE(h.hermitian_residual <= 1e-15);
      REQUIRE(h.eigenvalues[0] == Catch::Approx(-0.5).margin(1e-12));
      REQUIRE(h.eigenvalues[1] == Catch::Approx(-0.5).margin(1e-12));
      REQUIRE(h.eigenvalues[2] == Catch::Approx(0.5).margin(1e-12));
      REQUIRE(h.eigenvalues[3] == Catch::Approx(0.5).margin(1e-12));
    }
    for (int k = 0; k < 10; ++k) {
      const double phi = src.uniform(0.0, 2.0 * std::numbers::pi);
      REQUIRE(hamiltonian_report(sign, phi).square_relation_residual <= 1e-12);
    }
  }
}

TEST_CASE("evolution matches the spectral family", "[braid]") {
  SampleSource src(114);
  for (int sign : {1, -1})
    for (int k = 0; k < 8; ++k) {
      const double t =
          src.uniform(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
      const EvolutionMatch match = match_evolution_to_r_theta(sign, 0.9, t);
      REQUIRE(match.pass);
      REQUIRE(match.residual <= 1e-10);
    }

  // at t = pi/2 the evolution takes |00> to a maximally entangled state
  const ComplexMatrix u = expm_series(
      Complex{0.0, -std::numbers::pi / 2.0} * hamiltonian_h(-1, 0.7));
  const auto col = mat_vec(u, {1.0, 0.0, 0.0, 0.0});
  const TwoQubitState state{{col[0], col[1], col[2], col[3]}};
  REQUIRE(concurrence(state) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("verification suite", "[braid]") {
  const BraidVerificationReport report = braid_verify(false);
  REQUIRE(report.pass);
  REQUIRE(report.corrections.size() == 3);
  bool has_r = false, has_n2 = false, has_b = false;
  for (const std::string& c : report.corrections) {
    if (c.find("R:") != std::string::npos) has_r = true;
    if (c.find("N2") != std::string::npos) has_n2 = true;
    if (c.find("b+-") != std::string::npos) has_b = true;
  }
  REQUIRE(has_r);
  REQUIRE(has_n2);
  REQUIRE(has_b);

  const BraidVerificationReport strict = braid_verify(true);
  REQUIRE_FALSE(strict.pass);
  bool printed_r_fails = false;
  for (const CheckResult& c : strict.checks)
    if (c.name == "printed_r_unitarity" && !c.pass) printed_r_fails = true;
  REQUIRE(printed_r_fails);
}
