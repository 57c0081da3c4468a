#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qgames/classical_game.hpp"
#include "qgames/complex_matrix.hpp"
#include "qgames/matrix_exponential.hpp"
#include "qgames/random.hpp"

namespace qgames {

/// A pure qubit strategy as a point of the unit ray space:
/// |alpha> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct QubitStrategy {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  std::array<Complex, 2> amplitudes() const {
    return {Complex{std::cos(theta / 2.0), 0.0},
            std::polar(std::sin(theta / 2.0), phi)};
  }

  /// Bloch vector of the ray; the chart's phi degeneracy at the poles
  /// disappears here.
  std::array<double, 3> bloch() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
};

/// Great-circle angle between the Bloch vectors of two strategies.
inline double strategy_distance(const QubitStrategy& a, const QubitStrategy& b) {
  const auto u = a.bloch(), v = b.bloch();
  double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  dot = std::clamp(dot, -1.0, 1.0);
  return std::acos(dot);
}

/// Correlation parameters of J(gamma) = e^{i gamma1 S / 2} e^{i gamma2 T / 2}.
struct Correlation {
  double gamma1 = 0.0;  // [0, 2 pi)
  double gamma2 = 0.0;
};

/// Swap operator S|i,j> = |j,i>.
inline ComplexMatrix swap_operator() {
  return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                   {0.0, 0.0, 1.0, 0.0},
                                   {0.0, 1.0, 0.0, 0.0},
                                   {0.0, 0.0, 0.0, 1.0}});
}

/// Twist operator T|i,j> = |1-j, 1-i>.
inline ComplexMatrix twist_operator() {
  return ComplexMatrix::from_rows({{0.0, 0.0, 0.0, 1.0},
                                   {0.0, 1.0, 0.0, 0.0},
                                   {0.0, 0.0, 1.0, 0.0},
                                   {1.0, 0.0, 0.0, 0.0}});
}

/// C_A = X (x) I: renames Alice's strategies 0 <-> 1.
inline ComplexMatrix convert_alice() {
  return kron(pauli_x(), ComplexMatrix::identity(2));
}

/// C_B = I (x) X: renames Bob's strategies.
inline ComplexMatrix convert_bob() {
  return kron(ComplexMatrix::identity(2), pauli_x());
}

/// C = X (x) X: renames both players' strategies.
inline ComplexMatrix convert_both() { return kron(pauli_x(), pauli_x()); }

inline ComplexMatrix correlation_factor(const Correlation& c) {
  return expm_involution(swap_operator(), c.gamma1) *
         expm_involution(twist_operator(), c.gamma2);
}

/// The quantum game triplet: diagonal payoff operators on the joint space,
/// <ij|A|ij> = A_ij, plus the classical source bimatrix.
class QuantumGame {
 public:
  static QuantumGame from_bimatrix(const PayoffBimatrix& g) {
    QuantumGame q;
    q.source_ = g;
    for (int i : {0, 1})
      for (int j : {0, 1}) {
        q.diag_a_[2 * i + j] = g.a[i][j];
        q.diag_b_[2 * i + j] = g.b[i][j];
      }
    return q;
  }

  const PayoffBimatrix& source() const { return source_; }
  const std::array<double, 4>& diag_a() const { return diag_a_; }
  const std::array<double, 4>& diag_b() const { return diag_b_; }

  ComplexMatrix a_operator() const { return diagonal(diag_a_); }
  ComplexMatrix b_operator() const { return diagonal(diag_b_); }

 private:
  static ComplexMatrix diagonal(const std::array<double, 4>& d) {
    ComplexMatrix m(4, 4);
    for (int k = 0; k < 4; ++k) m.at(k, k) = d[k];
    return m;
  }

  std::array<double, 4> diag_a_{};
  std::array<double, 4> diag_b_{};
  PayoffBimatrix source_;
};

inline std::array<Complex, 4> product_state(const QubitStrategy& alice,
                                            const QubitStrategy& bob) {
  const auto a = alice.amplitudes();
  const auto b = bob.amplitudes();
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

inline std::array<Complex, 4> apply4(const ComplexMatrix& m,
                                     const std::array<Complex, 4>& v) {
  std::array<Complex, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

/// J(gamma) (|alpha> (x) |beta>).
inline std::array<Complex, 4> joint_state(const QubitStrategy& alice,
                                          const QubitStrategy& bob,
                                          const Correlation& c) {
  return apply4(correlation_factor(c), product_state(alice, bob));
}

/// Expectation values of the diagonal payoff operators in a precomputed
/// correlated state; exactly real by construction.
inline std::pair<double, double> payoffs_in_state(
    const QuantumGame& g, const std::array<Complex, 4>& state) {
  double pa = 0.0, pb = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = std::norm(state[k]);
    pa += g.diag_a()[k] * w;
    pb += g.diag_b()[k] * w;
  }
  return {pa, pb};
}

inline std::pair<double, double> payoffs(const QuantumGame& g,
                                         const QubitStrategy& alice,
                                         const QubitStrategy& bob,
                                         const Correlation& c) {
  return payoffs_in_state(g, joint_state(alice, bob, c));
}

/// Same with the correlation factor precomputed (hot path for searches).
inline std::pair<double, double> payoffs_with_factor(
    const QuantumGame& g, const ComplexMatrix& correlation,
    const QubitStrategy& alice, const QubitStrategy& bob) {
  return payoffs_in_state(g, apply4(correlation, product_state(alice, bob)));
}

inline QubitStrategy random_strategy(SampleSource& src) {
  return QubitStrategy{src.uniform(0.0, std::numbers::pi),
                       src.uniform(0.0, 2.0 * std::numbers::pi)};
}

struct SymmetryCheck {
  bool operator_identity = false;  // B = SAS (resp. B = TAT)
  double operator_residual = 0.0;
  double max_relation_residual = 0.0;  // payoff relation, when identity holds
  int samples = 0;
};

/// S-symmetry: checks B = S A S, then samples the payoff relation
/// Pi_B(beta, alpha; gamma) = Pi_A(alpha, beta; gamma).
inline SymmetryCheck check_s_symmetry(const QuantumGame& g,
                                      const Correlation& c, int samples,
                                      std::uint64_t seed = 17) {
  SymmetryCheck out;
  const ComplexMatrix s = swap_operator();
  out.operator_residual =
      frobenius_norm(g.b_operator() - s * g.a_operator() * s);
  out.operator_identity = out.operator_residual <= 1e-12;
  if (!out.operator_identity) return out;
  SampleSource src(seed);
  const ComplexMatrix j = correlation_factor(c);
  for (int k = 0; k < samples; ++k) {
    const QubitStrategy alice = random_strategy(src);
    const QubitStrategy bob = random_strategy(src);
    const double pia = payoffs_with_factor(g, j, alice, bob).first;
    const double pib = payoffs_with_factor(g, j, bob, alice).second;
    out.max_relation_residual =
        std::max(out.max_relation_residual, std::abs(pib - pia));
    ++out.samples;
  }
  return out;
}

/// T-symmetry: checks B = T A T, then the twisted relation with the twisted
/// strategies realized by applying T to the product state.
inline SymmetryCheck check_t_symmetry(const QuantumGame& g,
                                      const Correlation& c, int samples,
                                      std::uint64_t seed = 17) {
  SymmetryCheck out;
  const ComplexMatrix t = twist_operator();
  out.operator_residual =
      frobenius_norm(g.b_operator() - t * g.a_operator() * t);
  out.operator_identity = out.operator_residual <= 1e-12;
  if (!out.operator_identity) return out;
  SampleSource src(seed);
  const ComplexMatrix j = correlation_factor(c);
  for (int k = 0; k < samples; ++k) {
    const QubitStrategy alice = random_strategy(src);
    const QubitStrategy bob = random_strategy(src);
    const double pia = payoffs_with_factor(g, j, alice, bob).first;
    const auto twisted = apply4(t, product_state(alice, bob));
    const double pib = payoffs_in_state(g, apply4(j, twisted)).second;
    out.max_relation_residual =
        std::max(out.max_relation_residual, std::abs(pib - pia));
    ++out.samples;
  }
  return out;
}

/// Conjugates both payoff operators by a converter (C_A, C_B or C); the
/// source bimatrix is permuted to match.
inline QuantumGame dual_game(const QuantumGame& g,
                             const ComplexMatrix& converter) {
  const ComplexMatrix a = converter * g.a_operator() * converter;
  const ComplexMatrix b = converter * g.b_operator() * converter;
  PayoffBimatrix source = g.source();
  source.name = g.source().name.empty() ? "dual" : g.source().name + "_dual";
  for (int i : {0, 1})
    for (int j : {0, 1}) {
      source.a[i][j] = a.at(2 * i + j, 2 * i + j).real();
      source.b[i][j] = b.at(2 * i + j, 2 * i + j).real();
    }
  return QuantumGame::from_bimatrix(source);
}

/// The strategy conversion X|alpha>, reduced back to the (theta, phi) chart
/// with the global phase dropped: theta -> pi - theta, phi -> -phi.
inline QubitStrategy converted_strategy(const QubitStrategy& s) {
  const double two_pi = 2.0 * std::numbers::pi;
  double phi = std::fmod(two_pi - s.phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return QubitStrategy{std::numbers::pi - s.theta, phi};
}

/// Tr A and the alternate trace tau(A) = sum (-1)^{i+j} A_ij of the
/// classical payoff matrix behind the game.
inline std::pair<double, double> trace_invariants(const QuantumGame& g) {
  const auto& a = g.source().a;
  const double tr = a[0][0] + a[0][1] + a[1][0] + a[1][1];
  const double tau = a[0][0] - a[0][1] - a[1][0] + a[1][1];
  return {tr, tau};
}

/// Gauge-duality audit for a caller-supplied unitary U: the game
/// {U A U^dag, U B U^dag} with states U|alpha,beta;gamma> reproduces the
/// original payoffs. Returns the max payoff deviation over samples.
inline double duality_audit_unitary(const QuantumGame& g,
                                    const ComplexMatrix& u, int samples,
                                    std::uint64_t seed = 17) {
  const MatrixVerdict uv = verdict(u, MatrixProperty::unitary, 1e-10);
  if (!uv.pass)
    throw std::domain_error("duality_audit_unitary: U is not unitary");
  const ComplexMatrix ua = u * g.a_operator() * dagger(u);
  const ComplexMatrix ub = u * g.b_operator() * dagger(u);
  SampleSource src(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const QubitStrategy alice = random_strategy(src);
    const QubitStrategy bob = random_strategy(src);
    const Correlation c{src.uniform(0.0, 2.0 * std::numbers::pi),
                        src.uniform(0.0, 2.0 * std::numbers::pi)};
    const auto psi = joint_state(alice, bob, c);
    const auto upsi = apply4(u, psi);
    const auto base = payoffs_in_state(g, psi);
    double pa = 0.0, pb = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) {
        const Complex w = std::conj(upsi[r]) * upsi[s];
        pa += (ua.at(r, s) * w).real();
        pb += (ub.at(r, s) * w).real();
      }
    worst = std::max({worst, std::abs(pa - base.first),
                      std::abs(pb - base.second)});
  }
  return worst;
}

}  // namespace qgames
