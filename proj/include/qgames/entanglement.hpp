#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qgames/complex_matrix.hpp"

namespace qgames {

/// Pure two-qubit state in basis order |00>, |01>, |10>, |11>.
struct TwoQubitState {
  std::array<Complex, 4> c{};

  static TwoQubitState from_amplitudes(const std::array<Complex, 4>& amps,
                                       double norm_tol = 1e-12) {
    for (Complex z : amps)
      if (!is_finite(z))
        throw std::invalid_argument("TwoQubitState: non-finite amplitude");
    double norm = 0.0;
    for (Complex z : amps) norm += std::norm(z);
    if (std::abs(norm - 1.0) > norm_tol)
      throw std::invalid_argument("TwoQubitState: not normalized (|psi|^2 = " +
                                  std::to_string(norm) + ")");
    return TwoQubitState{amps};
  }

  Complex c00() const { return c[0]; }
  Complex c01() const { return c[1]; }
  Complex c10() const { return c[2]; }
  Complex c11() const { return c[3]; }
};

/// 2|c00 c11 - c01 c10|: zero exactly on product states, one on Bell states.
inline double concurrence(const TwoQubitState& s) {
  return 2.0 * std::abs(s.c00() * s.c11() - s.c01() * s.c10());
}

struct EntanglementVerdict {
  bool product = false;
  double concurrence = 0.0;
  double residual = 0.0;  // |c00 c11 - c01 c10|
};

inline EntanglementVerdict is_product(const TwoQubitState& s,
                                      double tol = 1e-10) {
  EntanglementVerdict out;
  out.residual = std::abs(s.c00() * s.c11() - s.c01() * s.c10());
  out.concurrence = 2.0 * out.residual;
  out.product = out.residual <= tol;
  return out;
}

struct Factorization {
  bool success = false;
  std::array<Complex, 2> alice{};
  std::array<Complex, 2> bob{};
  double reconstruction_residual = 0.0;
  /// Residuals of the four product equations c_ij = a_i b_j; inconsistent
  /// (all four cannot vanish) exactly when the state is entangled.
  std::array<double, 4> equation_residuals{};
};

/// Splits a product state into normalized single-qubit factors, Alice's first
/// significant amplitude made real-positive. Entangled input yields
/// success = false with the per-equation residuals of the best rank-one fit.
inline Factorization factorize(const TwoQubitState& s, double tol = 1e-10) {
  Factorization out;
  // amplitude matrix M[i][j] = c_ij; a product state is exactly rank one
  const Complex m00 = s.c00(), m01 = s.c01(), m10 = s.c10(), m11 = s.c11();
  const double col0 = std::norm(m00) + std::norm(m10);
  const double col1 = std::norm(m01) + std::norm(m11);
  std::array<Complex, 2> a{};
  if (col0 >= col1) {
    a = {m00, m10};
  } else {
    a = {m01, m11};
  }
  double an = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
  if (an == 0.0) {
    out.success = false;
    return out;
  }
  a = {a[0] / an, a[1] / an};
  // least-squares row factor: b_j = sum_i conj(a_i) m_ij
  std::array<Complex, 2> b = {std::conj(a[0]) * m00 + std::conj(a[1]) * m10,
                              std::conj(a[0]) * m01 + std::conj(a[1]) * m11};
  const double bn = std::sqrt(std::norm(b[0]) + std::norm(b[1]));
  if (bn == 0.0) {
    out.success = false;
    return out;
  }
  b = {b[0] / bn, b[1] / bn};
  // phase convention: Alice's first significant amplitude real-positive
  const Complex anchor = std::abs(a[0]) > 1e-12 ? a[0] : a[1];
  const Complex phase = anchor / std::abs(anchor);
  a = {a[0] / phase, a[1] / phase};
  b = {b[0] * phase, b[1] * phase};

  const std::array<Complex, 4> rebuilt = {a[0] * b[0], a[0] * b[1],
                                          a[1] * b[0], a[1] * b[1]};
  double res = 0.0;
  for (int k = 0; k < 4; ++k) {
    out.equation_residuals[k] = std::abs(rebuilt[k] - s.c[k]);
    res += std::norm(rebuilt[k] - s.c[k]);
  }
  out.reconstruction_residual = std::sqrt(res);
  out.alice = a;
  out.bob = b;
  out.success = out.reconstruction_residual <= tol;
  return out;
}

struct RbarReport {
  bool unitary = false;
  double max_modulus_deviation = 0.0;  // max | |a_k| - 1 |
  TwoQubitState image{};               // image of the caller state
  EntanglementVerdict uniform_image;   // verdict on the image of z = (1/2)(1,1,1,1)
  /// The product criterion a0 a1 = a2 a3 for the uniform image, verified
  /// against the determinant criterion rather than assumed.
  bool coefficient_criterion_product = false;
  bool criteria_agree = false;
};

/// The diagonal-permutation map with coefficients (a0..a3):
/// |00> -> a0|00>, |01> -> a3|10>, |10> -> a2|01>, |11> -> a1|11>.
/// Unitary exactly when every coefficient is unimodular.
inline RbarReport rbar_apply(const std::array<Complex, 4>& a,
                             const TwoQubitState& input,
                             double unimodular_tol = 1e-10) {
  RbarReport out;
  for (Complex z : a) {
    if (!is_finite(z))
      throw std::invalid_argument("rbar_apply: non-finite coefficient");
    out.max_modulus_deviation =
        std::max(out.max_modulus_deviation, std::abs(std::abs(z) - 1.0));
  }
  out.unitary = out.max_modulus_deviation <= unimodular_tol;

  auto map = [&](const std::array<Complex, 4>& c) {
    // basis order |00>, |01>, |10>, |11>
    return std::array<Complex, 4>{a[0] * c[0], a[2] * c[2], a[3] * c[1],
                                  a[1] * c[3]};
  };
  out.image = TwoQubitState{map(input.c)};

  const double half = 0.5;
  const TwoQubitState uniform{{half, half, half, half}};
  const TwoQubitState uniform_image{map(uniform.c)};
  out.uniform_image = is_product(uniform_image, unimodular_tol);
  out.coefficient_criterion_product =
      std::abs(a[0] * a[1] - a[2] * a[3]) <= 4.0 * unimodular_tol;
  out.criteria_agree =
      out.coefficient_criterion_product == out.uniform_image.product;
  return out;
}

}  // namespace qgames
