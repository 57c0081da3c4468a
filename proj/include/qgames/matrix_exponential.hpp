#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qgames/complex_matrix.hpp"

namespace qgames {

/// e^{i*theta*m/2} for an involution m (m^2 = I), via the half-angle closed
/// form cos(theta/2) I + i sin(theta/2) m. The involution property is checked,
/// not assumed.
inline ComplexMatrix expm_involution(const ComplexMatrix& m, double theta,
                                     double involution_tol = 1e-10) {
  const MatrixVerdict v = verdict(m, MatrixProperty::involution, involution_tol);
  if (!v.pass)
    throw std::domain_error(
        "expm_involution: matrix is not an involution (||m^2 - I|| = " +
        std::to_string(v.residual) + ")");
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix out(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j)
      out.at(i, j) = Complex{0.0, s} * m.at(i, j);
    out.at(i, i) += c;
  }
  return out;
}

struct ExpmResult {
  ComplexMatrix value;
  /// Disagreement, in Frobenius norm, against one extra squaring level.
  double level_residual = 0.0;
};

namespace detail {

inline ComplexMatrix expm_scaled_taylor(const ComplexMatrix& m, int levels) {
  const std::size_t n = m.rows();
  const double scale = std::ldexp(1.0, -levels);
  const ComplexMatrix a = Complex{scale, 0.0} * m;
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = Complex{1.0 / k, 0.0} * (term * a);
    sum = sum + term;
    if (frobenius_norm(term) < 1e-18 * (1.0 + frobenius_norm(sum))) break;
  }
  for (int k = 0; k < levels; ++k) sum = sum * sum;
  return sum;
}

}  // namespace detail

/// e^m via scaling-and-squaring with a Taylor core; the result is
/// cross-checked against one extra squaring level.
inline ExpmResult expm_series_checked(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("expm_series: not square");
  if (!is_finite(m)) throw std::invalid_argument("expm_series: non-finite");
  const double norm = frobenius_norm(m);
  int levels = 0;
  if (norm > 0.5) levels = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix base = detail::expm_scaled_taylor(m, levels);
  const ComplexMatrix refined = detail::expm_scaled_taylor(m, levels + 1);
  return ExpmResult{refined, frobenius_norm(base - refined)};
}

inline ComplexMatrix expm_series(const ComplexMatrix& m) {
  return expm_series_checked(m).value;
}

}  // namespace qgames
