#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgames {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense row-major complex matrix. Small by design: 2x2 and 4x4 operators,
/// 8x8 braid products, and the moderate real-symmetric matrices a test may
/// materialize. Entries are validated to be finite wherever external data
/// enters.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c)
        throw std::invalid_argument("from_rows: ragged row lengths");
      std::size_t j = 0;
      for (Complex z : row) {
        if (!is_finite(z))
          throw std::invalid_argument("from_rows: non-finite entry");
        m.at(i, j++) = z;
      }
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  Complex at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

inline bool is_finite(const ComplexMatrix& m) {
  for (Complex z : m.entries())
    if (!is_finite(z)) return false;
  return true;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument(
        "matmul: dimension mismatch (" + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
        std::to_string(b.cols()) + ")");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: dimension mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: dimension mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = s * m.at(i, j);
  return out;
}

/// Tensor product with |ij> = |i> (x) |j>, row index 2i+j for qubit factors.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a.at(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
    }
  return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(j, i) = std::conj(m.at(i, j));
  return out;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (Complex z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& m) {
  double s = 0.0;
  for (Complex z : m.entries()) s = std::max(s, std::abs(z));
  return s;
}

inline Complex trace(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

/// LU with partial pivoting; intended for the small matrices of this library.
inline Complex determinant(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant: not square");
  ComplexMatrix a = m;
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a.at(i, k)) > std::abs(a.at(piv, k))) piv = i;
    if (std::abs(a.at(piv, k)) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(k, j));
      det = -det;
    }
    det *= a.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a.at(i, k) / a.at(k, k);
      for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return det;
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& m,
                                  const std::vector<Complex>& v) {
  if (m.cols() != v.size())
    throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<Complex> out(m.rows(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

inline double vector_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (Complex z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline Complex inner_product(const std::vector<Complex>& a,
                             const std::vector<Complex>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product: size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

enum class MatrixProperty { unitary, hermitian, involution };

struct MatrixVerdict {
  MatrixProperty property;
  double residual = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};

/// Frobenius-norm residual of the named property:
///   unitary:    ||m^dag m - I||
///   hermitian:  ||m - m^dag||
///   involution: ||m^2 - I||
inline MatrixVerdict verdict(const ComplexMatrix& m, MatrixProperty property,
                             double tolerance = 1e-10) {
  if (!m.square()) throw std::invalid_argument("verdict: matrix not square");
  double residual = 0.0;
  switch (property) {
    case MatrixProperty::unitary:
      residual =
          frobenius_norm(dagger(m) * m - ComplexMatrix::identity(m.rows()));
      break;
    case MatrixProperty::hermitian:
      residual = frobenius_norm(m - dagger(m));
      break;
    case MatrixProperty::involution:
      residual = frobenius_norm(m * m - ComplexMatrix::identity(m.rows()));
      break;
  }
  return MatrixVerdict{property, residual, residual <= tolerance, tolerance};
}

struct PhaseComparison {
  bool equal = false;
  Complex phase{1.0, 0.0};
  double residual = 0.0;
};

/// True iff a = lambda * b for some unit-modulus lambda, anchored on the
/// largest-modulus entry of b.
inline PhaseComparison equal_up_to_global_phase(const ComplexMatrix& a,
                                                const ComplexMatrix& b,
                                                double tol = 1e-10) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("equal_up_to_global_phase: shape mismatch");
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (std::abs(b.at(i, j)) > best) {
        best = std::abs(b.at(i, j));
        bi = i;
        bj = j;
      }
  PhaseComparison out;
  if (best <= 0.0) {
    out.residual = frobenius_norm(a);
    out.equal = out.residual <= tol;
    return out;
  }
  Complex ratio = a.at(bi, bj) / b.at(bi, bj);
  out.phase = std::abs(ratio) > 0.0 ? ratio / std::abs(ratio) : Complex{1.0};
  out.residual = frobenius_norm(a - out.phase * b);
  out.equal = out.residual <= tol;
  return out;
}

// Common single-qubit operators.
inline ComplexMatrix pauli_x() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

inline ComplexMatrix pauli_y() {
  return ComplexMatrix::from_rows(
      {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
}

inline ComplexMatrix pauli_z() {
  return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

inline ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::from_rows({{s, s}, {s, -s}});
}

/// F = i*sigma_1, the quantized bit flip. F^2 = -I.
inline ComplexMatrix bit_flip() {
  return ComplexMatrix::from_rows(
      {{0.0, Complex{0.0, 1.0}}, {Complex{0.0, 1.0}, 0.0}});
}

}  // namespace qgames
