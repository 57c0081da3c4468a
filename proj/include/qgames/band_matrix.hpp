#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qgames/complex_matrix.hpp"
#include "qgames/eigensolvers.hpp"

namespace qgames {

/// Real n x n band matrix with fixed lower/upper bandwidths; the SSQM
/// operators are bidiagonal and their products tridiagonal, so band products
/// keep everything O(n).
class BandMatrix {
 public:
  BandMatrix() = default;

  BandMatrix(std::size_t n, std::size_t lower, std::size_t upper)
      : n_(n), lower_(lower), upper_(upper),
        data_(n * (lower + upper + 1), 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t lower() const { return lower_; }
  std::size_t upper() const { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const {
    return (j + lower_ >= i) && (j <= i + upper_);
  }

  double get(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_ || !in_band(i, j)) return 0.0;
    return data_[index(i, j)];
  }

  /// Reference into the band; out-of-band access is a contract violation.
  double& at(std::size_t i, std::size_t j) {
    if (!in_band(i, j))
      throw std::out_of_range("BandMatrix::at outside the band");
    return data_[index(i, j)];
  }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return i * (lower_ + upper_ + 1) + (j + lower_ - i);
  }

  std::size_t n_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<double> data_;
};

inline BandMatrix multiply(const BandMatrix& a, const BandMatrix& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("BandMatrix multiply: size mismatch");
  const std::size_t n = a.size();
  const std::size_t lo = std::min(n > 0 ? n - 1 : 0, a.lower() + b.lower());
  const std::size_t up = std::min(n > 0 ? n - 1 : 0, a.upper() + b.upper());
  BandMatrix c(n, lo, up);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jmin = i > lo ? i - lo : 0;
    const std::size_t jmax = std::min(n - 1, i + up);
    for (std::size_t j = jmin; j <= jmax; ++j) {
      const std::size_t kmin = std::max(i > a.lower() ? i - a.lower() : 0,
                                        j > b.upper() ? j - b.upper() : 0);
      const std::size_t kmax =
          std::min({n - 1, i + a.upper(), j + b.lower()});
      double s = 0.0;
      for (std::size_t k = kmin; k <= kmax; ++k) s += a.get(i, k) * b.get(k, j);
      c.at(i, j) = s;
    }
  }
  return c;
}

inline BandMatrix transpose(const BandMatrix& a) {
  BandMatrix t(a.size(), a.upper(), a.lower());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t jmin = i > a.lower() ? i - a.lower() : 0;
    const std::size_t jmax = std::min(a.size() - 1, i + a.upper());
    for (std::size_t j = jmin; j <= jmax; ++j) t.at(j, i) = a.get(i, j);
  }
  return t;
}

inline BandMatrix subtract(const BandMatrix& a, const BandMatrix& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("BandMatrix subtract: size mismatch");
  const std::size_t n = a.size();
  BandMatrix c(n, std::max(a.lower(), b.lower()),
               std::max(a.upper(), b.upper()));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jmin = i > c.lower() ? i - c.lower() : 0;
    const std::size_t jmax = std::min(n - 1, i + c.upper());
    for (std::size_t j = jmin; j <= jmax; ++j)
      c.at(i, j) = a.get(i, j) - b.get(i, j);
  }
  return c;
}

inline double frobenius_norm(const BandMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t jmin = i > a.lower() ? i - a.lower() : 0;
    const std::size_t jmax = std::min(a.size() - 1, i + a.upper());
    for (std::size_t j = jmin; j <= jmax; ++j) s += a.get(i, j) * a.get(i, j);
  }
  return std::sqrt(s);
}

inline std::vector<double> mat_vec(const BandMatrix& a,
                                 const std::vector<double>& x) {
  if (a.size() != x.size())
    throw std::invalid_argument("BandMatrix mat_vec: size mismatch");
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t jmin = i > a.lower() ? i - a.lower() : 0;
    const std::size_t jmax = std::min(a.size() - 1, i + a.upper());
    for (std::size_t j = jmin; j <= jmax; ++j) y[i] += a.get(i, j) * x[j];
  }
  return y;
}

inline ComplexMatrix to_dense(const BandMatrix& a) {
  ComplexMatrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m.at(i, j) = a.get(i, j);
  return m;
}

/// Extracts a symmetric tridiagonal view; requires bandwidths <= 1.
inline SymmetricTridiagonal to_tridiagonal(const BandMatrix& a) {
  if (a.lower() > 1 || a.upper() > 1)
    throw std::invalid_argument("to_tridiagonal: bandwidth exceeds 1");
  SymmetricTridiagonal t;
  const std::size_t n = a.size();
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a.get(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i)
    t.off[i] = 0.5 * (a.get(i, i + 1) + a.get(i + 1, i));
  return t;
}

/// Gershgorin upper bound on the spectrum of a symmetric band matrix.
inline double gershgorin_upper_bound(const BandMatrix& a) {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = 0.0;
    const std::size_t jmin = i > a.lower() ? i - a.lower() : 0;
    const std::size_t jmax = std::min(a.size() - 1, i + a.upper());
    for (std::size_t j = jmin; j <= jmax; ++j)
      if (j != i) r += std::abs(a.get(i, j));
    hi = std::max(hi, a.get(i, i) + r);
  }
  return hi;
}

}  // namespace qgames
