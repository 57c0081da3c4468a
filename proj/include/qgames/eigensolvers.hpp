#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qgames/complex_matrix.hpp"

namespace qgames {

struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off.size() == diag.size() - 1

  std::size_t size() const { return diag.size(); }
};

namespace detail {

/// Number of eigenvalues of T strictly below x (Sturm sequence via LDL^T).
inline std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
  const std::size_t n = t.size();
  std::size_t count = 0;
  double p = t.diag[0] - x;
  if (p < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    double denom = p;
    if (std::abs(denom) < 1e-300) denom = denom < 0.0 ? -1e-300 : 1e-300;
    p = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / denom;
    if (p < 0.0) ++count;
  }
  return count;
}

inline std::pair<double, double> gershgorin_bounds(
    const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Lowest k eigenvalues of a symmetric tridiagonal matrix, ascending, by
/// index-targeted bisection on the Sturm count.
inline std::vector<double> tridiagonal_lowest_eigenvalues(
    const SymmetricTridiagonal& t, std::size_t k) {
  const std::size_t n = t.size();
  if (k > n) throw std::invalid_argument("tridiagonal eigenvalues: k > n");
  auto [glo, ghi] = detail::gershgorin_bounds(t);
  const double scale = std::max({1.0, std::abs(glo), std::abs(ghi)});
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  std::vector<double> out(k);
  double lower = glo;
  for (std::size_t j = 0; j < k; ++j) {
    double lo = lower, hi = ghi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (detail::sturm_count(t, mid) >= j + 1)
        hi = mid;
      else
        lo = mid;
    }
    out[j] = 0.5 * (lo + hi);
    lower = lo;  // eigenvalues are requested in ascending order
  }
  return out;
}

/// Inverse iteration for an eigenvector of T at (an accurate) lambda.
/// `orthogonalize_against` handles close-lying eigenvalues.
inline std::vector<double> tridiagonal_eigenvector(
    const SymmetricTridiagonal& t, double lambda,
    const std::vector<std::vector<double>>& orthogonalize_against = {}) {
  const std::size_t n = t.size();
  // LU factorization of (T - lambda I) with partial pivoting; tridiagonal
  // gains one extra superdiagonal of fill.
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0), f(n > 1 ? n - 2 : 0, 0.0);
  std::vector<double> l(n > 0 ? n - 1 : 0, 0.0);
  std::vector<int> pivoted(n > 0 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off[i];

  std::vector<double> sub(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = t.off[i];

  const double tiny = 1e-300;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(d[i])) {
      pivoted[i] = 1;
      std::swap(d[i], sub[i]);
      const double enext = d[i + 1];
      d[i + 1] = e[i];
      e[i] = enext;
      if (i + 2 < n) {
        f[i] = e[i + 1];
        e[i + 1] = 0.0;
      }
    }
    if (std::abs(d[i]) < tiny) d[i] = tiny;
    const double m = sub[i] / d[i];
    l[i] = m;
    d[i + 1] -= m * e[i];
    if (i + 2 < n) e[i + 1] -= m * f[i];
  }
  if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;

  auto solve = [&](std::vector<double>& x) {
    // forward: apply recorded row operations
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (pivoted[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= l[i] * x[i];
    }
    // back substitution
    for (std::size_t ir = n; ir-- > 0;) {
      double s = x[ir];
      if (ir + 1 < n) s -= e[ir] * x[ir + 1];
      if (ir + 2 < n) s -= f[ir] * x[ir + 2];
      x[ir] = s / d[ir];
    }
  };

  std::vector<double> x(n);
  uint64_t state = 0x2545f4914f6cdd1dull;
  for (std::size_t i = 0; i < n; ++i)
    x[i] = (detail::splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;

  auto orthogonalize = [&]() {
    for (const auto& w : orthogonalize_against) {
      double dot = std::inner_product(x.begin(), x.end(), w.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * w[i];
    }
  };

  for (int iter = 0; iter < 3; ++iter) {
    orthogonalize();
    solve(x);
    orthogonalize();
    double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (norm < tiny) norm = tiny;
    for (double& xi : x) xi /= norm;
  }
  // sign convention: largest-magnitude component positive
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  if (x[imax] < 0.0)
    for (double& xi : x) xi = -xi;
  return x;
}

struct HermitianEigs {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, same order
};

namespace detail {

inline HermitianEigs jacobi_hermitian(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(m));

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a.at(i, j));
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 60 && off_norm() > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-18 * scale) continue;
        const Complex phase = apq / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double tt = tau >= 0.0
                              ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = tt * c;
        const Complex sp = s * phase;           // s e^{i phi}
        const Complex spc = s * std::conj(phase);  // s e^{-i phi}
        // column update: A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - spc * akq;
          a.at(k, q) = sp * akp + c * akq;
        }
        // row update: A <- J^dag A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - sp * aqk;
          a.at(q, k) = spc * apk + c * aqk;
        }
        // eigenvector accumulation: V <- V J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - spc * vkq;
          v.at(k, q) = sp * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a.at(i, i).real();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return eigs[x] < eigs[y]; });
  HermitianEigs out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = eigs[order[j]];
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors.at(i, j) = v.at(i, order[j]);
  }
  return out;
}

inline bool is_real_tridiagonal(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = m.at(i, j);
      if (z.imag() != 0.0) return false;
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap > 1 && z.real() != 0.0) return false;
    }
  return true;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues with
/// orthonormal eigenvectors. Small matrices (and anything complex) go through
/// cyclic Jacobi; large real symmetric tridiagonal input takes the
/// bisection + inverse-iteration path.
inline HermitianEigs hermitian_eigs(const ComplexMatrix& m,
                                    double hermiticity_tol = 1e-10) {
  if (!m.square()) throw std::invalid_argument("hermitian_eigs: not square");
  const double herm_res = frobenius_norm(m - dagger(m));
  if (herm_res > hermiticity_tol * std::max(1.0, frobenius_norm(m)))
    throw std::domain_error("hermitian_eigs: matrix is not Hermitian (||m - m^dag|| = " +
                            std::to_string(herm_res) + ")");
  const std::size_t n = m.rows();
  if (n > 16 && detail::is_real_tridiagonal(m)) {
    SymmetricTridiagonal t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = m.at(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      // symmetrize rounding noise between the two off-diagonal copies
      t.off[i] = 0.5 * (m.at(i, i + 1).real() + m.at(i + 1, i).real());
    }
    HermitianEigs out;
    out.eigenvalues = tridiagonal_lowest_eigenvalues(t, n);
    out.eigenvectors = ComplexMatrix(n, n);
    std::vector<std::vector<double>> previous;
    const double cluster_gap =
        1e-8 * std::max(1.0, std::abs(out.eigenvalues.back()) +
                                 std::abs(out.eigenvalues.front()));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<double>> against;
      for (std::size_t k = j; k-- > 0;) {
        if (out.eigenvalues[j] - out.eigenvalues[k] > cluster_gap) break;
        against.push_back(previous[k]);
      }
      std::vector<double> vec =
          tridiagonal_eigenvector(t, out.eigenvalues[j], against);
      previous.push_back(vec);
      for (std::size_t i = 0; i < n; ++i) out.eigenvectors.at(i, j) = vec[i];
    }
    return out;
  }
  return detail::jacobi_hermitian(m);
}

}  // namespace qgames
