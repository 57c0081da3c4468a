#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qgames/complex_matrix.hpp"

namespace qgames {

/// Deterministic, platform-independent sampling. std::mt19937_64 is portable
/// but the standard distributions are not, so doubles are built from raw bits.
class SampleSource {
 public:
  explicit SampleSource(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_bits() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return (next_bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Haar-like random single-qubit unitary from three angles.
inline ComplexMatrix random_single_qubit_unitary(SampleSource& src) {
  const double theta = src.uniform(0.0, std::numbers::pi);
  const double phi = src.uniform(0.0, 2.0 * std::numbers::pi);
  const double lam = src.uniform(0.0, 2.0 * std::numbers::pi);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return ComplexMatrix::from_rows(
      {{c, -std::polar(s, lam)},
       {std::polar(s, phi), std::polar(c, phi + lam)}});
}

/// Random unitary via Gram-Schmidt on a complex Gaussian-free matrix
/// (uniform entries are fine for test sampling purposes).
inline ComplexMatrix random_unitary(SampleSource& src, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = Complex{src.uniform(-1.0, 1.0), src.uniform(-1.0, 1.0)};
  // modified Gram-Schmidt over columns
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        dot += std::conj(m.at(i, k)) * m.at(i, j);
      for (std::size_t i = 0; i < n; ++i) m.at(i, j) -= dot * m.at(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(m.at(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = m.at(i, j) / norm;
  }
  return m;
}

/// Random Hermitian unitary involution: V diag(+/-1) V^dag.
inline ComplexMatrix random_involution(SampleSource& src, std::size_t n) {
  const ComplexMatrix v = random_unitary(src, n);
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    d.at(i, i) = src.uniform() < 0.5 ? -1.0 : 1.0;
  return v * d * dagger(v);
}

}  // namespace qgames
