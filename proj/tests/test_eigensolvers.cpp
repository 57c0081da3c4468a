#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qgames/eigensolvers.hpp"
#include "qgames/random.hpp"

using namespace qgames;

TEST_CASE("pauli_z eigenvalues", "[eig]") {
  const HermitianEigs e = hermitian_eigs(pauli_z());
  REQUIRE(e.eigenvalues.size() == 2);
  REQUIRE(e.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-14));
  REQUIRE(e.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("random Hermitian reconstruction and orthonormality", "[eig]") {
  SampleSource src(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;  // 2..6
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a.at(i, j) = Complex{src.uniform(-1, 1), src.uniform(-1, 1)};
    const ComplexMatrix m = Complex{0.5, 0.0} * (a + dagger(a));
    const HermitianEigs e = hermitian_eigs(m);
    for (std::size_t k = 0; k + 1 < n; ++k)
      REQUIRE(e.eigenvalues[k] <= e.eigenvalues[k + 1]);
    ComplexMatrix lambda(n, n);
    for (std::size_t k = 0; k < n; ++k) lambda.at(k, k) = e.eigenvalues[k];
    const double scale = std::max(1e-300, frobenius_norm(m));
    REQUIRE(frobenius_norm(m - e.eigenvectors * lambda * dagger(e.eigenvectors)) <=
            1e-8 * scale);
    REQUIRE(frobenius_norm(dagger(e.eigenvectors) * e.eigenvectors -
                           ComplexMatrix::identity(n)) <= 1e-8);
  }
}

TEST_CASE("degenerate spectrum", "[eig]") {
  // X (x) X has eigenvalues {-1, -1, 1, 1}
  const ComplexMatrix xx = kron(pauli_x(), pauli_x());
  const HermitianEigs e = hermitian_eigs(xx);
  REQUIRE(e.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(e.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(e.eigenvalues[2] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(e.eigenvalues[3] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(frobenius_norm(dagger(e.eigenvectors) * e.eigenvectors -
                         ComplexMatrix::identity(4)) <= 1e-12);
}

TEST_CASE("non-Hermitian input is rejected", "[eig]") {
  ComplexMatrix m(2, 2);
  m.at(0, 1) = Complex{1.0, 0.0};
  REQUIRE_THROWS_AS(hermitian_eigs(m), std::domain_error);
}

TEST_CASE("tridiagonal bisection against the discrete Laplacian", "[eig]") {
  // -d^2/dx^2 on n interior points: eigenvalues 2(1 - cos(k pi / (n+1)))/h^2
  const std::size_t n = 100;
  const double h = 1.0 / (n + 1);
  SymmetricTridiagonal t;
  t.diag.assign(n, 2.0 / (h * h));
  t.off.assign(n - 1, -1.0 / (h * h));
  const auto eigs = tridiagonal_lowest_eigenvalues(t, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact =
        2.0 * (1.0 - std::cos((k + 1) * std::numbers::pi / (n + 1))) / (h * h);
    REQUIRE(eigs[k] == Catch::Approx(exact).epsilon(1e-10));
  }

  for (std::size_t k = 0; k < 3; ++k) {
    const auto v = tridiagonal_eigenvector(t, eigs[k]);
    // residual ||T v - lambda v||
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = t.diag[i] * v[i];
      if (i > 0) tv += t.off[i - 1] * v[i - 1];
      if (i + 1 < n) tv += t.off[i] * v[i + 1];
      res += (tv - eigs[k] * v[i]) * (tv - eigs[k] * v[i]);
    }
    REQUIRE(std::sqrt(res) <= 1e-8 * (2.0 / (h * h)));
  }
}

TEST_CASE("tridiagonal dispatch agrees with Jacobi", "[eig]") {
  const std::size_t n = 40;
  SampleSource src(23);
  SymmetricTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = src.uniform(-2.0, 2.0);
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = src.uniform(-1.0, 1.0);

  ComplexMatrix dense(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    dense.at(i, i) = t.diag[i];
    if (i + 1 < n) {
      dense.at(i, i + 1) = t.off[i];
      dense.at(i + 1, i) = t.off[i];
    }
  }
  // n > 16 and real tridiagonal: takes the bisection path
  const HermitianEigs fast = hermitian_eigs(dense);
  const HermitianEigs slow = detail::jacobi_hermitian(dense);
  for (std::size_t k = 0; k < n; ++k)
    REQUIRE(fast.eigenvalues[k] ==
            Catch::Approx(slow.eigenvalues[k]).margin(1e-9));
  const double scale = frobenius_norm(dense);
  ComplexMatrix lambda(n, n);
  for (std::size_t k = 0; k < n; ++k) lambda.at(k, k) = fast.eigenvalues[k];
  REQUIRE(frobenius_norm(dense - fast.eigenvectors * lambda *
                                     dagger(fast.eigenvectors)) <=
          1e-8 * scale);
}
