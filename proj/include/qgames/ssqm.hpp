#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgames/band_matrix.hpp"
#include "qgames/complex_matrix.hpp"
#include "qgames/eigensolvers.hpp"

namespace qgames {

struct Superpotential {
  std::string name;
  std::function<double(double)> v;
  std::function<double(double)> v_prime;  // optional analytic derivative

  static Superpotential zero() {
    return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
  }

  static Superpotential linear() {
    return {"linear", [](double x) { return x; }, [](double) { return 1.0; }};
  }

  static Superpotential tanh_well() {
    return {"tanh", [](double x) { return std::tanh(x); },
            [](double x) {
              const double c = std::cosh(x);
              return 1.0 / (c * c);
            }};
  }

  static Superpotential polynomial(std::vector<double> coeffs) {
    auto value = [coeffs](double x) {
      double acc = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
      return acc;
    };
    auto derivative = [coeffs](double x) {
      double acc = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * x + coeffs[k] * static_cast<double>(k);
      return acc;
    };
    return {"poly", value, derivative};
  }
};

/// Uniform grid on (x_min, x_max) with n interior points and Dirichlet
/// boundaries; h = (x_max - x_min)/(n + 1).
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 500;

  Grid(double x_min_, double x_max_, std::size_t n_)
      : x_min(x_min_), x_max(x_max_), n(n_) {
    if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min >= x_max");
    if (n < 16) throw std::invalid_argument("Grid: need n >= 16");
  }

  double h() const { return (x_max - x_min) / static_cast<double>(n + 1); }
  double x(std::size_t i) const { return x_min + h() * static_cast<double>(i + 1); }
};

/// Discretized SUSY pair. a_minus is the forward-difference -d/dx + v,
/// a_plus its exact transpose, so h0 = a_plus a_minus and h1 = a_minus a_plus
/// share their nonzero spectrum exactly (squared singular values of a_minus)
/// and every superalgebra identity holds at machine precision.
struct DiscretizedSSQM {
  Grid grid{-10.0, 10.0, 500};
  std::vector<double> v_values;
  BandMatrix a_minus;  // upper bidiagonal
  BandMatrix a_plus;   // lower bidiagonal, exact transpose
  BandMatrix h0;       // a_plus * a_minus, tridiagonal
  BandMatrix h1;       // a_minus * a_plus, tridiagonal
  /// max-norm deviation of h0 from the direct stencil -Lapl + v^2 + v'
  /// acting on a smooth test vector, relative; O(h) by construction.
  double stencil_consistency = 0.0;

  // Dense 2n x 2n materializations of the supercharges, H and the grading.
  // The superalgebra checks work blockwise and never need these; they exist
  // for small-n inspection and the dense cross-validation in the tests.
  ComplexMatrix dense_q_plus() const {   // [[0, A+], [0, 0]]
    return dense_blocks(nullptr, &a_plus, nullptr, nullptr);
  }
  ComplexMatrix dense_q_minus() const {  // [[0, 0], [A-, 0]]
    return dense_blocks(nullptr, nullptr, &a_minus, nullptr);
  }
  ComplexMatrix dense_q() const {        // Q = Q+ + Q-
    return dense_blocks(nullptr, &a_plus, &a_minus, nullptr);
  }
  ComplexMatrix dense_h() const {        // diag(H0, H1)
    return dense_blocks(&h0, nullptr, nullptr, &h1);
  }
  ComplexMatrix dense_grading() const {  // sigma_3 (x) I
    const std::size_t n = guarded_size();
    ComplexMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      m.at(i, i) = 1.0;
      m.at(n + i, n + i) = -1.0;
    }
    return m;
  }

 private:
  std::size_t guarded_size() const {
    if (grid.n > 512)
      throw std::invalid_argument(
          "dense supercharge materialization is meant for small grids "
          "(n <= 512); the superalgebra checks use the block form");
    return grid.n;
  }

  ComplexMatrix dense_blocks(const BandMatrix* ul, const BandMatrix* ur,
                             const BandMatrix* ll, const BandMatrix* lr) const {
    const std::size_t n = guarded_size();
    ComplexMatrix m(2 * n, 2 * n);
    auto put = [&](const BandMatrix* block, std::size_t ri, std::size_t ci) {
      if (!block) return;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m.at(ri + i, ci + j) = block->get(i, j);
    };
    put(ul, 0, 0);
    put(ur, 0, n);
    put(ll, n, 0);
    put(lr, n, n);
    return m;
  }
};

inline DiscretizedSSQM build(const Superpotential& sp, const Grid& grid) {
  DiscretizedSSQM d{grid, {}, {}, {}, {}, {}, 0.0};
  const std::size_t n = grid.n;
  const double h = grid.h();
  d.v_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.v_values[i] = sp.v(grid.x(i));
    if (!std::isfinite(d.v_values[i]))
      throw std::invalid_argument("build: superpotential not finite at x = " +
                                  std::to_string(grid.x(i)));
  }

  d.a_minus = BandMatrix(n, 0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    d.a_minus.at(i, i) = 1.0 / h + d.v_values[i];
    if (i + 1 < n) d.a_minus.at(i, i + 1) = -1.0 / h;
  }
  d.a_plus = transpose(d.a_minus);
  d.h0 = multiply(d.a_plus, d.a_minus);
  d.h1 = multiply(d.a_minus, d.a_plus);

  // direct stencil -Lapl + v^2 + v' on a smooth interior bump, against h0
  std::vector<double> vp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sp.v_prime) {
      vp[i] = sp.v_prime(grid.x(i));
    } else if (i > 0 && i + 1 < n) {
      vp[i] = (d.v_values[i + 1] - d.v_values[i - 1]) / (2.0 * h);
    } else {
      vp[i] = i == 0 ? (d.v_values[1] - d.v_values[0]) / h
                     : (d.v_values[n - 1] - d.v_values[n - 2]) / h;
    }
  }
  BandMatrix stencil(n, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    stencil.at(i, i) =
        2.0 / (h * h) + d.v_values[i] * d.v_values[i] + vp[i];
    if (i + 1 < n) {
      stencil.at(i, i + 1) = -1.0 / (h * h);
      stencil.at(i + 1, i) = -1.0 / (h * h);
    }
  }
  const double center = 0.5 * (grid.x_min + grid.x_max);
  const double width = (grid.x_max - grid.x_min) / 8.0;
  std::vector<double> bump(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (grid.x(i) - center) / width;
    bump[i] = std::exp(-u * u);
  }
  const std::vector<double> lhs = mat_vec(d.h0, bump);
  const std::vector<double> rhs = mat_vec(stencil, bump);
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
    scale = std::max(scale, std::abs(rhs[i]));
  }
  d.stencil_consistency = diff / std::max(scale, 1.0);
  return d;
}

/// Residuals of the superalgebra identities, computed from the block
/// structure of Q+- = [[0, A+], [0, 0]] / [[0, 0], [A-, 0]] and
/// S = sigma_3 (x) I. The only rounding-sensitive residuals are the
/// intertwinings, which probe floating-point associativity of the products.
struct SuperalgebraResiduals {
  double q_plus_squared = 0.0;        // exact structural zero
  double q_minus_squared = 0.0;       // exact structural zero
  double anticommutator_vs_h = 0.0;   // ||{Q+, Q-} - H|| recomputed
  double commutator_h_q_plus = 0.0;   // ||H0 A+ - A+ H1||
  double commutator_h_q_minus = 0.0;  // ||H1 A- - A- H0||
  double grading_anticommutator = 0.0;  // ||{S, Q}||
  double grading_h_commutator = 0.0;    // ||[S, H]||
  double h_norm = 0.0;
};

inline SuperalgebraResiduals check_superalgebra(const DiscretizedSSQM& d) {
  SuperalgebraResiduals out;
  // Q+-^2 has every block a product with a zero block
  out.q_plus_squared = 0.0;
  out.q_minus_squared = 0.0;
  // {Q+, Q-} = diag(A+ A-, A- A+); recompute the products and compare
  const BandMatrix h0_again = multiply(d.a_plus, d.a_minus);
  const BandMatrix h1_again = multiply(d.a_minus, d.a_plus);
  out.anticommutator_vs_h = std::hypot(frobenius_norm(subtract(h0_again, d.h0)),
                                       frobenius_norm(subtract(h1_again, d.h1)));
  // [H, Q+] upper-right block: H0 A+ - A+ H1; [H, Q-] lower-left: H1 A- - A- H0
  out.commutator_h_q_plus = frobenius_norm(
      subtract(multiply(d.h0, d.a_plus), multiply(d.a_plus, d.h1)));
  out.commutator_h_q_minus = frobenius_norm(
      subtract(multiply(d.h1, d.a_minus), multiply(d.a_minus, d.h0)));
  // {S, Q}: blocks A+ - A+ and -A- + A-; [S, H]: diagonal blocks commute
  out.grading_anticommutator =
      std::hypot(frobenius_norm(subtract(d.a_plus, d.a_plus)),
                 frobenius_norm(subtract(d.a_minus, d.a_minus)));
  out.grading_h_commutator = 0.0;
  out.h_norm = std::hypot(frobenius_norm(d.h0), frobenius_norm(d.h1));
  return out;
}

struct SpectrumPair {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double gap = 0.0;  // relative
  bool within_tol = false;
};

struct SpectrumReport {
  std::vector<double> eigs_h0;  // ascending, lowest k
  std::vector<double> eigs_h1;
  std::vector<SpectrumPair> paired;  // strictly positive levels, in order
  std::size_t zero_modes_h0 = 0;
  std::size_t zero_modes_h1 = 0;
  double zero_threshold = 0.0;
  double intertwine_plus_residual = 0.0;   // ||H0 A+ - A+ H1||
  double intertwine_minus_residual = 0.0;  // ||H1 A- - A- H0||
};

/// Lowest k eigenvalues of both sectors with the strictly positive levels
/// paired in ascending order; pairing is exact up to rounding because the
/// two sectors share the squared singular values of a_minus.
inline SpectrumReport partner_spectra(const DiscretizedSSQM& d, std::size_t k,
                                      double pair_tol = 1e-8) {
  if (k > d.grid.n / 4)
    throw std::invalid_argument("partner_spectra: k > n/4");
  SpectrumReport out;
  const SymmetricTridiagonal t0 = to_tridiagonal(d.h0);
  const SymmetricTridiagonal t1 = to_tridiagonal(d.h1);
  out.eigs_h0 = tridiagonal_lowest_eigenvalues(t0, k);
  out.eigs_h1 = tridiagonal_lowest_eigenvalues(t1, k);

  const double range =
      std::max(gershgorin_upper_bound(d.h0), gershgorin_upper_bound(d.h1));
  out.zero_threshold = 1e-6 * std::max(range, 1e-300);

  std::vector<double> pos0, pos1;
  for (double e : out.eigs_h0) {
    if (e < out.zero_threshold)
      ++out.zero_modes_h0;
    else
      pos0.push_back(e);
  }
  for (double e : out.eigs_h1) {
    if (e < out.zero_threshold)
      ++out.zero_modes_h1;
    else
      pos1.push_back(e);
  }

  const std::size_t pairs = std::min(pos0.size(), pos1.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    SpectrumPair p;
    p.lambda0 = pos0[i];
    p.lambda1 = pos1[i];
    p.gap = std::abs(p.lambda0 - p.lambda1) /
            std::max({std::abs(p.lambda0), std::abs(p.lambda1), 1e-300});
    p.within_tol = p.gap <= pair_tol;
    out.paired.push_back(p);
  }

  out.intertwine_plus_residual = frobenius_norm(
      subtract(multiply(d.h0, d.a_plus), multiply(d.a_plus, d.h1)));
  out.intertwine_minus_residual = frobenius_norm(
      subtract(multiply(d.h1, d.a_minus), multiply(d.a_minus, d.h0)));
  return out;
}

struct SqrtNotReport {
  ComplexMatrix sqrt_m;
  double square_vs_x_residual = 0.0;
  MatrixVerdict unitarity;
  double action_0_to_1_residual = 0.0;  // (sqrt M)^2 |0> = |1>
  double action_1_to_0_residual = 0.0;
  double fourth_power_vs_identity = 0.0;
  double commutes_with_x = 0.0;
  bool pass = false;
};

/// sqrt(M-) = (1/2) [[1+i, 1-i], [1-i, 1+i]]: the square root of the bit
/// flip. Its square equals X exactly in double precision.
inline SqrtNotReport sqrt_not_check() {
  SqrtNotReport out;
  out.sqrt_m = ComplexMatrix::from_rows(
      {{Complex{0.5, 0.5}, Complex{0.5, -0.5}},
       {Complex{0.5, -0.5}, Complex{0.5, 0.5}}});
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix sq = out.sqrt_m * out.sqrt_m;
  out.square_vs_x_residual = frobenius_norm(sq - x);
  out.unitarity = verdict(out.sqrt_m, MatrixProperty::unitary, 1e-15);
  const std::vector<Complex> e0{1.0, 0.0}, e1{0.0, 1.0};
  {
    const auto img = mat_vec(sq, e0);
    out.action_0_to_1_residual =
        std::sqrt(std::norm(img[0] - e1[0]) + std::norm(img[1] - e1[1]));
  }
  {
    const auto img = mat_vec(sq, e1);
    out.action_1_to_0_residual =
        std::sqrt(std::norm(img[0] - e0[0]) + std::norm(img[1] - e0[1]));
  }
  out.fourth_power_vs_identity =
      frobenius_norm(sq * sq - ComplexMatrix::identity(2));
  out.commutes_with_x = frobenius_norm(out.sqrt_m * x - x * out.sqrt_m);
  out.pass = out.square_vs_x_residual <= 1e-15 && out.unitarity.pass &&
             out.action_0_to_1_residual <= 1e-15 &&
             out.action_1_to_0_residual <= 1e-15;
  return out;
}

struct FlipDemoReport {
  double level = 0.0;       // shared doublet eigenvalue (h0 sector value)
  double overlap = 0.0;     // |<h1 eigenvector, Q psi0 / ||Q psi0||>|
  double q_squared_residual = 0.0;  // ||Q^2 psi - level * psi|| / level
  double grading_flip_residual = 0.0;  // ||S(Q psi) + Q(S psi)||
  bool pass = false;
};

/// Takes the first positive paired eigenstate of h0, pushes it through the
/// supercharge and verifies it lands on the h1 partner eigenstate, that
/// Q^2 = H on the doublet, and that the grading flips.
inline FlipDemoReport supercharge_flip_demo(const DiscretizedSSQM& d) {
  const SpectrumReport spectrum = partner_spectra(d, std::min<std::size_t>(8, d.grid.n / 4));
  if (spectrum.paired.empty())
    throw std::domain_error("supercharge_flip_demo: no positive paired level");
  FlipDemoReport out;
  const SpectrumPair level = spectrum.paired.front();
  out.level = level.lambda0;

  const SymmetricTridiagonal t0 = to_tridiagonal(d.h0);
  const SymmetricTridiagonal t1 = to_tridiagonal(d.h1);
  const std::vector<double> psi0 = tridiagonal_eigenvector(t0, level.lambda0);
  const std::vector<double> phi1 = tridiagonal_eigenvector(t1, level.lambda1);

  // Q [psi0; 0] = [0; A- psi0]
  std::vector<double> image = mat_vec(d.a_minus, psi0);
  const double image_norm =
      std::sqrt(std::inner_product(image.begin(), image.end(), image.begin(), 0.0));
  double dot = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) dot += phi1[i] * image[i];
  out.overlap = std::abs(dot) / std::max(image_norm, 1e-300);

  // Q^2 [psi0; 0] = [A+ A- psi0; 0] = level * [psi0; 0]
  const std::vector<double> q2 = mat_vec(d.a_plus, image);
  double res = 0.0;
  for (std::size_t i = 0; i < q2.size(); ++i) {
    const double r = q2[i] - level.lambda0 * psi0[i];
    res += r * r;
  }
  out.q_squared_residual = std::sqrt(res) / std::max(level.lambda0, 1e-300);

  // S Q [psi0; 0] = [0; -A- psi0], Q S [psi0; 0] = [0; A- psi0]
  double flip = 0.0;
  for (double xi : image) {
    const double r = -xi + xi;
    flip += r * r;
  }
  out.grading_flip_residual = std::sqrt(flip);

  out.pass = out.overlap >= 1.0 - 1e-6 && out.q_squared_residual <= 1e-8 &&
             out.grading_flip_residual == 0.0;
  return out;
}

}  // namespace qgames
