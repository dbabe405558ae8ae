#pragma once

// Bipartite density-matrix type plus constructors for the state families
// under study: pure states from Schmidt data, Bell-diagonal, Werner and
// isotropic families, seeded random states and ancilla extension.

#include "minaff/linalg.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <random>

namespace minaff {

using Rng = std::mt19937_64;

// Density matrix on H_A ⊗ H_B with a declared subsystem split.  The
// constructor enforces Hermiticity, unit trace and positivity.
struct BipartiteState {
  Index dim_a = 0;
  Index dim_b = 0;
  Mat rho;

  BipartiteState(Index da, Index db, Mat m) : dim_a(da), dim_b(db), rho(std::move(m)) {
    if (dim_a < 1 || dim_b < 1)
      throw std::invalid_argument("BipartiteState: subsystem dimensions must be positive");
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
      throw std::invalid_argument("BipartiteState: matrix is " + std::to_string(rho.rows()) +
                                  "x" + std::to_string(rho.cols()) + " but dimA*dimB = " +
                                  std::to_string(dim_a * dim_b));
    validate_density(rho);
  }

  Mat marginal_a() const { return partial_trace(rho, dim_a, dim_b, Subsystem::A); }
  Mat marginal_b() const { return partial_trace(rho, dim_a, dim_b, Subsystem::B); }
  double purity() const { return minaff::purity(rho); }
};

// Squared Schmidt coefficients s_i of a pure state |Psi> = sum sqrt(s_i)
// |a_i>|b_i>; they form a probability vector.
struct SchmidtSpectrum {
  std::vector<double> coefficients;

  void validate(double tol = 1e-10) const {
    double sum = 0.0;
    for (double s : coefficients) {
      if (s < -tol)
        throw std::invalid_argument("SchmidtSpectrum: negative coefficient " + detail::sci(s));
      sum += s;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("SchmidtSpectrum: coefficients sum to " +
                                  std::to_string(sum) + ", expected 1");
  }
};

// Bloch-tetrahedron coordinates (c1, c2, c3) of a Bell-diagonal two-qubit
// state.  The induced eigenvalues are
//   lambda_{a,b} = (1/4) [1 + (-1)^a c1 - (-1)^{a+b} c2 + (-1)^b c3],
// and validity means all four lie in [0, 1].
struct CorrelationVector {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;

  // Order: lambda_{00}, lambda_{01}, lambda_{10}, lambda_{11}.
  std::array<double, 4> bell_eigenvalues() const {
    std::array<double, 4> lam{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double sa = (a == 0) ? 1.0 : -1.0;
        const double sb = (b == 0) ? 1.0 : -1.0;
        lam[static_cast<std::size_t>(2 * a + b)] = 0.25 * (1.0 + sa * c1 - sa * sb * c2 + sb * c3);
      }
    return lam;
  }

  bool in_tetrahedron(double tol = 1e-12) const {
    for (double l : bell_eigenvalues())
      if (l < -tol) return false;
    return true;
  }

  void validate(double tol = 1e-12) const {
    const auto lam = bell_eigenvalues();
    std::string bad;
    static const char* names[] = {"lambda(0,0)", "lambda(0,1)", "lambda(1,0)", "lambda(1,1)"};
    for (int i = 0; i < 4; ++i)
      if (lam[static_cast<std::size_t>(i)] < -tol)
        bad += std::string(bad.empty() ? "" : ", ") + names[i] + " = " +
               detail::sci(lam[static_cast<std::size_t>(i)]);
    if (!bad.empty())
      throw std::invalid_argument("correlation vector outside the Bell tetrahedron: " + bad);
  }
};

// --- state factories -------------------------------------------------------

// Rank-1 density matrix of |Psi> = sum_i sqrt(s_i) |i>_A |i>_B.
inline BipartiteState pure_from_schmidt(const SchmidtSpectrum& s, Index dim_a, Index dim_b) {
  if (static_cast<Index>(s.coefficients.size()) > std::min(dim_a, dim_b))
    throw std::invalid_argument("pure_from_schmidt: spectrum longer than min(dimA, dimB)");
  s.validate();
  Vec psi = Vec::Zero(dim_a * dim_b);
  for (Index i = 0; i < static_cast<Index>(s.coefficients.size()); ++i)
    psi(i * dim_b + i) = std::sqrt(std::max(0.0, s.coefficients[static_cast<std::size_t>(i)]));
  return BipartiteState(dim_a, dim_b, psi * psi.adjoint());
}

// rho = (1/4) [1⊗1 + sum_i c_i sigma_i ⊗ sigma_i].
inline BipartiteState bell_diagonal(const CorrelationVector& c) {
  c.validate();
  Mat rho = Mat::Identity(4, 4);
  const double coef[3] = {c.c1, c.c2, c.c3};
  for (int i = 0; i < 3; ++i) rho += coef[i] * kron(pauli(i + 1), pauli(i + 1));
  return BipartiteState(2, 2, rho / 4.0);
}

// Swap operator F = sum_{kl} |kl><lk| on an m x m system.
inline Mat swap_operator(Index m) {
  Mat f = Mat::Zero(m * m, m * m);
  for (Index k = 0; k < m; ++k)
    for (Index l = 0; l < m; ++l) f(k * m + l, l * m + k) = 1.0;
  return f;
}

// m x m Werner state with flip expectation Tr(omega F) = x.
inline BipartiteState werner(Index m, double x) {
  if (m < 2) throw std::invalid_argument("werner: dimension must be >= 2");
  if (!(x >= -1.0 && x <= 1.0))
    throw std::invalid_argument("werner: x must lie in [-1, 1]");
  const double denom = static_cast<double>(m) * m * m - m;
  Mat rho = (m - x) / denom * Mat::Identity(m * m, m * m) +
            (m * x - 1.0) / denom * swap_operator(m);
  return BipartiteState(m, m, rho);
}

// m x m isotropic state with fidelity <Psi+|rho|Psi+> = x,
// |Psi+> = sum_i |ii> / sqrt(m).
inline BipartiteState isotropic(Index m, double x) {
  if (m < 2) throw std::invalid_argument("isotropic: dimension must be >= 2");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("isotropic: x must lie in [0, 1]");
  Vec psi = Vec::Zero(m * m);
  for (Index i = 0; i < m; ++i) psi(i * m + i) = 1.0 / std::sqrt(static_cast<double>(m));
  const double m2 = static_cast<double>(m) * m;
  Mat rho = (1.0 - x) / (m2 - 1.0) * Mat::Identity(m * m, m * m) +
            (m2 * x - 1.0) / (m2 - 1.0) * (psi * psi.adjoint()).eval();
  return BipartiteState(m, m, rho);
}

// --- seeded randomness ------------------------------------------------------

// Matrix of iid standard complex Gaussians.
inline Mat ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
inline Mat random_unitary(Index d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    q.col(i) *= (std::abs(rii) > 0) ? rii / std::abs(rii) : Complex(1, 0);
  }
  return q;
}

// Induced-Ginibre density matrix of the requested rank: G G^dagger / Tr,
// with G of width `rank`.
inline Mat random_density_matrix(Index d, Index rank, Rng& rng) {
  if (rank < 1 || rank > d)
    throw std::invalid_argument("random_density_matrix: rank out of range");
  Mat g = ginibre(d, rank, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

// Deterministic for a fixed seed.
inline BipartiteState random_state(Index dim_a, Index dim_b, Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim_a * dim_b)
    throw std::invalid_argument("random_state: rank must lie in [1, dimA*dimB]");
  Rng rng(seed);
  return BipartiteState(dim_a, dim_b, random_density_matrix(dim_a * dim_b, rank, rng));
}

// --- derived quantities -----------------------------------------------------

// rho ⊗ sigma regrouped as a bipartite state A : (BC).  The purity of the
// ancilla, Tr(sigma^2), is what the Hilbert-Schmidt measure picks up.
inline BipartiteState add_ancilla(const BipartiteState& s, const Mat& sigma) {
  validate_density(sigma);
  return BipartiteState(s.dim_a, s.dim_b * sigma.rows(), kron(s.rho, sigma));
}

// Squared Schmidt coefficients of a pure state, descending, zeros trimmed.
// Computed from the singular values of the dA x dB coefficient matrix of the
// dominant eigenvector.
inline SchmidtSpectrum schmidt_spectrum(const BipartiteState& s, double purity_tol = 1e-8) {
  EigenSystem es = hermitian_eig(s.rho);
  const Index top = es.eigenvalues.size() - 1;
  if (1.0 - es.eigenvalues[top] > purity_tol) {
    Index rank = 0;
    for (Index i = 0; i < es.eigenvalues.size(); ++i)
      if (es.eigenvalues[i] > purity_tol) ++rank;
    throw std::invalid_argument("schmidt_spectrum: state is not pure (rank estimate " +
                                std::to_string(rank) + ")");
  }
  Vec psi = es.eigenvectors.col(top);
  Mat coeff(s.dim_a, s.dim_b);
  for (Index i = 0; i < s.dim_a; ++i)
    for (Index j = 0; j < s.dim_b; ++j) coeff(i, j) = psi(i * s.dim_b + j);
  Eigen::JacobiSVD<Mat> svd(coeff);
  SchmidtSpectrum out;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sq = svd.singularValues()[i] * svd.singularValues()[i];
    if (sq > 1e-12) out.coefficients.push_back(sq);
  }
  return out;
}

// Correlation components c_i = Tr[rho (sigma_i ⊗ sigma_i)] of a two-qubit
// state; recovers the defining vector for Bell-diagonal inputs.
inline CorrelationVector correlation_vector_of(const BipartiteState& s) {
  if (s.dim_a != 2 || s.dim_b != 2)
    throw std::invalid_argument("correlation_vector_of: requires a two-qubit state");
  CorrelationVector c;
  c.c1 = (s.rho * kron(pauli(1), pauli(1))).trace().real();
  c.c2 = (s.rho * kron(pauli(2), pauli(2))).trace().real();
  c.c3 = (s.rho * kron(pauli(3), pauli(3))).trace().real();
  return c;
}

}  // namespace minaff
