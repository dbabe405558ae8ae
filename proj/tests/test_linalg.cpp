#include "minaff/linalg.hpp"

#include "test_helpers.hpp"

using namespace minaff;
using minaff::testing::max_abs_diff;

TEST_CASE("hermitian_eig sorts eigenvalues ascending") {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  EigenSystem es = hermitian_eig(m);
  REQUIRE(es.eigenvalues(0) == Catch::Approx(1.0));
  REQUIRE(es.eigenvalues(1) == Catch::Approx(2.0));
  REQUIRE(es.eigenvalues(2) == Catch::Approx(3.0));
}

TEST_CASE("hermitian_eig on sigma_x") {
  EigenSystem es = hermitian_eig(pauli(1));
  REQUIRE(es.eigenvalues(0) == Catch::Approx(-1.0));
  REQUIRE(es.eigenvalues(1) == Catch::Approx(1.0));
}

TEST_CASE("bell-diagonal spectrum matches the lambda formula") {
  // Oracle: eigenvalues from the correlation coordinates directly.
  CorrelationVector c{0.5, 0.5, -0.5};
  auto lam = c.bell_eigenvalues();
  std::sort(lam.begin(), lam.end());
  REQUIRE(lam[0] == Catch::Approx(0.125));
  REQUIRE(lam[3] == Catch::Approx(0.625));

  Mat rho = Mat::Identity(4, 4);
  for (int i = 1; i <= 3; ++i) {
    const double ci = (i == 1) ? 0.5 : (i == 2 ? 0.5 : -0.5);
    rho += ci * kron(pauli(i), pauli(i));
  }
  rho /= 4.0;
  EigenSystem es = hermitian_eig(rho);
  for (int i = 0; i < 4; ++i)
    REQUIRE(es.eigenvalues(i) == Catch::Approx(lam[static_cast<std::size_t>(i)]).margin(1e-12));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input naming the asymmetry") {
  Mat m(2, 2);
  m << 1.0, 2.0, 0.5, 1.0;
  REQUIRE_THROWS_WITH(hermitian_eig(m), Catch::Matchers::ContainsSubstring("asymmetry"));
}

TEST_CASE("eigendecomposition reconstructs 200 seeded Hermitian matrices") {
  Rng rng(42);
  std::uniform_int_distribution<int> dim_pick(2, 16);
  for (int t = 0; t < 200; ++t) {
    const Index d = dim_pick(rng);
    Mat g = ginibre(d, d, rng);
    Mat m = (g + g.adjoint()) / 2.0;
    EigenSystem es = hermitian_eig(m);
    Mat rebuilt =
        es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    REQUIRE(std::sqrt(hs_norm_sq(rebuilt - m)) <= 1e-10 * std::max(1.0, m.norm()));
    // orthonormal columns
    REQUIRE(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors, Mat::Identity(d, d)) <=
            1e-12);
  }
}

TEST_CASE("psd_power basics") {
  Mat half = Mat::Identity(2, 2) / 2.0;
  REQUIRE(max_abs_diff(psd_power(half, 0.5), Mat::Identity(2, 2) / std::sqrt(2.0)) <= 1e-14);

  Mat proj = testing::ket({1.0, 0.0});
  REQUIRE(max_abs_diff(psd_power(proj, 0.5), proj) <= 1e-14);
  REQUIRE(max_abs_diff(psd_power(proj, 0.25), proj) <= 1e-14);

  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.75;
  Mat root = psd_power(diag, 0.5);
  REQUIRE(root(0, 0).real() == Catch::Approx(0.5));
  REQUIRE(root(1, 1).real() == Catch::Approx(std::sqrt(0.75)).epsilon(1e-10));
}

TEST_CASE("psd_power rejects negative spectra and clamps dust") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1e-4;
  REQUIRE_THROWS_WITH(psd_power(m, 0.5), Catch::Matchers::ContainsSubstring("not PSD"));

  m(1, 1) = -1e-11;  // inside the clamp window
  Mat root = psd_power(m, 0.5);
  REQUIRE(root(1, 1).real() == Catch::Approx(0.0).margin(1e-12));

  REQUIRE_THROWS_AS(psd_power(Mat::Identity(2, 2), 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(psd_power(Mat::Identity(2, 2), 1.5), std::invalid_argument);
}

TEST_CASE("sqrt then squaring returns the matrix") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    Mat rho = random_density_matrix(5, 5, rng);
    Mat s = psd_sqrt(rho);
    REQUIRE(max_abs_diff(s * s, rho) <= 1e-9);
  }
}

TEST_CASE("kron basics") {
  REQUIRE(max_abs_diff(kron(pauli(0), pauli(0)), Mat::Identity(4, 4)) == 0.0);

  Mat zz = kron(pauli(3), pauli(3));
  Eigen::Vector4d expected(1.0, -1.0, -1.0, 1.0);
  for (int i = 0; i < 4; ++i) REQUIRE(zz(i, i).real() == Catch::Approx(expected(i)));

  Mat m = kron(testing::ket({1.0, 0.0}), Mat::Identity(2, 2) / 2.0);
  REQUIRE(m(0, 0).real() == Catch::Approx(0.5));
  REQUIRE(m(1, 1).real() == Catch::Approx(0.5));
  REQUIRE(m(2, 2).real() == Catch::Approx(0.0));

  // Tr(A ⊗ B) = Tr(A) Tr(B)
  Rng rng(3);
  Mat a = ginibre(3, 3, rng), b = ginibre(2, 2, rng);
  REQUIRE(std::abs(kron(a, b).trace() - a.trace() * b.trace()) <= 1e-12);
}

TEST_CASE("partial_trace basics") {
  Mat bell = testing::ket({1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
  REQUIRE(max_abs_diff(partial_trace(bell, 2, 2, Subsystem::A), Mat::Identity(2, 2) / 2.0) <=
          1e-14);

  Rng rng(11);
  Mat ra = random_density_matrix(2, 2, rng);
  Mat rb = random_density_matrix(3, 3, rng);
  REQUIRE(max_abs_diff(partial_trace(kron(ra, rb), 2, 3, Subsystem::A), ra) <= 1e-13);
  REQUIRE(max_abs_diff(partial_trace(kron(ra, rb), 2, 3, Subsystem::B), rb) <= 1e-13);

  REQUIRE_THROWS_AS(partial_trace(Mat::Identity(5, 5), 2, 2, Subsystem::A),
                    std::invalid_argument);
}

TEST_CASE("partial trace of kron factorizes for general matrices") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    Mat a = ginibre(3, 3, rng);
    Mat b = ginibre(2, 2, rng);
    Mat lhs = partial_trace(kron(a, b), 3, 2, Subsystem::A);
    REQUIRE(max_abs_diff(lhs, b.trace() * a) <= 1e-12);
  }
}

TEST_CASE("operator_basis at d=2 is the normalized Pauli basis") {
  auto basis = operator_basis(2);
  REQUIRE(basis.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(max_abs_diff(basis[0], pauli(0) * s) <= 1e-14);
  REQUIRE(max_abs_diff(basis[1], pauli(1) * s) <= 1e-14);
  REQUIRE(max_abs_diff(basis[2], pauli(2) * s) <= 1e-14);
  REQUIRE(max_abs_diff(basis[3], pauli(3) * s) <= 1e-14);
}

TEST_CASE("operator_basis Gram matrix is the identity for d = 2..5") {
  for (Index d = 2; d <= 5; ++d) {
    auto basis = operator_basis(d);
    REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
    REQUIRE(max_abs_diff(basis[0], Mat::Identity(d, d) / std::sqrt(static_cast<double>(d))) <=
            1e-14);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      REQUIRE(hermiticity_defect(basis[i]) <= 1e-14);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double inner = (basis[i].adjoint() * basis[j]).trace().real();
        REQUIRE(std::abs(inner - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("validate_density names the violated invariant") {
  REQUIRE_THROWS_WITH(validate_density(Mat::Identity(2, 2)),
                      Catch::Matchers::ContainsSubstring("trace"));
  Mat m(2, 2);
  m << 0.5, 0.7, 0.7, 0.5;  // Hermitian, unit trace, not PSD
  REQUIRE_THROWS_WITH(validate_density(m), Catch::Matchers::ContainsSubstring("PSD"));
  Mat nh(2, 2);
  nh << 0.5, 0.3, 0.0, 0.5;
  REQUIRE_THROWS_WITH(validate_density(nh), Catch::Matchers::ContainsSubstring("Hermitian"));
}
