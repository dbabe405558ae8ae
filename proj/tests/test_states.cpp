#include "minaff/states.hpp"

#include "test_helpers.hpp"

using namespace minaff;
using minaff::testing::max_abs_diff;

namespace {

void require_valid(const BipartiteState& s) {
  REQUIRE(hermiticity_defect(s.rho) <= 1e-10);
  REQUIRE(std::abs(s.rho.trace().real() - 1.0) <= 1e-10);
  REQUIRE(hermitian_eig(s.rho).eigenvalues.minCoeff() >= -1e-10);
}

}  // namespace

TEST_CASE("pure_from_schmidt endpoints") {
  BipartiteState product = pure_from_schmidt({{1.0}}, 2, 2);
  REQUIRE(max_abs_diff(product.rho, testing::ket({1.0, 0.0, 0.0, 0.0})) <= 1e-14);

  BipartiteState bell = pure_from_schmidt({{0.5, 0.5}}, 2, 2);
  REQUIRE(max_abs_diff(bell.marginal_a(), Mat::Identity(2, 2) / 2.0) <= 1e-14);
  EigenSystem es = hermitian_eig(bell.rho);
  REQUIRE(es.eigenvalues(3) == Catch::Approx(1.0));

  BipartiteState skew = pure_from_schmidt({{0.8, 0.2}}, 2, 3);
  EigenSystem ma = hermitian_eig(skew.marginal_a());
  REQUIRE(ma.eigenvalues(0) == Catch::Approx(0.2));
  REQUIRE(ma.eigenvalues(1) == Catch::Approx(0.8));
  require_valid(skew);
}

TEST_CASE("pure_from_schmidt rejects bad spectra") {
  REQUIRE_THROWS_AS(pure_from_schmidt({{0.5, 0.3, 0.2}}, 2, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(pure_from_schmidt({{0.9, 0.3}}, 2, 2), std::invalid_argument);
}

TEST_CASE("bell_diagonal family") {
  REQUIRE(max_abs_diff(bell_diagonal({0.0, 0.0, 0.0}).rho, Mat::Identity(4, 4) / 4.0) <= 1e-14);

  BipartiteState vertex = bell_diagonal({1.0, 1.0, -1.0});
  EigenSystem es = hermitian_eig(vertex.rho);
  REQUIRE(es.eigenvalues(2) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(es.eigenvalues(3) == Catch::Approx(1.0));

  BipartiteState mixed = bell_diagonal({0.5, 0.5, -0.5});
  EigenSystem es2 = hermitian_eig(mixed.rho);
  REQUIRE(es2.eigenvalues(0) == Catch::Approx(0.125));
  REQUIRE(es2.eigenvalues(3) == Catch::Approx(0.625));

  // both marginals maximally mixed
  REQUIRE(max_abs_diff(mixed.marginal_a(), Mat::Identity(2, 2) / 2.0) <= 1e-12);
  REQUIRE(max_abs_diff(mixed.marginal_b(), Mat::Identity(2, 2) / 2.0) <= 1e-12);

  REQUIRE_THROWS_WITH(bell_diagonal({1.0, 1.0, 1.0}),
                      Catch::Matchers::ContainsSubstring("lambda"));
}

TEST_CASE("correlation vector round-trips through the state") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    CorrelationVector c = testing::random_tetrahedron_point(rng);
    CorrelationVector back = correlation_vector_of(bell_diagonal(c));
    REQUIRE(back.c1 == Catch::Approx(c.c1).margin(1e-12));
    REQUIRE(back.c2 == Catch::Approx(c.c2).margin(1e-12));
    REQUIRE(back.c3 == Catch::Approx(c.c3).margin(1e-12));
  }
}

TEST_CASE("werner construction") {
  // x = 1: normalized projector onto the symmetric subspace
  BipartiteState sym = werner(2, 1.0);
  Mat expected = (Mat::Identity(4, 4) + swap_operator(2)) / 6.0;
  REQUIRE(max_abs_diff(sym.rho, expected) <= 1e-14);

  for (double x : {-1.0, -0.4, 0.5, 1.0}) {
    BipartiteState w = werner(3, x);
    require_valid(w);
    REQUIRE((w.rho * swap_operator(3)).trace().real() == Catch::Approx(x).margin(1e-12));
    REQUIRE(max_abs_diff(w.marginal_a(), Mat::Identity(3, 3) / 3.0) <= 1e-12);
  }
  REQUIRE_THROWS_AS(werner(2, 1.2), std::invalid_argument);
}

TEST_CASE("werner commutes with U ⊗ U and isotropic with U ⊗ conj(U)") {
  Rng rng(5);
  BipartiteState w = werner(3, 0.37);
  BipartiteState iso = isotropic(3, 0.61);
  for (int t = 0; t < 20; ++t) {
    Mat u = random_unitary(3, rng);
    Mat uu = kron(u, u);
    REQUIRE((w.rho * uu - uu * w.rho).cwiseAbs().maxCoeff() <= 1e-10);
    Mat uuc = kron(u, u.conjugate());
    REQUIRE((iso.rho * uuc - uuc * iso.rho).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("isotropic construction") {
  BipartiteState pure = isotropic(2, 1.0);
  REQUIRE(max_abs_diff(pure.rho, pure_from_schmidt({{0.5, 0.5}}, 2, 2).rho) <= 1e-14);

  REQUIRE(max_abs_diff(isotropic(2, 0.25).rho, Mat::Identity(4, 4) / 4.0) <= 1e-14);

  BipartiteState iso0 = isotropic(3, 0.0);
  EigenSystem es = hermitian_eig(iso0.rho);
  REQUIRE(es.eigenvalues(0) == Catch::Approx(0.0).margin(1e-14));
  for (int i = 1; i < 9; ++i) REQUIRE(es.eigenvalues(i) == Catch::Approx(1.0 / 8.0));

  // fidelity with the maximally entangled state is x
  Vec psi = Vec::Zero(9);
  for (Index i = 0; i < 3; ++i) psi(i * 3 + i) = 1.0 / std::sqrt(3.0);
  BipartiteState iso = isotropic(3, 0.42);
  REQUIRE((psi.adjoint() * iso.rho * psi)(0, 0).real() == Catch::Approx(0.42).margin(1e-12));

  REQUIRE_THROWS_AS(isotropic(2, -0.1), std::invalid_argument);
}

TEST_CASE("random_state is deterministic, valid and of requested rank") {
  BipartiteState a = random_state(2, 3, 6, 7);
  BipartiteState b = random_state(2, 3, 6, 7);
  REQUIRE(max_abs_diff(a.rho, b.rho) == 0.0);
  require_valid(a);
  REQUIRE(hermitian_eig(a.rho).eigenvalues.minCoeff() > 0.0);

  BipartiteState pure = random_state(2, 2, 1, 9);
  EigenSystem es = hermitian_eig(pure.rho);
  REQUIRE(es.eigenvalues(3) == Catch::Approx(1.0).margin(1e-10));

  BipartiteState low = random_state(3, 3, 4, 11);
  EigenSystem lo = hermitian_eig(low.rho);
  REQUIRE(lo.eigenvalues(4) < 1e-12);  // rank 4 of 9
  REQUIRE(lo.eigenvalues(5) > 1e-12);

  REQUIRE_THROWS_AS(random_state(2, 2, 5, 1), std::invalid_argument);
}

TEST_CASE("every factory output passes validity") {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    require_valid(bell_diagonal(testing::random_tetrahedron_point(rng)));
    require_valid(werner(2, 2.0 * u(rng) - 1.0));
    require_valid(isotropic(3, u(rng)));
    require_valid(random_state(2, 2, 1 + (t % 4), 100 + static_cast<std::uint64_t>(t)));
  }
}

TEST_CASE("add_ancilla and purity bookkeeping") {
  BipartiteState s = random_state(2, 2, 3, 17);
  Mat pure_c = testing::ket({1.0, 0.0});
  REQUIRE(purity(pure_c) == Catch::Approx(1.0));
  Mat mixed_c = Mat::Identity(2, 2) / 2.0;
  REQUIRE(purity(mixed_c) == Catch::Approx(0.5));

  BipartiteState ext = add_ancilla(s, mixed_c);
  REQUIRE(ext.dim_a == 2);
  REQUIRE(ext.dim_b == 4);
  REQUIRE(ext.purity() == Catch::Approx(s.purity() * 0.5).margin(1e-12));
}

TEST_CASE("schmidt_spectrum round-trips and rejects mixed states") {
  SchmidtSpectrum s{{0.8, 0.2}};
  SchmidtSpectrum back = schmidt_spectrum(pure_from_schmidt(s, 2, 3));
  REQUIRE(back.coefficients.size() == 2);
  REQUIRE(back.coefficients[0] == Catch::Approx(0.8));
  REQUIRE(back.coefficients[1] == Catch::Approx(0.2));

  REQUIRE(schmidt_spectrum(pure_from_schmidt({{1.0}}, 2, 2)).coefficients ==
          std::vector<double>{1.0});

  SchmidtSpectrum bell = schmidt_spectrum(pure_from_schmidt({{0.5, 0.5}}, 2, 2));
  REQUIRE(bell.coefficients[0] == Catch::Approx(0.5));
  REQUIRE(bell.coefficients[1] == Catch::Approx(0.5));

  REQUIRE_THROWS_WITH(schmidt_spectrum(BipartiteState(2, 2, Mat::Identity(4, 4) / 4.0)),
                      Catch::Matchers::ContainsSubstring("rank estimate 4"));
}

TEST_CASE("random pure states round-trip their marginal spectrum") {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    BipartiteState s(2, 3, random_density_matrix(6, 1, rng));
    SchmidtSpectrum ss = schmidt_spectrum(s);
    EigenSystem ma = hermitian_eig(s.marginal_a());
    std::vector<double> desc(ma.eigenvalues.data(), ma.eigenvalues.data() + 2);
    std::sort(desc.rbegin(), desc.rend());
    for (std::size_t i = 0; i < ss.coefficients.size(); ++i)
      REQUIRE(ss.coefficients[i] == Catch::Approx(desc[i]).margin(1e-10));
  }
}

TEST_CASE("BipartiteState rejects invalid matrices naming the invariant") {
  REQUIRE_THROWS_WITH(BipartiteState(2, 2, Mat::Identity(4, 4)),
                      Catch::Matchers::ContainsSubstring("trace"));
  REQUIRE_THROWS_AS(BipartiteState(2, 3, Mat::Identity(4, 4) / 4.0), std::invalid_argument);
}
