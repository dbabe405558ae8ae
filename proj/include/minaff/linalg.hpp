#pragma once

// Dense complex matrix kernel: Hermitian eigendecomposition, PSD fractional
// powers, tensor products, partial traces and orthonormal operator bases.
// Everything here is a pure function of its inputs.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace minaff {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdFloor = -1e-10;

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

}  // namespace detail

// max_{ij} |M_{ij} - conj(M_{ji})|
inline double hermiticity_defect(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Mat& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

// Eigensystem of a Hermitian matrix, eigenvalues in ascending order,
// eigenvector columns orthonormal and paired with the eigenvalues.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Mat eigenvectors;
};

inline EigenSystem hermitian_eig(const Mat& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  const double defect = hermiticity_defect(m);
  if (defect > tol)
    throw std::invalid_argument("hermitian_eig: non-Hermitian input (max asymmetry " +
                                detail::sci(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Mat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// M^alpha for Hermitian PSD M and alpha in (0,1].  Eigenvalues in
// [kPsdFloor, 0) are clamped to zero before the fractional power; anything
// below the floor is rejected.
inline Mat psd_power(const Mat& m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("psd_power: alpha must lie in (0, 1]");
  EigenSystem es = hermitian_eig(m);
  Eigen::VectorXd lam = es.eigenvalues;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < kPsdFloor)
      throw std::invalid_argument("psd_power: matrix is not PSD (eigenvalue " +
                                  detail::sci(lam[i]) + ")");
    if (lam[i] < 0.0) lam[i] = 0.0;
  }
  if (alpha == 1.0) return m;
  Eigen::VectorXd powered = lam.array().pow(alpha);
  return es.eigenvectors * powered.asDiagonal() * es.eigenvectors.adjoint();
}

inline Mat psd_sqrt(const Mat& m) { return psd_power(m, 0.5); }

inline Mat kron(const Mat& a, const Mat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

enum class Subsystem { A, B };

// Partial trace of a (dim_a*dim_b) x (dim_a*dim_b) matrix over the
// complementary subsystem; index convention |i>_A ⊗ |j>_B -> i*dim_b + j.
inline Mat partial_trace(const Mat& rho, Index dim_a, Index dim_b, Subsystem keep) {
  if (rho.rows() != rho.cols() || rho.rows() != dim_a * dim_b)
    throw std::invalid_argument("partial_trace: dimension mismatch (" +
                                std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                                " vs " + std::to_string(dim_a) + "*" + std::to_string(dim_b) + ")");
  if (keep == Subsystem::A) {
    Mat out = Mat::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        out(i, j) = rho.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  Mat out = Mat::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i)
    out += rho.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

// Pauli matrices; index 0 is the 2x2 identity.
inline Mat pauli(int k) {
  Mat s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return s;
}

// Hermitian orthonormal operator basis of the d x d matrix space:
// X_0 = 1/sqrt(d), then the generalized Gell-Mann matrices scaled to unit
// Hilbert-Schmidt norm.  Tr(X_k X_l) = delta_kl; for d = 2 this is the
// normalized Pauli basis {1, sigma_x, sigma_y, sigma_z} / sqrt(2).
inline std::vector<Mat> operator_basis(Index d) {
  if (d < 2) throw std::invalid_argument("operator_basis: dimension must be >= 2");
  std::vector<Mat> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  basis.push_back(Mat::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      Mat sym = Mat::Zero(d, d);
      sym(j, k) = sym(k, j) = inv_sqrt2;
      basis.push_back(sym);
      Mat asym = Mat::Zero(d, d);
      asym(j, k) = Complex(0, -inv_sqrt2);
      asym(k, j) = Complex(0, inv_sqrt2);
      basis.push_back(asym);
    }
  }
  for (Index l = 1; l < d; ++l) {
    Mat diag = Mat::Zero(d, d);
    for (Index j = 0; j < l; ++j) diag(j, j) = 1.0;
    diag(l, l) = -static_cast<double>(l);
    basis.push_back(diag / std::sqrt(static_cast<double>(l * (l + 1))));
  }
  return basis;
}

// Squared Hilbert-Schmidt norm ||M||^2 = Tr(M^dagger M).
inline double hs_norm_sq(const Mat& m) { return m.squaredNorm(); }

// Validates the three density-matrix invariants and throws naming the one
// that is violated.
inline void validate_density(const Mat& rho, double herm_tol = 1e-10,
                             double trace_tol = 1e-10, double psd_floor = kPsdFloor) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density matrix must be square");
  const double defect = hermiticity_defect(rho);
  if (defect > herm_tol)
    throw std::invalid_argument("density matrix is not Hermitian (max asymmetry " +
                                detail::sci(defect) + ")");
  const double trace_err = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
  if (trace_err > trace_tol)
    throw std::invalid_argument("density matrix does not have unit trace (|Tr - 1| = " +
                                detail::sci(trace_err) + ")");
  Eigen::SelfAdjointEigenSolver<Mat> solver((rho + rho.adjoint()) / 2.0);
  const double lam_min = solver.eigenvalues().minCoeff();
  if (lam_min < psd_floor)
    throw std::invalid_argument("density matrix is not PSD (eigenvalue " +
                                detail::sci(lam_min) + ")");
}

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

}  // namespace minaff
