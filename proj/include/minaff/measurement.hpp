#pragma once

// Von Neumann measurements on subsystem A and the space of measurements that
// preserve a given marginal: rank-1 refinements of its spectral projectors.
// Degenerate eigenspaces contribute free basis choices; a nondegenerate
// marginal pins the measurement completely.

#include "minaff/states.hpp"

namespace minaff {

// Complete set of rank-1 orthogonal projectors on subsystem A.
struct ProjectiveMeasurement {
  std::vector<Mat> projectors;

  Index dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }

  // One rank-1 projector per column.
  static ProjectiveMeasurement from_basis(const Mat& basis) {
    ProjectiveMeasurement m;
    m.projectors.reserve(static_cast<std::size_t>(basis.cols()));
    for (Index k = 0; k < basis.cols(); ++k) {
      Vec v = basis.col(k);
      m.projectors.push_back(v * v.adjoint());
    }
    return m;
  }

  void validate(double tol = 1e-10) const {
    if (projectors.empty()) throw std::invalid_argument("measurement has no projectors");
    const Index d = dim();
    Mat sum = Mat::Zero(d, d);
    for (std::size_t k = 0; k < projectors.size(); ++k) {
      const Mat& p = projectors[k];
      if (p.rows() != d || p.cols() != d)
        throw std::invalid_argument("measurement projectors have mixed dimensions");
      if ((p * p - p).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("projector " + std::to_string(k) + " is not idempotent");
      for (std::size_t l = 0; l < k; ++l)
        if ((p * projectors[l]).cwiseAbs().maxCoeff() > tol)
          throw std::invalid_argument("projectors " + std::to_string(l) + " and " +
                                      std::to_string(k) + " are not orthogonal");
      sum += p;
    }
    const double defect = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > tol)
      throw std::invalid_argument("incomplete projector set (completeness defect " +
                                  detail::sci(defect) + ")");
  }

  bool preserves_marginal(const Mat& marginal, double tol = 1e-8) const {
    Mat pinched = Mat::Zero(marginal.rows(), marginal.cols());
    for (const Mat& p : projectors) pinched += p * marginal * p;
    return (pinched - marginal).cwiseAbs().maxCoeff() <= tol;
  }
};

// Pi^A(rho) = sum_k (Pi_k ⊗ 1) rho (Pi_k ⊗ 1).
inline BipartiteState apply_measurement(const BipartiteState& s, const ProjectiveMeasurement& m) {
  if (m.dim() != s.dim_a)
    throw std::invalid_argument("apply_measurement: measurement dimension " +
                                std::to_string(m.dim()) + " does not match dimA = " +
                                std::to_string(s.dim_a));
  Mat sum = Mat::Zero(s.dim_a, s.dim_a);
  for (const Mat& p : m.projectors) sum += p;
  const double defect = (sum - Mat::Identity(s.dim_a, s.dim_a)).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::invalid_argument("apply_measurement: incomplete projector set (defect " +
                                detail::sci(defect) + ")");
  const Mat id_b = Mat::Identity(s.dim_b, s.dim_b);
  Mat out = Mat::Zero(s.rho.rows(), s.rho.cols());
  for (const Mat& p : m.projectors) {
    Mat pb = kron(p, id_b);
    out += pb * s.rho * pb;
  }
  return BipartiteState(s.dim_a, s.dim_b, out);
}

// An eigenspace of the marginal: `basis` holds orthonormal columns spanning
// it; blocks of size >= 2 carry free measurement parameters.
struct DegenerateBlock {
  double eigenvalue = 0.0;
  Mat basis;
  Index size() const { return basis.cols(); }
};

namespace detail {

// U = exp(iH) for the Hermitian generator packed as k diagonal entries
// followed by (re, im) pairs for the strict upper triangle.
inline Mat unitary_from_generator(Index k, const double* p) {
  Mat h = Mat::Zero(k, k);
  Index at = 0;
  for (Index i = 0; i < k; ++i) h(i, i) = p[at++];
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      h(i, j) = Complex(p[at], p[at + 1]);
      h(j, i) = std::conj(h(i, j));
      at += 2;
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(k);
  for (Index i = 0; i < k; ++i) phases(i) = std::exp(Complex(0.0, es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Parametrization of all marginal-preserving rank-1 measurements.
struct MeasurementSpace {
  Index dim = 0;
  std::vector<DegenerateBlock> blocks;

  // 2-dim blocks use Bloch angles (theta, phi); larger blocks use the k^2
  // real coordinates of a Hermitian generator.
  Index free_parameter_count() const {
    Index n = 0;
    for (const auto& b : blocks)
      if (b.size() >= 2) n += (b.size() == 2) ? 2 : b.size() * b.size();
    return n;
  }

  bool rigid() const { return free_parameter_count() == 0; }

  // Orthonormal measurement basis for a free-parameter vector; an empty
  // vector selects the spectral basis itself.
  Mat basis_for(const std::vector<double>& params) const {
    if (static_cast<Index>(params.size()) != free_parameter_count())
      throw std::invalid_argument("MeasurementSpace: expected " +
                                  std::to_string(free_parameter_count()) + " parameters, got " +
                                  std::to_string(params.size()));
    Mat basis(dim, dim);
    Index col = 0;
    std::size_t at = 0;
    for (const auto& b : blocks) {
      const Index k = b.size();
      if (k == 1) {
        basis.col(col++) = b.basis.col(0);
      } else if (k == 2) {
        const double theta = params[at], phi = params[at + 1];
        at += 2;
        const double ct = std::cos(theta / 2.0), st = std::sin(theta / 2.0);
        const Complex eip = std::exp(Complex(0.0, phi));
        basis.col(col) = ct * b.basis.col(0) + st * eip * b.basis.col(1);
        basis.col(col + 1) = st * b.basis.col(0) - ct * eip * b.basis.col(1);
        col += 2;
      } else {
        Mat u = detail::unitary_from_generator(k, params.data() + at);
        at += static_cast<std::size_t>(k * k);
        basis.middleCols(col, k) = b.basis * u;
        col += k;
      }
    }
    return basis;
  }

  ProjectiveMeasurement measurement_for(const std::vector<double>& params) const {
    return ProjectiveMeasurement::from_basis(basis_for(params));
  }
};

// Clusters the marginal's eigenvalues into degenerate blocks.  Consecutive
// ascending eigenvalues closer than tol_degeneracy are merged; the free
// parameters are the basis choices inside each merged block.
inline MeasurementSpace measurement_space(const Mat& marginal, double tol_degeneracy = 1e-7) {
  EigenSystem es = hermitian_eig(marginal);
  MeasurementSpace space;
  space.dim = marginal.rows();
  Index start = 0;
  for (Index i = 1; i <= es.eigenvalues.size(); ++i) {
    const bool split = (i == es.eigenvalues.size()) ||
                       (es.eigenvalues[i] - es.eigenvalues[i - 1] >
                        tol_degeneracy * std::max(1.0, std::abs(es.eigenvalues[i])));
    if (split) {
      DegenerateBlock block;
      block.basis = es.eigenvectors.middleCols(start, i - start);
      block.eigenvalue = es.eigenvalues.segment(start, i - start).mean();
      space.blocks.push_back(std::move(block));
      start = i;
    }
  }
  return space;
}

}  // namespace minaff
