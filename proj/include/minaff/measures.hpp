#pragma once

// Correlation measures for bipartite states.
//
// The central quantity is the affinity-based measurement-induced nonlocality
//   N_A(rho) = 1 - min_Pi Tr[ sqrt(rho) Pi^A(sqrt(rho)) ],
// minimized over von Neumann measurements on A that preserve the marginal.
// Companions: the Hilbert-Schmidt variant max_Pi ||rho - Pi^A(rho)||^2, the
// square-root-norm form max_Pi ||sqrt(rho) - Pi^A(sqrt(rho))||^2 (kept as an
// independent code path), Wootters concurrence, and closed forms for the
// Bell-diagonal, Werner and isotropic families.

#include "minaff/measurement.hpp"
#include "minaff/optimize.hpp"

#include <algorithm>
#include <array>

namespace minaff {

// --- affinity and its metric ------------------------------------------------

// A_alpha(rho, sigma) = Tr(rho^alpha sigma^(1-alpha)); symmetric at alpha = 1/2.
inline double affinity(const Mat& rho, const Mat& sigma, double alpha = 0.5) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("affinity: alpha must lie in (0, 1)");
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("affinity: dimension mismatch");
  validate_density(rho);
  validate_density(sigma);
  const double a = (psd_power(rho, alpha) * psd_power(sigma, 1.0 - alpha)).trace().real();
  return std::clamp(a, 0.0, 1.0);
}

inline double affinity(const BipartiteState& rho, const BipartiteState& sigma,
                       double alpha = 0.5) {
  return affinity(rho.rho, sigma.rho, alpha);
}

// d(rho, sigma) = sqrt(1 - A_alpha(rho, sigma)); a metric on state space.
inline double affinity_metric(const Mat& rho, const Mat& sigma, double alpha = 0.5) {
  return std::sqrt(std::max(0.0, 1.0 - affinity(rho, sigma, alpha)));
}

// --- optimizer plumbing -------------------------------------------------------

struct OptimizerConfig {
  std::uint64_t seed = 1;
  int starts = 32;          // multi-start count for degenerate marginals
  double degeneracy_tol = 1e-7;
  double improve_tol = 1e-12;
  long max_evals_per_start = 20000;
  double step = 0.6;
};

enum class MinMethod { pure_formula, closed_2xn, brute_force };

inline const char* to_string(MinMethod m) {
  switch (m) {
    case MinMethod::pure_formula: return "pure-formula";
    case MinMethod::closed_2xn: return "closed-2xn";
    default: return "brute-force";
  }
}

struct MinResult {
  double value = 0.0;
  MinMethod method = MinMethod::brute_force;
  ProjectiveMeasurement optimal_measurement;
  long iterations = 0;     // objective evaluations spent (0 for closed forms)
  bool converged = true;
};

namespace detail {

// W on H_A ⊗ H_B sliced into A-indexed blocks: W = sum_{ij} |i><j| ⊗ W_ij.
// For a rank-1 projector |v><v| on A,
//   Tr[ W (|v><v| ⊗ 1) W (|v><v| ⊗ 1) ] = Tr[ S(v)^2 ],
// with S(v) = sum_{ij} conj(v_i) v_j W_ij Hermitian, so the pinched overlap
// sum_k Tr[W P_k W P_k] only needs the n x n contractions.
struct BlockDecomposition {
  Index m = 0, n = 0;
  std::vector<Mat> blocks;

  static BlockDecomposition of(const Mat& w, Index m, Index n) {
    BlockDecomposition d;
    d.m = m;
    d.n = n;
    d.blocks.reserve(static_cast<std::size_t>(m * m));
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) d.blocks.push_back(w.block(i * n, j * n, n, n));
    return d;
  }

  Mat contract(const Vec& v) const {
    Mat s = Mat::Zero(n, n);
    for (Index i = 0; i < m; ++i) {
      const Complex vi = std::conj(v(i));
      for (Index j = 0; j < m; ++j)
        s.noalias() += (vi * v(j)) * blocks[static_cast<std::size_t>(i * m + j)];
    }
    return s;
  }

  // sum_k Tr[ S(v_k)^2 ] over the columns of an orthonormal basis.
  double pinched_overlap(const Mat& basis) const {
    double acc = 0.0;
    for (Index k = 0; k < basis.cols(); ++k) acc += contract(basis.col(k)).squaredNorm();
    return acc;
  }
};

// Literal pinching sum_k (P_k ⊗ 1) W (P_k ⊗ 1) built from full matrices;
// used by the independent square-root-norm route.
inline Mat pinch_on_a(const Mat& w, Index dim_a, Index dim_b, const Mat& basis) {
  const Mat id_b = Mat::Identity(dim_b, dim_b);
  Mat out = Mat::Zero(w.rows(), w.cols());
  for (Index k = 0; k < basis.cols(); ++k) {
    Vec v = basis.col(k);
    Mat pb = kron(v * v.adjoint(), id_b);
    out += pb * w * pb;
  }
  return out;
}

struct PinchOptimum {
  double value = 0.0;
  Mat basis;
  long evaluations = 0;
  bool converged = true;
};

template <typename Objective>
PinchOptimum minimize_over_measurements(const MeasurementSpace& space, Objective&& objective,
                                        const OptimizerConfig& cfg) {
  if (space.rigid()) {
    Mat basis = space.basis_for({});
    return {objective(basis), basis, 1, true};
  }
  auto f = [&](const std::vector<double>& p) { return objective(space.basis_for(p)); };
  MultiStartConfig ms;
  ms.seed = cfg.seed;
  ms.starts = cfg.starts;
  ms.step = cfg.step;
  ms.improve_tol = cfg.improve_tol;
  ms.max_evals_per_start = cfg.max_evals_per_start;
  LocalSearchResult best =
      minimize_multistart(f, static_cast<std::size_t>(space.free_parameter_count()), ms);
  return {best.value, space.basis_for(best.point), best.evaluations, best.converged};
}

// T_ij = Tr[ sqrt(rho) (sigma_i ⊗ 1) sqrt(rho) (sigma_j ⊗ 1) ], real symmetric.
inline Eigen::Matrix3d t_matrix_from_sqrt(const Mat& sq, Index dim_b) {
  const Mat id_b = Mat::Identity(dim_b, dim_b);
  std::array<Mat, 3> a;
  for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(i)] = sq * kron(pauli(i + 1), id_b);
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = (a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)]).trace().real();
  return (t + t.transpose()) / 2.0;
}

inline Eigen::Vector3d bloch_vector(const Mat& qubit_density) {
  Eigen::Vector3d b;
  for (int i = 0; i < 3; ++i) b(i) = (qubit_density * pauli(i + 1)).trace().real();
  return b;
}

}  // namespace detail

inline Eigen::Matrix3d t_matrix(const BipartiteState& s) {
  if (s.dim_a != 2) throw std::invalid_argument("t_matrix: requires dimA = 2");
  return detail::t_matrix_from_sqrt(psd_sqrt(s.rho), s.dim_b);
}

// --- the MIN family -----------------------------------------------------------

// Brute-force route: minimize the pinched overlap of sqrt(rho) over the
// marginal-preserving measurement space.  Rigid (nondegenerate) marginals
// need a single evaluation; degenerate blocks are searched by seeded
// multi-start local descent.
inline MinResult min_affinity_brute(const BipartiteState& s, const OptimizerConfig& cfg = {}) {
  const Mat sq = psd_sqrt(s.rho);
  const auto blocks = detail::BlockDecomposition::of(sq, s.dim_a, s.dim_b);
  const MeasurementSpace space = measurement_space(s.marginal_a(), cfg.degeneracy_tol);
  auto opt = detail::minimize_over_measurements(
      space, [&](const Mat& basis) { return blocks.pinched_overlap(basis); }, cfg);
  MinResult r;
  r.value = std::max(0.0, 1.0 - opt.value);
  r.method = MinMethod::brute_force;
  r.optimal_measurement = ProjectiveMeasurement::from_basis(opt.basis);
  r.iterations = opt.evaluations;
  r.converged = opt.converged;
  return r;
}

// Qubit-qudit closed form.  Writing Pi_k = (1 ± r.sigma)/2 gives
//   Tr[ sqrt(rho) Pi^A(sqrt(rho)) ] = (1 + r^t T r) / 2,
// so the minimum is (1 + lambda_min(T))/2 when the marginal is maximally
// mixed (free r) and pinned to r = b/|b| otherwise, hence
//   N_A = (1 - lambda_min(T)) / 2   or   (1 - r^t T r) / 2.
inline MinResult min_affinity_2xn(const BipartiteState& s, const OptimizerConfig& cfg = {}) {
  if (s.dim_a != 2) throw std::invalid_argument("min_affinity_2xn: requires dimA = 2");
  const Mat sq = psd_sqrt(s.rho);
  const Eigen::Matrix3d t = detail::t_matrix_from_sqrt(sq, s.dim_b);
  const Eigen::Vector3d b = detail::bloch_vector(s.marginal_a());
  Eigen::Vector3d r;
  double quad = 0.0;
  if (b.norm() <= cfg.degeneracy_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t);
    quad = es.eigenvalues()(0);
    r = es.eigenvectors().col(0);
  } else {
    r = b.normalized();
    quad = r.dot(t * r);
  }
  MinResult out;
  out.value = std::max(0.0, 0.5 * (1.0 - quad));
  out.method = MinMethod::closed_2xn;
  const Mat rdots = r(0) * pauli(1) + r(1) * pauli(2) + r(2) * pauli(3);
  out.optimal_measurement.projectors = {(pauli(0) + rdots) / 2.0, (pauli(0) - rdots) / 2.0};
  out.iterations = 0;
  out.converged = true;
  return out;
}

// Dispatch: pure states take the Schmidt formula 1 - sum s_k^2, qubit-qudit
// states the closed form, everything else the brute-force search.
inline MinResult min_affinity(const BipartiteState& s, const OptimizerConfig& cfg = {}) {
  EigenSystem es = hermitian_eig(s.rho);
  if (1.0 - es.eigenvalues[es.eigenvalues.size() - 1] <= 1e-8) {
    EigenSystem ma = hermitian_eig(partial_trace(s.rho, s.dim_a, s.dim_b, Subsystem::A));
    double sum_sq = 0.0;
    for (Index i = 0; i < ma.eigenvalues.size(); ++i) {
      const double sk = std::max(0.0, ma.eigenvalues[i]);
      sum_sq += sk * sk;
    }
    MinResult out;
    out.value = std::max(0.0, 1.0 - sum_sq);
    out.method = MinMethod::pure_formula;
    out.optimal_measurement = ProjectiveMeasurement::from_basis(ma.eigenvectors);
    out.iterations = 0;
    out.converged = true;
    return out;
  }
  if (s.dim_a == 2) return min_affinity_2xn(s, cfg);
  return min_affinity_brute(s, cfg);
}

// Hilbert-Schmidt MIN, max_Pi ||rho - Pi^A(rho)||^2.  Since the pinching is
// trace-orthogonal, this equals Tr(rho^2) minus the pinched overlap of rho,
// maximized by minimizing the same block objective with rho in place of
// sqrt(rho).  Not ancilla-invariant: scales with the ancilla purity.
inline MinResult hs_min(const BipartiteState& s, const OptimizerConfig& cfg = {}) {
  const auto blocks = detail::BlockDecomposition::of(s.rho, s.dim_a, s.dim_b);
  const MeasurementSpace space = measurement_space(s.marginal_a(), cfg.degeneracy_tol);
  auto opt = detail::minimize_over_measurements(
      space, [&](const Mat& basis) { return blocks.pinched_overlap(basis); }, cfg);
  MinResult r;
  r.value = std::max(0.0, s.purity() - opt.value);
  r.method = MinMethod::brute_force;
  r.optimal_measurement = ProjectiveMeasurement::from_basis(opt.basis);
  r.iterations = opt.evaluations;
  r.converged = opt.converged;
  return r;
}

// max_Pi ||sqrt(rho) - Pi^A(sqrt(rho))||^2 evaluated through literal matrix
// pinching.  Algebraically identical to min_affinity; kept as an independent
// route for the equivalence checks.
inline double luo_fu_min(const BipartiteState& s, const OptimizerConfig& cfg = {}) {
  const Mat sq = psd_sqrt(s.rho);
  const MeasurementSpace space = measurement_space(s.marginal_a(), cfg.degeneracy_tol);
  auto opt = detail::minimize_over_measurements(
      space,
      [&](const Mat& basis) {
        return -hs_norm_sq(sq - detail::pinch_on_a(sq, s.dim_a, s.dim_b, basis));
      },
      cfg);
  return std::max(0.0, -opt.value);
}

// --- Bell-diagonal closed forms ------------------------------------------------

// N_A = 1 - (h^2 + min_j d_j^2)/4 with h = sum sqrt(lambda_ab) and the d_j
// signed combinations of the sqrt eigenvalues.
inline double min_affinity_bell_diagonal(const CorrelationVector& c) {
  c.validate();
  const auto lam = c.bell_eigenvalues();
  std::array<double, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) r[i] = std::sqrt(std::max(0.0, lam[i]));
  const double h = r[0] + r[1] + r[2] + r[3];
  const double d1 = r[0] - r[1] + r[2] - r[3];
  const double d2 = -r[0] + r[1] + r[2] - r[3];
  const double d3 = r[0] + r[1] - r[2] - r[3];
  const double min_d2 = std::min({d1 * d1, d2 * d2, d3 * d3});
  return std::max(0.0, 1.0 - 0.25 * (h * h + min_d2));
}

inline double hs_min_bell_diagonal(const CorrelationVector& c) {
  c.validate();
  const double sq[3] = {c.c1 * c.c1, c.c2 * c.c2, c.c3 * c.c3};
  return std::max(0.0, 0.25 * (sq[0] + sq[1] + sq[2] - std::min({sq[0], sq[1], sq[2]})));
}

inline double concurrence_bell_diagonal(const CorrelationVector& c) {
  c.validate();
  const auto lam = c.bell_eigenvalues();
  const double lam_max = *std::max_element(lam.begin(), lam.end());
  return std::clamp(2.0 * lam_max - 1.0, 0.0, 1.0);
}

// --- upper bound ----------------------------------------------------------------

// Expansion coefficients gamma_ij = Tr( sqrt(rho) X_i ⊗ Y_j ) of sqrt(rho)
// in the Hermitian orthonormal product basis; real, with Tr(Gamma Gamma^t)
// = Tr(rho) = 1.
inline Eigen::MatrixXd gamma_matrix(const BipartiteState& s) {
  const Mat sq = psd_sqrt(s.rho);
  const auto xs = operator_basis(s.dim_a);
  const auto ys = operator_basis(s.dim_b);
  Eigen::MatrixXd g(static_cast<Index>(xs.size()), static_cast<Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      g(static_cast<Index>(i), static_cast<Index>(j)) =
          (sq * kron(xs[i], ys[j])).trace().real();
  return g;
}

// A measurement embeds as m orthonormal rows r_k acting on Gamma Gamma^t and
// the pinched overlap becomes Tr(R Gamma Gamma^t R^t).  Relaxing R to
// arbitrary orthonormal rows bounds that trace below by the sum of the m
// smallest eigenvalues mu_i, so
//   N_A(rho) <= 1 - sum of the m smallest mu_i,
// with equality for maximally entangled states (flat spectrum).
inline double min_affinity_upper_bound(const BipartiteState& s) {
  const Eigen::MatrixXd g = gamma_matrix(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g * g.transpose());
  double kept = 0.0;
  for (Index i = 0; i < s.dim_a; ++i) kept += std::max(0.0, es.eigenvalues()[i]);
  return std::clamp(1.0 - kept, 0.0, 1.0);
}

// --- family closed forms ----------------------------------------------------------

struct ClosedFormPair {
  double affinity_min = 0.0;
  double hs_min = 0.0;
};

// Both measures of the m x m Werner family; vanish exactly at x = 1/m.
inline ClosedFormPair closed_form_werner(Index m, double x) {
  if (m < 2) throw std::invalid_argument("closed_form_werner: dimension must be >= 2");
  if (!(x >= -1.0 && x <= 1.0))
    throw std::invalid_argument("closed_form_werner: x must lie in [-1, 1]");
  const double md = static_cast<double>(m);
  const double aff =
      0.5 * ((md - x) / (md + 1.0) - std::sqrt((md - 1.0) * (1.0 - x * x) / (md + 1.0)));
  const double hs =
      (md * x - 1.0) * (md * x - 1.0) / (md * (md - 1.0) * (md + 1.0) * (md + 1.0));
  return {std::max(0.0, aff), hs};
}

// Both measures of the m x m isotropic family; vanish at x = 1/m^2.
inline ClosedFormPair closed_form_isotropic(Index m, double x) {
  if (m < 2) throw std::invalid_argument("closed_form_isotropic: dimension must be >= 2");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("closed_form_isotropic: x must lie in [0, 1]");
  const double md = static_cast<double>(m);
  const double root = std::sqrt((md - 1.0) * x) - std::sqrt((1.0 - x) / (md + 1.0));
  const double aff = root * root / md;
  const double m2x = md * md * x - 1.0;
  const double hs = m2x * m2x / (md * (md - 1.0) * (md + 1.0) * (md + 1.0));
  return {aff, hs};
}

// --- concurrence -------------------------------------------------------------------

// Wootters concurrence of a two-qubit state: C = max(0, l1 - l2 - l3 - l4)
// with l_i the descending square roots of the eigenvalues of
// rho (sy ⊗ sy) rho* (sy ⊗ sy), computed through the Hermitian product
// sqrt(rho) rho~ sqrt(rho).
inline double concurrence(const BipartiteState& s) {
  if (s.dim_a != 2 || s.dim_b != 2)
    throw std::invalid_argument("concurrence: requires a two-qubit state");
  const Mat yy = kron(pauli(2), pauli(2));
  const Mat tilde = yy * s.rho.conjugate() * yy;
  const Mat sq = psd_sqrt(s.rho);
  EigenSystem es = hermitian_eig(sq * tilde * sq);
  std::array<double, 4> l{};
  for (Index i = 0; i < 4; ++i)
    l[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues[i]));
  return std::clamp(l[3] - l[2] - l[1] - l[0], 0.0, 1.0);
}

}  // namespace minaff
