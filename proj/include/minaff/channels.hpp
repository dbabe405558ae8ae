#pragma once

// Kraus-operator channel engine: the generalized amplitude damping channel,
// its action E(rho) = sum_ij (E_i ⊗ E_j) rho (E_i ⊗ E_j)^dagger on both
// qubits, the correlation-vector shortcut at p = 1/2, and dynamics sweeps.

#include "minaff/measures.hpp"

namespace minaff {

struct KrausChannel {
  std::vector<Mat> operators;
  std::string label;

  Index dim() const { return operators.empty() ? 0 : operators.front().rows(); }

  // Completeness sum_k E_k^dagger E_k = 1.
  void validate(double tol = 1e-10) const {
    if (operators.empty()) throw std::invalid_argument("KrausChannel: no operators");
    const Index d = dim();
    Mat sum = Mat::Zero(d, d);
    for (const Mat& e : operators) {
      if (e.rows() != d || e.cols() != d)
        throw std::invalid_argument("KrausChannel: operators have mixed dimensions");
      sum += e.adjoint() * e;
    }
    const double defect = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > tol)
      throw std::invalid_argument("KrausChannel '" + label + "': completeness defect " +
                                  detail::sci(defect));
  }

  // Single-system action sum_k E_k rho E_k^dagger.
  Mat apply_single(const Mat& rho) const {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const Mat& e : operators) out += e * rho * e.adjoint();
    return out;
  }
};

// gamma = 1 - exp(-gamma' t) is the decay parameter, p the equilibrium
// population of the ground state.
struct GadParams {
  double gamma = 0.0;
  double p = 0.5;
};

inline KrausChannel identity_channel(Index d = 2) {
  return {{Mat::Identity(d, d)}, "identity"};
}

// Generalized amplitude damping Kraus operators:
//   E0 = sqrt(p)     diag(1, sqrt(1-g))      E1 = sqrt(p)     sqrt(g) |0><1|
//   E2 = sqrt(1-p)   diag(sqrt(1-g), 1)      E3 = sqrt(1-p)   sqrt(g) |1><0|
inline KrausChannel gad_kraus(const GadParams& params) {
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0))
    throw std::invalid_argument("gad_kraus: gamma must lie in [0, 1]");
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw std::invalid_argument("gad_kraus: p must lie in [0, 1]");
  const double sp = std::sqrt(params.p);
  const double sq = std::sqrt(1.0 - params.p);
  const double damp = std::sqrt(1.0 - params.gamma);
  const double jump = std::sqrt(params.gamma);
  Mat e0(2, 2), e1(2, 2), e2(2, 2), e3(2, 2);
  e0 << sp, 0, 0, sp * damp;
  e1 << 0, sp * jump, 0, 0;
  e2 << sq * damp, 0, 0, sq;
  e3 << 0, 0, sq * jump, 0;
  KrausChannel ch{{e0, e1, e2, e3},
                  "gad(gamma=" + std::to_string(params.gamma) + ",p=" + std::to_string(params.p) + ")"};
  return ch;
}

// E(rho) = sum_ij (E_i ⊗ E_j) rho (E_i ⊗ E_j)^dagger: identical copies of the
// channel on both qubits.
inline BipartiteState apply_product_channel(const BipartiteState& s, const KrausChannel& ch) {
  if (s.dim_a != 2 || s.dim_b != 2)
    throw std::invalid_argument("apply_product_channel: requires a two-qubit state");
  if (ch.dim() != 2)
    throw std::invalid_argument("apply_product_channel: requires single-qubit Kraus operators");
  ch.validate();
  Mat out = Mat::Zero(4, 4);
  for (const Mat& ei : ch.operators)
    for (const Mat& ej : ch.operators) {
      Mat k = kron(ei, ej);
      out += k * s.rho * k.adjoint();
    }
  return BipartiteState(2, 2, out);
}

// Correlation-vector map of GAD at p = 1/2:
//   c1' = (1-g) c1,  c2' = (1-g) c2,  c3' = (1-g)^2 c3.
// Other p values have no such shortcut; use the Kraus path.
inline CorrelationVector evolve_bd(const CorrelationVector& c, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("evolve_bd: gamma must lie in [0, 1]");
  c.validate();
  const double f = 1.0 - gamma;
  return {f * c.c1, f * c.c2, f * f * c.c3};
}

struct DynamicsRecord {
  double gamma = 0.0;
  double n_affinity = 0.0;
  double n_hs = 0.0;
  double concurrence = 0.0;
};

inline std::vector<double> uniform_grid(double from, double to, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = from + (to - from) * i / (points - 1);
  return g;
}

// Evolves c0 through GAD (p = 1/2) for each grid value of gamma and
// evaluates the three Bell-diagonal closed forms.
inline std::vector<DynamicsRecord> dynamics_sweep(const CorrelationVector& c0,
                                                  const std::vector<double>& gammas) {
  c0.validate();
  std::vector<DynamicsRecord> out;
  out.reserve(gammas.size());
  for (double g : gammas) {
    const CorrelationVector c = evolve_bd(c0, g);
    out.push_back({g, min_affinity_bell_diagonal(c), hs_min_bell_diagonal(c),
                   concurrence_bell_diagonal(c)});
  }
  return out;
}

// Random CPTP channel with k Kraus operators (for property sweeps):
// Ginibre blocks normalized by the inverse square root of their completeness
// sum.
inline KrausChannel random_kraus_channel(Index d, Index k, Rng& rng) {
  std::vector<Mat> gs;
  gs.reserve(static_cast<std::size_t>(k));
  Mat sum = Mat::Zero(d, d);
  for (Index i = 0; i < k; ++i) {
    gs.push_back(ginibre(d, d, rng));
    sum += gs.back().adjoint() * gs.back();
  }
  EigenSystem es = hermitian_eig(sum);
  Eigen::VectorXd inv_sqrt = es.eigenvalues.array().max(1e-300).rsqrt();
  Mat s_inv_sqrt = es.eigenvectors * inv_sqrt.asDiagonal() * es.eigenvectors.adjoint();
  KrausChannel ch;
  ch.label = "random";
  for (Mat& g : gs) ch.operators.push_back(g * s_inv_sqrt);
  return ch;
}

}  // namespace minaff
