#pragma once

// Seeded property sweeps behind the `verify` command.  Each suite runs a set
// of named checks and reports per-check pass counts together with the worst
// observed deviation.

#include "minaff/channels.hpp"

#include <ostream>

namespace minaff {

struct PropertyResult {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst = 0.0;  // largest deviation seen (signed checks use the violation)
  double tol = 0.0;

  bool ok() const { return passed == total; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool ok() const {
    for (const auto& p : properties)
      if (!p.ok()) return false;
    return true;
  }
};

struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"metric-axioms", "min-equivalences", "ancilla",
                                                 "bounds", "channel"};
  return names;
}

namespace detail {

inline void record(PropertyResult& r, double deviation) {
  ++r.total;
  r.worst = std::max(r.worst, deviation);
  if (deviation <= r.tol) ++r.passed;
}

inline CorrelationVector sample_tetrahedron(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    CorrelationVector c{u(rng), u(rng), u(rng)};
    if (c.in_tetrahedron(0.0)) return c;
  }
}

// sum_k p_k |k><k| ⊗ rho_k with well-separated p_k, so the marginal is
// nondegenerate and the state is classical on A.
inline BipartiteState classical_quantum_state(Index da, Index db, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(da));
  double sum = 0.0;
  for (Index k = 0; k < da; ++k) {
    p[static_cast<std::size_t>(k)] = 1.0 + 2.0 * static_cast<double>(k) + 0.5 * u(rng);
    sum += p[static_cast<std::size_t>(k)];
  }
  Mat rho = Mat::Zero(da * db, da * db);
  for (Index k = 0; k < da; ++k)
    rho.block(k * db, k * db, db, db) =
        (p[static_cast<std::size_t>(k)] / sum) * random_density_matrix(db, db, rng);
  return BipartiteState(da, db, rho);
}

inline SuiteReport metric_axioms_suite(std::uint64_t seed) {
  SuiteReport report{"metric-axioms", seed, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> dim_pick(2, 4);
  std::uniform_int_distribution<int> rank_pick(1, 4);

  PropertyResult identity{"identity-of-indiscernibles", 0, 0, 0.0, 1e-9};
  // d = sqrt(1 - A) turns ~1e-15 affinity noise into ~3e-8 of distance
  PropertyResult metric_zero{"metric-vanishes-on-diagonal", 0, 0, 0.0, 1e-7};
  PropertyResult symmetry{"symmetry-at-alpha-half", 0, 0, 0.0, 1e-10};
  for (int t = 0; t < 100; ++t) {
    const Index d = dim_pick(rng);
    Mat rho = random_density_matrix(d, std::min<Index>(d, rank_pick(rng)), rng);
    Mat sig = random_density_matrix(d, std::min<Index>(d, rank_pick(rng)), rng);
    record(identity, std::abs(1.0 - affinity(rho, rho)));
    record(metric_zero, affinity_metric(rho, rho));
    record(symmetry, std::abs(affinity(rho, sig) - affinity(sig, rho)));
  }
  report.properties.push_back(identity);
  report.properties.push_back(metric_zero);
  report.properties.push_back(symmetry);

  PropertyResult triangle{"triangle-inequality", 0, 0, 0.0, 1e-12};
  for (int t = 0; t < 500; ++t) {
    const Index d = dim_pick(rng);
    Mat a = random_density_matrix(d, d, rng);
    Mat b = random_density_matrix(d, d, rng);
    Mat c = random_density_matrix(d, d, rng);
    record(triangle, affinity_metric(a, c) - affinity_metric(a, b) - affinity_metric(b, c));
  }
  report.properties.push_back(triangle);

  PropertyResult mono{"cptp-monotonicity", 0, 0, 0.0, 1e-9};
  std::uniform_int_distribution<int> kraus_pick(2, 4);
  for (int t = 0; t < 100; ++t) {
    const Index d = dim_pick(rng);
    Mat rho = random_density_matrix(d, d, rng);
    Mat sig = random_density_matrix(d, d, rng);
    KrausChannel ch = random_kraus_channel(d, kraus_pick(rng), rng);
    record(mono, affinity(rho, sig) - affinity(ch.apply_single(rho), ch.apply_single(sig)));
  }
  report.properties.push_back(mono);

  PropertyResult concave{"joint-concavity", 0, 0, 0.0, 1e-9};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Index d = dim_pick(rng);
    double w[3] = {u(rng) + 1e-3, u(rng) + 1e-3, u(rng) + 1e-3};
    const double wsum = w[0] + w[1] + w[2];
    Mat rho_mix = Mat::Zero(d, d), sig_mix = Mat::Zero(d, d);
    double rhs = 0.0;
    for (int i = 0; i < 3; ++i) {
      Mat rho = random_density_matrix(d, d, rng);
      Mat sig = random_density_matrix(d, d, rng);
      rho_mix += w[i] / wsum * rho;
      sig_mix += w[i] / wsum * sig;
      rhs += w[i] / wsum * affinity(rho, sig);
    }
    record(concave, rhs - affinity(rho_mix, sig_mix));
  }
  report.properties.push_back(concave);
  return report;
}

inline SuiteReport min_equivalences_suite(std::uint64_t seed) {
  SuiteReport report{"min-equivalences", seed, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> db_pick(2, 3);

  PropertyResult pure{"pure-schmidt-formula-vs-brute", 0, 0, 0.0, 1e-6};
  for (int t = 0; t < 50; ++t) {
    const Index db = db_pick(rng);
    BipartiteState s(2, db, random_density_matrix(2 * db, 1, rng));
    SchmidtSpectrum ss = schmidt_spectrum(s);
    double expected = 1.0;
    for (double v : ss.coefficients) expected -= v * v;
    record(pure, std::abs(min_affinity_brute(s).value - expected));
  }
  report.properties.push_back(pure);

  PropertyResult closed{"closed-2xn-vs-brute", 0, 0, 0.0, 1e-4};
  std::uniform_int_distribution<int> rank_pick(1, 4);
  for (int t = 0; t < 100; ++t) {
    const Index db = db_pick(rng);
    BipartiteState s(2, db, random_density_matrix(2 * db, rank_pick(rng), rng));
    record(closed, std::abs(min_affinity_2xn(s).value - min_affinity_brute(s).value));
  }
  report.properties.push_back(closed);

  PropertyResult luofu{"sqrt-norm-equivalence", 0, 0, 0.0, 1e-8};
  for (int t = 0; t < 50; ++t) {
    BipartiteState s(2, 2, random_density_matrix(4, rank_pick(rng), rng));
    record(luofu, std::abs(luo_fu_min(s) - min_affinity(s).value));
  }
  report.properties.push_back(luofu);

  PropertyResult bd{"bell-diagonal-closed-form-vs-brute", 0, 0, 0.0, 1e-5};
  for (int t = 0; t < 50; ++t) {
    CorrelationVector c = sample_tetrahedron(rng);
    record(bd, std::abs(min_affinity_bell_diagonal(c) -
                        min_affinity_brute(bell_diagonal(c)).value));
  }
  report.properties.push_back(bd);
  return report;
}

inline SuiteReport ancilla_suite(std::uint64_t seed) {
  SuiteReport report{"ancilla", seed, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> rank_pick(1, 4);
  std::uniform_int_distribution<int> dc_pick(2, 3);

  PropertyResult aff{"affinity-min-ancilla-invariance", 0, 0, 0.0, 1e-6};
  PropertyResult hs{"hs-min-scales-with-ancilla-purity", 0, 0, 0.0, 1e-6};
  for (int t = 0; t < 20; ++t) {
    BipartiteState s(2, 2, random_density_matrix(4, rank_pick(rng), rng));
    const Index dc = dc_pick(rng);
    Mat sigma = random_density_matrix(dc, dc, rng);  // mixed ancilla
    BipartiteState ext = add_ancilla(s, sigma);
    record(aff, std::abs(min_affinity(ext).value - min_affinity(s).value));
    record(hs, std::abs(hs_min(ext).value - hs_min(s).value * purity(sigma)));
  }
  report.properties.push_back(aff);
  report.properties.push_back(hs);
  return report;
}

inline SuiteReport bounds_suite(std::uint64_t seed) {
  SuiteReport report{"bounds", seed, {}};
  Rng rng(seed);
  const Index shapes[3][2] = {{2, 2}, {2, 3}, {3, 3}};

  PropertyResult range{"value-in-range", 0, 0, 0.0, 1e-9};
  PropertyResult dominates{"upper-bound-dominates", 0, 0, 0.0, 1e-6};
  for (const auto& shape : shapes) {
    const Index da = shape[0], db = shape[1];
    std::uniform_int_distribution<int> rank_pick(1, static_cast<int>(da * db));
    for (int t = 0; t < 100; ++t) {
      BipartiteState s(da, db, random_density_matrix(da * db, rank_pick(rng), rng));
      const double value = min_affinity(s).value;
      const double cap = 1.0 - 1.0 / static_cast<double>(da);
      record(range, std::max(-value, value - cap));
      record(dominates, value - min_affinity_upper_bound(s));
    }
  }
  report.properties.push_back(range);
  report.properties.push_back(dominates);

  PropertyResult tight{"bound-tight-at-maximal-entanglement", 0, 0, 0.0, 1e-6};
  {
    BipartiteState bell = pure_from_schmidt({{0.5, 0.5}}, 2, 2);
    record(tight, std::abs(min_affinity_upper_bound(bell) - 0.5));
    record(tight, std::abs(min_affinity(bell).value - 0.5));
  }
  report.properties.push_back(tight);

  PropertyResult cq{"classical-quantum-states-vanish", 0, 0, 0.0, 1e-8};
  std::uniform_int_distribution<int> dim_pick(2, 3);
  for (int t = 0; t < 20; ++t) {
    BipartiteState s = classical_quantum_state(dim_pick(rng), dim_pick(rng), rng);
    record(cq, min_affinity(s).value);
  }
  report.properties.push_back(cq);

  PropertyResult lu{"local-unitary-invariance", 0, 0, 0.0, 1e-6};
  std::uniform_int_distribution<int> rank_pick(1, 4);
  for (int t = 0; t < 20; ++t) {
    const Index da = dim_pick(rng), db = dim_pick(rng);
    BipartiteState s(da, db,
                     random_density_matrix(da * db, std::min<Index>(da * db, rank_pick(rng)), rng));
    Mat uv = kron(random_unitary(da, rng), random_unitary(db, rng));
    BipartiteState rotated(da, db, uv * s.rho * uv.adjoint());
    record(lu, std::abs(min_affinity(rotated).value - min_affinity(s).value));
  }
  report.properties.push_back(lu);
  return report;
}

inline SuiteReport channel_suite(std::uint64_t seed) {
  SuiteReport report{"channel", seed, {}};
  Rng rng(seed);

  PropertyResult complete{"kraus-completeness", 0, 0, 0.0, 1e-10};
  for (int gi = 0; gi <= 4; ++gi)
    for (int pi = 0; pi <= 4; ++pi) {
      KrausChannel ch = gad_kraus({gi / 4.0, pi / 4.0});
      Mat sum = Mat::Zero(2, 2);
      for (const Mat& e : ch.operators) sum += e.adjoint() * e;
      record(complete, (sum - Mat::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
  report.properties.push_back(complete);

  PropertyResult map_vs_kraus{"correlation-map-matches-kraus", 0, 0, 0.0, 1e-10};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    CorrelationVector c = sample_tetrahedron(rng);
    const double gamma = u(rng);
    BipartiteState evolved = apply_product_channel(bell_diagonal(c), gad_kraus({gamma, 0.5}));
    CorrelationVector via_kraus = correlation_vector_of(evolved);
    CorrelationVector via_map = evolve_bd(c, gamma);
    const double dev = std::max({std::abs(via_kraus.c1 - via_map.c1),
                                 std::abs(via_kraus.c2 - via_map.c2),
                                 std::abs(via_kraus.c3 - via_map.c3)});
    record(map_vs_kraus, dev);
  }
  report.properties.push_back(map_vs_kraus);

  PropertyResult tp{"trace-and-positivity-preserved", 0, 0, 0.0, 1e-10};
  std::uniform_int_distribution<int> rank_pick(1, 4);
  for (int t = 0; t < 100; ++t) {
    BipartiteState s(2, 2, random_density_matrix(4, rank_pick(rng), rng));
    BipartiteState out = apply_product_channel(s, gad_kraus({u(rng), u(rng)}));
    EigenSystem es = hermitian_eig(out.rho);
    record(tp, std::max(std::abs(out.rho.trace().real() - 1.0),
                        std::max(0.0, -es.eigenvalues.minCoeff())));
  }
  report.properties.push_back(tp);

  PropertyResult mono{"decay-monotone-from-bell-vertex", 0, 0, 0.0, 1e-12};
  {
    auto records = dynamics_sweep({1.0, 1.0, -1.0}, uniform_grid(0.0, 1.0, 101));
    for (std::size_t i = 1; i < records.size(); ++i) {
      record(mono, records[i].n_affinity - records[i - 1].n_affinity);
      record(mono, records[i].concurrence - records[i - 1].concurrence);
    }
  }
  report.properties.push_back(mono);
  return report;
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "metric-axioms") return detail::metric_axioms_suite(seed);
  if (name == "min-equivalences") return detail::min_equivalences_suite(seed);
  if (name == "ancilla") return detail::ancilla_suite(seed);
  if (name == "bounds") return detail::bounds_suite(seed);
  if (name == "channel") return detail::channel_suite(seed);
  throw UnknownSuite("unknown suite '" + name + "'");
}

inline void print_report(std::ostream& out, const SuiteReport& report) {
  out << "suite " << report.suite << " (seed " << report.seed << ")\n";
  for (const auto& p : report.properties) {
    out << "  " << p.name << ": " << p.passed << "/" << p.total
        << (p.ok() ? " pass" : " FAIL") << " (worst deviation " << detail::sci(p.worst)
        << ", tol " << detail::sci(p.tol) << ")\n";
  }
}

}  // namespace minaff
