#pragma once

// Implementations behind the CLI subcommands.  Exit-code contract:
//   0 success, 2 parse/file error, 3 invalid state, 4 usage error.

#include "minaff/io.hpp"
#include "minaff/measures.hpp"
#include "minaff/verify.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace minaff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalidState = 3;
inline constexpr int kExitUsage = 4;

namespace detail {

inline nlohmann::ordered_json measurement_json(const ProjectiveMeasurement& m) {
  nlohmann::ordered_json out;
  if (m.dim() == 2 && m.projectors.size() == 2) {
    // report the Bloch axis of the first projector
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (int i = 1; i <= 3; ++i)
      r.push_back((m.projectors[0] * pauli(i)).trace().real());
    out["bloch_r"] = std::move(r);
  }
  nlohmann::ordered_json projs = nlohmann::ordered_json::array();
  for (const Mat& p : m.projectors) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Index i = 0; i < p.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Index j = 0; j < p.cols(); ++j) row.push_back({p(i, j).real(), p(i, j).imag()});
      rows.push_back(std::move(row));
    }
    projs.push_back(std::move(rows));
  }
  out["projectors"] = std::move(projs);
  return out;
}

inline nlohmann::ordered_json min_result_json(const MinResult& r) {
  nlohmann::ordered_json out;
  out["value"] = r.value;
  out["method"] = to_string(r.method);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  out["measurement"] = measurement_json(r.optimal_measurement);
  return out;
}

inline std::vector<double> spectrum_of(const Mat& m) {
  EigenSystem es = hermitian_eig(m);
  return {es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size()};
}

inline int write_text_file(const std::string& path, const std::string& content,
                           std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kExitParse;
  }
  out << content;
  return kExitOk;
}

}  // namespace detail

// --- measure -----------------------------------------------------------------

struct MeasureOptions {
  std::string state_file;
  double alpha = 0.5;  // reported alongside; MIN quantities are fixed at 1/2
  OptimizerConfig optimizer;
  std::string out_path;  // empty -> stdout
};

inline int cmd_measure(const MeasureOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<BipartiteState> state;
  try {
    state = read_state_file(opts.state_file);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid state: " << e.what() << '\n';
    return kExitInvalidState;
  }

  const BipartiteState& s = *state;
  nlohmann::ordered_json report;
  report["dimA"] = s.dim_a;
  report["dimB"] = s.dim_b;
  report["alpha"] = opts.alpha;
  report["purity"] = s.purity();
  report["marginal_spectrum_a"] = detail::spectrum_of(s.marginal_a());
  report["marginal_spectrum_b"] = detail::spectrum_of(s.marginal_b());
  report["n_affinity"] = detail::min_result_json(min_affinity(s, opts.optimizer));
  report["n_hs"] = detail::min_result_json(hs_min(s, opts.optimizer));
  report["upper_bound"] = min_affinity_upper_bound(s);
  if (s.dim_a == 2 && s.dim_b == 2) report["concurrence"] = concurrence(s);

  const std::string text = report.dump(2) + "\n";
  if (!opts.out_path.empty()) return detail::write_text_file(opts.out_path, text, err);
  out << text;
  return kExitOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepSpec {
  std::string family;  // werner | isotropic | bell-diagonal-line
  Index m = 2;
  double param_start = 0.0;
  double param_end = 1.0;
  int points = 2;
};

inline int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& err) {
  const bool is_werner = spec.family == "werner";
  const bool is_isotropic = spec.family == "isotropic";
  const bool is_bd_line = spec.family == "bell-diagonal-line";
  if (!is_werner && !is_isotropic && !is_bd_line) {
    err << "error: unknown family '" << spec.family
        << "' (expected werner, isotropic or bell-diagonal-line)\n";
    return kExitUsage;
  }
  if (spec.points < 2) {
    err << "error: sweep needs at least 2 points\n";
    return kExitUsage;
  }
  if (spec.m < 2) {
    err << "error: m must be >= 2\n";
    return kExitUsage;
  }
  if (is_bd_line && spec.m != 2) {
    err << "error: bell-diagonal-line is a two-qubit family (m = 2)\n";
    return kExitUsage;
  }
  const double lo = is_werner ? -1.0 : (is_isotropic ? 0.0 : -1.0 / 3.0);
  const double hi = 1.0;
  if (!(spec.param_start >= lo && spec.param_end <= hi && spec.param_start <= spec.param_end)) {
    err << "error: parameter range [" << spec.param_start << ", " << spec.param_end
        << "] outside the validity interval [" << lo << ", " << hi << "] of " << spec.family
        << '\n';
    return kExitUsage;
  }

  std::ostringstream csv;
  csv << "param,n_affinity,n_hs\n";
  for (int i = 0; i < spec.points; ++i) {
    const double x =
        spec.param_start + (spec.param_end - spec.param_start) * i / (spec.points - 1);
    double na = 0.0, nhs = 0.0;
    if (is_werner) {
      ClosedFormPair pair = closed_form_werner(spec.m, x);
      na = pair.affinity_min;
      nhs = pair.hs_min;
    } else if (is_isotropic) {
      ClosedFormPair pair = closed_form_isotropic(spec.m, x);
      na = pair.affinity_min;
      nhs = pair.hs_min;
    } else {
      CorrelationVector c{-x, -x, -x};
      na = min_affinity_bell_diagonal(c);
      nhs = hs_min_bell_diagonal(c);
    }
    write_csv_row(csv, {x, na, nhs});
  }
  return detail::write_text_file(out_path, csv.str(), err);
}

// --- dynamics ----------------------------------------------------------------

struct DynamicsOptions {
  CorrelationVector c0;
  int points = 101;
  std::string out_path;
};

inline int cmd_dynamics(const DynamicsOptions& opts, std::ostream& err) {
  if (opts.points < 2) {
    err << "error: dynamics needs at least 2 grid points\n";
    return kExitUsage;
  }
  try {
    opts.c0.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: invalid initial state: " << e.what() << '\n';
    return kExitInvalidState;
  }
  std::ostringstream csv;
  csv << "gamma,n_affinity,n_hs,concurrence\n";
  for (const DynamicsRecord& r : dynamics_sweep(opts.c0, uniform_grid(0.0, 1.0, opts.points)))
    write_csv_row(csv, {r.gamma, r.n_affinity, r.n_hs, r.concurrence});
  return detail::write_text_file(opts.out_path, csv.str(), err);
}

// --- verify ------------------------------------------------------------------

inline int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out,
                      std::ostream& err) {
  try {
    SuiteReport report = run_suite(suite, seed);
    print_report(out, report);
    return report.ok() ? kExitOk : 1;
  } catch (const UnknownSuite& e) {
    err << "error: " << e.what() << " (available:";
    for (const auto& n : suite_names()) err << ' ' << n;
    err << ")\n";
    return kExitUsage;
  }
}

}  // namespace minaff
