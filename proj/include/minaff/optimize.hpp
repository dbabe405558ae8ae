#pragma once

// Derivative-free local search (Nelder-Mead) plus a seeded multi-start
// driver.  Deterministic for a fixed seed; restarts are evaluated
// sequentially and ties keep the earliest start.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace minaff {

struct LocalSearchResult {
  std::vector<double> point;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Classic Nelder-Mead simplex search.  Terminates when the simplex value
// spread drops below improve_tol (the objective no longer improves over a
// step) or the evaluation budget runs out.
template <typename F>
LocalSearchResult nelder_mead(F&& f, std::vector<double> start, double step = 0.6,
                              double improve_tol = 1e-12, long max_evals = 20000) {
  const std::size_t n = start.size();
  LocalSearchResult result;

  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++result.evaluations;
  }

  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (result.evaluations < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

    if (values[worst] - values[best] <= improve_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

    for (std::size_t j = 0; j < n; ++j)
      xr[j] = centroid[j] + alpha * (centroid[j] - simplex[worst][j]);
    const double fr = f(xr);
    ++result.evaluations;

    if (fr < values[best]) {
      for (std::size_t j = 0; j < n; ++j)
        xe[j] = centroid[j] + gamma * (xr[j] - centroid[j]);
      const double fe = f(xe);
      ++result.evaluations;
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
    } else if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const std::vector<double>& anchor = outside ? xr : simplex[worst];
      for (std::size_t j = 0; j < n; ++j)
        xc[j] = centroid[j] + beta * (anchor[j] - centroid[j]);
      const double fc = f(xc);
      ++result.evaluations;
      if (fc < (outside ? fr : values[worst])) {
        simplex[worst] = xc;
        values[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[best][j] + delta * (simplex[i][j] - simplex[best][j]);
          values[i] = f(simplex[i]);
          ++result.evaluations;
        }
      }
    }
  }

  std::size_t argmin = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (values[i] < values[argmin]) argmin = i;
  result.point = simplex[argmin];
  result.value = values[argmin];
  return result;
}

struct MultiStartConfig {
  std::uint64_t seed = 1;
  int starts = 32;
  double step = 0.6;
  double improve_tol = 1e-12;
  long max_evals_per_start = 20000;
};

// Runs Nelder-Mead from the origin and from (starts - 1) seeded random
// points drawn uniformly from [-pi, pi]^dim; keeps the best minimum.
template <typename F>
LocalSearchResult minimize_multistart(F&& f, std::size_t dim, const MultiStartConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(-3.14159265358979323846, 3.14159265358979323846);

  LocalSearchResult best;
  long total_evals = 0;
  for (int s = 0; s < std::max(1, cfg.starts); ++s) {
    std::vector<double> x0(dim, 0.0);
    if (s > 0)
      for (double& x : x0) x = uniform(rng);
    LocalSearchResult run =
        nelder_mead(f, std::move(x0), cfg.step, cfg.improve_tol, cfg.max_evals_per_start);
    total_evals += run.evaluations;
    if (s == 0 || run.value < best.value) {
      best = std::move(run);
    }
  }
  best.evaluations = total_evals;
  return best;
}

}  // namespace minaff
