#include "optrev/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace optrev {

namespace {

constexpr int kOuterIterations = 200;
constexpr double kEtaWidth = 1e-12;

double checked(double x, int index) {
  if (std::isnan(x))
    throw numeric_error("objective returned NaN for variable " + std::to_string(index),
                        index);
  return x;
}

// Root of derivative(x) = eta inside (0, upper), given d(0) > eta > d(upper).
// Bisection bracket with Newton proposals when a curvature callback exists;
// a proposal outside the open bracket (or with non-negative curvature, which
// happens on non-concave stretches) falls back to the midpoint.
double solve_root(const SeparableObjective& f, double upper, double eta, int index,
                  double xtol) {
  double lo = 0.0, hi = upper;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    const double g = checked(f.derivative(x), index) - eta;
    if (g > 0.0)
      lo = x;
    else
      hi = x;
    double next = 0.5 * (lo + hi);
    if (f.curvature) {
      const double curv = f.curvature(x);
      if (curv < 0.0) {
        const double newton = x - g / curv;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

struct Cached {
  std::vector<double> d_at_zero;
  std::vector<double> d_at_bound;
};

Cached cache_endpoints(const AllocationProblem& p) {
  Cached c;
  const int n = static_cast<int>(p.objectives.size());
  c.d_at_zero.resize(n);
  c.d_at_bound.resize(n);
  for (int i = 0; i < n; ++i) {
    c.d_at_zero[i] = checked(p.objectives[i].derivative(0.0), i);
    c.d_at_bound[i] = checked(p.objectives[i].derivative(p.upper_bounds[i]), i);
  }
  return c;
}

double value_at(const AllocationProblem& p, int i, double x) {
  return checked(p.objectives[i].value(x), i);
}

std::vector<double> values_at_eta(const AllocationProblem& p, const Cached& c,
                                  double eta, double xtol) {
  const int n = static_cast<int>(p.objectives.size());
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    if (c.d_at_zero[i] <= eta)
      v[i] = 0.0;
    else if (c.d_at_bound[i] >= eta)
      v[i] = p.upper_bounds[i];
    else
      v[i] = solve_root(p.objectives[i], p.upper_bounds[i], eta, i, xtol);
  }
  return v;
}

void check_problem(const AllocationProblem& p) {
  if (p.objectives.empty())
    throw std::invalid_argument("allocation problem has no objectives");
  if (p.objectives.size() != p.upper_bounds.size())
    throw std::invalid_argument("objectives and upper_bounds differ in length");
  for (double u : p.upper_bounds)
    if (!(u >= 0.0)) throw std::invalid_argument("upper bounds must be >= 0");
  if (!(p.budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
}

}  // namespace

std::vector<double> inner_allocation_at(const AllocationProblem& problem, double eta) {
  check_problem(problem);
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
  const Cached cache = cache_endpoints(problem);
  const double scale =
      *std::max_element(problem.upper_bounds.begin(), problem.upper_bounds.end());
  return values_at_eta(problem, cache, eta, 1e-13 * std::max(1.0, scale));
}

AllocationResult allocate(const AllocationProblem& problem) {
  check_problem(problem);
  const int n = static_cast<int>(problem.objectives.size());
  AllocationResult result;

  const double bound_sum =
      std::accumulate(problem.upper_bounds.begin(), problem.upper_bounds.end(), 0.0);
  const Cached cache = cache_endpoints(problem);

  if (problem.budget >= bound_sum) {
    result.values = problem.upper_bounds;
    result.saturated = true;
    result.multiplier =
        *std::min_element(cache.d_at_bound.begin(), cache.d_at_bound.end());
  } else if (problem.budget == 0.0) {
    result.values.assign(n, 0.0);
    result.multiplier =
        *std::max_element(cache.d_at_zero.begin(), cache.d_at_zero.end());
  } else {
    const double scale =
        *std::max_element(problem.upper_bounds.begin(), problem.upper_bounds.end());
    const double xtol_search = 1e-10 * std::max(1.0, scale);
    const double xtol_final = 1e-13 * std::max(1.0, scale);

    double lo = *std::min_element(cache.d_at_bound.begin(), cache.d_at_bound.end());
    double hi = *std::max_element(cache.d_at_zero.begin(), cache.d_at_zero.end());
    for (int it = 0; it < kOuterIterations && hi - lo >= kEtaWidth; ++it) {
      const double mid = 0.5 * (lo + hi);
      const std::vector<double> v = values_at_eta(problem, cache, mid, xtol_search);
      const double total = std::accumulate(v.begin(), v.end(), 0.0);
      if (total > problem.budget)
        lo = mid;
      else
        hi = mid;
    }

    result.values = values_at_eta(problem, cache, hi, xtol_final);
    result.multiplier = hi;

    double deficit = problem.budget -
                     std::accumulate(result.values.begin(), result.values.end(), 0.0);
    if (deficit > 0.0) {
      // The total can jump in eta when an objective is non-concave; top the
      // jump variables up first (their marginal stays >= eta across the jump),
      // then fall back to plain index order (flat objectives).
      const std::vector<double> high = values_at_eta(problem, cache, lo, xtol_final);
      for (int i = 0; i < n && deficit > 0.0; ++i) {
        const double take = std::min(std::max(high[i] - result.values[i], 0.0), deficit);
        result.values[i] += take;
        deficit -= take;
      }
      for (int i = 0; i < n && deficit > 0.0; ++i) {
        const double take =
            std::min(problem.upper_bounds[i] - result.values[i], deficit);
        result.values[i] += take;
        deficit -= take;
      }
    }
  }

  result.objective = 0.0;
  for (int i = 0; i < n; ++i) result.objective += value_at(problem, i, result.values[i]);
  return result;
}

}  // namespace optrev
