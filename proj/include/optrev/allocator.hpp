#pragma once

#include <functional>
#include <vector>

#include "optrev/types.hpp"

namespace optrev {

// One separable term of the objective. `curvature` may be left empty; when
// present it enables Newton steps inside the per-variable root bracket.
struct SeparableObjective {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> curvature;
};

// max sum_i value_i(x_i)  s.t.  sum_i x_i = budget,  0 <= x_i <= upper_bounds[i]
struct AllocationProblem {
  std::vector<SeparableObjective> objectives;
  double budget = 0.0;
  std::vector<double> upper_bounds;
};

struct AllocationResult {
  std::vector<double> values;
  double multiplier = 0.0;  // eta at termination
  double objective = 0.0;
  bool saturated = false;   // sum of bounds <= budget, all variables at bound
};

// Water-filling by bisection on the multiplier eta over
// [min_i d_i(U_i), max_i d_i(0)] (200 iterations or width < 1e-12), with a
// per-variable root solve of d_i(x) = eta inside [0, U_i]. Residual budget at
// the final bracket (non-concave objectives make the total allocation jump in
// eta) is filled from the bracket's low-endpoint allocation, jump variables
// first, so the marginal value of every filled unit stays >= eta.
//
// For concave non-decreasing objectives the result is KKT-optimal: each
// variable is either interior with d_i(x_i) = eta, at 0 with d_i(0) <= eta,
// or at its bound with d_i(U_i) >= eta (tolerance 1e-6 relative).
// budget >= sum of bounds returns the bounds with saturated = true;
// budget <= 0 returns zeros. Empty problems throw std::invalid_argument, a
// NaN from an objective throws numeric_error carrying the variable index.
AllocationResult allocate(const AllocationProblem& problem);

// The bisection inner step: for each variable, the clamp to [0, U_i] of the
// solution of d_i(x) = eta. The total is non-increasing in eta.
std::vector<double> inner_allocation_at(const AllocationProblem& problem, double eta);

}  // namespace optrev
