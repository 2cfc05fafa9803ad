#pragma once

#include <functional>

#include "optrev/types.hpp"

namespace optrev {

// Retry/drop probabilities as functions of the visit period. The default
// concrete model is exponential:
//   p(V) = 1 - exp(-retry_rate * V),   q(V) = exp(-drop_decay * V).
struct ProbabilityModel {
  std::function<double(double)> retrial;  // p(V)
  std::function<double(double)> drop;     // q(V)

  static ProbabilityModel exponential(double retry_rate, double drop_decay);
};

// p(v), checked to [0,1]. Negative v throws std::invalid_argument.
double retrial_prob(const ProbabilityModel& m, double v);
// q(v), checked to [0,1].
double drop_prob(const ProbabilityModel& m, double v);

// Probability that a loop packet leaves (served or dropped) in one cycle:
// r = p + q - p*q. Inputs outside [0,1] throw.
double leave_prob(double p, double q);

// Expected gross revenue per cycle for one station at visit period v:
//
//   M(v) = gamma * [ (c - v) * p(v)/r(v) + v ]
//
// with the convention p/r := 0 when p = 0 (a packet that never retries earns
// nothing; removes the 0/0 for models with q(0) = 0). Exponential model,
// evaluated in closed form; exact at the endpoints: M(0) = 0, M(c) = gamma*c.
double station_revenue(const StationParams& s, double c, double v);

// M(v) - c * theta.
double net_revenue(const StationParams& s, double c, double v);

// dM/dv and d2M/dv2, closed form for the exponential model.
double revenue_derivative(const StationParams& s, double c, double v);
double revenue_curvature(const StationParams& s, double c, double v);

// Generic-model versions. The derivative falls back to central finite
// differences (step 1e-6*c, one-sided at the boundaries).
double station_revenue(const ProbabilityModel& m, double gamma, double c, double v);
double revenue_derivative(const ProbabilityModel& m, double gamma, double c, double v);

}  // namespace optrev
