#pragma once

#include <cstdint>

#include "optrev/types.hpp"

namespace optrev {

struct SimConfig {
  long cycles = 100000;
  long warmup_cycles = 100;
  std::uint64_t seed = 1;
};

struct SimReport {
  double mean_revenue_per_cycle = 0.0;
  double std_error = 0.0;  // batch means, batch = 100 cycles
  double served_fraction = 0.0;       // served / absorbed, over all packets
  double loop_served_fraction = 0.0;  // served / absorbed, loop packets only
  double analytic_revenue = 0.0;      // M(v) - C*theta
  double z_score = 0.0;               // (mean - analytic) / std_error
  long total_arrivals = 0;
  long served_packets = 0;
  long dropped_packets = 0;
  long in_loop_at_end = 0;
  long loop_absorbed = 0;  // loop packets served or dropped
};

// Probability that a loop packet is eventually served rather than dropped:
// p / (p + q - p*q). Throws std::invalid_argument for p = q = 0 (the chain
// never absorbs) or inputs outside [0,1].
double eventual_service_prob(double p, double q);

// Cycle-synchronous Monte Carlo of one station, validating the analytic
// revenue. Per cycle: in-visit arrivals Poisson(rate*v) are served on the
// spot; each packet already in the loop independently retries with p(v)
// (served), else is dropped with q(v), else stays; out-of-visit arrivals
// Poisson(rate*(c-v)) join the loop and face their first retry/drop test in
// the next cycle. Revenue is booked in the cycle the packet is absorbed.
// Packet identity within a class never matters, so the loop is kept as one
// count per class and processed with binomial draws.
SimReport simulate_station(const StationParams& s, double c, double v,
                           const SimConfig& cfg);

}  // namespace optrev
