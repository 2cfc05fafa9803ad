#include "optrev/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "optrev/model.hpp"
#include "optrev/rng.hpp"

namespace optrev {

double eventual_service_prob(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("p and q must be in [0,1]");
  if (p == 0.0 && q == 0.0)
    throw std::invalid_argument("p = q = 0: a loop packet never leaves");
  return p / (p + q - p * q);
}

SimReport simulate_station(const StationParams& s, double c, double v,
                           const SimConfig& cfg) {
  if (!(v >= 0.0 && v <= c))
    throw std::invalid_argument("visit period must be in [0, frame time]");
  if (cfg.cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  if (cfg.warmup_cycles < 0 || cfg.warmup_cycles >= cfg.cycles)
    throw std::invalid_argument("warmup must be in [0, cycles)");

  const std::vector<TrafficClass> classes = effective_classes(s);
  const double p = 1.0 - std::exp(-s.retry_rate * v);
  const double q = std::exp(-s.drop_decay * v);

  SimReport report;
  report.analytic_revenue = net_revenue(s, c, v);

  SplitMix64 rng(SplitMix64::mix(cfg.seed));
  std::vector<long> loop(classes.size(), 0);

  const long measured = cfg.cycles - cfg.warmup_cycles;
  constexpr long kBatch = 100;
  std::vector<double> batch_means;
  batch_means.reserve(static_cast<std::size_t>(measured / kBatch + 1));
  double batch_sum = 0.0;
  long batch_fill = 0;
  double total = 0.0;

  for (long cycle = 0; cycle < cfg.cycles; ++cycle) {
    const bool measure = cycle >= cfg.warmup_cycles;
    double cycle_revenue = 0.0;
    for (std::size_t j = 0; j < classes.size(); ++j) {
      const TrafficClass& cls = classes[j];
      // Arrivals during the visit transmit immediately.
      const long in_visit = rng.poisson(cls.arrival_rate * v);
      cycle_revenue += cls.profit_per_packet * in_visit;
      // Loop packets from earlier cycles: retry, else face the drop test.
      const long retried = rng.binomial(loop[j], p);
      const long dropped = rng.binomial(loop[j] - retried, q);
      loop[j] -= retried + dropped;
      cycle_revenue +=
          cls.profit_per_packet * retried - cls.penalty_per_packet * dropped;
      // Arrivals outside the visit enter the loop; first retry chance is in
      // the next cycle.
      const long missed = rng.poisson(cls.arrival_rate * (c - v));
      loop[j] += missed;
      if (measure) {
        report.total_arrivals += in_visit + missed;
        report.served_packets += in_visit + retried;
        report.dropped_packets += dropped;
        report.loop_absorbed += retried + dropped;
      }
    }
    if (measure) {
      total += cycle_revenue;
      batch_sum += cycle_revenue;
      if (++batch_fill == kBatch) {
        batch_means.push_back(batch_sum / kBatch);
        batch_sum = 0.0;
        batch_fill = 0;
      }
    }
  }
  for (long n : loop) report.in_loop_at_end += n;

  report.mean_revenue_per_cycle = total / static_cast<double>(measured);
  if (batch_means.size() >= 2) {
    double mean = 0.0;
    for (double b : batch_means) mean += b;
    mean /= static_cast<double>(batch_means.size());
    double var = 0.0;
    for (double b : batch_means) var += (b - mean) * (b - mean);
    var /= static_cast<double>(batch_means.size() - 1);
    report.std_error = std::sqrt(var / static_cast<double>(batch_means.size()));
  }
  if (report.std_error > 0.0)
    report.z_score =
        (report.mean_revenue_per_cycle - report.analytic_revenue) / report.std_error;

  const long absorbed = report.served_packets + report.dropped_packets;
  report.served_fraction =
      absorbed > 0 ? static_cast<double>(report.served_packets) / absorbed : 0.0;
  const long loop_served = report.loop_absorbed - report.dropped_packets;
  report.loop_served_fraction =
      report.loop_absorbed > 0
          ? static_cast<double>(loop_served) / report.loop_absorbed
          : 0.0;
  return report;
}

}  // namespace optrev
