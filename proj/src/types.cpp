#include "optrev/types.hpp"

#include <cmath>

#include "optrev/model.hpp"

namespace optrev {

double aggregate_gamma(const std::vector<TrafficClass>& classes) {
  double g = 0.0;
  for (const auto& c : classes)
    g += c.arrival_rate * (c.profit_per_packet + c.penalty_per_packet);
  return g;
}

double aggregate_theta(const std::vector<TrafficClass>& classes) {
  double t = 0.0;
  for (const auto& c : classes) t += c.arrival_rate * c.penalty_per_packet;
  return t;
}

std::vector<TrafficClass> effective_classes(const StationParams& s) {
  if (!s.classes.empty()) return s.classes;
  // One unit-rate class reproducing the aggregates: rate*(profit+penalty) =
  // gamma, rate*penalty = theta.
  TrafficClass c;
  c.arrival_rate = 1.0;
  c.penalty_per_packet = s.theta;
  c.profit_per_packet = s.gamma - s.theta;
  return {c};
}

void validate_instance(const Instance& inst) {
  if (inst.stations.empty()) throw infeasible_error("instance has no stations");
  if (inst.wavelengths < 1) throw infeasible_error("wavelengths must be >= 1");
  if (!(inst.frame_time > 0.0)) throw infeasible_error("frame time must be > 0");
  for (const auto& s : inst.stations) {
    const std::string at = "station " + std::to_string(s.station_id) + ": ";
    if (s.station_id <= 0) throw parse_error(at + "id must be positive");
    if (!(s.gamma >= 0.0)) throw parse_error(at + "gamma must be >= 0");
    if (!(s.theta >= 0.0)) throw parse_error(at + "theta must be >= 0");
    if (!(s.retry_rate > 0.0)) throw parse_error(at + "nu must be > 0");
    if (!(s.drop_decay > 0.0)) throw parse_error(at + "mu must be > 0");
    if (!(s.switchover >= 0.0)) throw parse_error(at + "switchover must be >= 0");
    if (!(s.switchover < inst.frame_time))
      throw infeasible_error(at + "switchover alone exceeds the frame time");
    for (const auto& c : s.classes) {
      if (!(c.arrival_rate >= 0.0)) throw parse_error(at + "class rate must be >= 0");
      if (!(c.penalty_per_packet >= 0.0))
        throw parse_error(at + "class penalty must be >= 0");
    }
    if (!s.classes.empty()) {
      const double g = aggregate_gamma(s.classes);
      const double t = aggregate_theta(s.classes);
      const double gscale = std::max({1.0, std::fabs(g), std::fabs(s.gamma)});
      const double tscale = std::max({1.0, std::fabs(t), std::fabs(s.theta)});
      if (std::fabs(g - s.gamma) > 1e-9 * gscale ||
          std::fabs(t - s.theta) > 1e-9 * tscale)
        throw parse_error(at + "gamma/theta do not match the class aggregates");
    }
  }
}

std::vector<std::string> shape_warnings(const Instance& inst) {
  std::vector<std::string> warnings;
  const double c = inst.frame_time;
  const int grid = 1024;
  const double h = c / (grid + 1);
  for (const auto& s : inst.stations) {
    if (s.gamma == 0.0) continue;
    bool convex_spot = false, decreasing_spot = false;
    double prev = station_revenue(s, c, 0.0);
    double cur = station_revenue(s, c, h);
    for (int i = 1; i + 1 <= grid + 1; ++i) {
      const double next = station_revenue(s, c, std::min(c, (i + 1) * h));
      if (next - 2.0 * cur + prev > 1e-8 * std::max(1.0, s.gamma * c))
        convex_spot = true;
      if (next < cur - 1e-9 * std::max(1.0, s.gamma * c)) decreasing_spot = true;
      prev = cur;
      cur = next;
    }
    if (convex_spot)
      warnings.push_back("station " + std::to_string(s.station_id) +
                         ": revenue is not concave on [0,C]; the allocation "
                         "may be locally optimal only");
    if (decreasing_spot)
      warnings.push_back("station " + std::to_string(s.station_id) +
                         ": revenue is not non-decreasing on [0,C]");
  }
  return warnings;
}

const StationParams& station_by_id(const Instance& inst, int station_id) {
  for (const auto& s : inst.stations)
    if (s.station_id == station_id) return s;
  throw std::invalid_argument("no station with id " + std::to_string(station_id));
}

}  // namespace optrev
