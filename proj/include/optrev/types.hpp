#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optrev {

// One traffic class at a port: Poisson arrivals at `arrival_rate`, each served
// packet earns `profit_per_packet`, each dropped packet costs `penalty_per_packet`.
struct TrafficClass {
  double arrival_rate = 0.0;
  double profit_per_packet = 0.0;
  double penalty_per_packet = 0.0;
};

// Per-port economics and stochastic behaviour.
//
// `gamma` is the maximum revenue rate that can be earned back by serving
// (sum of rate*(profit+penalty) over classes) and `theta` the contract-cost
// rate (sum of rate*penalty). They may be given directly with `classes` empty,
// or computed from `classes`.
struct StationParams {
  int station_id = 0;
  std::vector<TrafficClass> classes;
  double gamma = 0.0;       // earn-back revenue rate
  double theta = 0.0;       // contract cost rate
  double retry_rate = 0.0;  // retrial exponent: p(V) = 1 - exp(-retry_rate*V)
  double drop_decay = 0.0;  // drop exponent:    q(V) = exp(-drop_decay*V)
  double switchover = 0.0;  // setup time preceding a visit to this station
};

// A full problem: N stations served by K wavelengths in frames of fixed length.
struct Instance {
  std::vector<StationParams> stations;
  int wavelengths = 1;     // K
  double frame_time = 0.0; // C
};

// Error taxonomy; the CLI maps these to distinct exit codes.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  numeric_error(const std::string& what, int index)
      : std::runtime_error(what), variable_index(index) {}
  int variable_index = -1;
};

double aggregate_gamma(const std::vector<TrafficClass>& classes);
double aggregate_theta(const std::vector<TrafficClass>& classes);

// Classes used by the simulator; synthesizes a single class from the
// aggregates when none are given.
std::vector<TrafficClass> effective_classes(const StationParams& s);

// Hard checks (positivity, switchover < frame time, class/aggregate
// consistency). Throws infeasible_error or parse_error.
void validate_instance(const Instance& inst);

// Soft checks: 1024-point grid scan for concavity and monotonicity of every
// station's revenue function. Returns human-readable warnings, does not throw.
std::vector<std::string> shape_warnings(const Instance& inst);

const StationParams& station_by_id(const Instance& inst, int station_id);

}  // namespace optrev
