#include "optrev/instance_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "optrev/rng.hpp"

namespace optrev {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw parse_error(source + ": " + what);
}

double require_number(const json& j, const std::string& key, const std::string& at,
                      const std::string& source) {
  if (!j.contains(key)) fail(source, at + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) fail(source, at + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

double optional_number(const json& j, const std::string& key, double fallback,
                       const std::string& at, const std::string& source) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(source, at + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

// Parameter spec for generated instances: constant / linear (in the 1-based
// station index) / uniform (seeded draw).
struct ParamSpec {
  enum class Kind { constant, linear, uniform } kind = Kind::constant;
  double value = 0.0, slope = 0.0, intercept = 0.0, low = 0.0, high = 0.0;
};

ParamSpec parse_param_spec(const json& j, const std::string& at,
                           const std::string& source) {
  if (j.is_number()) {  // bare number shorthand for a constant
    ParamSpec p;
    p.value = j.get<double>();
    return p;
  }
  if (!j.is_object()) fail(source, at + ": expected a number or an object");
  const std::string kind = j.value("kind", "");
  ParamSpec p;
  if (kind == "constant") {
    p.kind = ParamSpec::Kind::constant;
    p.value = require_number(j, "value", at, source);
  } else if (kind == "linear") {
    p.kind = ParamSpec::Kind::linear;
    p.slope = require_number(j, "slope", at, source);
    p.intercept = optional_number(j, "intercept", 0.0, at, source);
  } else if (kind == "uniform") {
    p.kind = ParamSpec::Kind::uniform;
    p.low = require_number(j, "low", at, source);
    p.high = require_number(j, "high", at, source);
    if (!(p.low <= p.high)) fail(source, at + ": low must be <= high");
  } else {
    fail(source, at + ": unknown kind '" + kind +
                     "' (expected constant, linear or uniform)");
  }
  return p;
}

double resolve_param(const ParamSpec& p, int station_index, SplitMix64& rng) {
  switch (p.kind) {
    case ParamSpec::Kind::constant:
      return p.value;
    case ParamSpec::Kind::linear:
      return p.intercept + p.slope * station_index;
    case ParamSpec::Kind::uniform:
      return p.low + (p.high - p.low) * rng.next_double();
  }
  return 0.0;
}

std::vector<StationParams> generate_stations(const json& gen,
                                             const std::string& source) {
  const std::string at = "generator";
  if (!gen.contains("count") || !gen.at("count").is_number_integer())
    fail(source, at + ": missing integer field 'count'");
  const int count = gen.at("count").get<int>();
  if (count < 1) fail(source, at + ".count: must be >= 1");
  const std::uint64_t seed = gen.value("seed", 0ULL);

  auto spec_of = [&](const char* key, double fallback) {
    if (!gen.contains(key)) {
      ParamSpec p;
      p.value = fallback;
      return p;
    }
    return parse_param_spec(gen.at(key), at + "." + key, source);
  };
  const ParamSpec gamma = spec_of("gamma", 0.0);
  const ParamSpec theta = spec_of("theta", 0.0);
  const ParamSpec nu = spec_of("nu", 0.0);
  const ParamSpec mu = spec_of("mu", 0.0);
  const ParamSpec sw = spec_of("switchover", 0.0);

  SplitMix64 rng(SplitMix64::mix(seed));
  std::vector<StationParams> stations;
  stations.reserve(count);
  for (int i = 1; i <= count; ++i) {
    StationParams s;
    s.station_id = i;
    s.gamma = resolve_param(gamma, i, rng);
    s.theta = resolve_param(theta, i, rng);
    s.retry_rate = resolve_param(nu, i, rng);
    s.drop_decay = resolve_param(mu, i, rng);
    s.switchover = resolve_param(sw, i, rng);
    stations.push_back(s);
  }
  return stations;
}

StationParams parse_station(const json& j, std::size_t index,
                            const std::string& source) {
  const std::string at = "stations[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(source, at + ": expected an object");
  StationParams s;
  if (!j.contains("id") || !j.at("id").is_number_integer())
    fail(source, at + ": missing integer field 'id'");
  s.station_id = j.at("id").get<int>();
  s.retry_rate = require_number(j, "nu", at, source);
  s.drop_decay = require_number(j, "mu", at, source);
  s.switchover = optional_number(j, "switchover", 0.0, at, source);
  if (j.contains("classes")) {
    if (!j.at("classes").is_array()) fail(source, at + ".classes: expected an array");
    for (std::size_t ci = 0; ci < j.at("classes").size(); ++ci) {
      const json& cj = j.at("classes")[ci];
      const std::string cat = at + ".classes[" + std::to_string(ci) + "]";
      TrafficClass c;
      c.arrival_rate = require_number(cj, "rate", cat, source);
      c.profit_per_packet = require_number(cj, "profit", cat, source);
      c.penalty_per_packet = optional_number(cj, "penalty", 0.0, cat, source);
      s.classes.push_back(c);
    }
  }
  if (s.classes.empty()) {
    s.gamma = require_number(j, "gamma", at, source);
    s.theta = optional_number(j, "theta", 0.0, at, source);
  } else {
    // Aggregates may be restated; validate_instance cross-checks them.
    s.gamma = optional_number(j, "gamma", aggregate_gamma(s.classes), at, source);
    s.theta = optional_number(j, "theta", aggregate_theta(s.classes), at, source);
  }
  return s;
}

}  // namespace

Instance parse_instance(const json& doc, const std::string& source) {
  if (!doc.is_object()) fail(source, "top level must be an object");
  Instance inst;
  if (!doc.contains("frame_time") || !doc.at("frame_time").is_number())
    fail(source, "missing numeric field 'frame_time'");
  inst.frame_time = doc.at("frame_time").get<double>();
  if (!doc.contains("wavelengths") || !doc.at("wavelengths").is_number_integer())
    fail(source, "missing integer field 'wavelengths'");
  inst.wavelengths = doc.at("wavelengths").get<int>();

  if (doc.contains("stations") && doc.contains("generator"))
    fail(source, "give either 'stations' or 'generator', not both");
  if (doc.contains("stations")) {
    if (!doc.at("stations").is_array() || doc.at("stations").empty())
      fail(source, "'stations' must be a non-empty array");
    for (std::size_t i = 0; i < doc.at("stations").size(); ++i)
      inst.stations.push_back(parse_station(doc.at("stations")[i], i, source));
  } else if (doc.contains("generator")) {
    inst.stations = generate_stations(doc.at("generator"), source);
  } else {
    fail(source, "missing 'stations' array or 'generator' block");
  }

  std::vector<int> ids;
  for (const auto& s : inst.stations) ids.push_back(s.station_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    fail(source, "duplicate station ids");

  try {
    validate_instance(inst);
  } catch (const parse_error& e) {
    fail(source, e.what());
  }
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
  return parse_instance(doc, path.string());
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["frame_time"] = inst.frame_time;
  doc["wavelengths"] = inst.wavelengths;
  json stations = json::array();
  for (const auto& s : inst.stations) {
    json sj;
    sj["id"] = s.station_id;
    sj["gamma"] = s.gamma;
    sj["theta"] = s.theta;
    sj["nu"] = s.retry_rate;
    sj["mu"] = s.drop_decay;
    sj["switchover"] = s.switchover;
    if (!s.classes.empty()) {
      json classes = json::array();
      for (const auto& c : s.classes)
        classes.push_back({{"rate", c.arrival_rate},
                           {"profit", c.profit_per_packet},
                           {"penalty", c.penalty_per_packet}});
      sj["classes"] = std::move(classes);
    }
    stations.push_back(std::move(sj));
  }
  doc["stations"] = std::move(stations);
  return doc;
}

std::string instance_digest(const Instance& inst) {
  // Canonical text: every field printed with %.17g in a fixed order, then
  // FNV-1a 64.
  std::string canon;
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g;", x);
    canon += buf;
  };
  put(inst.frame_time);
  canon += std::to_string(inst.wavelengths) + ";";
  for (const auto& s : inst.stations) {
    canon += std::to_string(s.station_id) + ";";
    put(s.gamma);
    put(s.theta);
    put(s.retry_rate);
    put(s.drop_decay);
    put(s.switchover);
    for (const auto& c : s.classes) {
      put(c.arrival_rate);
      put(c.profit_per_packet);
      put(c.penalty_per_packet);
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace optrev
