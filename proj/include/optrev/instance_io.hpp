#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "optrev/types.hpp"

namespace optrev {

// Instance files are JSON:
//
//   {
//     "frame_time": 2.0,
//     "wavelengths": 2,
//     "stations": [
//       {"id": 1, "gamma": 1.0, "theta": 0.0, "nu": 0.5, "mu": 0.5,
//        "switchover": 0.2,
//        "classes": [{"rate": 1.0, "profit": 1.0, "penalty": 0.5}]}
//     ]
//   }
//
// "classes" is optional; when present, gamma/theta may be omitted (they are
// aggregated as sum rate*(profit+penalty) and sum rate*penalty) or given and
// cross-checked to 1e-9 relative. "theta" defaults to 0.
//
// Instead of "stations", a "generator" block builds count stations from
// per-field parameter specs (i is the 1-based station id):
//
//   "generator": {
//     "count": 16, "seed": 7,
//     "gamma": {"kind": "linear", "slope": 0.5},          // slope*i + intercept
//     "nu":    {"kind": "constant", "value": 0.5},
//     "mu":    {"kind": "uniform", "low": 0.0, "high": 1.0},
//     "switchover": {"kind": "constant", "value": 0.2}
//   }
//
// Uniform fields draw from SplitMix64(seed), station by station, in field
// order gamma, theta, nu, mu, switchover.
Instance parse_instance(const nlohmann::json& doc, const std::string& source);
Instance load_instance(const std::filesystem::path& path);

// Resolved form (plain station list, generators already expanded).
nlohmann::json instance_to_json(const Instance& inst);

// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

}  // namespace optrev
