#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "optrev/allocator.hpp"
#include "optrev/types.hpp"

namespace optrev {

// Station -> wavelength map; wavelength 0 means unassigned. `sole` holds the
// stations that occupy a wavelength alone (they are visited for the whole
// frame with no switchover). A wavelength hosts either one sole station or
// any number of shared stations, never both.
struct Assignment {
  std::map<int, int> wavelength_of;
  std::set<int> sole;
};

// Final visit periods plus the provisional (step-1) values kept for
// diagnostics. For every shared wavelength, sum(S_i + V_i) over its assigned
// stations equals the frame time (unless the wavelength was flagged
// degenerate, in which case all its visits are zero). Sole stations have
// V = C, unassigned stations V = 0.
struct VisitPlan {
  std::map<int, double> visit_of;
  std::map<int, double> provisional;
  std::set<int> degenerate_wavelengths;
};

struct SolveResult {
  Assignment assignment;
  VisitPlan plan;
  double total_revenue = 0.0;
  std::map<int, double> per_station;  // gross revenue M_i(V_i)
  int served_count = 0;               // stations with V_i > 0
  std::vector<std::string> warnings;
};

enum class Finalization { two, alpha };

struct PartitionResult {
  std::vector<int> p;          // bound-saturated stations: get a wavelength alone
  std::vector<int> q;          // zero-allocation stations: left unserved
  std::vector<int> remainder;  // the rest, sorted by S_i + V~_i descending
};

struct WavelengthPlan {
  std::map<int, double> visit_of;  // 0.0 for stations dropped from the cycle
  bool degenerate = false;         // switchover mass alone reached the frame time
};

// Step 1: one pooled wavelength of length K*C. Budget K*C - sum_i S_i (over
// all stations), per-station bound C - S_i. Throws infeasible_error when the
// switchover mass exceeds the pooled capacity.
std::map<int, double> solve_one(const Instance& inst);

// Split stations by the step-1 allocation: bound-saturated within 1e-6*C go
// to P, zeros within 1e-6*C go to Q, the rest are sorted by extended visit
// descending (ties by station id). Throws infeasible_error if |P| > K.
PartitionResult partition(const Instance& inst,
                          const std::map<int, double>& provisional);

// Longest Processing Time first: items arrive sorted descending; the first m
// go to wavelengths 1..m, each later one joins the currently lightest
// wavelength (ties to the lowest index). Keys of the result are 1-based.
std::map<int, std::vector<int>> lpt_assign(
    const std::vector<std::pair<int, double>>& loads, int m);

// Step 3 for one wavelength: budget C - sum S_i, bounds C - S_i. A singleton
// set is served for the whole frame (V = C, no switchover). Stations whose
// optimal allocation is zero are removed from the visit cycle and their
// switchover reclaimed, iterating until every remaining station gets V > 0
// (this matches the published per-assignment visit periods; see README).
// Budget <= 0 on the initial set returns all zeros with degenerate = true.
WavelengthPlan solve_two(const Instance& inst, std::span<const int> station_ids);

// Step-3 alternative: per wavelength, scale the provisional visits by the
// common alpha = (C - sum S_i) / sum V~_i. Sole stations keep V = C. A
// wavelength with alpha < 0 or no provisional mass keeps zeros and is
// flagged degenerate.
VisitPlan alpha_finalize(const Instance& inst, const Assignment& assignment,
                         const std::map<int, double>& provisional);

// The full three-step pipeline. Deterministic: identical instances give
// identical results. If more stations saturate than wavelengths remain for
// the remainder, the remainder is demoted to unserved with a warning.
SolveResult heuristic_solve(const Instance& inst,
                            Finalization finalization = Finalization::two);

// Objective bundle for the water-filling allocator: one revenue curve per
// station, evaluated at the instance's frame time.
AllocationProblem revenue_allocation_problem(const Instance& inst,
                                             std::span<const int> station_ids,
                                             double budget);

}  // namespace optrev
