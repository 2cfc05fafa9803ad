#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "optrev/heuristic.hpp"
#include "optrev/rng.hpp"
#include "optrev/types.hpp"

namespace optrev {

struct EnumerationRow {
  std::vector<int> labels;  // per station in instance order; 0 = unassigned
  std::map<int, double> visit_of;
  double revenue = 0.0;
};

struct EnumerationReport {
  std::vector<EnumerationRow> rows;  // sorted by revenue descending
  double optimum = 0.0;
  double heuristic_revenue = 0.0;
  double heuristic_gap = 0.0;  // optimum - heuristic
};

// Number of canonical assignments (distinct up to wavelength relabeling).
// Full mode partitions all n stations into exactly min(n,k) groups — an idle
// wavelength cannot meet its frame-time constraint, so those rows are
// excluded. Partial mode additionally chooses an unassigned subset and
// partitions the rest into at most k groups.
std::uint64_t count_assignments(int n, int k, bool allow_unassigned);

// Streams each canonical assignment exactly once as a per-station label
// vector (groups numbered 1.. in order of first appearance, 0 = unassigned).
// Guard: n <= 12 and count <= 1e7, otherwise guard_error naming the count.
void enumerate_assignments(int n, int k, bool allow_unassigned,
                           const std::function<void(const std::vector<int>&)>& yield);

// Evaluates every canonical assignment with solve_two per wavelength and
// ranks rows by revenue (ties by label vector).
EnumerationReport brute_force_solve(const Instance& inst,
                                    bool allow_unassigned = false);

enum class BaselineMode { capped, uncapped };

struct BaselineStats {
  long trials = 0;
  double maximum = 0.0;
  double average = 0.0;
  double minimum = 0.0;
  double percent_above = 0.0;  // % of trials strictly above the heuristic
  BaselineMode mode = BaselineMode::capped;
  std::uint64_t seed = 0;
  double heuristic_revenue = 0.0;
};

// One random station->wavelength assignment (labels 1..k). Capped mode deals
// from a shuffled slot list with ceil(n/k) slots per wavelength; uncapped
// assigns each station an independent uniform wavelength.
std::vector<int> draw_assignment(SplitMix64& rng, int n, int k, BaselineMode mode);

// `trials` random assignments, each finished with solve_two per wavelength.
// Trial i always draws from substream i of the seed, so the stats do not
// depend on the thread count. threads = 0 picks hardware concurrency.
BaselineStats random_baseline(const Instance& inst, BaselineMode mode, long trials,
                              std::uint64_t seed, int threads = 0);

struct SweepRow {
  int wavelengths = 0;
  double revenue = 0.0;
  int served = 0;
};

// heuristic_solve per K on the same stations and frame time.
std::vector<SweepRow> sweep_wavelengths(const Instance& base,
                                        std::span<const int> k_values);

// Revenue of a fixed labeled assignment (solve_two per group); shared by the
// brute force and the baselines, exposed for relabeling-invariance tests.
double evaluate_assignment(const Instance& inst, std::span<const int> labels,
                           std::map<int, double>* visits_out = nullptr);

}  // namespace optrev
