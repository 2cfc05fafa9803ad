#include "optrev/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "optrev/model.hpp"

namespace optrev {

namespace {

constexpr std::uint64_t kCountGuard = 10'000'000;
constexpr int kStationGuard = 12;

// Stirling numbers of the second kind, S[n][j] for n, j <= 12. Row 0 is {1}.
std::vector<std::vector<std::uint64_t>> stirling_table(int n) {
  std::vector<std::vector<std::uint64_t>> s(n + 1);
  for (int i = 0; i <= n; ++i) {
    s[i].assign(i + 1, 0);
    s[i][0] = i == 0 ? 1 : 0;
    for (int j = 1; j <= i; ++j)
      s[i][j] = (i == j ? 1 : s[i - 1][j - 1] + j * s[i - 1][j]);
  }
  return s;
}

std::uint64_t binomial_coeff(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Recursive restricted-growth enumeration. labels[i] in {0 (unassigned,
// partial mode only), 1..used+1} with at most max_groups groups; canonical by
// construction (group g appears before g+1).
void enumerate_rec(int i, int n, int max_groups, bool allow_unassigned, int used,
                   std::vector<int>& labels,
                   const std::function<void(const std::vector<int>&)>& yield,
                   bool exact_group_count) {
  if (i == n) {
    if (!exact_group_count || used == max_groups) yield(labels);
    return;
  }
  if (exact_group_count && used + (n - i) < max_groups) return;  // cannot reach
  if (allow_unassigned) {
    labels[i] = 0;
    enumerate_rec(i + 1, n, max_groups, allow_unassigned, used, labels, yield,
                  exact_group_count);
  }
  for (int g = 1; g <= used; ++g) {
    labels[i] = g;
    enumerate_rec(i + 1, n, max_groups, allow_unassigned, used, labels, yield,
                  exact_group_count);
  }
  if (used < max_groups) {
    labels[i] = used + 1;
    enumerate_rec(i + 1, n, max_groups, allow_unassigned, used + 1, labels, yield,
                  exact_group_count);
  }
  labels[i] = 0;
}

}  // namespace

std::uint64_t count_assignments(int n, int k, bool allow_unassigned) {
  if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");
  const auto s = stirling_table(n);
  if (!allow_unassigned) return s[n][std::min(n, k)];
  std::uint64_t total = 1;  // the all-unassigned row
  for (int a = 1; a <= n; ++a) {
    std::uint64_t parts = 0;
    for (int j = 1; j <= std::min(a, k); ++j) parts += s[a][j];
    total += binomial_coeff(n, a) * parts;
  }
  return total;
}

void enumerate_assignments(int n, int k, bool allow_unassigned,
                           const std::function<void(const std::vector<int>&)>& yield) {
  if (n > kStationGuard)
    throw guard_error("enumeration limited to " + std::to_string(kStationGuard) +
                      " stations, got " + std::to_string(n));
  const std::uint64_t count = count_assignments(n, k, allow_unassigned);
  if (count > kCountGuard)
    throw guard_error("enumeration would produce " + std::to_string(count) +
                      " assignments (guard: " + std::to_string(kCountGuard) + ")");
  std::vector<int> labels(n, 0);
  enumerate_rec(0, n, std::min(n, k), allow_unassigned, 0, labels, yield,
                /*exact_group_count=*/!allow_unassigned);
}

double evaluate_assignment(const Instance& inst, std::span<const int> labels,
                           std::map<int, double>* visits_out) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] > 0) groups[labels[i]].push_back(inst.stations[i].station_id);

  std::map<int, double> visits;
  for (const auto& s : inst.stations) visits[s.station_id] = 0.0;
  for (const auto& [w, ids] : groups) {
    const WavelengthPlan wp = solve_two(inst, ids);
    for (const auto& [id, v] : wp.visit_of) visits[id] = v;
  }
  double revenue = 0.0;
  for (const auto& s : inst.stations)
    revenue += station_revenue(s, inst.frame_time, visits[s.station_id]);
  if (visits_out) *visits_out = std::move(visits);
  return revenue;
}

EnumerationReport brute_force_solve(const Instance& inst, bool allow_unassigned) {
  validate_instance(inst);
  EnumerationReport report;
  enumerate_assignments(
      static_cast<int>(inst.stations.size()), inst.wavelengths, allow_unassigned,
      [&](const std::vector<int>& labels) {
        EnumerationRow row;
        row.labels = labels;
        row.revenue = evaluate_assignment(inst, labels, &row.visit_of);
        report.rows.push_back(std::move(row));
      });
  std::sort(report.rows.begin(), report.rows.end(),
            [](const EnumerationRow& a, const EnumerationRow& b) {
              if (a.revenue != b.revenue) return a.revenue > b.revenue;
              return a.labels < b.labels;
            });
  report.optimum = report.rows.front().revenue;
  report.heuristic_revenue = heuristic_solve(inst).total_revenue;
  report.heuristic_gap = report.optimum - report.heuristic_revenue;
  return report;
}

std::vector<int> draw_assignment(SplitMix64& rng, int n, int k, BaselineMode mode) {
  std::vector<int> labels(n);
  if (mode == BaselineMode::uncapped) {
    for (int i = 0; i < n; ++i)
      labels[i] = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    return labels;
  }
  const int cap = (n + k - 1) / k;
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(cap) * k);
  for (int w = 1; w <= k; ++w)
    for (int c = 0; c < cap; ++c) slots.push_back(w);
  rng.shuffle(slots);
  for (int i = 0; i < n; ++i) labels[i] = slots[i];
  return labels;
}

BaselineStats random_baseline(const Instance& inst, BaselineMode mode, long trials,
                              std::uint64_t seed, int threads) {
  validate_instance(inst);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  BaselineStats stats;
  stats.trials = trials;
  stats.mode = mode;
  stats.seed = seed;
  stats.heuristic_revenue = heuristic_solve(inst).total_revenue;

  const int n = static_cast<int>(inst.stations.size());
  const int k = inst.wavelengths;

  // Per-trial revenues land in a preallocated slot so the reduction below is
  // identical no matter how many threads ran.
  std::vector<double> revenue(trials);
  auto run_range = [&](long begin, long end) {
    for (long t = begin; t < end; ++t) {
      SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(t));
      const std::vector<int> labels = draw_assignment(rng, n, k, mode);
      revenue[t] = evaluate_assignment(inst, labels);
    }
  };

  long workers = threads > 0 ? threads
                             : static_cast<long>(std::thread::hardware_concurrency());
  workers = std::max<long>(1, std::min<long>(workers, trials));
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long begin = w * chunk;
      const long end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  stats.maximum = *std::max_element(revenue.begin(), revenue.end());
  stats.minimum = *std::min_element(revenue.begin(), revenue.end());
  stats.average = std::accumulate(revenue.begin(), revenue.end(), 0.0) / trials;
  long above = 0;
  for (double r : revenue)
    if (r > stats.heuristic_revenue) ++above;
  stats.percent_above = 100.0 * static_cast<double>(above) / trials;
  return stats;
}

std::vector<SweepRow> sweep_wavelengths(const Instance& base,
                                        std::span<const int> k_values) {
  if (k_values.empty()) throw std::invalid_argument("k list must not be empty");
  std::vector<SweepRow> rows;
  for (int k : k_values) {
    if (k < 1) throw std::invalid_argument("every k must be >= 1");
    Instance inst = base;
    inst.wavelengths = k;
    const SolveResult res = heuristic_solve(inst);
    rows.push_back({k, res.total_revenue, res.served_count});
  }
  return rows;
}

}  // namespace optrev
