#include "optrev/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "optrev/model.hpp"

namespace optrev {

namespace {

// Allocations at or below this are treated as "not visited".
double zero_visit_tol(double frame_time) { return 1e-9 * frame_time; }

std::vector<int> all_station_ids(const Instance& inst) {
  std::vector<int> ids;
  ids.reserve(inst.stations.size());
  for (const auto& s : inst.stations) ids.push_back(s.station_id);
  return ids;
}

}  // namespace

AllocationProblem revenue_allocation_problem(const Instance& inst,
                                             std::span<const int> station_ids,
                                             double budget) {
  AllocationProblem p;
  p.budget = budget;
  const double c = inst.frame_time;
  for (int id : station_ids) {
    const StationParams s = station_by_id(inst, id);
    SeparableObjective obj;
    obj.value = [s, c](double v) { return station_revenue(s, c, v); };
    obj.derivative = [s, c](double v) { return revenue_derivative(s, c, v); };
    obj.curvature = [s, c](double v) { return revenue_curvature(s, c, v); };
    p.objectives.push_back(std::move(obj));
    p.upper_bounds.push_back(c - s.switchover);
  }
  return p;
}

std::map<int, double> solve_one(const Instance& inst) {
  validate_instance(inst);
  double switch_sum = 0.0;
  for (const auto& s : inst.stations) switch_sum += s.switchover;
  const double budget = inst.wavelengths * inst.frame_time - switch_sum;
  if (budget < 0.0)
    throw infeasible_error("switchover mass exceeds the pooled capacity K*C");

  const std::vector<int> ids = all_station_ids(inst);
  const AllocationResult res =
      allocate(revenue_allocation_problem(inst, ids, budget));
  std::map<int, double> provisional;
  for (std::size_t i = 0; i < ids.size(); ++i) provisional[ids[i]] = res.values[i];
  return provisional;
}

PartitionResult partition(const Instance& inst,
                          const std::map<int, double>& provisional) {
  const double eps = 1e-6 * inst.frame_time;
  PartitionResult out;
  std::vector<std::pair<int, double>> rest;  // (id, extended visit)
  for (const auto& s : inst.stations) {
    const double v = provisional.at(s.station_id);
    if (v >= (inst.frame_time - s.switchover) - eps)
      out.p.push_back(s.station_id);
    else if (v <= eps)
      out.q.push_back(s.station_id);
    else
      rest.emplace_back(s.station_id, s.switchover + v);
  }
  if (static_cast<int>(out.p.size()) > inst.wavelengths)
    throw infeasible_error("more bound-saturated stations than wavelengths");
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (const auto& [id, load] : rest) out.remainder.push_back(id);
  return out;
}

std::map<int, std::vector<int>> lpt_assign(
    const std::vector<std::pair<int, double>>& loads, int m) {
  if (m < 1) {
    if (loads.empty()) return {};
    throw std::invalid_argument("no wavelengths available for the remainder");
  }
  std::map<int, std::vector<int>> groups;
  std::vector<double> sums(m, 0.0);
  for (std::size_t i = 0; i < loads.size(); ++i) {
    int w;
    if (i < static_cast<std::size_t>(m)) {
      w = static_cast<int>(i);
    } else {
      w = 0;
      for (int j = 1; j < m; ++j)
        if (sums[j] < sums[w]) w = j;
    }
    groups[w + 1].push_back(loads[i].first);
    sums[w] += loads[i].second;
  }
  return groups;
}

WavelengthPlan solve_two(const Instance& inst, std::span<const int> station_ids) {
  WavelengthPlan plan;
  const double c = inst.frame_time;
  for (int id : station_ids) plan.visit_of[id] = 0.0;
  if (station_ids.empty()) return plan;
  if (station_ids.size() == 1) {
    plan.visit_of[station_ids.front()] = c;  // alone: no switchover, full frame
    return plan;
  }

  double switch_sum = 0.0;
  for (int id : station_ids) switch_sum += station_by_id(inst, id).switchover;
  if (c - switch_sum <= 0.0) {
    plan.degenerate = true;
    return plan;
  }

  std::vector<int> active(station_ids.begin(), station_ids.end());
  const double ztol = zero_visit_tol(c);
  for (;;) {
    if (active.size() == 1) {
      plan.visit_of[active.front()] = c;
      return plan;
    }
    double budget = c;
    for (int id : active) budget -= station_by_id(inst, id).switchover;
    const AllocationResult res =
        allocate(revenue_allocation_problem(inst, active, budget));

    // A station the optimum leaves at zero is not visited at all, so its
    // switchover flows back into the budget. Remove only the weakest such
    // station (smallest marginal at zero) and re-solve: the freed time can
    // make the other zero-allocated stations worth visiting again.
    int drop = -1;
    double drop_marginal = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (res.values[i] > ztol) continue;
      const double m =
          revenue_derivative(station_by_id(inst, active[i]), c, 0.0);
      if (drop == -1 || m < drop_marginal ||
          (m == drop_marginal && active[i] < active[drop])) {
        drop = static_cast<int>(i);
        drop_marginal = m;
      }
    }
    if (drop == -1) {
      for (std::size_t i = 0; i < active.size(); ++i)
        plan.visit_of[active[i]] = res.values[i];
      return plan;
    }
    active.erase(active.begin() + drop);
  }
}

VisitPlan alpha_finalize(const Instance& inst, const Assignment& assignment,
                         const std::map<int, double>& provisional) {
  VisitPlan plan;
  plan.provisional = provisional;
  for (const auto& s : inst.stations) plan.visit_of[s.station_id] = 0.0;

  std::map<int, std::vector<int>> groups;
  for (const auto& [id, w] : assignment.wavelength_of)
    if (w > 0) groups[w].push_back(id);

  for (const auto& [w, ids] : groups) {
    if (ids.size() == 1 || assignment.sole.count(ids.front())) {
      for (int id : ids) plan.visit_of[id] = inst.frame_time;
      continue;
    }
    double switch_sum = 0.0, prov_sum = 0.0;
    for (int id : ids) {
      switch_sum += station_by_id(inst, id).switchover;
      prov_sum += provisional.at(id);
    }
    if (prov_sum <= 0.0) {
      plan.degenerate_wavelengths.insert(w);
      continue;
    }
    const double alpha = (inst.frame_time - switch_sum) / prov_sum;
    if (alpha < 0.0) {
      plan.degenerate_wavelengths.insert(w);
      continue;
    }
    for (int id : ids) plan.visit_of[id] = alpha * provisional.at(id);
  }
  return plan;
}

SolveResult heuristic_solve(const Instance& inst, Finalization finalization) {
  validate_instance(inst);
  SolveResult result;
  const double c = inst.frame_time;

  const std::map<int, double> provisional = solve_one(inst);
  PartitionResult part = partition(inst, provisional);

  const int shared_wavelengths = inst.wavelengths - static_cast<int>(part.p.size());
  if (shared_wavelengths == 0 && !part.remainder.empty()) {
    result.warnings.push_back(
        "every wavelength is taken by a bound-saturated station; " +
        std::to_string(part.remainder.size()) + " remainder station(s) left unserved");
    part.q.insert(part.q.end(), part.remainder.begin(), part.remainder.end());
    part.remainder.clear();
  }

  std::vector<std::pair<int, double>> loads;
  for (int id : part.remainder)
    loads.emplace_back(id, station_by_id(inst, id).switchover + provisional.at(id));
  std::map<int, std::vector<int>> lpt_groups;
  if (!loads.empty()) lpt_groups = lpt_assign(loads, shared_wavelengths);

  // Working assignment prior to finalization: LPT groups, then P stations on
  // their own wavelengths.
  Assignment working;
  for (const auto& s : inst.stations) working.wavelength_of[s.station_id] = 0;
  int next_w = 0;
  for (const auto& [w, ids] : lpt_groups) {
    ++next_w;
    for (int id : ids) working.wavelength_of[id] = next_w;
    if (ids.size() == 1) working.sole.insert(ids.front());
  }
  for (int id : part.p) {
    working.wavelength_of[id] = ++next_w;
    working.sole.insert(id);
  }

  VisitPlan plan;
  if (finalization == Finalization::alpha) {
    plan = alpha_finalize(inst, working, provisional);
  } else {
    plan.provisional = provisional;
    for (const auto& s : inst.stations) plan.visit_of[s.station_id] = 0.0;
    std::map<int, std::vector<int>> groups;
    for (const auto& [id, w] : working.wavelength_of)
      if (w > 0) groups[w].push_back(id);
    for (const auto& [w, ids] : groups) {
      const WavelengthPlan wp = solve_two(inst, ids);
      for (const auto& [id, v] : wp.visit_of) plan.visit_of[id] = v;
      if (wp.degenerate) plan.degenerate_wavelengths.insert(w);
    }
  }

  // Stations dropped by solve_two leave their wavelength entirely (their
  // switchover was reclaimed), except on degenerate wavelengths where the
  // whole group legitimately sits at zero.
  for (auto& [id, w] : working.wavelength_of) {
    if (w > 0 && plan.visit_of.at(id) <= 0.0 &&
        !plan.degenerate_wavelengths.count(w))
      w = 0;
  }

  // Canonical renumbering: wavelength groups ordered by their smallest member.
  std::map<int, std::vector<int>> final_groups;
  for (const auto& [id, w] : working.wavelength_of)
    if (w > 0) final_groups[w].push_back(id);
  std::vector<std::pair<int, int>> order;  // (smallest member, old wavelength)
  for (const auto& [w, ids] : final_groups)
    order.emplace_back(*std::min_element(ids.begin(), ids.end()), w);
  std::sort(order.begin(), order.end());

  for (const auto& s : inst.stations) result.assignment.wavelength_of[s.station_id] = 0;
  int canonical = 0;
  std::set<int> degenerate_renumbered;
  for (const auto& [min_id, old_w] : order) {
    ++canonical;
    for (int id : final_groups[old_w])
      result.assignment.wavelength_of[id] = canonical;
    if (final_groups[old_w].size() == 1)
      result.assignment.sole.insert(final_groups[old_w].front());
    if (plan.degenerate_wavelengths.count(old_w))
      degenerate_renumbered.insert(canonical);
  }
  plan.degenerate_wavelengths = std::move(degenerate_renumbered);

  result.plan = std::move(plan);
  const double ztol = zero_visit_tol(c);
  for (const auto& s : inst.stations) {
    const double v = result.plan.visit_of.at(s.station_id);
    const double m = station_revenue(s, c, v);
    result.per_station[s.station_id] = m;
    result.total_revenue += m;
    if (v > ztol) ++result.served_count;
  }
  return result;
}

}  // namespace optrev
