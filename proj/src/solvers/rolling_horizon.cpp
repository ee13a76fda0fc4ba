#include "hubo/solvers/rolling_horizon.hpp"

#include <algorithm>
#include <numeric>

namespace hubo {

InnerSolve sa_inner(SaConfig cfg) {
  return [cfg](const Polynomial& p, std::uint64_t seed) {
    SaConfig c = cfg;
    c.seed = seed;
    return simulated_annealing(p, c);
  };
}

InnerSolve brute_inner(BruteForceConfig cfg) {
  return [cfg](const Polynomial& p, std::uint64_t) { return brute_force(p, cfg); };
}

void validate(const HorizonConfig& cfg) {
  if (cfg.m_sub < 1) throw ValidationError("horizon.m_sub", "must be at least 1");
  if (cfg.n_sub < cfg.m_sub) throw ValidationError("horizon.n_sub", "must be at least m_sub");
}

SchedulingInstance window_instance(const SchedulingInstance& inst,
                                   const std::vector<int>& fixed_jobs,
                                   const std::vector<int>& fixed_lanes,
                                   const std::vector<std::size_t>& candidates,
                                   std::size_t length) {
  SchedulingInstance sub;
  sub.slots = length;
  for (auto j : candidates) {
    sub.sequence.push_back(inst.sequence[j]);
    sub.membership.push_back(inst.membership[j]);
  }
  sub.criteria = inst.criteria;
  for (std::size_t c = 0; c < sub.criteria.size(); ++c) {
    auto& h = sub.criteria[c].history;
    for (std::size_t l = 0; l < fixed_jobs.size(); ++l) {
      const int j = fixed_jobs[l];
      std::uint8_t on = 0;
      if (inst.criteria[c].lane) {
        on = l < fixed_lanes.size() && fixed_lanes[l] == static_cast<int>(c);
      } else {
        on = j >= 0 && inst.membership[static_cast<std::size_t>(j)][c];
      }
      h.push_back(on);
    }
  }
  sub.step_threshold = inst.step_threshold;
  // The span rule ties slot 1 to slot M, so it belongs to a window only when
  // that window is the whole horizon.
  if (fixed_jobs.empty() && length == inst.slots) sub.span_threshold = inst.span_threshold;
  sub.previous_sequence = inst.previous_sequence;
  for (auto it = fixed_jobs.rbegin(); it != fixed_jobs.rend(); ++it) {
    if (*it >= 0) {
      sub.previous_sequence = inst.sequence[static_cast<std::size_t>(*it)];
      break;
    }
  }
  sub.weights = inst.weights;
  return sub;
}

HorizonResult rolling_horizon(const SchedulingInstance& inst, const HorizonConfig& cfg) {
  validate(inst);
  validate(cfg);
  const InnerSolve inner = cfg.inner ? cfg.inner : sa_inner(SaConfig{});
  const std::size_t m = inst.slots;

  std::vector<std::size_t> free(inst.num_jobs());
  std::iota(free.begin(), free.end(), 0);
  std::stable_sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) {
    return inst.sequence[a] < inst.sequence[b];
  });

  HorizonResult out;
  std::vector<int> fixed_jobs, fixed_lanes;
  double soft = 0.0;
  std::size_t w = 0;
  while (fixed_jobs.size() < m && !free.empty()) {
    const std::size_t take = std::min(cfg.n_sub, free.size());
    std::vector<std::size_t> cand(free.begin(), free.begin() + static_cast<long>(take));
    std::sort(cand.begin(), cand.end());
    const std::size_t len = std::min({cfg.m_sub, m - fixed_jobs.size(), cand.size()});

    const auto sub = window_instance(inst, fixed_jobs, fixed_lanes, cand, len);
    const auto ep = build_scheduling(sub);
    std::optional<DecodedSolution> got;
    std::size_t attempt = 0;
    for (; attempt <= cfg.retries; ++attempt) {
      const std::uint64_t seed =
          (w == 0 && attempt == 0) ? cfg.seed : restart_seed(restart_seed(cfg.seed, w), attempt);
      auto res = inner(ep.polynomial, seed);
      auto d = decode_scheduling(ep, res.best);
      if (d.feasible) {
        got = std::move(d);
        break;
      }
    }
    if (!got) {
      std::vector<int> partial = fixed_jobs;
      partial.resize(m, -1);
      throw HorizonError("window at slot " + std::to_string(fixed_jobs.size() + 1) +
                             " infeasible after " + std::to_string(cfg.retries + 1) + " attempts",
                         std::move(partial));
    }

    const auto& a = std::get<ScheduleAssignment>(got->payload);
    HorizonWindow win;
    win.first_slot = fixed_jobs.size() + 1;
    win.attempts = attempt + 1;
    win.soft_energy = got->objective;
    for (std::size_t l = 0; l < len; ++l) {
      const int global = static_cast<int>(cand[static_cast<std::size_t>(a.job_at_slot[l])]);
      fixed_jobs.push_back(global);
      fixed_lanes.push_back(a.lane_at_slot[l]);
      win.jobs.push_back(global);
      free.erase(std::find(free.begin(), free.end(), static_cast<std::size_t>(global)));
    }
    soft += got->objective;
    out.windows.push_back(std::move(win));
    ++w;
  }

  ScheduleAssignment full;
  full.job_at_slot = fixed_jobs;
  full.lane_at_slot = fixed_lanes;
  full.job_at_slot.resize(m, -1);
  full.lane_at_slot.resize(m, -1);

  DecodedSolution& d = out.solution;
  for (std::size_t l = fixed_jobs.size(); l < m; ++l) {
    d.hard_violations.push_back("slot " + std::to_string(l + 1) + ": no job left");
  }
  const bool whole = out.windows.size() == 1 && fixed_jobs.size() == m;
  if (!whole && inst.span_threshold && fixed_jobs.size() == m) {
    const double first = inst.sequence[static_cast<std::size_t>(full.job_at_slot.front())];
    const double last = inst.sequence[static_cast<std::size_t>(full.job_at_slot.back())];
    if (last - first > *inst.span_threshold) soft += inst.weights.span;
  }
  d.soft = violation_report(full.job_at_slot, full.lane_at_slot, inst);
  d.payload = std::move(full);
  d.feasible = d.hard_violations.empty();
  d.objective = soft;
  return out;
}

}  // namespace hubo
