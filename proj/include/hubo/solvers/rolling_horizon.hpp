// Window-by-window scheduling: candidates ordered by input sequence number,
// each window solved as a reduced HUBO whose history is the fixed prefix.
#pragma once

#include <functional>
#include <stdexcept>

#include "hubo/encoders/scheduling.hpp"
#include "hubo/solvers/annealing.hpp"
#include "hubo/solvers/brute_force.hpp"

namespace hubo {

using InnerSolve = std::function<SolveResult(const Polynomial&, std::uint64_t seed)>;

InnerSolve sa_inner(SaConfig cfg);
InnerSolve brute_inner(BruteForceConfig cfg = {});

struct HorizonConfig {
  std::size_t n_sub = 4;
  std::size_t m_sub = 2;
  InnerSolve inner;  // unset means SA with default settings
  std::uint64_t seed = 0;
  /// Reseeded attempts after a window decodes infeasible.
  std::size_t retries = 3;
};

void validate(const HorizonConfig& cfg);

struct HorizonWindow {
  std::size_t first_slot = 1;  // 1-based global slot
  std::vector<int> jobs;       // global job per window slot
  std::size_t attempts = 1;
  double soft_energy = 0.0;
};

class HorizonError : public std::runtime_error {
 public:
  HorizonError(const std::string& what, std::vector<int> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  /// Jobs fixed so far per slot, -1 where unfilled.
  const std::vector<int>& partial() const { return partial_; }

 private:
  std::vector<int> partial_;
};

struct HorizonResult {
  DecodedSolution solution;
  std::vector<HorizonWindow> windows;
};

/// Sub-instance for the window starting at `first_slot` (1-based) with the
/// given candidate jobs (global indices, kept in ascending index order).
SchedulingInstance window_instance(const SchedulingInstance& inst,
                                   const std::vector<int>& fixed_jobs,
                                   const std::vector<int>& fixed_lanes,
                                   const std::vector<std::size_t>& candidates,
                                   std::size_t length);

HorizonResult rolling_horizon(const SchedulingInstance& inst, const HorizonConfig& cfg);

}  // namespace hubo
