// Single-flip Metropolis annealing directly on the HUBO.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "hubo/solvers/solve_result.hpp"

namespace hubo {

struct SaConfig {
  std::size_t sweeps = 1000;
  std::size_t restarts = 16;
  /// Defaults: max |coefficient| and 1e-3 * min nonzero |coefficient|.
  std::optional<double> t_initial;
  std::optional<double> t_final;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  /// Stop launching restarts after the first one reaching this energy.
  std::optional<double> target_energy;
  /// Called for every accepted move as (restart, delta).
  std::function<void(std::size_t, double)> on_accept;
};

void validate(const SaConfig& cfg);

/// Seed of the RNG stream owned by one restart.
std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart);

SolveResult simulated_annealing(const Polynomial& p, const SaConfig& cfg);

}  // namespace hubo
