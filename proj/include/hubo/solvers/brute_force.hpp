#pragma once

#include "hubo/solvers/solve_result.hpp"

namespace hubo {

struct BruteForceConfig {
  std::size_t max_vars = 26;
  std::size_t max_minimizers = 1024;
  /// Energies within tol * max(1, |E_min|) of the minimum count as optimal.
  double tol = 1e-9;
};

/// Gray-code enumeration. `best` is the minimizer with the smallest integer
/// code (bit i = variable i).
SolveResult brute_force(const Polynomial& p, const BruteForceConfig& cfg = {});

}  // namespace hubo
