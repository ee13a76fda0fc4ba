#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

struct SolveResult {
  std::string solver;
  BitString best;
  double best_energy = 0.0;
  /// Exhaustive solvers only: all minimizers found, up to the cap.
  std::vector<BitString> minimizers;
  bool minimizers_truncated = false;
  /// Best energy per restart, in restart order.
  std::vector<double> restart_energies;
  /// Count of restarts per best energy.
  std::map<double, std::size_t> energy_histogram;
  std::optional<double> approximation_ratio;
  double wall_seconds = 0.0;
};

/// 1 when obtained matches optimal within tolerance; optimal / obtained for
/// positive values, obtained / optimal for negative ones, clipped to [0, 1];
/// 0 when the signs differ.
double approximation_ratio(double optimal, double obtained, double tol = 1e-9);

std::string bits_to_string(const BitString& s);
BitString bits_from_string(const std::string& text);

/// Deterministic fields only (wall time is left out).
nlohmann::json to_json(const SolveResult& r);

}  // namespace hubo
