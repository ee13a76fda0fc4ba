#include "hubo/solvers/solve_result.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hubo {

double approximation_ratio(double optimal, double obtained, double tol) {
  if (std::abs(optimal - obtained) <= tol * std::max(1.0, std::abs(optimal))) return 1.0;
  double r = 0.0;
  if (optimal > 0.0 && obtained > 0.0) {
    r = optimal / obtained;
  } else if (optimal < 0.0 && obtained < 0.0) {
    r = obtained / optimal;
  }
  return std::clamp(r, 0.0, 1.0);
}

std::string bits_to_string(const BitString& s) {
  std::string out;
  out.reserve(s.size());
  for (auto b : s) out.push_back(b ? '1' : '0');
  return out;
}

BitString bits_from_string(const std::string& text) {
  BitString s;
  s.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    s.push_back(c == '1');
  }
  return s;
}

nlohmann::json to_json(const SolveResult& r) {
  nlohmann::json j;
  j["solver"] = r.solver;
  j["best"] = bits_to_string(r.best);
  j["best_energy"] = r.best_energy;
  if (!r.minimizers.empty()) {
    std::vector<std::string> m;
    for (const auto& s : r.minimizers) m.push_back(bits_to_string(s));
    j["minimizers"] = m;
    j["minimizers_truncated"] = r.minimizers_truncated;
  }
  if (!r.restart_energies.empty()) {
    j["restarts"] = r.restart_energies.size();
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [e, n] : r.energy_histogram) hist.push_back({{"energy", e}, {"count", n}});
    j["energy_histogram"] = hist;
  }
  if (r.approximation_ratio) j["approximation_ratio"] = *r.approximation_ratio;
  return j;
}

}  // namespace hubo
