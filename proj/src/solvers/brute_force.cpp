#include "hubo/solvers/brute_force.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hubo/solvers/poly_index.hpp"

namespace hubo {

namespace {

BitString code_bits(std::uint64_t code, std::size_t n) {
  BitString s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (code >> i) & 1U;
  return s;
}

}  // namespace

SolveResult brute_force(const Polynomial& p, const BruteForceConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = p.num_vars();
  if (n > cfg.max_vars) {
    throw std::invalid_argument("brute force limited to " + std::to_string(cfg.max_vars) +
                                " variables, got " + std::to_string(n));
  }
  const PolyIndex index(p);
  auto st = index.make_state(BitString(n, 0));

  // Candidates are collected with a loose window and filtered exactly below;
  // the running energy is resynchronised periodically to bound drift.
  const double loose = 1e-6;
  double best = st.energy;
  std::vector<std::uint64_t> near{0};
  const std::size_t cap = 4 * cfg.max_minimizers + 16;
  bool overflow = false;
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto v = static_cast<VarId>(std::countr_zero(k));
    index.flip(st, v);
    gray ^= std::uint64_t{1} << v;
    if ((k & 0xFFFF) == 0) st.energy = index.energy(st.bits);
    const double scale = loose * std::max(1.0, std::abs(best));
    if (st.energy < best - scale) {
      best = st.energy;
      near.clear();
      near.push_back(gray);
      overflow = false;
    } else if (st.energy <= best + scale) {
      if (near.size() < cap) {
        near.push_back(gray);
      } else {
        overflow = true;
      }
    }
    best = std::min(best, st.energy);
  }

  std::vector<std::pair<double, std::uint64_t>> exact;
  for (auto code : near) exact.emplace_back(p.evaluate(code_bits(code, n)), code);
  double emin = exact.front().first;
  for (const auto& [e, c] : exact) emin = std::min(emin, e);
  const double window = cfg.tol * std::max(1.0, std::abs(emin));
  std::vector<std::uint64_t> winners;
  for (const auto& [e, c] : exact) {
    if (e <= emin + window) winners.push_back(c);
  }
  std::sort(winners.begin(), winners.end());

  SolveResult r;
  r.solver = "brute";
  r.minimizers_truncated = overflow || winners.size() > cfg.max_minimizers;
  if (winners.size() > cfg.max_minimizers) winners.resize(cfg.max_minimizers);
  for (auto c : winners) r.minimizers.push_back(code_bits(c, n));
  r.best = r.minimizers.front();
  r.best_energy = p.evaluate(r.best);
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hubo
