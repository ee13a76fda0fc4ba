#include "hubo/poly/quadratize.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hubo {

namespace {

using Pair = std::pair<VarId, VarId>;

std::optional<Pair> most_frequent_pair(const Polynomial& p) {
  std::map<Pair, std::size_t> counts;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() < 3) continue;
    const auto& v = m.vars();
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b < v.size(); ++b) ++counts[{v[a], v[b]}];
    }
  }
  std::optional<Pair> best;
  std::size_t best_count = 0;
  // std::map iterates in (i, j) order, so strict > keeps the lowest pair.
  for (const auto& [pair, n] : counts) {
    if (n > best_count) {
      best = pair;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

BitString Quadratization::lift(std::span<const std::uint8_t> original) const {
  if (original.size() != original_vars) {
    throw std::invalid_argument("lift: expected " +
                                std::to_string(original_vars) + " bits");
  }
  BitString full(qubo.num_vars(), 0);
  std::copy(original.begin(), original.end(), full.begin());
  for (const auto& a : aux) full[a.aux] = full[a.left] & full[a.right];
  return full;
}

BitString Quadratization::project(std::span<const std::uint8_t> full) const {
  return BitString(full.begin(), full.begin() + original_vars);
}

Quadratization quadratize(const Polynomial& p, std::optional<double> penalty) {
  if (penalty && !(*penalty > 0.0)) {
    throw std::invalid_argument("quadratize: penalty must be positive");
  }
  Quadratization out;
  out.original_vars = p.num_vars();
  Polynomial current = p;
  std::size_t next_var = p.num_vars();

  while (auto pair = most_frequent_pair(current)) {
    const auto [i, j] = *pair;
    const auto z = static_cast<VarId>(next_var++);
    Polynomial next(next_var);
    double rewritten_weight = 0.0;
    for (const auto& [m, c] : current.terms()) {
      if (m.degree() >= 3 && m.contains(i) && m.contains(j)) {
        std::vector<VarId> vars;
        vars.reserve(m.degree() - 1);
        for (VarId v : m.vars()) {
          if (v != i && v != j) vars.push_back(v);
        }
        vars.push_back(z);
        next.add_term(Monomial(std::move(vars)), c);
        rewritten_weight += std::abs(c);
      } else {
        next.add_term(m, c);
      }
    }
    const double weight = penalty ? *penalty : 1.0 + 2.0 * rewritten_weight;
    next.add_term(Monomial{i, j}, weight);
    next.add_term(Monomial{i, z}, -2.0 * weight);
    next.add_term(Monomial{j, z}, -2.0 * weight);
    next.add_term(Monomial{z}, 3.0 * weight);
    out.aux.push_back({z, i, j, weight});
    current = std::move(next);
  }
  current.set_num_vars(next_var);
  out.qubo = std::move(current);
  return out;
}

}  // namespace hubo
