#include "hubo/poly/spin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hubo {

std::size_t SpinPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void SpinPolynomial::add_term(const Monomial& zs, double coef) {
  if (!zs.is_constant() && zs.max_var() >= num_spins_) {
    num_spins_ = zs.max_var() + 1;
  }
  auto [it, inserted] = terms_.try_emplace(zs, coef);
  if (!inserted) it->second += coef;
  if (std::abs(it->second) < kCoefficientEpsilon) terms_.erase(it);
}

double SpinPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [zs, c] : terms_) {
    if (!zs.is_constant()) m = std::max(m, std::abs(c));
  }
  return m;
}

double SpinPolynomial::evaluate_spins(std::span<const std::int8_t> spins) const {
  if (spins.size() != num_spins_) {
    throw std::invalid_argument("evaluate_spins: length mismatch");
  }
  double value = 0.0;
  for (const auto& [zs, c] : terms_) {
    int sign = 1;
    for (VarId v : zs.vars()) sign *= spins[v];
    value += sign * c;
  }
  return value;
}

double SpinPolynomial::evaluate_bits(std::span<const std::uint8_t> bits) const {
  if (bits.size() != num_spins_) {
    throw std::invalid_argument("evaluate_bits: length mismatch");
  }
  double value = 0.0;
  for (const auto& [zs, c] : terms_) {
    bool odd = false;
    for (VarId v : zs.vars()) odd ^= (bits[v] != 0);
    value += odd ? -c : c;
  }
  return value;
}

SpinPolynomial to_spin(const Polynomial& p) {
  // x_S = 2^{-|S|} sum_{T subset S} (-1)^{|T|} s_T
  std::map<Monomial, double> acc;
  for (const auto& [m, c] : p.terms()) {
    const auto& vars = m.vars();
    const std::size_t d = vars.size();
    const double scale = std::ldexp(c, -static_cast<int>(d));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      std::vector<VarId> sub;
      for (std::size_t k = 0; k < d; ++k) {
        if ((mask >> k) & 1U) sub.push_back(vars[k]);
      }
      const double sign = (sub.size() % 2 == 0) ? 1.0 : -1.0;
      acc[Monomial(std::move(sub))] += sign * scale;
    }
  }
  SpinPolynomial out(p.num_vars());
  for (const auto& [zs, c] : acc) out.add_term(zs, c);
  return out;
}

Polynomial from_spin(const SpinPolynomial& h) {
  // s_S = prod (1 - 2 x_i) = sum_{T subset S} (-2)^{|T|} x_T
  std::map<Monomial, double> acc;
  for (const auto& [zs, c] : h.terms()) {
    const auto& vars = zs.vars();
    const std::size_t d = vars.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      std::vector<VarId> sub;
      for (std::size_t k = 0; k < d; ++k) {
        if ((mask >> k) & 1U) sub.push_back(vars[k]);
      }
      const double factor = std::ldexp(sub.size() % 2 == 0 ? 1.0 : -1.0,
                                       static_cast<int>(sub.size()));
      acc[Monomial(std::move(sub))] += c * factor;
    }
  }
  Polynomial out(h.num_spins());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

}  // namespace hubo
