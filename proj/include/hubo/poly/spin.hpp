#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

/// Polynomial in Pauli-Z spins s_i in {+1, -1}. A key lists the qubits of a
/// Z-string; the empty key is the identity coefficient.
class SpinPolynomial {
 public:
  using TermMap = std::map<Monomial, double>;

  SpinPolynomial() = default;
  explicit SpinPolynomial(std::size_t num_spins) : num_spins_(num_spins) {}

  std::size_t num_spins() const { return num_spins_; }
  const TermMap& terms() const { return terms_; }
  std::size_t degree() const;

  void add_term(const Monomial& zs, double coef);

  /// Largest |coefficient| over non-identity terms; 0 if there are none.
  double max_abs_coefficient() const;

  double evaluate_spins(std::span<const std::int8_t> spins) const;
  /// Evaluates at s_i = 1 - 2 x_i.
  double evaluate_bits(std::span<const std::uint8_t> bits) const;

 private:
  TermMap terms_;
  std::size_t num_spins_ = 0;
};

/// Substitutes x_i = (1 - s_i) / 2.
SpinPolynomial to_spin(const Polynomial& p);
/// Substitutes s_i = 1 - 2 x_i.
Polynomial from_spin(const SpinPolynomial& h);

}  // namespace hubo
