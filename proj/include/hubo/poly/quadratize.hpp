#pragma once

#include <optional>
#include <vector>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

/// Auxiliary variable z standing for the product x_left * x_right.
struct AuxVar {
  VarId aux;
  VarId left;
  VarId right;
  double penalty;
};

struct Quadratization {
  Polynomial qubo;
  std::vector<AuxVar> aux;
  std::size_t original_vars = 0;

  /// Extends an assignment of the original variables with consistent
  /// auxiliary values (z = x_left * x_right, applied in substitution order).
  BitString lift(std::span<const std::uint8_t> original) const;
  /// Drops the auxiliary variables.
  BitString project(std::span<const std::uint8_t> full) const;
};

/// Rosenberg reduction. Repeatedly picks the variable pair that occurs most
/// often across monomials of degree >= 3 (ties: lowest (i, j)), replaces it
/// by a fresh variable z in every such monomial and adds
/// penalty * (x_i x_j - 2 x_i z - 2 x_j z + 3 z).
///
/// With no fixed penalty, each substitution uses 1 + 2 * (sum of |c| over the
/// monomials it rewrites), which is enough for the minimizers of the result
/// to project exactly onto the minimizers of p.
Quadratization quadratize(const Polynomial& p,
                          std::optional<double> penalty = std::nullopt);

}  // namespace hubo
