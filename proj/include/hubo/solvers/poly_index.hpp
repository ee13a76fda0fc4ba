// Per-variable term index for O(degree) single-flip energy deltas.
#pragma once

#include <cstdint>
#include <vector>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

class PolyIndex {
 public:
  explicit PolyIndex(const Polynomial& p);

  /// Running configuration: bits, per-term count of zero bits, energy.
  struct State {
    BitString bits;
    std::vector<std::uint32_t> zeros;
    double energy = 0.0;
  };

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_terms() const { return coef_.size(); }

  State make_state(BitString bits) const;
  double energy(const BitString& bits) const;

  /// E(s with v flipped) - E(s).
  double delta(const State& st, VarId v) const;
  /// Same value computed from the bits alone.
  double delta(const BitString& bits, VarId v) const;
  void flip(State& st, VarId v, double delta) const;
  void flip(State& st, VarId v) const { flip(st, v, delta(st, v)); }

  double max_abs_coefficient() const;
  double min_abs_coefficient() const;

 private:
  std::size_t num_vars_ = 0;
  double constant_ = 0.0;
  std::vector<double> coef_;
  std::vector<std::vector<VarId>> term_vars_;
  std::vector<std::vector<std::uint32_t>> var_terms_;
};

double delta_energy(const PolyIndex& index, const BitString& s, VarId flip);

}  // namespace hubo
