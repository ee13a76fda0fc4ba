#include "hubo/solvers/poly_index.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hubo {

PolyIndex::PolyIndex(const Polynomial& p) : num_vars_(p.num_vars()), var_terms_(p.num_vars()) {
  for (const auto& [m, c] : p.terms()) {
    if (m.is_constant()) {
      constant_ += c;
      continue;
    }
    const auto t = static_cast<std::uint32_t>(coef_.size());
    coef_.push_back(c);
    term_vars_.push_back(m.vars());
    for (VarId v : m.vars()) var_terms_[v].push_back(t);
  }
}

PolyIndex::State PolyIndex::make_state(BitString bits) const {
  if (bits.size() != num_vars_) throw std::invalid_argument("bitstring length mismatch");
  State st;
  st.zeros.resize(coef_.size());
  st.energy = constant_;
  for (std::size_t t = 0; t < coef_.size(); ++t) {
    std::uint32_t z = 0;
    for (VarId v : term_vars_[t]) z += bits[v] ? 0 : 1;
    st.zeros[t] = z;
    if (z == 0) st.energy += coef_[t];
  }
  st.bits = std::move(bits);
  return st;
}

double PolyIndex::energy(const BitString& bits) const { return make_state(bits).energy; }

double PolyIndex::delta(const State& st, VarId v) const {
  const bool on = st.bits[v] != 0;
  double d = 0.0;
  for (auto t : var_terms_[v]) {
    const std::uint32_t others = st.zeros[t] - (on ? 0 : 1);
    if (others == 0) d += coef_[t];
  }
  return on ? -d : d;
}

double PolyIndex::delta(const BitString& bits, VarId v) const {
  if (bits.size() != num_vars_) throw std::invalid_argument("bitstring length mismatch");
  double d = 0.0;
  for (auto t : var_terms_[v]) {
    bool others_on = true;
    for (VarId u : term_vars_[t]) {
      if (u != v && !bits[u]) {
        others_on = false;
        break;
      }
    }
    if (others_on) d += coef_[t];
  }
  return bits[v] ? -d : d;
}

void PolyIndex::flip(State& st, VarId v, double delta) const {
  const bool on = st.bits[v] != 0;
  for (auto t : var_terms_[v]) {
    if (on) {
      ++st.zeros[t];
    } else {
      --st.zeros[t];
    }
  }
  st.bits[v] = on ? 0 : 1;
  st.energy += delta;
}

double PolyIndex::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coef_) m = std::max(m, std::abs(c));
  return m;
}

double PolyIndex::min_abs_coefficient() const {
  double m = std::numeric_limits<double>::infinity();
  for (double c : coef_) {
    if (c != 0.0) m = std::min(m, std::abs(c));
  }
  return std::isinf(m) ? 0.0 : m;
}

double delta_energy(const PolyIndex& index, const BitString& s, VarId flip) {
  return index.delta(s, flip);
}

}  // namespace hubo
