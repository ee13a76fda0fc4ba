#include "hubo/poly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hubo {

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

Monomial::Monomial(std::initializer_list<VarId> vars)
    : Monomial(std::vector<VarId>(vars)) {}

bool Monomial::contains(VarId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.vars_.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(),
                 other.vars_.end(), std::back_inserter(out.vars_));
  return out;
}

Polynomial Polynomial::constant(double value, std::size_t num_vars) {
  Polynomial p(num_vars);
  p.add_term(Monomial{}, value);
  return p;
}

Polynomial Polynomial::variable(VarId v, std::size_t num_vars) {
  Polynomial p(num_vars);
  p.add_term(Monomial{v}, 1.0);
  return p;
}

Polynomial Polynomial::complement(VarId v, std::size_t num_vars) {
  Polynomial p(num_vars);
  p.add_term(Monomial{}, 1.0);
  p.add_term(Monomial{v}, -1.0);
  return p;
}

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

double Polynomial::constant_term() const { return coefficient(Monomial{}); }

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double coef) {
  if (!m.is_constant() && m.max_var() >= num_vars_) {
    num_vars_ = m.max_var() + 1;
  }
  auto [it, inserted] = terms_.try_emplace(m, coef);
  if (!inserted) it->second += coef;
  if (std::abs(it->second) < kCoefficientEpsilon) terms_.erase(it);
}

void Polynomial::set_num_vars(std::size_t n) {
  num_vars_ = std::max(num_vars_, n);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  set_num_vars(other.num_vars_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  set_num_vars(other.num_vars_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) < kCoefficientEpsilon) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial& Polynomial::operator+=(double scalar) {
  add_term(Monomial{}, scalar);
  return *this;
}

double Polynomial::evaluate(std::span<const std::uint8_t> bits) const {
  if (bits.size() != num_vars_) {
    throw std::invalid_argument("evaluate: bitstring has length " +
                                std::to_string(bits.size()) + ", expected " +
                                std::to_string(num_vars_));
  }
  double value = 0.0;
  for (const auto& [m, c] : terms_) {
    bool on = true;
    for (VarId v : m.vars()) {
      if (!bits[v]) {
        on = false;
        break;
      }
    }
    if (on) value += c;
  }
  return value;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator-(Polynomial a) { return a *= -1.0; }
Polynomial operator*(Polynomial a, double s) { return a *= s; }
Polynomial operator*(double s, Polynomial a) { return a *= s; }
Polynomial operator+(Polynomial a, double s) { return a += s; }
Polynomial operator+(double s, Polynomial a) { return a += s; }
Polynomial operator-(double s, const Polynomial& a) {
  Polynomial out = -a;
  out += s;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return multiply(a, b);
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  // Accumulate without per-step epsilon pruning so cancellations are exact.
  std::map<Monomial, double> acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      acc[ma * mb] += ca * cb;
    }
  }
  Polynomial out(std::max(a.num_vars(), b.num_vars()));
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

Polynomial square(const Polynomial& a) {
  std::map<Monomial, double> acc;
  const auto& t = a.terms();
  for (auto i = t.begin(); i != t.end(); ++i) {
    acc[i->first] += i->second * i->second;
    for (auto j = std::next(i); j != t.end(); ++j) {
      acc[i->first * j->first] += 2.0 * i->second * j->second;
    }
  }
  Polynomial out(a.num_vars());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

Polynomial affine_product(std::span<const AffineFactor> factors,
                          std::size_t num_vars) {
  Polynomial out = Polynomial::constant(1.0, num_vars);
  for (const auto& f : factors) {
    out = multiply(out, f.positive ? Polynomial::variable(f.var, num_vars)
                                   : Polynomial::complement(f.var, num_vars));
  }
  return out;
}

Polynomial selector(std::span<const VarId> vars, std::uint64_t label,
                    std::size_t num_vars) {
  std::vector<AffineFactor> factors;
  factors.reserve(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    factors.push_back({((label >> k) & 1U) != 0, vars[k]});
  }
  return affine_product(factors, num_vars);
}

std::map<std::size_t, std::size_t> order_histogram(const Polynomial& p) {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& [m, c] : p.terms()) ++hist[m.degree()];
  return hist;
}

Polynomial substitute(const Polynomial& p,
                      const std::map<VarId, std::uint8_t>& assignment) {
  for (const auto& [v, value] : assignment) {
    if (v >= p.num_vars()) {
      throw std::out_of_range("fix_variables: variable " + std::to_string(v) +
                              " outside universe of " +
                              std::to_string(p.num_vars()));
    }
  }
  std::map<Monomial, double> acc;
  for (const auto& [m, c] : p.terms()) {
    std::vector<VarId> rest;
    bool zero = false;
    for (VarId v : m.vars()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        rest.push_back(v);
      } else if (it->second == 0) {
        zero = true;
        break;
      }
    }
    if (!zero) acc[Monomial(std::move(rest))] += c;
  }
  Polynomial out(p.num_vars());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

FixedPolynomial fix_variables(const Polynomial& p,
                              const std::map<VarId, std::uint8_t>& assignment) {
  Polynomial sub = substitute(p, assignment);
  FixedPolynomial out;
  std::vector<VarId> remap(p.num_vars(), 0);
  for (VarId v = 0; v < p.num_vars(); ++v) {
    if (!assignment.contains(v)) {
      remap[v] = static_cast<VarId>(out.kept.size());
      out.kept.push_back(v);
    }
  }
  out.reduced = Polynomial(out.kept.size());
  for (const auto& [m, c] : sub.terms()) {
    std::vector<VarId> vars;
    vars.reserve(m.degree());
    for (VarId v : m.vars()) vars.push_back(remap[v]);
    out.reduced.add_term(Monomial(std::move(vars)), c);
  }
  return out;
}

std::size_t bits_for(std::size_t count) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < count) ++k;
  return k;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    double mag = std::abs(c);
    if (m.is_constant() || mag != 1.0) os << mag;
    for (VarId v : m.vars()) os << "x" << v;
  }
  return os.str();
}

}  // namespace hubo
