// Test-only helpers: exhaustive enumeration, an independent evaluator and
// seeded random polynomial generators.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "hubo/poly/polynomial.hpp"

namespace hubo::testing {

inline std::vector<std::uint8_t> bits_of(std::uint64_t code, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (code >> i) & 1U;
  return b;
}

inline void for_each_bitstring(
    std::size_t n, const std::function<void(const std::vector<std::uint8_t>&)>& f) {
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    f(bits_of(code, n));
  }
}

// Evaluates term by term as a product of numeric factors, without the
// short-circuit path used by Polynomial::evaluate.
inline double naive_evaluate(const Polynomial& p, const std::vector<std::uint8_t>& s) {
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double prod = c;
    for (VarId v : m.vars()) prod *= static_cast<double>(s.at(v));
    total += prod;
  }
  return total;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t num_vars,
                                    std::size_t num_terms, std::size_t max_degree,
                                    bool integer_coefficients = true) {
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_int_distribution<VarId> var(0, static_cast<VarId>(num_vars - 1));
  std::uniform_int_distribution<int> icoef(-9, 9);
  std::uniform_real_distribution<double> rcoef(-5.0, 5.0);
  Polynomial p(num_vars);
  for (std::size_t t = 0; t < num_terms; ++t) {
    std::vector<VarId> vars;
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) vars.push_back(var(rng));
    const double c = integer_coefficients ? icoef(rng) : rcoef(rng);
    p.add_term(Monomial(std::move(vars)), c);
  }
  return p;
}

struct BruteMin {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> argmin;
};

inline BruteMin brute_minimum(const Polynomial& p, double tol = 1e-9) {
  BruteMin out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << p.num_vars()); ++code) {
    const double e = naive_evaluate(p, bits_of(code, p.num_vars()));
    if (e < out.value - tol) {
      out.value = e;
      out.argmin = {code};
    } else if (e <= out.value + tol) {
      out.argmin.push_back(code);
    }
  }
  return out;
}

}  // namespace hubo::testing
