/// @file polynomial.hpp
/// @brief Multilinear pseudo-Boolean polynomials over binary variables.
/// @details A Polynomial is a sparse map from canonical monomials (sorted,
/// duplicate-free variable lists) to real coefficients. Because x*x == x for
/// binary variables, products are reduced at construction and every
/// polynomial is multilinear. This is the common carrier for every HUBO
/// built and solved in this project.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hubo {

using VarId = std::uint32_t;

/// 0/1 assignment; entry i is the value of variable i.
using BitString = std::vector<std::uint8_t>;

/// Coefficients with magnitude below this are dropped on normalization.
inline constexpr double kCoefficientEpsilon = 1e-12;

class Monomial {
 public:
  Monomial() = default;
  /// Sorts and removes duplicates (idempotence x*x = x).
  explicit Monomial(std::vector<VarId> vars);
  Monomial(std::initializer_list<VarId> vars);

  const std::vector<VarId>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  bool is_constant() const { return vars_.empty(); }
  bool contains(VarId v) const;
  VarId max_var() const { return vars_.empty() ? 0 : vars_.back(); }

  /// Product of two monomials: the sorted union of their variables.
  Monomial operator*(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<VarId> vars_;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, double>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(double value, std::size_t num_vars = 0);
  static Polynomial variable(VarId v, std::size_t num_vars);
  /// 1 - x_v
  static Polynomial complement(VarId v, std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Highest monomial degree; 0 for the zero polynomial.
  std::size_t degree() const;
  double constant_term() const;
  double coefficient(const Monomial& m) const;

  /// Adds coef to the coefficient of m. Grows num_vars if needed and drops
  /// the entry when the result is below kCoefficientEpsilon.
  void add_term(const Monomial& m, double coef);
  /// Widens the variable universe; never shrinks it.
  void set_num_vars(std::size_t n);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scalar);
  Polynomial& operator+=(double scalar);

  /// Exact multilinear evaluation. Throws std::invalid_argument when
  /// bits.size() != num_vars().
  double evaluate(std::span<const std::uint8_t> bits) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  TermMap terms_;
  std::size_t num_vars_ = 0;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, double s);
Polynomial operator*(double s, Polynomial a);
Polynomial operator+(Polynomial a, double s);
Polynomial operator+(double s, Polynomial a);
Polynomial operator-(double s, const Polynomial& a);

/// Pointwise sum (named form of operator+).
Polynomial add(const Polynomial& a, const Polynomial& b);
/// Multilinear product with x*x = x reduction.
Polynomial multiply(const Polynomial& a, const Polynomial& b);
/// Square of a polynomial; cheaper than multiply(a, a).
Polynomial square(const Polynomial& a);

/// One factor of a selector product: x_var when positive, (1 - x_var)
/// otherwise.
struct AffineFactor {
  bool positive;
  VarId var;
};

/// Expands prod_k f_k. Contradictory factors on the same variable give the
/// zero polynomial.
Polynomial affine_product(std::span<const AffineFactor> factors,
                          std::size_t num_vars);

/// Selector over the bit block `vars` that is 1 exactly when the bits equal
/// the binary code of `label` (bit k of label matches vars[k]).
Polynomial selector(std::span<const VarId> vars, std::uint64_t label,
                    std::size_t num_vars);

/// Number of nonzero monomials per degree.
std::map<std::size_t, std::size_t> order_histogram(const Polynomial& p);

/// Result of fixing a subset of variables. The reduced polynomial is
/// re-indexed densely; kept[new_id] gives the original VarId.
struct FixedPolynomial {
  Polynomial reduced;
  std::vector<VarId> kept;
};

/// Substitutes the given values and re-indexes the remaining variables.
/// Throws std::out_of_range for VarIds outside the universe.
FixedPolynomial fix_variables(const Polynomial& p,
                              const std::map<VarId, std::uint8_t>& assignment);

/// Same substitution but keeps the original index space (fixed variables
/// simply no longer occur).
Polynomial substitute(const Polynomial& p,
                      const std::map<VarId, std::uint8_t>& assignment);

/// Number of bits needed to encode `count` labels: ceil(log2(count)), with
/// 0 for count <= 1.
std::size_t bits_for(std::size_t count);

std::string to_string(const Polynomial& p);

}  // namespace hubo
