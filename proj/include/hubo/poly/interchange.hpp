/// @file interchange.hpp
/// @brief Plain-text HUBO term-list format.
///
/// Layout (one record per line, '#' starts a comment line):
///
///     hubo 1
///     vars <num_vars>
///     name <index> <label>        (optional, any subset of variables)
///     terms <count>
///     <coefficient> [<var> ...]   (variables strictly ascending)
///
/// Coefficients are written with the shortest representation that parses
/// back to the same double, so integers up to 2^53 round-trip exactly.

#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

struct HuboFile {
  Polynomial polynomial;
  std::map<VarId, std::string> names;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

void write_hubo(std::ostream& os, const HuboFile& file);
std::string write_hubo(const HuboFile& file);
HuboFile read_hubo(std::istream& is);
HuboFile read_hubo_string(const std::string& text);

HuboFile load_hubo(const std::string& path);
void save_hubo(const std::string& path, const HuboFile& file);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace hubo
