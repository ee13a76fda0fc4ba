#include "hubo/poly/interchange.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace hubo {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

namespace {

double parse_double(std::string_view token, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    throw FormatError(line, "bad coefficient '" + std::string(token) + "'");
  }
  return value;
}

std::uint64_t parse_index(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(line, "bad integer '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

void write_hubo(std::ostream& os, const HuboFile& file) {
  const auto& p = file.polynomial;
  os << "hubo 1\n";
  os << "vars " << p.num_vars() << "\n";
  for (const auto& [v, name] : file.names) os << "name " << v << " " << name << "\n";
  os << "terms " << p.size() << "\n";
  for (const auto& [m, c] : p.terms()) {
    os << format_double(c);
    for (VarId v : m.vars()) os << " " << v;
    os << "\n";
  }
}

std::string write_hubo(const HuboFile& file) {
  std::ostringstream os;
  write_hubo(os, file);
  return os.str();
}

HuboFile read_hubo(std::istream& is) {
  HuboFile out;
  std::string raw;
  std::size_t line = 0;
  enum class Stage { kMagic, kVars, kHeader, kTerms } stage = Stage::kMagic;
  std::size_t num_vars = 0;
  std::size_t expected_terms = 0;
  std::size_t seen_terms = 0;

  while (std::getline(is, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tokens = split(raw);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    switch (stage) {
      case Stage::kMagic:
        if (tokens.size() != 2 || tokens[0] != "hubo" || tokens[1] != "1") {
          throw FormatError(line, "expected header 'hubo 1'");
        }
        stage = Stage::kVars;
        break;
      case Stage::kVars:
        if (tokens.size() != 2 || tokens[0] != "vars") {
          throw FormatError(line, "expected 'vars <count>'");
        }
        num_vars = parse_index(tokens[1], line);
        out.polynomial = Polynomial(num_vars);
        stage = Stage::kHeader;
        break;
      case Stage::kHeader:
        if (tokens[0] == "name") {
          if (tokens.size() < 3) throw FormatError(line, "expected 'name <index> <label>'");
          auto v = parse_index(tokens[1], line);
          if (v >= num_vars) throw FormatError(line, "name index out of range");
          auto pos = raw.find(tokens[2], raw.find(tokens[1]) + tokens[1].size());
          out.names[static_cast<VarId>(v)] = raw.substr(pos);
        } else if (tokens[0] == "terms" && tokens.size() == 2) {
          expected_terms = parse_index(tokens[1], line);
          stage = Stage::kTerms;
        } else {
          throw FormatError(line, "expected 'name' or 'terms' record");
        }
        break;
      case Stage::kTerms: {
        if (seen_terms == expected_terms) throw FormatError(line, "more terms than declared");
        double coef = parse_double(tokens[0], line);
        std::vector<VarId> vars;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
          auto v = parse_index(tokens[k], line);
          if (v >= num_vars) throw FormatError(line, "variable index out of range");
          if (!vars.empty() && v <= vars.back()) {
            throw FormatError(line, "variables must be strictly ascending");
          }
          vars.push_back(static_cast<VarId>(v));
        }
        Monomial m(std::move(vars));
        if (out.polynomial.terms().contains(m)) throw FormatError(line, "duplicate monomial");
        out.polynomial.add_term(m, coef);
        ++seen_terms;
        break;
      }
    }
  }
  if (stage != Stage::kTerms) throw FormatError(line, "truncated header");
  if (seen_terms != expected_terms) {
    throw FormatError(line, "declared " + std::to_string(expected_terms) +
                                " terms, found " + std::to_string(seen_terms));
  }
  return out;
}

HuboFile read_hubo_string(const std::string& text) {
  std::istringstream is(text);
  return read_hubo(is);
}

HuboFile load_hubo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_hubo(in);
}

void save_hubo(const std::string& path, const HuboFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_hubo(out, file);
}

}  // namespace hubo
