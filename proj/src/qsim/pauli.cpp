#include "hubo/qsim/pauli.hpp"

#include <cmath>

namespace hubo {

namespace {

constexpr Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

unsigned y_count(PauliString p) { return static_cast<unsigned>(std::popcount(p.x & p.z)); }

}  // namespace

PauliProduct multiply(PauliString a, PauliString b) {
  const PauliString r{a.x ^ b.x, a.z ^ b.z};
  // Z^{z_a} X^{x_b} = (-1)^{|z_a & x_b|} X^{x_b} Z^{z_a}
  const unsigned swaps = static_cast<unsigned>(std::popcount(a.z & b.x));
  const unsigned phase = (y_count(a) + y_count(b) + 4 - y_count(r) % 4 + 2 * swaps) % 4;
  return {phase, r};
}

double commutator_coefficient(PauliString p, PauliString q, PauliString* result) {
  if (!anticommute(p, q)) return 0.0;
  const auto prod = multiply(p, q);
  if (result) *result = prod.string;
  // i[P, Q] = 2i PQ = 2 i^{1 + phase} R, and phase is odd here.
  return (prod.phase + 1) % 4 == 0 ? 2.0 : -2.0;
}

void apply_rotation(std::span<Amplitude> psi, PauliString p, double angle) {
  const Amplitude c(std::cos(angle), 0.0);
  // -i sin(angle) times the fixed i^{|x & z|} factor of P
  const Amplitude s = Amplitude(0.0, -std::sin(angle)) * kIPow[y_count(p) % 4];
  auto sign = [&](std::uint64_t b) { return std::popcount(b & p.z) % 2 ? -1.0 : 1.0; };

  if (p.x == 0) {
    for (std::uint64_t b = 0; b < psi.size(); ++b) psi[b] *= c + s * sign(b);
    return;
  }
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    const std::uint64_t f = b ^ p.x;
    if (f < b) continue;
    const Amplitude pb = psi[b];
    const Amplitude pf = psi[f];
    // (P psi)[b ^ x] = i^{|x&z|} (-1)^{|b & z|} psi[b]
    psi[f] = c * pf + s * sign(b) * pb;
    psi[b] = c * pb + s * sign(f) * pf;
  }
}

std::string to_string(PauliString p) {
  std::string out;
  for (unsigned q = 0; q < 32; ++q) {
    const bool x = (p.x >> q) & 1U;
    const bool z = (p.z >> q) & 1U;
    if (!x && !z) continue;
    if (!out.empty()) out += ' ';
    out += x ? (z ? 'Y' : 'X') : 'Z';
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

}  // namespace hubo
