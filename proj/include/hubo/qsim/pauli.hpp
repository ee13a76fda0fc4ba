// Hermitian Pauli strings on up to 32 qubits as (x, z) bit masks:
// P = i^{|x & z|} X^x Z^z, so a qubit with both bits set carries Y.
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

namespace hubo {

using Amplitude = std::complex<double>;

struct PauliString {
  std::uint32_t x = 0;
  std::uint32_t z = 0;

  static PauliString pauli_x(unsigned q) { return {1U << q, 0}; }
  static PauliString pauli_y(unsigned q) { return {1U << q, 1U << q}; }
  static PauliString pauli_z(unsigned q) { return {0, 1U << q}; }

  std::uint64_t key() const { return (static_cast<std::uint64_t>(x) << 32) | z; }
  unsigned weight() const { return static_cast<unsigned>(std::popcount(x | z)); }

  auto operator<=>(const PauliString&) const = default;
};

inline bool anticommute(PauliString a, PauliString b) {
  return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) % 2 == 1;
}

/// P Q = i^phase R with phase in 0..3.
struct PauliProduct {
  unsigned phase = 0;
  PauliString string;
};

PauliProduct multiply(PauliString a, PauliString b);

/// Real coefficient c with i[P, Q] = c R (0 when P and Q commute).
double commutator_coefficient(PauliString p, PauliString q, PauliString* result);

/// psi <- exp(-i angle P) psi.
void apply_rotation(std::span<Amplitude> psi, PauliString p, double angle);

/// e.g. "Y0 Z1"; "I" for the identity.
std::string to_string(PauliString p);

}  // namespace hubo
