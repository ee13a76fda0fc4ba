// Exact statevector simulation of bias-field digitized counterdiabatic
// optimization. Qubit i holds variable x_i, with |0> <-> x = 0 <-> s = +1.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "hubo/poly/spin.hpp"
#include "hubo/qsim/pauli.hpp"
#include "hubo/solvers/solve_result.hpp"

namespace hubo {

inline constexpr std::size_t kStatevectorMaxQubits = 20;

class QubitCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Z-string Hamiltonian of a HUBO, rescaled so the largest non-identity
/// coefficient has magnitude 1. The identity term is dropped.
struct ProblemHamiltonian {
  SpinPolynomial spins;
  /// HUBO energy = scale * <H> + offset.
  double scale = 1.0;
  double offset = 0.0;
  std::size_t num_qubits() const { return spins.num_spins(); }
};

ProblemHamiltonian problem_hamiltonian(const Polynomial& p);

/// <b|H|b> for every basis state b (bit i of b = qubit i).
std::vector<double> diagonal_energies(const ProblemHamiltonian& hp);

struct ScheduleValue {
  double lambda = 0.0;
  double rate = 0.0;  // d lambda / dt
};

/// lambda(t) = sin^2(pi/2 sin^2(pi t / 2T)).
ScheduleValue schedule_lambda(double t, double total_time);

/// R_y angles preparing the ground state of sum_i (hx X_i - bias_i Z_i).
std::vector<double> initial_state_angles(std::span<const double> bias, double hx);

struct CdPool {
  std::vector<PauliString> strings;
};

/// Single-Y insertions into every problem term, then Y_q for each qubit not
/// already present.
CdPool build_cd_pool(const ProblemHamiltonian& hp);

struct AgpSolution {
  std::vector<double> coefficients;
  bool singular = false;
};

/// Least-squares AGP over the pool: minimizes ||d_lambda H + i[A, H]||_F.
AgpSolution agp_coefficients(const ProblemHamiltonian& hp, std::span<const double> bias, double hx,
                             double lambda, const CdPool& pool);

struct BfDcqoConfig {
  std::size_t n_iter = 3;
  std::size_t n_shots = 10000;
  double alpha_cvar = 0.1;
  std::size_t steps = 2;
  double total_time = 1.0;
  double hx = -1.0;
  std::uint64_t seed = 0;
  /// Off gives a plain digitized adiabatic evolution.
  bool counterdiabatic = true;
  std::size_t max_qubits = kStatevectorMaxQubits;
};

void validate(const BfDcqoConfig& cfg);

struct EvolveInfo {
  bool agp_singular = false;
  /// Per slice: lambda and d lambda / dt at the slice midpoint.
  std::vector<ScheduleValue> schedule;
};

std::vector<Amplitude> evolve(const ProblemHamiltonian& hp, std::span<const double> bias,
                              const BfDcqoConfig& cfg, EvolveInfo* info = nullptr);

struct SampleResult {
  /// Basis state code -> shot count.
  std::map<std::uint64_t, std::size_t> histogram;
  std::vector<double> bias;
};

/// Draws shots from |psi|^2 and sets bias_i to the mean of (1 - 2 bit_i) over
/// the ceil(alpha * shots) lowest-energy shots, plus any shots tied with the
/// cutoff energy.
SampleResult sample_and_bias(std::span<const Amplitude> psi, std::span<const double> energies,
                             std::size_t n_shots, double alpha_cvar, std::uint64_t seed);

struct IterationTrace {
  std::vector<double> bias;  // bias used to prepare this iteration
  std::vector<double> next_bias;
  BitString best;
  double best_energy = 0.0;
  double best_so_far = 0.0;
  std::map<std::uint64_t, std::size_t> histogram;
  bool agp_singular = false;
};

struct BfDcqoTrace {
  std::size_t num_qubits = 0;
  std::vector<IterationTrace> iterations;
};

struct BfDcqoRun {
  SolveResult result;
  BfDcqoTrace trace;
};

/// Energies in the result are HUBO energies of `p`.
BfDcqoRun bf_dcqo(const Polynomial& p, const BfDcqoConfig& cfg);

/// Histograms are cut to the 64 most frequent outcomes.
nlohmann::json to_json(const BfDcqoTrace& trace);

}  // namespace hubo
