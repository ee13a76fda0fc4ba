// Analytic resource models for DCQO circuits on all-to-all hardware:
// monomial-order statistics, two-qubit gate counts, fidelity, shot budgets
// and runtime. Times are in seconds.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hubo/encoders/encoded_problem.hpp"
#include "hubo/poly/polynomial.hpp"

namespace hubo {

struct OrderHistogram {
  std::map<std::size_t, std::uint64_t> counts;  // degree -> monomials
  bool upper_bound = false;

  OrderHistogram& operator+=(const OrderHistogram& other);
  std::size_t max_order() const { return counts.empty() ? 0 : counts.rbegin()->first; }
};

OrderHistogram operator+(OrderHistogram a, const OrderHistogram& b);

/// Distinct monomials of an expanded polynomial, by degree.
OrderHistogram exact_histogram(const Polynomial& p);

/// `count` local terms, each depending on at most `vars_per_term` bits.
struct TermClass {
  std::string name;
  std::size_t vars_per_term = 0;
  std::uint64_t count = 0;
};

/// Adds count * C(m, r) for r = 2..m per class.
OrderHistogram upper_bound_histogram(std::span<const TermClass> classes);

std::vector<TermClass> quest_term_classes(std::size_t breakers, std::size_t surfers);
/// `nodes` includes the depot.
std::vector<TermClass> cvrp_term_classes(std::size_t nodes, std::size_t vehicles, std::size_t slots);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// sum_{r >= 2} N_r 2(2r - 3), times the number of Trotter steps.
std::uint64_t gate_estimate(const OrderHistogram& h, std::uint64_t steps = 1);

/// (1 - e_2q)^n_2q.
double circuit_fidelity(double n_2q, double e_2q);
/// Largest e_2q with circuit_fidelity(n_2q, e_2q) >= target.
double max_error_for_fidelity(double n_2q, double target);

/// ceil((1/f^2)(1/eps^2) ln(N/delta)), constant factor 1. Integer-valued but
/// returned as double since noisy circuits overflow 64 bits.
double shots_required(double fidelity, double epsilon, double delta, std::size_t observables);

struct HardwareModel {
  double e_2q = 1e-3;
  double t_2q = 50e-6;
  double t_reset = 200e-6;
  double alpha = 1.0;  // depth reduction factor
  std::size_t qubits = 1;
};

void validate(const HardwareModel& hm);

struct RuntimeInputs {
  double n_iter = 2;
  double n_shots = 1000;
  double n_cvar = 100;
  double n_sweep = 0;
  double t_sweep = 0.0;
};

struct ResourceReport {
  std::size_t qubits = 0;
  std::uint64_t n_2q = 0;
  double depth = 0.0;
  double fidelity = 1.0;
  double shots = 0.0;
  double t_shot = 0.0;
  double t_qpu = 0.0;
  double t_cpu = 0.0;
  double t_total = 0.0;
};

/// d = alpha 2 n_2q / N, T_shot = t_2q d + t_reset,
/// T_QPU = n_iter n_shots T_shot, T_CPU = n_cvar n_iter n_sweep T_sweep.
ResourceReport runtime_estimate(const HardwareModel& hm, std::uint64_t n_2q, const RuntimeInputs& in);

struct QubitCounts {
  std::size_t hubo = 0;
  std::size_t qubo = 0;
};

QubitCounts quest_qubit_counts(std::size_t breakers, std::size_t surfers);
QubitCounts cvrp_qubit_counts(std::size_t nodes, std::size_t vehicles, std::size_t slots);

/// One grid point. Instance sizes select the upper-bound histogram; a raw
/// (qubits, n_2q) pair can be given instead.
struct ScenarioPoint {
  std::string label;
  std::optional<UseCase> use_case;
  std::size_t breakers = 0, surfers = 0;
  std::size_t nodes = 0, vehicles = 0, slots = 0;
  std::size_t qubits = 0;
  std::uint64_t n_2q = 0;
};

struct ScenarioGrid {
  std::vector<ScenarioPoint> points;
  std::vector<double> e_2q{1e-3};
  std::vector<double> alpha{1.0};
  HardwareModel hardware;
  RuntimeInputs runtime;
  /// Unset: shots from the fidelity-aware budget below.
  std::optional<double> fixed_shots;
  /// Unset: ceil(cvar_fraction * shots).
  std::optional<double> fixed_cvar;
  double epsilon = 0.05;
  double delta = 0.01;
  double cvar_fraction = 0.1;
  std::uint64_t trotter_steps = 1;
};

struct ScenarioRow {
  std::string label;
  double e_2q = 0.0;
  double alpha = 1.0;
  ResourceReport report;
};

ScenarioGrid scenario_grid_from_json(const nlohmann::json& j);
/// Rows ordered by point, then e_2q, then alpha.
std::vector<ScenarioRow> scenario_sweep(const ScenarioGrid& grid);

/// Report for one point with a known gate count, using the grid's runtime
/// and shot rules.
ScenarioRow evaluate_point(const ScenarioGrid& grid, const std::string& label, std::size_t qubits,
                           std::uint64_t n_2q, double e_2q, double alpha);

/// Header: qubits,n_2q,fidelity,shots,T_shot,T_QPU,T_CPU,T_total,label,e_2q,alpha
void write_csv(std::ostream& os, std::span<const ScenarioRow> rows);

}  // namespace hubo
