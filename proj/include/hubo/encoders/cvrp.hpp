// Capacitated vehicle routing with binary-encoded node labels per
// (vehicle, slot). Node 0 is the depot.
#pragma once

#include <optional>
#include <vector>

#include "hubo/encoders/encoded_problem.hpp"

namespace hubo {

struct CvrpInstance {
  std::size_t nodes = 0;  // n, depot included
  std::size_t vehicles = 0;
  std::size_t slots = 0;
  Matrix cost;  // n x n
  std::vector<double> demand;  // q_0 = 0
  double capacity = 0.0;
  std::optional<double> lambda_visit;
  std::optional<double> lambda_mono;
  std::optional<double> lambda_valid;
  std::optional<double> lambda_cap;
};

enum class CvrpObjective {
  kEncoded,  // slot-to-slot legs only, as in the HUBO
  kClosed,   // adds depot departure and return legs
};

void validate(const CvrpInstance& inst);

/// Components: "obj", "visit", "mono", "valid", "cap" (weighted).
EncodedProblem build_cvrp(const CvrpInstance& inst);

/// Feasible iff every customer is visited once, all labels are nodes, no
/// vehicle leaves the depot after returning, and every load is within Q.
DecodedSolution decode_cvrp(const EncodedProblem& ep, const BitString& s,
                            CvrpObjective objective = CvrpObjective::kEncoded);

/// Hard violations of the routing kind only (visit, mono, valid), i.e. the
/// ones the penalty weights dominate. Capacity is a soft quadratic term.
bool routing_feasible(const DecodedSolution& d);

}  // namespace hubo
