/// @file encoded_problem.hpp
/// @brief Types shared by the QUEST, CVRP and scheduling encoders.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hubo/poly/polynomial.hpp"

namespace hubo {

using Matrix = std::vector<std::vector<double>>;

enum class UseCase { kQuest, kCvrp, kScheduling };

std::string to_string(UseCase u);
UseCase parse_use_case(const std::string& s);

/// Input that fails validation. `path` names the offending field, e.g.
/// "surfers[2].size_class".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct QuestInstance;
struct CvrpInstance;
struct SchedulingInstance;

/// x_{b,k} -> b * bits + k
struct QuestLayout {
  std::shared_ptr<const QuestInstance> instance;
  Matrix omega;  // S x B, final costs seen by the HUBO
  std::size_t breakers = 0;
  std::size_t bits = 0;
  VarId var(std::size_t b, std::size_t k) const {
    return static_cast<VarId>(b * bits + k);
  }
};

/// x_{v,t,k} -> (v * slots + t) * bits + k
struct CvrpLayout {
  std::shared_ptr<const CvrpInstance> instance;
  std::size_t vehicles = 0;
  std::size_t slots = 0;
  std::size_t bits = 0;
  VarId var(std::size_t v, std::size_t t, std::size_t k) const {
    return static_cast<VarId>((v * slots + t) * bits + k);
  }
  std::vector<VarId> slot_vars(std::size_t v, std::size_t t) const;
};

/// Slots are 1-based as in the scheduling model.
/// y_{j,l} -> (l - 1) * jobs + j
/// x_{c,l} -> jobs * slots + xi * slots + (l - 1), xi = position of c in
/// `x_criteria`.
struct SchedulingLayout {
  std::shared_ptr<const SchedulingInstance> instance;
  std::size_t jobs = 0;
  std::size_t slots = 0;
  std::vector<std::size_t> x_criteria;
  VarId y(std::size_t j, std::size_t l) const {
    return static_cast<VarId>((l - 1) * jobs + j);
  }
  VarId x(std::size_t xi, std::size_t l) const {
    return static_cast<VarId>(jobs * slots + xi * slots + (l - 1));
  }
  /// Index into x_criteria, or nullopt when the criterion has no variables.
  std::optional<std::size_t> x_index(std::size_t criterion) const;
};

using Layout = std::variant<QuestLayout, CvrpLayout, SchedulingLayout>;

struct EncodedProblem {
  UseCase use_case{};
  Polynomial polynomial;
  /// Weighted contributions keyed by term family; they sum to `polynomial`.
  std::map<std::string, Polynomial> components;
  /// Penalty weights actually used.
  std::map<std::string, double> weights;
  Layout layout;

  std::size_t num_vars() const { return polynomial.num_vars(); }
  double constant_offset() const { return polynomial.constant_term(); }
  std::vector<std::string> variable_names() const;
};

struct RuleViolation {
  std::string criterion;
  std::string rule;
  std::size_t count = 0;
  double severity = 0.0;
};

/// Soft-rule scan of a schedule. Gap, group and lane rules are counted once
/// per violating occurrence; FIFO carries a severity.
struct ViolationReport {
  std::size_t gap_violations = 0;
  std::size_t group_violations = 0;
  std::size_t lane_violations = 0;
  double fifo_severity = 0.0;
  std::size_t fifo_down_events = 0;
  std::size_t fifo_step_events = 0;
  bool fifo_span_exceeded = false;
  std::vector<RuleViolation> breakdown;

  std::size_t total_binary() const {
    return gap_violations + group_violations + lane_violations;
  }
};

struct QuestAssignment {
  /// Surfer label per breaker; -1 for labels that name no surfer.
  std::vector<int> surfer_of_breaker;
};

struct CvrpRoutes {
  /// Raw decoded label per (vehicle, slot); may exceed n-1 when invalid.
  std::vector<std::vector<int>> slot_labels;
  /// Customers visited per vehicle, in slot order.
  std::vector<std::vector<int>> routes;
  std::vector<double> loads;
  /// Sum of W over consecutive slot labels (the HUBO travel objective).
  double encoded_cost = 0.0;
  /// depot -> customers -> depot per nonempty route.
  double closed_cost = 0.0;
};

struct ScheduleAssignment {
  /// Job per slot (index 0 is slot 1); -1 when the slot is empty or
  /// over-assigned.
  std::vector<int> job_at_slot;
  /// Lane criterion index per slot; -1 when none or several are active.
  std::vector<int> lane_at_slot;
};

struct DecodedSolution {
  std::variant<QuestAssignment, CvrpRoutes, ScheduleAssignment> payload;
  bool feasible = false;
  std::vector<std::string> hard_violations;
  std::optional<ViolationReport> soft;
  double objective = 0.0;
  /// HUBO energy of the decoded bitstring, when one was decoded.
  std::optional<double> energy;
};

/// Default hard-penalty weight: 2 * bound + 1.
inline double default_hard_weight(double objective_bound) {
  return 2.0 * objective_bound + 1.0;
}

}  // namespace hubo
