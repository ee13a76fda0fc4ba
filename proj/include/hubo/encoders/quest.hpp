// QUEST: assign each breaker vehicle a distinct surfer with K = ceil(log2 S)
// bits per breaker.
#pragma once

#include <optional>
#include <vector>

#include "hubo/encoders/encoded_problem.hpp"

namespace hubo {

struct QuestVehicle {
  int size_class = 1;  // 1..5
  double speed = 0.0;
};

struct QuestInstance {
  std::vector<QuestVehicle> breakers;
  std::vector<QuestVehicle> surfers;
  Matrix dt;  // S x B arrival-time differences
  Matrix dv;  // S x B speed differences; empty means |v_s - v_b|
  std::vector<double> dt_threshold;  // per surfer; empty means 0
  std::vector<double> dv_threshold;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::optional<double> lambda_valid;
  std::optional<double> lambda_unique;
  /// Direct S x B cost matrix; overrides the vehicle model when present.
  std::optional<Matrix> omega;

  std::size_t num_breakers() const;
  std::size_t num_surfers() const;
};

/// f(d) = (d + 4) / 24, d = c_b - c_s.
double drag_factor(int size_difference);

void validate(const QuestInstance& inst);

Matrix quest_cost_matrix(const QuestInstance& inst);

EncodedProblem build_quest(const QuestInstance& inst);

DecodedSolution decode_quest(const EncodedProblem& ep, const BitString& s);

}  // namespace hubo
