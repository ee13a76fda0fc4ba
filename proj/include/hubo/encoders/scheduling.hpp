// Assembly-line sequencing: one-hot job-to-slot variables y, criterion
// indicators x for criteria with gap, group or lane rules, and FIFO terms on
// input sequence numbers.
//
// Slots are 1-based. Slot indices <= 0 refer to the known production history;
// indices past the horizon are treated as inactive. A product term is kept
// only when its latest slot lies inside the horizon.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hubo/encoders/encoded_problem.hpp"

namespace hubo {

enum class GapKind { kExact, kAtLeast };
enum class GroupKind { kExact, kAtMost };

struct GapRule {
  GapKind kind = GapKind::kAtLeast;
  int distance = 0;
};

struct GroupRule {
  GroupKind kind = GroupKind::kAtMost;
  int size = 1;
};

struct Criterion {
  std::string name;
  bool lane = false;
  std::optional<GapRule> gap;
  std::optional<GroupRule> group;
  /// Past activations, oldest first; the last entry is slot 0. Missing
  /// older entries count as inactive.
  std::vector<std::uint8_t> history;
};

struct SchedulingWeights {
  // Hard weights; unset means 2 * (soft coefficient range) + 1.
  std::optional<double> slot, job, link, lane;
  double gap = 1.0;
  double grp = 1.0;
  double under = 1.0;
  double over = 1.0;
  double short_gap = 1.0;
  double long_gap = 1.0;
  double down = 1.0;
  double step = 1.0;
  double span = 1.0;
};

struct SchedulingInstance {
  std::size_t slots = 0;
  std::vector<double> sequence;  // e_j per job
  std::vector<std::vector<std::uint8_t>> membership;  // [job][criterion]
  std::vector<Criterion> criteria;
  std::optional<double> step_threshold;  // g
  std::optional<double> span_threshold;  // D
  /// Sequence number of the job placed just before slot 1, if any.
  std::optional<double> previous_sequence;
  SchedulingWeights weights;

  std::size_t num_jobs() const { return sequence.size(); }
};

enum class RuleShape { kNone, kGapExact, kGapAtLeast, kGroupExact, kGroupAtMost, kGroupGapExact };

struct ResolvedRule {
  RuleShape shape = RuleShape::kNone;
  int gap = 0;
  int group = 0;
};

/// Applies the redundancy simplifications (exact zero gap with an at-most
/// group keeps only the group; U = 1 with an at-least gap keeps only the gap).
/// Any other gap + group pairing besides exact + exact is rejected.
ResolvedRule resolve_rule(const SchedulingInstance& inst, std::size_t criterion);

/// History value for slot l <= 0.
std::uint8_t history_value(const Criterion& c, long slot);

void validate(const SchedulingInstance& inst);

/// Components: "slot", "job", "link", "lane", "lane_link" (hard) and
/// "gap", "group", "grp_gap", "lane_gap", "fifo_down", "fifo_step",
/// "fifo_span" (soft). Empty families are omitted.
EncodedProblem build_scheduling(const SchedulingInstance& inst);

DecodedSolution decode_scheduling(const EncodedProblem& ep, const BitString& s);

/// Direct scan of a schedule. `sequence` holds the job per slot (-1 for an
/// empty slot); `lanes` the lane criterion index per slot (-1 for none) and
/// may be empty when the instance has no lanes.
ViolationReport violation_report(const std::vector<int>& sequence,
                                 const std::vector<int>& lanes,
                                 const SchedulingInstance& inst);

/// Builds y/x bits for a one-hot schedule with consistent criterion and lane
/// indicators. `lanes` may be empty when there are no lane criteria.
BitString encode_schedule(const EncodedProblem& ep, const std::vector<int>& sequence,
                          const std::vector<int>& lanes = {});

}  // namespace hubo
