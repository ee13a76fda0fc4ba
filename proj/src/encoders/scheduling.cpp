#include "hubo/encoders/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace hubo {

namespace {

std::string crit_path(std::size_t c) { return "criteria[" + std::to_string(c) + "]"; }

}  // namespace

std::uint8_t history_value(const Criterion& c, long slot) {
  const long idx = static_cast<long>(c.history.size()) - 1 + slot;
  if (slot > 0 || idx < 0) return 0;
  return c.history[static_cast<std::size_t>(idx)];
}

ResolvedRule resolve_rule(const SchedulingInstance& inst, std::size_t criterion) {
  const Criterion& c = inst.criteria.at(criterion);
  const std::string path = crit_path(criterion);
  const auto& gap = c.gap;
  const auto& grp = c.group;

  if (c.lane) {
    if (grp) throw ValidationError(path + ".group", "lane criterion '" + c.name + "' takes no group rule");
    if (gap && gap->kind != GapKind::kAtLeast) {
      throw ValidationError(path + ".gap", "lane criterion '" + c.name + "' supports only at-least gaps");
    }
    if (!gap) return {};
    return {RuleShape::kGapAtLeast, gap->distance, 0};
  }
  if (!gap && !grp) return {};
  if (gap && !grp) {
    return {gap->kind == GapKind::kExact ? RuleShape::kGapExact : RuleShape::kGapAtLeast,
            gap->distance, 0};
  }
  if (grp && !gap) {
    return {grp->kind == GroupKind::kExact ? RuleShape::kGroupExact : RuleShape::kGroupAtMost, 0,
            grp->size};
  }
  if (gap->kind == GapKind::kExact && gap->distance == 0 && grp->kind == GroupKind::kAtMost) {
    return {RuleShape::kGroupAtMost, 0, grp->size};
  }
  if (gap->kind == GapKind::kAtLeast && gap->distance >= 1 && grp->size == 1) {
    return {RuleShape::kGapAtLeast, gap->distance, 0};
  }
  if (gap->kind == GapKind::kExact && gap->distance > 0 && grp->kind == GroupKind::kExact) {
    return {RuleShape::kGroupGapExact, gap->distance, grp->size};
  }
  throw ValidationError(path, "unsupported gap/group combination for criterion '" + c.name + "'");
}

void validate(const SchedulingInstance& inst) {
  const std::size_t n = inst.num_jobs();
  if (inst.slots < 1) throw ValidationError("slots", "must be at least 1");
  if (n < 1) throw ValidationError("jobs", "at least one job required");
  if (inst.membership.size() != n) {
    throw ValidationError("membership", "expected one row per job");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::string at = "jobs[" + std::to_string(j) + "]";
    if (!std::isfinite(inst.sequence[j])) throw ValidationError(at + ".seq", "must be finite");
    if (inst.membership[j].size() != inst.criteria.size()) {
      throw ValidationError(at + ".criteria", "membership row has wrong length");
    }
    for (auto m : inst.membership[j]) {
      if (m > 1) throw ValidationError(at + ".criteria", "membership must be 0 or 1");
    }
  }
  for (std::size_t c = 0; c < inst.criteria.size(); ++c) {
    const auto& cr = inst.criteria[c];
    const std::string path = crit_path(c);
    if (cr.gap && cr.gap->distance < 0) throw ValidationError(path + ".gap.d", "must be >= 0");
    if (cr.group && cr.group->size < 1) throw ValidationError(path + ".group.size", "must be >= 1");
    for (auto h : cr.history) {
      if (h > 1) throw ValidationError(path + ".history", "values must be 0 or 1");
    }
    for (std::size_t d = 0; d < c; ++d) {
      if (inst.criteria[d].name == cr.name) throw ValidationError(path + ".name", "duplicate name");
    }
    resolve_rule(inst, c);
  }
  auto nonneg = [](const std::optional<double>& v, const char* path) {
    if (v && !(std::isfinite(*v) && *v >= 0.0)) throw ValidationError(path, "must be nonnegative");
  };
  nonneg(inst.step_threshold, "fifo.step_threshold");
  nonneg(inst.span_threshold, "fifo.span_threshold");
  if (inst.previous_sequence && !std::isfinite(*inst.previous_sequence)) {
    throw ValidationError("fifo.previous_seq", "must be finite");
  }
  const auto& w = inst.weights;
  for (auto [v, name] : {std::pair{w.gap, "weights.gap"}, {w.grp, "weights.grp"},
                         {w.under, "weights.under"}, {w.over, "weights.over"},
                         {w.short_gap, "weights.short"}, {w.long_gap, "weights.long"},
                         {w.down, "weights.down"}, {w.step, "weights.step"},
                         {w.span, "weights.span"}}) {
    if (!(std::isfinite(v) && v >= 0.0)) throw ValidationError(name, "must be nonnegative");
  }
}

namespace {

struct Factor {
  long slot;
  bool positive;
};

class CriterionTerms {
 public:
  CriterionTerms(const Criterion& c, const SchedulingLayout& layout, std::size_t xi,
                 std::size_t nv)
      : c_(c), layout_(layout), xi_(xi), nv_(nv), m_(static_cast<long>(layout.slots)) {}

  // Adds w * prod(factors) when the latest slot lies in [1, M].
  void add(Polynomial& target, const std::vector<Factor>& factors, double w) const {
    long latest = factors.front().slot;
    for (const auto& f : factors) latest = std::max(latest, f.slot);
    if (latest < 1 || latest > m_ || w == 0.0) return;
    std::vector<AffineFactor> vars;
    double k = w;
    for (const auto& f : factors) {
      if (f.slot <= 0) {
        const double v = history_value(c_, f.slot);
        const double val = f.positive ? v : 1.0 - v;
        if (val == 0.0) return;
        k *= val;
      } else {
        vars.push_back({f.positive, layout_.x(xi_, static_cast<std::size_t>(f.slot))});
      }
    }
    target += affine_product(vars, nv_) * k;
  }

  void gap(Polynomial& target, bool exact, int d, double w) const {
    for (long l = 1; l <= m_; ++l) {
      for (long h = 1; h <= d; ++h) add(target, {{l, true}, {l - h, true}}, w);
      if (exact) add(target, {{l, true}, {l - d - 1, false}}, w);
    }
  }

  std::vector<Factor> block(long start, long len) const {
    std::vector<Factor> f;
    for (long h = 0; h < len; ++h) f.push_back({start + h, true});
    return f;
  }

  void over(Polynomial& target, int u, double w) const {
    for (long l = 1 - u; l <= m_ - u; ++l) add(target, block(l, u + 1), w);
  }

  void under(Polynomial& target, int u, double w) const {
    for (long r = 1; r < u; ++r) {
      for (long l = 1 - r; l <= m_ - r; ++l) {
        auto f = block(l, r);
        f.push_back({l - 1, false});
        f.push_back({l + r, false});
        add(target, f, w);
      }
    }
  }

  void short_gap(Polynomial& target, int u, int d, double w) const {
    for (long l = 1 - u - d; l <= m_ - u; ++l) {
      for (long i = 0; i < d; ++i) {
        auto f = block(l, u);
        f.push_back({l + u + i, true});
        add(target, f, w);
      }
    }
  }

  void long_gap(Polynomial& target, int u, int d, double w) const {
    const long span = u + d + 1;
    for (long l = 1 - span; l <= m_ - span; ++l) {
      auto f = block(l, u);
      for (long i = 0; i <= d; ++i) f.push_back({l + u + i, false});
      f.push_back({l + span, true});
      add(target, f, w);
    }
  }

 private:
  const Criterion& c_;
  const SchedulingLayout& layout_;
  std::size_t xi_;
  std::size_t nv_;
  long m_;
};

double coefficient_range(const Polynomial& p) {
  double r = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (!m.is_constant()) r += std::abs(c);
  }
  return r;
}

}  // namespace

EncodedProblem build_scheduling(const SchedulingInstance& inst) {
  validate(inst);
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.slots;
  const auto& w = inst.weights;

  SchedulingLayout layout;
  layout.instance = std::make_shared<const SchedulingInstance>(inst);
  layout.jobs = n;
  layout.slots = m;
  std::vector<ResolvedRule> rules;
  bool any_lane = false;
  for (std::size_t c = 0; c < inst.criteria.size(); ++c) {
    rules.push_back(resolve_rule(inst, c));
    any_lane = any_lane || inst.criteria[c].lane;
    if (rules.back().shape != RuleShape::kNone || inst.criteria[c].lane) {
      layout.x_criteria.push_back(c);
    }
  }
  const std::size_t nv = n * m + layout.x_criteria.size() * m;

  std::map<std::string, Polynomial> soft;
  auto family = [&](const std::string& name) -> Polynomial& {
    auto it = soft.try_emplace(name, Polynomial(nv)).first;
    return it->second;
  };

  for (std::size_t xi = 0; xi < layout.x_criteria.size(); ++xi) {
    const std::size_t c = layout.x_criteria[xi];
    const Criterion& cr = inst.criteria[c];
    const ResolvedRule& r = rules[c];
    CriterionTerms t(cr, layout, xi, nv);
    switch (r.shape) {
      case RuleShape::kNone:
        break;
      case RuleShape::kGapExact:
        t.gap(family("gap"), true, r.gap, w.gap);
        break;
      case RuleShape::kGapAtLeast:
        t.gap(family(cr.lane ? "lane_gap" : "gap"), false, r.gap, w.gap);
        break;
      case RuleShape::kGroupAtMost:
        t.over(family("group"), r.group, w.grp);
        break;
      case RuleShape::kGroupExact:
        t.under(family("group"), r.group, w.under);
        t.over(family("group"), r.group, w.over);
        break;
      case RuleShape::kGroupGapExact:
        t.under(family("grp_gap"), r.group, w.under);
        t.over(family("grp_gap"), r.group, w.over);
        t.short_gap(family("grp_gap"), r.group, r.gap, w.short_gap);
        t.long_gap(family("grp_gap"), r.group, r.gap, w.long_gap);
        break;
    }
  }

  const auto& e = inst.sequence;
  auto yv = [&](std::size_t j, std::size_t l) { return Polynomial::variable(layout.y(j, l), nv); };
  {
    Polynomial down(nv), step(nv), span(nv);
    for (std::size_t l = 1; l < m; ++l) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (i == k) continue;
          const Monomial mono{layout.y(i, l), layout.y(k, l + 1)};
          if (e[i] > e[k]) down.add_term(mono, w.down * (e[i] - e[k]));
          if (inst.step_threshold && e[k] - e[i] > *inst.step_threshold) step.add_term(mono, w.step);
        }
      }
    }
    if (inst.previous_sequence) {
      const double p = *inst.previous_sequence;
      for (std::size_t k = 0; k < n; ++k) {
        const Monomial mono{layout.y(k, 1)};
        if (p > e[k]) down.add_term(mono, w.down * (p - e[k]));
        if (inst.step_threshold && e[k] - p > *inst.step_threshold) step.add_term(mono, w.step);
      }
    }
    if (inst.span_threshold) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (e[k] - e[i] > *inst.span_threshold) {
            span.add_term(Monomial{layout.y(i, 1), layout.y(k, m)}, w.span);
          }
        }
      }
    }
    if (!down.is_zero()) soft["fifo_down"] = down;
    if (!step.is_zero()) soft["fifo_step"] = step;
    if (!span.is_zero()) soft["fifo_span"] = span;
  }

  Polynomial soft_total(nv);
  for (const auto& [name, p] : soft) soft_total += p;
  const double range = coefficient_range(soft_total);
  auto hard_weight = [&](const std::optional<double>& given, const char* path) {
    if (!given) return default_hard_weight(range);
    if (!(*given > range)) {
      throw ValidationError(path, "hard weight must exceed the soft coefficient range " +
                                      std::to_string(range));
    }
    return *given;
  };
  const double lam_slot = hard_weight(w.slot, "weights.slot");
  const double lam_job = hard_weight(w.job, "weights.job");
  const double lam_link = hard_weight(w.link, "weights.link");
  const double lam_lane = hard_weight(w.lane, "weights.lane");

  Polynomial h_slot(nv), h_job(nv), h_link(nv), h_lane(nv), h_lane_link(nv);
  for (std::size_t l = 1; l <= m; ++l) {
    Polynomial row = Polynomial::constant(1.0, nv);
    for (std::size_t j = 0; j < n; ++j) row -= yv(j, l);
    h_slot += square(row);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 1; l <= m; ++l)
      for (std::size_t l2 = l + 1; l2 <= m; ++l2)
        h_job.add_term(Monomial{layout.y(j, l), layout.y(j, l2)}, 1.0);
  }
  for (std::size_t xi = 0; xi < layout.x_criteria.size(); ++xi) {
    const std::size_t c = layout.x_criteria[xi];
    for (std::size_t l = 1; l <= m; ++l) {
      if (inst.criteria[c].lane) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!inst.membership[j][c]) h_lane_link.add_term(Monomial{layout.x(xi, l), layout.y(j, l)}, 1.0);
        }
      } else {
        Polynomial diff = Polynomial::variable(layout.x(xi, l), nv);
        for (std::size_t j = 0; j < n; ++j) {
          if (inst.membership[j][c]) diff -= yv(j, l);
        }
        h_link += square(diff);
      }
    }
  }
  if (any_lane) {
    for (std::size_t l = 1; l <= m; ++l) {
      Polynomial row = Polynomial::constant(1.0, nv);
      for (std::size_t xi = 0; xi < layout.x_criteria.size(); ++xi) {
        if (inst.criteria[layout.x_criteria[xi]].lane) row -= Polynomial::variable(layout.x(xi, l), nv);
      }
      h_lane += square(row);
    }
  }

  EncodedProblem ep;
  ep.use_case = UseCase::kScheduling;
  ep.components = std::move(soft);
  ep.components["slot"] = h_slot * lam_slot;
  ep.components["job"] = h_job * lam_job;
  if (!h_link.is_zero()) ep.components["link"] = h_link * lam_link;
  if (any_lane) {
    ep.components["lane"] = h_lane * lam_lane;
    if (!h_lane_link.is_zero()) ep.components["lane_link"] = h_lane_link * lam_link;
  }
  ep.weights = {{"slot", lam_slot}, {"job", lam_job}, {"link", lam_link}, {"lane", lam_lane},
                {"gap", w.gap}, {"grp", w.grp}, {"under", w.under}, {"over", w.over},
                {"short", w.short_gap}, {"long", w.long_gap}, {"down", w.down},
                {"step", w.step}, {"span", w.span}};
  Polynomial total(nv);
  for (const auto& [name, p] : ep.components) total += p;
  ep.polynomial = std::move(total);
  ep.layout = std::move(layout);
  return ep;
}

namespace {

bool is_hard_family(const std::string& name) {
  return name == "slot" || name == "job" || name == "link" || name == "lane" ||
         name == "lane_link";
}

}  // namespace

DecodedSolution decode_scheduling(const EncodedProblem& ep, const BitString& s) {
  const auto& layout = std::get<SchedulingLayout>(ep.layout);
  const auto& inst = *layout.instance;
  if (s.size() != ep.num_vars()) throw std::invalid_argument("bitstring length mismatch");
  const std::size_t n = layout.jobs, m = layout.slots;

  ScheduleAssignment a;
  DecodedSolution out;
  std::vector<std::size_t> used(n, 0);
  for (std::size_t l = 1; l <= m; ++l) {
    std::vector<int> here;
    for (std::size_t j = 0; j < n; ++j) {
      if (s[layout.y(j, l)]) {
        here.push_back(static_cast<int>(j));
        ++used[j];
      }
    }
    a.job_at_slot.push_back(here.size() == 1 ? here[0] : -1);
    if (here.size() != 1) {
      out.hard_violations.push_back("slot " + std::to_string(l) + ": " +
                                    std::to_string(here.size()) + " jobs");
    }

    std::vector<int> lanes;
    for (std::size_t xi = 0; xi < layout.x_criteria.size(); ++xi) {
      const std::size_t c = layout.x_criteria[xi];
      const bool x = s[layout.x(xi, l)] != 0;
      if (inst.criteria[c].lane) {
        if (!x) continue;
        lanes.push_back(static_cast<int>(c));
        for (int j : here) {
          if (!inst.membership[j][c]) {
            out.hard_violations.push_back("lane_link: slot " + std::to_string(l) + " lane '" +
                                          inst.criteria[c].name + "' not admissible for job " +
                                          std::to_string(j));
          }
        }
      } else {
        int carried = 0;
        for (int j : here) carried += inst.membership[j][c];
        if (carried != static_cast<int>(x)) {
          out.hard_violations.push_back("link: slot " + std::to_string(l) + " criterion '" +
                                        inst.criteria[c].name + "'");
        }
      }
    }
    const bool has_lanes =
        std::any_of(inst.criteria.begin(), inst.criteria.end(), [](const Criterion& c) { return c.lane; });
    a.lane_at_slot.push_back(lanes.size() == 1 ? lanes[0] : -1);
    if (has_lanes && lanes.size() != 1) {
      out.hard_violations.push_back("lane: slot " + std::to_string(l) + ": " +
                                    std::to_string(lanes.size()) + " lanes");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] > 1) {
      out.hard_violations.push_back("job " + std::to_string(j) + ": " +
                                    std::to_string(used[j]) + " slots");
    }
  }

  double objective = 0.0;
  for (const auto& [name, p] : ep.components) {
    if (!is_hard_family(name)) objective += p.evaluate(s);
  }
  out.soft = violation_report(a.job_at_slot, a.lane_at_slot, inst);
  out.payload = std::move(a);
  out.feasible = out.hard_violations.empty();
  out.objective = objective;
  out.energy = ep.polynomial.evaluate(s);
  return out;
}

namespace {

struct Run {
  long first;
  long last;
  long length() const { return last - first + 1; }
};

class Reporter {
 public:
  explicit Reporter(ViolationReport& r) : r_(r) {}

  void record(const std::string& criterion, const std::string& rule, std::size_t count,
              double severity) {
    if (count == 0 && severity == 0.0) return;
    r_.breakdown.push_back({criterion, rule, count, severity});
  }

 private:
  ViolationReport& r_;
};

}  // namespace

ViolationReport violation_report(const std::vector<int>& sequence, const std::vector<int>& lanes,
                                 const SchedulingInstance& inst) {
  ViolationReport report;
  Reporter rec(report);
  const long len = static_cast<long>(sequence.size());

  for (std::size_t c = 0; c < inst.criteria.size(); ++c) {
    const Criterion& cr = inst.criteria[c];
    const ResolvedRule rule = resolve_rule(inst, c);
    if (rule.shape == RuleShape::kNone) continue;

    const long hist = static_cast<long>(cr.history.size());
    // act(l) for l in [1 - hist, len]
    std::vector<std::uint8_t> tl;
    for (long l = 1 - hist; l <= 0; ++l) tl.push_back(history_value(cr, l));
    for (long l = 1; l <= len; ++l) {
      const std::size_t i = static_cast<std::size_t>(l - 1);
      bool on = false;
      if (cr.lane) {
        on = i < lanes.size() && lanes[i] == static_cast<int>(c);
      } else {
        on = sequence[i] >= 0 && inst.membership[static_cast<std::size_t>(sequence[i])][c];
      }
      tl.push_back(on ? 1 : 0);
    }
    auto act = [&](long l) -> bool {
      if (l < 1 - hist || l > len) return false;
      return tl[static_cast<std::size_t>(l - (1 - hist))] != 0;
    };

    if (rule.shape == RuleShape::kGapExact || rule.shape == RuleShape::kGapAtLeast) {
      std::size_t count = 0;
      for (long l = 1; l <= len; ++l) {
        if (!act(l)) continue;
        bool bad = false;
        for (long h = 1; h <= rule.gap; ++h) bad = bad || act(l - h);
        if (rule.shape == RuleShape::kGapExact && !act(l - rule.gap - 1)) bad = true;
        if (bad) ++count;
      }
      if (cr.lane) {
        report.lane_violations += count;
        rec.record(cr.name, "lane_gap", count, static_cast<double>(count));
      } else {
        report.gap_violations += count;
        rec.record(cr.name, "gap", count, static_cast<double>(count));
      }
      continue;
    }

    std::vector<Run> runs;
    for (long l = 1 - hist; l <= len; ++l) {
      if (!act(l)) continue;
      if (!runs.empty() && runs.back().last == l - 1) {
        runs.back().last = l;
      } else {
        runs.push_back({l, l});
      }
    }
    std::size_t group = 0;
    std::size_t gaps = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const Run& r = runs[i];
      if (r.last < 1) continue;
      if (r.length() > rule.group) ++group;
      if (rule.shape != RuleShape::kGroupAtMost && r.length() < rule.group && r.last < len) ++group;
      if (rule.shape == RuleShape::kGroupGapExact && i > 0 && r.first >= 1) {
        if (r.first - runs[i - 1].last - 1 != rule.gap) ++gaps;
      }
    }
    report.group_violations += group;
    report.gap_violations += gaps;
    rec.record(cr.name, "group", group, static_cast<double>(group));
    rec.record(cr.name, "grp_gap", gaps, static_cast<double>(gaps));
  }

  // FIFO over adjacent assigned slots.
  const auto& e = inst.sequence;
  double down = 0.0;
  std::size_t down_events = 0, step_events = 0;
  auto pair = [&](double from, double to) {
    if (from > to) {
      down += from - to;
      ++down_events;
    }
    if (inst.step_threshold && to - from > *inst.step_threshold) ++step_events;
  };
  if (len > 0 && inst.previous_sequence && sequence[0] >= 0) {
    pair(*inst.previous_sequence, e[static_cast<std::size_t>(sequence[0])]);
  }
  for (long l = 1; l < len; ++l) {
    const int a = sequence[static_cast<std::size_t>(l - 1)];
    const int b = sequence[static_cast<std::size_t>(l)];
    if (a >= 0 && b >= 0) pair(e[static_cast<std::size_t>(a)], e[static_cast<std::size_t>(b)]);
  }
  report.fifo_down_events = down_events;
  report.fifo_step_events = step_events;
  report.fifo_severity = down + static_cast<double>(step_events);
  rec.record("", "fifo_down", down_events, down);
  rec.record("", "fifo_step", step_events, static_cast<double>(step_events));

  if (inst.span_threshold) {
    std::vector<double> placed;
    for (int j : sequence)
      if (j >= 0) placed.push_back(e[static_cast<std::size_t>(j)]);
    if (placed.size() >= 2 && placed.back() - placed.front() > *inst.span_threshold) {
      report.fifo_span_exceeded = true;
      rec.record("", "fifo_span", 1, placed.back() - placed.front());
    }
  }
  return report;
}

BitString encode_schedule(const EncodedProblem& ep, const std::vector<int>& sequence,
                          const std::vector<int>& lanes) {
  const auto& layout = std::get<SchedulingLayout>(ep.layout);
  const auto& inst = *layout.instance;
  if (sequence.size() != layout.slots) throw std::invalid_argument("sequence length must equal slots");
  BitString s(ep.num_vars(), 0);
  for (std::size_t l = 1; l <= layout.slots; ++l) {
    const int j = sequence[l - 1];
    const int lane = l - 1 < lanes.size() ? lanes[l - 1] : -1;
    if (j >= 0) s[layout.y(static_cast<std::size_t>(j), l)] = 1;
    for (std::size_t xi = 0; xi < layout.x_criteria.size(); ++xi) {
      const std::size_t c = layout.x_criteria[xi];
      if (inst.criteria[c].lane) {
        s[layout.x(xi, l)] = lane == static_cast<int>(c);
      } else {
        s[layout.x(xi, l)] = j >= 0 && inst.membership[static_cast<std::size_t>(j)][c];
      }
    }
  }
  return s;
}

}  // namespace hubo
