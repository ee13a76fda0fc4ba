// Direct numeric evaluation of the three use-case cost functions, term by
// term on a concrete bitstring. No Polynomial arithmetic is used here.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hubo/encoders/cvrp.hpp"
#include "hubo/encoders/quest.hpp"
#include "hubo/encoders/scheduling.hpp"

namespace hubo::testing {

inline double code_selector(const std::vector<std::uint8_t>& s, std::size_t first,
                            std::size_t bits, std::size_t label) {
  double d = 1.0;
  for (std::size_t k = 0; k < bits; ++k) {
    const double x = s[first + k];
    const double beta = static_cast<double>((label >> k) & 1U);
    d *= 1.0 - (x - beta) * (x - beta);
  }
  return d;
}

struct QuestOracle {
  Matrix omega;  // S x B
  double lambda_valid;
  double lambda_unique;

  double operator()(const std::vector<std::uint8_t>& s) const {
    const std::size_t n = omega.size();
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    double obj = 0.0, valid = 0.0, unique = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      double sum = 0.0;
      for (std::size_t sf = 0; sf < n; ++sf) {
        const double d = code_selector(s, b * k, k, sf);
        obj += omega[sf][b] * d;
        sum += d;
      }
      valid += (1.0 - sum) * (1.0 - sum);
    }
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        double eq = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
          const double diff = static_cast<double>(s[b * k + i]) - s[c * k + i];
          eq *= 1.0 - diff * diff;
        }
        unique += eq;
      }
    }
    return obj + lambda_valid * valid + lambda_unique * unique;
  }
};

struct CvrpTerms {
  double obj = 0.0, visit = 0.0, mono = 0.0, valid = 0.0, cap = 0.0;
};

inline CvrpTerms cvrp_terms(const CvrpInstance& inst, const std::vector<std::uint8_t>& s) {
  const std::size_t n = inst.nodes, m = inst.vehicles, l = inst.slots;
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  const std::size_t labels = std::size_t{1} << k;
  auto delta = [&](std::size_t v, std::size_t t, std::size_t i) {
    return code_selector(s, (v * l + t) * k, k, i);
  };
  CvrpTerms out;
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t t = 0; t + 1 < l; ++t) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out.obj += inst.cost[i][j] * delta(v, t, i) * delta(v, t + 1, j);
      out.mono += delta(v, t, 0) * (1.0 - delta(v, t + 1, 0));
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t t = 0; t < l; ++t) sum += delta(v, t, i);
    out.visit += (sum - 1.0) * (sum - 1.0);
  }
  for (std::size_t v = 0; v < m; ++v) {
    double load = 0.0;
    for (std::size_t t = 0; t < l; ++t) {
      for (std::size_t i = n; i < labels; ++i) out.valid += delta(v, t, i);
      for (std::size_t i = 1; i < n; ++i) load += inst.demand[i] * delta(v, t, i);
    }
    out.cap += (load - inst.capacity) * (load - inst.capacity);
  }
  return out;
}

struct SchedulingTerms {
  double slot = 0.0, job = 0.0, link = 0.0, lane = 0.0, lane_link = 0.0;
  double soft = 0.0;
};

// Hard terms are unweighted; soft is weighted with the instance weights.
// Slot-major y layout and per-criterion x blocks as documented in the encoder.
inline SchedulingTerms scheduling_terms(const SchedulingInstance& inst,
                                        const std::vector<std::size_t>& x_criteria,
                                        const std::vector<std::uint8_t>& s) {
  const long n = static_cast<long>(inst.num_jobs());
  const long m = static_cast<long>(inst.slots);
  const auto& w = inst.weights;
  auto y = [&](long j, long l) -> double {
    return s[static_cast<std::size_t>((l - 1) * n + j)];
  };
  SchedulingTerms out;

  for (long l = 1; l <= m; ++l) {
    double sum = 0.0;
    for (long j = 0; j < n; ++j) sum += y(j, l);
    out.slot += (1.0 - sum) * (1.0 - sum);
  }
  for (long j = 0; j < n; ++j)
    for (long l = 1; l <= m; ++l)
      for (long l2 = l + 1; l2 <= m; ++l2) out.job += y(j, l) * y(j, l2);

  bool any_lane = false;
  for (std::size_t xi = 0; xi < x_criteria.size(); ++xi) {
    const std::size_t c = x_criteria[xi];
    const Criterion& cr = inst.criteria[c];
    const long hsize = static_cast<long>(cr.history.size());
    // x(l): history for l <= 0 (left-padded with zeros), 0 beyond the horizon
    auto x = [&](long l) -> double {
      if (l <= 0) {
        const long idx = hsize - 1 + l;
        return idx >= 0 ? cr.history[static_cast<std::size_t>(idx)] : 0.0;
      }
      if (l > m) return 0.0;
      return s[static_cast<std::size_t>(n * m + static_cast<long>(xi) * m + (l - 1))];
    };
    // A product is kept only if its latest slot is inside the horizon.
    auto in = [&](long latest) { return latest >= 1 && latest <= m; };

    for (long l = 1; l <= m; ++l) {
      if (cr.lane) {
        any_lane = true;
        for (long j = 0; j < n; ++j) {
          out.lane_link += (1.0 - inst.membership[j][c]) * x(l) * y(j, l);
        }
      } else {
        double sum = 0.0;
        for (long j = 0; j < n; ++j) sum += inst.membership[j][c] * y(j, l);
        out.link += (x(l) - sum) * (x(l) - sum);
      }
    }

    const ResolvedRule r = resolve_rule(inst, c);
    const long d = r.gap, u = r.group;
    auto over = [&](double weight) {
      for (long l = 1 - u; l <= m - u; ++l) {
        if (!in(l + u)) continue;
        double p = 1.0;
        for (long h = 0; h <= u; ++h) p *= x(l + h);
        out.soft += weight * p;
      }
    };
    auto under = [&]() {
      for (long rr = 1; rr < u; ++rr) {
        for (long l = 1 - rr; l <= m - rr; ++l) {
          if (!in(l + rr)) continue;
          double p = (1.0 - x(l - 1)) * (1.0 - x(l + rr));
          for (long h = 0; h < rr; ++h) p *= x(l + h);
          out.soft += w.under * p;
        }
      }
    };
    switch (r.shape) {
      case RuleShape::kNone:
        break;
      case RuleShape::kGapExact:
        for (long l = 1; l <= m; ++l) {
          double t = 0.0;
          for (long h = 1; h <= d; ++h) t += x(l) * x(l - h);
          t += x(l) * (1.0 - x(l - d - 1));
          out.soft += w.gap * t;
        }
        break;
      case RuleShape::kGapAtLeast:
        // every ordered pair of activations closer than d + 1 slots
        for (long l = 1; l <= m; ++l)
          for (long h = 1; h <= d; ++h) out.soft += w.gap * x(l) * x(l - h);
        break;
      case RuleShape::kGroupAtMost:
        over(w.grp);
        break;
      case RuleShape::kGroupExact:
        under();
        over(w.over);
        break;
      case RuleShape::kGroupGapExact: {
        under();
        over(w.over);
        for (long l = 1 - u - d; l <= m - u; ++l) {
          double block = 1.0;
          for (long h = 0; h < u; ++h) block *= x(l + h);
          for (long i = 0; i < d; ++i) {
            if (in(l + u + i)) out.soft += w.short_gap * block * x(l + u + i);
          }
        }
        const long span = u + d + 1;
        for (long l = 1 - span; l <= m - span; ++l) {
          if (!in(l + span)) continue;
          double p = x(l + span);
          for (long h = 0; h < u; ++h) p *= x(l + h);
          for (long i = 0; i <= d; ++i) p *= 1.0 - x(l + u + i);
          out.soft += w.long_gap * p;
        }
        break;
      }
    }
  }
  if (any_lane) {
    for (long l = 1; l <= m; ++l) {
      double sum = 0.0;
      for (std::size_t xi = 0; xi < x_criteria.size(); ++xi) {
        if (inst.criteria[x_criteria[xi]].lane) {
          sum += s[static_cast<std::size_t>(n * m + static_cast<long>(xi) * m + (l - 1))];
        }
      }
      out.lane += (1.0 - sum) * (1.0 - sum);
    }
  }

  const auto& e = inst.sequence;
  for (long l = 1; l < m; ++l) {
    for (long i = 0; i < n; ++i) {
      for (long k = 0; k < n; ++k) {
        const double yy = y(i, l) * y(k, l + 1);
        out.soft += w.down * std::max(0.0, e[i] - e[k]) * yy;
        if (inst.step_threshold && e[k] - e[i] > *inst.step_threshold) out.soft += w.step * yy;
      }
    }
  }
  if (inst.previous_sequence) {
    const double p = *inst.previous_sequence;
    for (long k = 0; k < n; ++k) {
      out.soft += w.down * std::max(0.0, p - e[k]) * y(k, 1);
      if (inst.step_threshold && e[k] - p > *inst.step_threshold) out.soft += w.step * y(k, 1);
    }
  }
  if (inst.span_threshold) {
    for (long i = 0; i < n; ++i)
      for (long k = 0; k < n; ++k)
        if (e[k] - e[i] > *inst.span_threshold) out.soft += w.span * y(i, 1) * y(k, m);
  }
  return out;
}

}  // namespace hubo::testing
