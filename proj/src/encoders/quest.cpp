#include "hubo/encoders/quest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hubo {

std::size_t QuestInstance::num_breakers() const {
  if (omega && !omega->empty()) return omega->front().size();
  return breakers.size();
}

std::size_t QuestInstance::num_surfers() const {
  if (omega) return omega->size();
  return surfers.size();
}

double drag_factor(int size_difference) {
  return (static_cast<double>(size_difference) + 4.0) / 24.0;
}

namespace {

void check_matrix(const Matrix& m, std::size_t rows, std::size_t cols,
                  const std::string& name, bool nonnegative) {
  if (m.size() != rows) {
    throw ValidationError(name, "expected " + std::to_string(rows) + " rows");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) {
      throw ValidationError(name + "[" + std::to_string(r) + "]",
                            "expected " + std::to_string(cols) + " columns");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = m[r][c];
      if (!std::isfinite(v) || (nonnegative && v < 0.0)) {
        throw ValidationError(
            name + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
            nonnegative ? "must be finite and nonnegative" : "must be finite");
      }
    }
  }
}

void check_vehicles(const std::vector<QuestVehicle>& vs, const std::string& name) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string at = name + "[" + std::to_string(i) + "]";
    if (vs[i].size_class < 1 || vs[i].size_class > 5) {
      throw ValidationError(at + ".size_class", "must be in 1..5");
    }
    if (!std::isfinite(vs[i].speed)) throw ValidationError(at + ".speed", "must be finite");
  }
}

}  // namespace

void validate(const QuestInstance& inst) {
  const std::size_t b = inst.num_breakers();
  const std::size_t s = inst.num_surfers();
  if (b < 1) throw ValidationError("breakers", "at least one breaker required");
  if (b != s) {
    throw ValidationError("surfers", "surfer count " + std::to_string(s) +
                                         " differs from breaker count " +
                                         std::to_string(b));
  }
  if (inst.omega) {
    check_matrix(*inst.omega, s, b, "omega", false);
  } else {
    check_vehicles(inst.breakers, "breakers");
    check_vehicles(inst.surfers, "surfers");
    if (!inst.dt.empty()) check_matrix(inst.dt, s, b, "dt", true);
    if (!inst.dv.empty()) check_matrix(inst.dv, s, b, "dv", true);
    if (!inst.dt_threshold.empty() && inst.dt_threshold.size() != s) {
      throw ValidationError("dt_threshold", "expected one entry per surfer");
    }
    if (!inst.dv_threshold.empty() && inst.dv_threshold.size() != s) {
      throw ValidationError("dv_threshold", "expected one entry per surfer");
    }
  }
  if (inst.lambda_valid && !(*inst.lambda_valid > 0.0)) {
    throw ValidationError("lambda_valid", "must be positive");
  }
  if (inst.lambda_unique && !(*inst.lambda_unique > 0.0)) {
    throw ValidationError("lambda_unique", "must be positive");
  }
}

Matrix quest_cost_matrix(const QuestInstance& inst) {
  validate(inst);
  if (inst.omega) return *inst.omega;
  const std::size_t n = inst.num_breakers();
  Matrix omega(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    const auto& surfer = inst.surfers[s];
    const double thr_t = inst.dt_threshold.empty() ? 0.0 : inst.dt_threshold[s];
    const double thr_v = inst.dv_threshold.empty() ? 0.0 : inst.dv_threshold[s];
    for (std::size_t b = 0; b < n; ++b) {
      const auto& breaker = inst.breakers[b];
      const double f = drag_factor(breaker.size_class - surfer.size_class);
      double w = surfer.size_class * breaker.speed * breaker.speed * (1.0 - f);
      const double dt = inst.dt.empty() ? 0.0 : inst.dt[s][b];
      const double dv =
          inst.dv.empty() ? std::abs(surfer.speed - breaker.speed) : inst.dv[s][b];
      if (dt > thr_t) w += inst.lambda1 * dt;
      if (dv > thr_v) w += inst.lambda2 * dv;
      omega[s][b] = w;
    }
  }
  return omega;
}

EncodedProblem build_quest(const QuestInstance& inst) {
  Matrix omega = quest_cost_matrix(inst);
  const std::size_t n = inst.num_breakers();
  const std::size_t k = bits_for(n);
  const std::size_t nv = n * k;

  QuestLayout layout;
  layout.instance = std::make_shared<const QuestInstance>(inst);
  layout.breakers = n;
  layout.bits = k;

  double bound = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s) worst = std::max(worst, std::abs(omega[s][b]));
    bound += worst;
  }
  const double lam_valid = inst.lambda_valid.value_or(default_hard_weight(bound));
  const double lam_unique = inst.lambda_unique.value_or(default_hard_weight(bound));

  Polynomial obj(nv), valid(nv), unique(nv);
  std::vector<std::vector<VarId>> block(n);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t i = 0; i < k; ++i) block[b].push_back(layout.var(b, i));
  }

  for (std::size_t b = 0; b < n; ++b) {
    Polynomial assigned(nv);
    for (std::size_t s = 0; s < n; ++s) {
      Polynomial d = selector(block[b], s, nv);
      obj += d * omega[s][b];
      assigned += d;
    }
    valid += square(Polynomial::constant(1.0, nv) - assigned);
  }

  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t c = b + 1; c < n; ++c) {
      Polynomial eq = Polynomial::constant(1.0, nv);
      for (std::size_t i = 0; i < k; ++i) {
        // 1 - (x - x')^2 = 1 - x - x' + 2 x x' on binaries
        const VarId x = block[b][i], y = block[c][i];
        Polynomial f = Polynomial::constant(1.0, nv);
        f.add_term(Monomial{x}, -1.0);
        f.add_term(Monomial{y}, -1.0);
        f.add_term(Monomial{x, y}, 2.0);
        eq = eq * f;
      }
      unique += eq;
    }
  }

  EncodedProblem ep;
  ep.use_case = UseCase::kQuest;
  ep.components["obj"] = obj;
  ep.components["valid"] = valid * lam_valid;
  ep.components["unique"] = unique * lam_unique;
  ep.weights = {{"valid", lam_valid}, {"unique", lam_unique}};
  Polynomial total(nv);
  for (const auto& [name, poly] : ep.components) total += poly;
  ep.polynomial = std::move(total);
  layout.omega = std::move(omega);
  ep.layout = std::move(layout);
  return ep;
}

DecodedSolution decode_quest(const EncodedProblem& ep, const BitString& s) {
  const auto& layout = std::get<QuestLayout>(ep.layout);
  if (s.size() != ep.num_vars()) throw std::invalid_argument("bitstring length mismatch");
  const std::size_t n = layout.breakers;

  QuestAssignment a;
  DecodedSolution out;
  double objective = 0.0;
  std::vector<std::vector<std::size_t>> users(n);
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t label = 0;
    for (std::size_t i = 0; i < layout.bits; ++i) {
      label |= static_cast<std::size_t>(s[layout.var(b, i)] & 1U) << i;
    }
    if (label >= n) {
      a.surfer_of_breaker.push_back(-1);
      out.hard_violations.push_back("breaker " + std::to_string(b) + ": invalid label " +
                                    std::to_string(label));
      continue;
    }
    a.surfer_of_breaker.push_back(static_cast<int>(label));
    users[label].push_back(b);
    objective += layout.omega[label][b];
  }
  for (std::size_t sf = 0; sf < n; ++sf) {
    if (users[sf].size() > 1) {
      std::string msg = "surfer " + std::to_string(sf) + " shared by breakers";
      for (auto b : users[sf]) msg += " " + std::to_string(b);
      out.hard_violations.push_back(msg);
    }
  }
  out.payload = std::move(a);
  out.feasible = out.hard_violations.empty();
  out.objective = objective;
  out.energy = ep.polynomial.evaluate(s);
  return out;
}

}  // namespace hubo
