#include "hubo/encoders/cvrp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hubo {

void validate(const CvrpInstance& inst) {
  const std::size_t n = inst.nodes;
  if (n < 2) throw ValidationError("nodes", "at least two nodes required");
  if (inst.vehicles < 1) throw ValidationError("vehicles", "must be at least 1");
  if (inst.slots < 1) throw ValidationError("slots", "must be at least 1");
  if (inst.cost.size() != n) throw ValidationError("cost", "expected n rows");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = "cost[" + std::to_string(i) + "]";
    if (inst.cost[i].size() != n) throw ValidationError(row, "expected n columns");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = inst.cost[i][j];
      const std::string at = row + "[" + std::to_string(j) + "]";
      if (!std::isfinite(w) || w < 0.0) throw ValidationError(at, "must be nonnegative");
      if (i == j && w != 0.0) throw ValidationError(at, "diagonal must be zero");
    }
  }
  if (inst.demand.size() != n) throw ValidationError("demand", "expected one entry per node");
  if (inst.demand[0] != 0.0) throw ValidationError("demand[0]", "depot demand must be 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(inst.demand[i]) || inst.demand[i] < 0.0) {
      throw ValidationError("demand[" + std::to_string(i) + "]", "must be nonnegative");
    }
  }
  if (!std::isfinite(inst.capacity) || inst.capacity < 0.0) {
    throw ValidationError("capacity", "must be nonnegative");
  }
  auto check = [](const std::optional<double>& w, const char* name) {
    if (w && !(*w > 0.0)) throw ValidationError(name, "must be positive");
  };
  check(inst.lambda_visit, "lambda_visit");
  check(inst.lambda_mono, "lambda_mono");
  check(inst.lambda_valid, "lambda_valid");
  check(inst.lambda_cap, "lambda_cap");
}

EncodedProblem build_cvrp(const CvrpInstance& inst) {
  validate(inst);
  const std::size_t n = inst.nodes, m = inst.vehicles, l = inst.slots;
  CvrpLayout layout;
  layout.instance = std::make_shared<const CvrpInstance>(inst);
  layout.vehicles = m;
  layout.slots = l;
  layout.bits = bits_for(n);
  const std::size_t nv = m * l * layout.bits;
  const std::size_t labels = std::size_t{1} << layout.bits;

  // delta[v][t][i] for every label, valid or not
  std::vector<std::vector<std::vector<Polynomial>>> delta(
      m, std::vector<std::vector<Polynomial>>(l));
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t t = 0; t < l; ++t) {
      const auto vars = layout.slot_vars(v, t);
      for (std::size_t i = 0; i < labels; ++i) delta[v][t].push_back(selector(vars, i, nv));
    }
  }

  Polynomial obj(nv), visit(nv), mono(nv), valid(nv), cap(nv);
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t t = 0; t + 1 < l; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (inst.cost[i][j] == 0.0) continue;
          obj += delta[v][t][i] * delta[v][t + 1][j] * inst.cost[i][j];
        }
      }
      mono += delta[v][t][0] * (1.0 - delta[v][t + 1][0]);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    Polynomial count = Polynomial::constant(-1.0, nv);
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t t = 0; t < l; ++t) count += delta[v][t][i];
    visit += square(count);
  }
  for (std::size_t v = 0; v < m; ++v) {
    Polynomial load = Polynomial::constant(-inst.capacity, nv);
    for (std::size_t t = 0; t < l; ++t) {
      for (std::size_t i = n; i < labels; ++i) valid += delta[v][t][i];
      for (std::size_t i = 1; i < n; ++i) {
        if (inst.demand[i] != 0.0) load += delta[v][t][i] * inst.demand[i];
      }
    }
    cap += square(load);
  }

  double max_w = 0.0;
  for (const auto& row : inst.cost)
    for (double w : row) max_w = std::max(max_w, w);
  const double lam_cap = inst.lambda_cap.value_or(1.0);
  const double bound = static_cast<double>(m * (l - 1)) * max_w +
                       lam_cap * static_cast<double>(m) * inst.capacity * inst.capacity;
  const double hard = default_hard_weight(bound);
  const double lam_visit = inst.lambda_visit.value_or(hard);
  const double lam_mono = inst.lambda_mono.value_or(hard);
  const double lam_valid = inst.lambda_valid.value_or(hard);

  EncodedProblem ep;
  ep.use_case = UseCase::kCvrp;
  ep.components["obj"] = obj;
  ep.components["visit"] = visit * lam_visit;
  ep.components["mono"] = mono * lam_mono;
  ep.components["valid"] = valid * lam_valid;
  ep.components["cap"] = cap * lam_cap;
  ep.weights = {{"visit", lam_visit}, {"mono", lam_mono}, {"valid", lam_valid}, {"cap", lam_cap}};
  Polynomial total(nv);
  for (const auto& [name, poly] : ep.components) total += poly;
  ep.polynomial = std::move(total);
  ep.layout = std::move(layout);
  return ep;
}

namespace {
constexpr const char* kCapacityTag = "capacity:";
}

DecodedSolution decode_cvrp(const EncodedProblem& ep, const BitString& s,
                            CvrpObjective objective) {
  const auto& layout = std::get<CvrpLayout>(ep.layout);
  const auto& inst = *layout.instance;
  if (s.size() != ep.num_vars()) throw std::invalid_argument("bitstring length mismatch");
  const std::size_t n = inst.nodes;

  CvrpRoutes r;
  DecodedSolution out;
  std::vector<std::size_t> visits(n, 0);
  for (std::size_t v = 0; v < layout.vehicles; ++v) {
    std::vector<int> labels;
    std::vector<int> route;
    double load = 0.0;
    for (std::size_t t = 0; t < layout.slots; ++t) {
      int label = 0;
      for (std::size_t k = 0; k < layout.bits; ++k) {
        label |= static_cast<int>(s[layout.var(v, t, k)] & 1U) << k;
      }
      labels.push_back(label);
      const std::string where =
          "vehicle " + std::to_string(v) + " slot " + std::to_string(t);
      if (static_cast<std::size_t>(label) >= n) {
        out.hard_violations.push_back("valid: " + where + " label " + std::to_string(label));
      } else if (label > 0) {
        route.push_back(label);
        load += inst.demand[label];
        ++visits[label];
      }
      if (t > 0 && labels[t - 1] == 0 && label != 0) {
        out.hard_violations.push_back("mono: " + where + " leaves the depot again");
      }
    }
    for (std::size_t t = 0; t + 1 < labels.size(); ++t) {
      const auto a = static_cast<std::size_t>(labels[t]);
      const auto b = static_cast<std::size_t>(labels[t + 1]);
      if (a < n && b < n) r.encoded_cost += inst.cost[a][b];
    }
    if (!route.empty()) {
      double c = inst.cost[0][route.front()] + inst.cost[route.back()][0];
      for (std::size_t i = 0; i + 1 < route.size(); ++i) c += inst.cost[route[i]][route[i + 1]];
      r.closed_cost += c;
    }
    if (load > inst.capacity) {
      out.hard_violations.push_back(std::string(kCapacityTag) + " vehicle " +
                                    std::to_string(v) + " load exceeds Q");
    }
    r.slot_labels.push_back(std::move(labels));
    r.routes.push_back(std::move(route));
    r.loads.push_back(load);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (visits[i] != 1) {
      out.hard_violations.push_back("visit: customer " + std::to_string(i) + " visited " +
                                    std::to_string(visits[i]) + " times");
    }
  }
  out.objective = objective == CvrpObjective::kClosed ? r.closed_cost : r.encoded_cost;
  out.payload = std::move(r);
  out.feasible = out.hard_violations.empty();
  out.energy = ep.polynomial.evaluate(s);
  return out;
}

bool routing_feasible(const DecodedSolution& d) {
  return std::all_of(d.hard_violations.begin(), d.hard_violations.end(),
                     [](const std::string& v) { return v.rfind(kCapacityTag, 0) == 0; });
}

}  // namespace hubo
