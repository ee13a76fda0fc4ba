#include "hubo/resources/resources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hubo/poly/interchange.hpp"

namespace hubo {

OrderHistogram& OrderHistogram::operator+=(const OrderHistogram& other) {
  for (const auto& [r, n] : other.counts) counts[r] += n;
  upper_bound = upper_bound || other.upper_bound;
  return *this;
}

OrderHistogram operator+(OrderHistogram a, const OrderHistogram& b) { return a += b; }

OrderHistogram exact_histogram(const Polynomial& p) {
  OrderHistogram h;
  for (const auto& [r, n] : order_histogram(p)) h.counts[r] = n;
  return h;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

OrderHistogram upper_bound_histogram(std::span<const TermClass> classes) {
  OrderHistogram h;
  h.upper_bound = true;
  for (const auto& c : classes) {
    if (c.vars_per_term < 1) throw std::invalid_argument("term class '" + c.name + "' has m < 1");
    for (std::size_t r = 2; r <= c.vars_per_term; ++r) {
      if (c.count > 0) h.counts[r] += c.count * binomial(c.vars_per_term, r);
    }
  }
  return h;
}

std::vector<TermClass> quest_term_classes(std::size_t breakers, std::size_t surfers) {
  const std::size_t k = bits_for(surfers);
  return {{"obj", k, breakers},
          {"valid", k, breakers},
          {"unique", 2 * k, binomial(breakers, 2)}};
}

std::vector<TermClass> cvrp_term_classes(std::size_t nodes, std::size_t vehicles, std::size_t slots) {
  const std::size_t k = bits_for(nodes);
  const std::uint64_t m = vehicles, l = slots;
  const std::uint64_t adjacent = l > 0 ? m * (l - 1) : 0;
  return {{"obj", 2 * k, adjacent},
          {"mono", 2 * k, adjacent},
          {"visit_pairs", 2 * k, binomial(m * l, 2)},
          {"visit_single", k, m * l},
          {"valid", k, m * l},
          {"cap_pairs", 2 * k, m * binomial(l, 2)},
          {"cap_single", k, m * l}};
}

std::uint64_t gate_estimate(const OrderHistogram& h, std::uint64_t steps) {
  std::uint64_t total = 0;
  for (const auto& [r, n] : h.counts) {
    if (r >= 2) total += n * 2 * (2 * r - 3);
  }
  return total * steps;
}

double circuit_fidelity(double n_2q, double e_2q) {
  if (!(e_2q >= 0.0 && e_2q < 1.0)) throw std::invalid_argument("e_2q must lie in [0, 1)");
  if (n_2q < 0.0) throw std::invalid_argument("n_2q must be non-negative");
  return std::exp(n_2q * std::log1p(-e_2q));
}

double max_error_for_fidelity(double n_2q, double target) {
  if (!(target > 0.0 && target <= 1.0)) throw std::invalid_argument("target must lie in (0, 1]");
  if (!(n_2q > 0.0)) throw std::invalid_argument("n_2q must be positive");
  return -std::expm1(std::log(target) / n_2q);
}

double shots_required(double fidelity, double epsilon, double delta, std::size_t observables) {
  if (!(fidelity > 0.0 && fidelity <= 1.0)) throw std::invalid_argument("fidelity must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (observables < 1) throw std::invalid_argument("observable count must be at least 1");
  const double x = std::log(static_cast<double>(observables) / delta) / (fidelity * fidelity * epsilon * epsilon);
  // Guard against values like 691.0000000001 from rounding in the log.
  return std::ceil(x - 1e-9 * std::max(1.0, x));
}

void validate(const HardwareModel& hm) {
  if (!(hm.e_2q >= 0.0 && hm.e_2q < 1.0)) throw ValidationError("hardware.e_2q", "must lie in [0, 1)");
  if (!(hm.t_2q > 0.0)) throw ValidationError("hardware.t_2q", "must be positive");
  if (!(hm.t_reset > 0.0)) throw ValidationError("hardware.t_reset", "must be positive");
  if (!(hm.alpha > 0.0 && hm.alpha <= 1.0)) throw ValidationError("hardware.alpha", "must lie in (0, 1]");
  if (hm.qubits < 1) throw ValidationError("hardware.qubits", "must be at least 1");
}

ResourceReport runtime_estimate(const HardwareModel& hm, std::uint64_t n_2q, const RuntimeInputs& in) {
  validate(hm);
  ResourceReport r;
  r.qubits = hm.qubits;
  r.n_2q = n_2q;
  r.depth = hm.alpha * 2.0 * static_cast<double>(n_2q) / static_cast<double>(hm.qubits);
  r.fidelity = circuit_fidelity(static_cast<double>(n_2q), hm.e_2q);
  r.shots = in.n_shots;
  r.t_shot = hm.t_2q * r.depth + hm.t_reset;
  r.t_qpu = in.n_iter * in.n_shots * r.t_shot;
  r.t_cpu = in.n_cvar * in.n_iter * in.n_sweep * in.t_sweep;
  r.t_total = r.t_cpu + r.t_qpu;
  return r;
}

QubitCounts quest_qubit_counts(std::size_t breakers, std::size_t surfers) {
  return {breakers * bits_for(surfers), breakers * surfers};
}

QubitCounts cvrp_qubit_counts(std::size_t nodes, std::size_t vehicles, std::size_t slots) {
  return {vehicles * slots * bits_for(nodes), vehicles * slots * nodes};
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(path + "." + key, "wrong type");
  }
}

std::vector<double> number_list(const nlohmann::json& j, const char* key, const std::string& path,
                                std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  const std::string where = path + "." + key;
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw ValidationError(where, "must be a number or a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ValidationError(where + "[" + std::to_string(i) + "]", "must be a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ScenarioGrid scenario_grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("", "scenario grid must be an object");
  ScenarioGrid g;
  if (j.contains("hardware")) {
    const auto& h = j.at("hardware");
    g.hardware.t_2q = field(h, "t_2q", "hardware", g.hardware.t_2q);
    g.hardware.t_reset = field(h, "t_reset", "hardware", g.hardware.t_reset);
    g.e_2q = number_list(h, "e_2q", "hardware", g.e_2q);
    g.alpha = number_list(h, "alpha", "hardware", g.alpha);
  }
  if (j.contains("runtime")) {
    const auto& r = j.at("runtime");
    g.runtime.n_iter = field(r, "n_iter", "runtime", g.runtime.n_iter);
    g.runtime.n_sweep = field(r, "n_sweep", "runtime", g.runtime.n_sweep);
    g.runtime.t_sweep = field(r, "t_sweep", "runtime", g.runtime.t_sweep);
    if (r.contains("n_shots")) g.fixed_shots = field(r, "n_shots", "runtime", 0.0);
    if (r.contains("n_cvar")) g.fixed_cvar = field(r, "n_cvar", "runtime", 0.0);
    g.epsilon = field(r, "epsilon", "runtime", g.epsilon);
    g.delta = field(r, "delta", "runtime", g.delta);
    g.cvar_fraction = field(r, "cvar_fraction", "runtime", g.cvar_fraction);
    g.trotter_steps = field(r, "trotter_steps", "runtime", g.trotter_steps);
  }
  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
    throw ValidationError("points", "grid must contain at least one point");
  }
  const auto& pts = j.at("points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string path = "points[" + std::to_string(i) + "]";
    const auto& p = pts[i];
    if (!p.is_object()) throw ValidationError(path, "must be an object");
    ScenarioPoint sp;
    sp.label = field<std::string>(p, "label", path, "p" + std::to_string(i));
    if (p.contains("use_case")) {
      try {
        sp.use_case = parse_use_case(p.at("use_case").get<std::string>());
      } catch (const std::exception&) {
        throw ValidationError(path + ".use_case", "expected quest or cvrp");
      }
      if (*sp.use_case == UseCase::kQuest) {
        sp.breakers = field<std::size_t>(p, "breakers", path, 0);
        sp.surfers = field<std::size_t>(p, "surfers", path, sp.breakers);
        if (sp.breakers < 1) throw ValidationError(path + ".breakers", "must be at least 1");
      } else if (*sp.use_case == UseCase::kCvrp) {
        sp.nodes = field<std::size_t>(p, "nodes", path, 0);
        sp.vehicles = field<std::size_t>(p, "vehicles", path, 0);
        sp.slots = field<std::size_t>(p, "slots", path, 0);
        if (sp.nodes < 2) throw ValidationError(path + ".nodes", "must be at least 2");
        if (sp.vehicles < 1) throw ValidationError(path + ".vehicles", "must be at least 1");
        if (sp.slots < 1) throw ValidationError(path + ".slots", "must be at least 1");
      } else {
        throw ValidationError(path + ".use_case", "no analytic gate model for scheduling");
      }
    } else {
      sp.qubits = field<std::size_t>(p, "qubits", path, 0);
      sp.n_2q = field<std::uint64_t>(p, "n_2q", path, 0);
      if (sp.qubits < 1) throw ValidationError(path + ".qubits", "needs use_case or qubits");
    }
    g.points.push_back(std::move(sp));
  }
  for (std::size_t i = 0; i < g.e_2q.size(); ++i) {
    if (!(g.e_2q[i] >= 0.0 && g.e_2q[i] < 1.0)) {
      throw ValidationError("hardware.e_2q[" + std::to_string(i) + "]", "must lie in [0, 1)");
    }
  }
  for (std::size_t i = 0; i < g.alpha.size(); ++i) {
    if (!(g.alpha[i] > 0.0 && g.alpha[i] <= 1.0)) {
      throw ValidationError("hardware.alpha[" + std::to_string(i) + "]", "must lie in (0, 1]");
    }
  }
  if (!(g.epsilon > 0.0)) throw ValidationError("runtime.epsilon", "must be positive");
  if (!(g.delta > 0.0 && g.delta < 1.0)) throw ValidationError("runtime.delta", "must lie in (0, 1)");
  if (!(g.cvar_fraction > 0.0 && g.cvar_fraction <= 1.0)) {
    throw ValidationError("runtime.cvar_fraction", "must lie in (0, 1]");
  }
  return g;
}

ScenarioRow evaluate_point(const ScenarioGrid& grid, const std::string& label, std::size_t qubits,
                           std::uint64_t n_2q, double e_2q, double alpha) {
  HardwareModel hm = grid.hardware;
  hm.e_2q = e_2q;
  hm.alpha = alpha;
  hm.qubits = qubits;
  RuntimeInputs in = grid.runtime;
  const double f = circuit_fidelity(static_cast<double>(n_2q), e_2q);
  if (grid.fixed_shots) {
    in.n_shots = *grid.fixed_shots;
  } else {
    in.n_shots = f > 0.0 ? shots_required(f, grid.epsilon, grid.delta, qubits)
                         : std::numeric_limits<double>::infinity();
  }
  in.n_cvar = grid.fixed_cvar ? *grid.fixed_cvar : std::ceil(grid.cvar_fraction * in.n_shots);
  return {label, e_2q, alpha, runtime_estimate(hm, n_2q, in)};
}

std::vector<ScenarioRow> scenario_sweep(const ScenarioGrid& grid) {
  if (grid.points.empty()) throw ValidationError("points", "grid must contain at least one point");
  std::vector<ScenarioRow> rows;
  for (const auto& p : grid.points) {
    std::size_t qubits = p.qubits;
    std::uint64_t n_2q = p.n_2q;
    if (p.use_case == UseCase::kQuest) {
      qubits = quest_qubit_counts(p.breakers, p.surfers).hubo;
      const auto classes = quest_term_classes(p.breakers, p.surfers);
      n_2q = gate_estimate(upper_bound_histogram(classes), grid.trotter_steps);
    } else if (p.use_case == UseCase::kCvrp) {
      qubits = cvrp_qubit_counts(p.nodes, p.vehicles, p.slots).hubo;
      const auto classes = cvrp_term_classes(p.nodes, p.vehicles, p.slots);
      n_2q = gate_estimate(upper_bound_histogram(classes), grid.trotter_steps);
    }
    if (qubits < 1) throw ValidationError(p.label, "point has no qubits");
    for (double e : grid.e_2q) {
      for (double a : grid.alpha) rows.push_back(evaluate_point(grid, p.label, qubits, n_2q, e, a));
    }
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const ScenarioRow> rows) {
  os << "qubits,n_2q,fidelity,shots,T_shot,T_QPU,T_CPU,T_total,label,e_2q,alpha\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    os << r.qubits << ',' << r.n_2q << ',' << format_double(r.fidelity) << ',' << format_double(r.shots)
       << ',' << format_double(r.t_shot) << ',' << format_double(r.t_qpu) << ','
       << format_double(r.t_cpu) << ',' << format_double(r.t_total) << ',' << row.label << ','
       << format_double(row.e_2q) << ',' << format_double(row.alpha) << '\n';
  }
}

}  // namespace hubo
