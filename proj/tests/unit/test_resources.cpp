#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hubo/encoders/cvrp.hpp"
#include "hubo/encoders/quest.hpp"
#include "hubo/resources/resources.hpp"

using namespace hubo;

namespace {

CvrpInstance toy_cvrp(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t l) {
  std::uniform_int_distribution<int> w(1, 9), q(1, 3);
  CvrpInstance c;
  c.nodes = n;
  c.vehicles = m;
  c.slots = l;
  c.cost.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) c.cost[i][j] = w(rng);
  c.demand.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) total += c.demand[i] = q(rng);
  c.capacity = std::ceil(total / static_cast<double>(m)) + 1.0;
  return c;
}

QuestInstance toy_quest(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> cls(1, 5);
  std::uniform_real_distribution<double> speed(5.0, 15.0);
  QuestInstance q;
  for (std::size_t i = 0; i < n; ++i) {
    q.breakers.push_back({cls(rng), speed(rng)});
    q.surfers.push_back({cls(rng), speed(rng)});
  }
  return q;
}

// Counts degree >= 2 monomials straight from the term map.
std::uint64_t hand_gate_count(const Polynomial& p) {
  std::uint64_t total = 0;
  for (const auto& [m, c] : p.terms()) {
    const std::uint64_t r = m.degree();
    if (r >= 2 && c != 0.0) total += 2 * (2 * r - 3);
  }
  return total;
}

OrderHistogram hist(std::map<std::size_t, std::uint64_t> counts) {
  OrderHistogram h;
  h.counts = std::move(counts);
  return h;
}

}  // namespace

TEST_SUITE("gate estimate") {
  TEST_CASE("examples") {
    CHECK(gate_estimate(hist({{2, 1}})) == 2);
    CHECK(gate_estimate(hist({{2, 3}, {3, 1}})) == 12);
    CHECK(gate_estimate(hist({{0, 5}, {1, 7}})) == 0);
    CHECK(gate_estimate(hist({{2, 3}, {3, 1}}), 2) == 24);
  }

  TEST_CASE("linear in the histogram") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> n(0, 1000);
    for (int trial = 0; trial < 100; ++trial) {
      OrderHistogram a, b;
      for (std::size_t r = 0; r < 9; ++r) {
        a.counts[r] = n(rng);
        b.counts[r] = n(rng);
      }
      CHECK(gate_estimate(a + b) == gate_estimate(a) + gate_estimate(b));
    }
  }

  TEST_CASE("exact histogram of built toys matches a direct term count") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {3, 4, 5}) {
      const auto ep = build_cvrp(toy_cvrp(rng, n, 1, 2));
      CHECK(gate_estimate(exact_histogram(ep.polynomial)) == hand_gate_count(ep.polynomial));
    }
    const auto ep = build_quest(toy_quest(rng, 3));
    CHECK(gate_estimate(exact_histogram(ep.polynomial)) == hand_gate_count(ep.polynomial));
  }
}

TEST_SUITE("upper bound") {
  TEST_CASE("binomials of one class") {
    const std::vector<TermClass> c{{"t", 4, 1}};
    const auto h = upper_bound_histogram(c);
    CHECK(h.upper_bound);
    CHECK(h.counts == std::map<std::size_t, std::uint64_t>{{2, 6}, {3, 4}, {4, 1}});
  }

  TEST_CASE("CVRP maximum order is twice the label width") {
    const auto classes = cvrp_term_classes(5, 2, 3);
    CHECK(upper_bound_histogram(classes).max_order() == 6);
    CHECK(upper_bound_histogram(cvrp_term_classes(101, 14, 10)).max_order() == 14);
  }

  TEST_CASE("exact histogram never exceeds the bound") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {3, 4, 5, 6}) {
      for (std::size_t m : {1, 2}) {
        for (std::size_t l : {1, 2}) {
          if (m * l * bits_for(n) > 14) continue;
          const auto ep = build_cvrp(toy_cvrp(rng, n, m, l));
          const auto exact = exact_histogram(ep.polynomial);
          const auto bound = upper_bound_histogram(cvrp_term_classes(n, m, l));
          for (const auto& [r, cnt] : exact.counts) {
            if (r < 2) continue;
            CHECK(cnt <= (bound.counts.count(r) ? bound.counts.at(r) : 0));
          }
          CHECK(gate_estimate(exact) <= gate_estimate(bound));
        }
      }
    }
    for (std::size_t b : {2, 3, 4, 5}) {
      const auto ep = build_quest(toy_quest(rng, b));
      const auto exact = exact_histogram(ep.polynomial);
      const auto bound = upper_bound_histogram(quest_term_classes(b, b));
      for (const auto& [r, cnt] : exact.counts) {
        if (r >= 2) CHECK(cnt <= (bound.counts.count(r) ? bound.counts.at(r) : 0));
      }
    }
  }

  TEST_CASE("binomial coefficients") {
    CHECK(binomial(14, 7) == 3432);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(140, 2) == 9730);
  }
}

TEST_SUITE("fidelity and shots") {
  TEST_CASE("fidelity examples") {
    CHECK(circuit_fidelity(0, 0.3) == 1.0);
    CHECK(circuit_fidelity(1000, 1e-3) == doctest::Approx(0.36770).epsilon(1e-4));
    CHECK(circuit_fidelity(5, 0.0) == 1.0);
    CHECK(circuit_fidelity(1, 0.5) < 1.0);
  }

  TEST_CASE("fidelity is monotone in both arguments") {
    double prev = 1.0;
    for (double n = 0; n <= 5000; n += 250) {
      const double f = circuit_fidelity(n, 1e-3);
      CHECK(f <= prev);
      CHECK(f > 0.0);
      prev = f;
    }
    prev = 1.0;
    for (double e = 0.0; e < 0.05; e += 0.005) {
      const double f = circuit_fidelity(100, e);
      CHECK(f <= prev);
      prev = f;
    }
  }

  TEST_CASE("error needed for 0.99 fidelity at 1e8 gates") {
    const double e = max_error_for_fidelity(1e8, 0.99);
    CHECK(e == doctest::Approx(-std::log(0.99) / 1e8).epsilon(1e-6));
    CHECK(e <= 1.01e-10);
    CHECK(circuit_fidelity(1e8, e) == doctest::Approx(0.99).epsilon(1e-9));
  }

  TEST_CASE("shot examples") {
    CHECK(shots_required(1.0, 1.0, std::exp(-1.0), 1) == 1.0);
    CHECK(shots_required(1.0, 0.1, 0.01, 10) == 691.0);
    CHECK(shots_required(0.5, 1.0, std::exp(-1.0), 1) == 4.0);
  }

  TEST_CASE("shots are monotone in each argument") {
    CHECK(shots_required(0.5, 0.1, 0.01, 10) >= shots_required(0.9, 0.1, 0.01, 10));
    CHECK(shots_required(0.5, 0.1, 0.001, 10) >= shots_required(0.5, 0.1, 0.01, 10));
    CHECK(shots_required(0.5, 0.1, 0.01, 100) >= shots_required(0.5, 0.1, 0.01, 10));
    CHECK(shots_required(0.5, 0.05, 0.01, 10) >= shots_required(0.5, 0.1, 0.01, 10));
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS(circuit_fidelity(10, 1.0));
    CHECK_THROWS(shots_required(0.0, 0.1, 0.01, 10));
    CHECK_THROWS(shots_required(1.0, 0.1, 1.0, 10));
  }
}

TEST_SUITE("runtime") {
  TEST_CASE("shot time with the early fault-tolerant constants") {
    HardwareModel hm;
    hm.t_2q = 50e-6;
    hm.t_reset = 200e-6;
    hm.qubits = 10;
    hm.alpha = 1.0;
    RuntimeInputs in;
    in.n_iter = 2;
    in.n_shots = 1000;
    const auto r = runtime_estimate(hm, 100, in);
    CHECK(r.t_shot == doctest::Approx(1200e-6).epsilon(1e-12));
    CHECK(r.t_qpu == doctest::Approx(2000 * r.t_shot));
    CHECK(r.depth == doctest::Approx(20.0));

    hm.alpha = 0.5;
    CHECK(runtime_estimate(hm, 100, in).t_shot == doctest::Approx(700e-6));
  }

  TEST_CASE("classical and total time") {
    HardwareModel hm;
    hm.qubits = 4;
    RuntimeInputs in{3, 100, 10, 1000, 1e-6};
    const auto r = runtime_estimate(hm, 8, in);
    CHECK(r.t_cpu == doctest::Approx(10 * 3 * 1000 * 1e-6));
    CHECK(r.t_total == doctest::Approx(r.t_cpu + r.t_qpu));
  }

  TEST_CASE("qubit counts") {
    CHECK(quest_qubit_counts(4, 4).hubo == 8);
    CHECK(quest_qubit_counts(4, 4).qubo == 16);
    CHECK(quest_qubit_counts(3, 1).hubo == 0);
    CHECK(cvrp_qubit_counts(101, 14, 10).hubo == 14 * 10 * 7);
    CHECK(cvrp_qubit_counts(101, 14, 10).qubo == 14 * 10 * 101);
  }
}

TEST_SUITE("scenario sweep") {
  TEST_CASE("single point equals runtime_estimate") {
    const auto g = scenario_grid_from_json(nlohmann::json::parse(R"({
      "hardware": {"t_2q": 5e-5, "t_reset": 2e-4, "e_2q": 1e-4, "alpha": 1},
      "runtime": {"n_iter": 2, "n_shots": 1000, "n_cvar": 100},
      "points": [{"label": "raw", "qubits": 10, "n_2q": 100}]})"));
    const auto rows = scenario_sweep(g);
    REQUIRE(rows.size() == 1);
    HardwareModel hm;
    hm.e_2q = 1e-4;
    hm.qubits = 10;
    const auto want = runtime_estimate(hm, 100, RuntimeInputs{2, 1000, 100, 0, 0});
    CHECK(rows[0].report.t_total == want.t_total);
    CHECK(rows[0].report.fidelity == want.fidelity);
    CHECK(rows[0].report.t_shot == doctest::Approx(1200e-6));
  }

  TEST_CASE("fidelity falls and gate counts grow with CVRP size") {
    nlohmann::json j;
    j["hardware"] = {{"e_2q", 1e-5}};
    for (int n : {5, 9, 12, 17, 38, 61, 101}) {
      j["points"].push_back({{"use_case", "cvrp"}, {"nodes", n}, {"vehicles", 4}, {"slots", 3}});
    }
    const auto rows = scenario_sweep(scenario_grid_from_json(j));
    REQUIRE(rows.size() == 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].report.n_2q >= rows[i - 1].report.n_2q);
      CHECK(rows[i].report.fidelity <= rows[i - 1].report.fidelity);
    }
  }

  TEST_CASE("grid expands over error rates and alphas") {
    const auto g = scenario_grid_from_json(nlohmann::json::parse(R"({
      "hardware": {"e_2q": [1e-3, 1e-4], "alpha": [1, 0.5, 0.1]},
      "runtime": {"n_shots": 1000},
      "points": [{"use_case": "quest", "breakers": 4}, {"use_case": "cvrp", "nodes": 12, "vehicles": 4, "slots": 3}]})"));
    const auto rows = scenario_sweep(g);
    CHECK(rows.size() == 12);
    CHECK(rows[0].report.qubits == 8);
    CHECK(rows[0].alpha == 1.0);
    CHECK(rows[1].alpha == 0.5);
    CHECK(rows[3].e_2q == 1e-4);
  }

  TEST_CASE("shots follow the fidelity budget when not fixed") {
    const auto g = scenario_grid_from_json(nlohmann::json::parse(R"({
      "hardware": {"e_2q": 1e-3},
      "runtime": {"epsilon": 0.1, "delta": 0.01, "cvar_fraction": 0.5},
      "points": [{"qubits": 10, "n_2q": 0}, {"qubits": 10, "n_2q": 500}]})"));
    const auto rows = scenario_sweep(g);
    CHECK(rows[0].report.shots == 691.0);
    CHECK(rows[1].report.shots == shots_required(circuit_fidelity(500, 1e-3), 0.1, 0.01, 10));
  }

  TEST_CASE("validation errors name the field") {
    auto path_of = [](const char* text) {
      try {
        scenario_grid_from_json(nlohmann::json::parse(text));
      } catch (const ValidationError& e) {
        return e.path();
      }
      return std::string("none");
    };
    CHECK(path_of(R"({"points": []})") == "points");
    CHECK(path_of(R"({})") == "points");
    CHECK(path_of(R"({"points": [{"use_case": "cvrp", "nodes": 1, "vehicles": 1, "slots": 1}]})") ==
          "points[0].nodes");
    CHECK(path_of(R"({"hardware": {"e_2q": [0.1, 2]}, "points": [{"qubits": 1}]})") == "hardware.e_2q[1]");
    CHECK(path_of(R"({"points": [{"qubits": "many"}]})") == "points[0].qubits");
  }

  TEST_CASE("CSV layout") {
    const auto g = scenario_grid_from_json(nlohmann::json::parse(R"({
      "runtime": {"n_shots": 1000}, "points": [{"label": "a", "qubits": 10, "n_2q": 100}]})"));
    std::ostringstream os;
    write_csv(os, scenario_sweep(g));
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "qubits,n_2q,fidelity,shots,T_shot,T_QPU,T_CPU,T_total,label,e_2q,alpha");
    CHECK(row.rfind("10,100,", 0) == 0);
    CHECK(row.find(",a,0.001,1") != std::string::npos);
  }
}
