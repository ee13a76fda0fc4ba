#include <doctest.h>

#include <algorithm>
#include <random>

#include "hubo/encoders/quest.hpp"
#include "hubo/solvers/poly_index.hpp"
#include "hubo/solvers/rolling_horizon.hpp"
#include "oracles/enumerate.hpp"

using namespace hubo;
using hubo::testing::bits_of;

namespace {

Polynomial small_poly() {
  Polynomial p(2);
  p.add_term(Monomial{}, 1.0);
  p.add_term(Monomial{0}, -2.0);
  p.add_term(Monomial{0, 1}, 1.0);
  return p;
}

double permutation_optimum(const Matrix& omega) {
  std::vector<int> perm(omega.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double c = 0.0;
    for (std::size_t b = 0; b < perm.size(); ++b) c += omega[perm[b]][b];
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

QuestInstance random_quest(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> cls(1, 5);
  std::uniform_real_distribution<double> speed(5.0, 15.0), delta(0.0, 3.0);
  QuestInstance q;
  for (std::size_t i = 0; i < n; ++i) {
    q.breakers.push_back({cls(rng), speed(rng)});
    q.surfers.push_back({cls(rng), speed(rng)});
  }
  q.dt.assign(n, std::vector<double>(n));
  for (auto& row : q.dt)
    for (auto& v : row) v = delta(rng);
  return q;
}

SchedulingInstance fifo_only(std::vector<double> e, std::size_t slots) {
  SchedulingInstance s;
  s.slots = slots;
  s.sequence = std::move(e);
  s.membership.assign(s.sequence.size(), {});
  return s;
}

}  // namespace

TEST_SUITE("brute force") {
  TEST_CASE("small examples") {
    auto r = brute_force(small_poly());
    CHECK(r.best_energy == doctest::Approx(-1.0));
    CHECK(r.best == BitString{1, 0});
    CHECK(r.minimizers.size() == 1);

    auto z = brute_force(Polynomial(3));
    CHECK(z.best_energy == 0.0);
    CHECK(z.minimizers.size() == 8);
  }

  TEST_CASE("agrees with the naive enumerator") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 5; ++rep) {
      auto p = testing::random_polynomial(rng, 14, 40, 4);
      auto r = brute_force(p);
      auto oracle = testing::brute_minimum(p);
      CHECK(r.best_energy == doctest::Approx(oracle.value));
      REQUIRE(r.minimizers.size() == oracle.argmin.size());
      for (std::size_t i = 0; i < r.minimizers.size(); ++i) {
        CHECK(r.minimizers[i] == bits_of(oracle.argmin[i], 14));
      }
    }
  }

  TEST_CASE("matches the permutation optimum for QUEST") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {2, 3, 4}) {
      auto inst = random_quest(rng, n);
      auto ep = build_quest(inst);
      auto r = brute_force(ep.polynomial);
      CHECK(r.best_energy == doctest::Approx(permutation_optimum(quest_cost_matrix(inst))));
    }
  }

  TEST_CASE("variable cap") {
    CHECK_THROWS_AS(brute_force(Polynomial(27)), std::invalid_argument);
    BruteForceConfig cfg;
    cfg.max_vars = 4;
    CHECK_THROWS_AS(brute_force(Polynomial(5), cfg), std::invalid_argument);
  }
}

TEST_SUITE("delta energy") {
  TEST_CASE("examples") {
    Polynomial p(3);
    p.add_term(Monomial{0, 1}, 1.0);
    PolyIndex idx(p);
    CHECK(delta_energy(idx, {1, 0, 0}, 2) == 0.0);
    CHECK(delta_energy(idx, {1, 0, 0}, 1) == 1.0);
  }

  TEST_CASE("matches re-evaluation on random pairs") {
    std::mt19937_64 rng(23);
    auto p = testing::random_polynomial(rng, 12, 60, 5, false);
    PolyIndex idx(p);
    std::uniform_int_distribution<std::uint64_t> code(0, (1U << 12) - 1);
    std::uniform_int_distribution<VarId> var(0, 11);
    auto st = idx.make_state(bits_of(0, 12));
    for (int i = 0; i < 1000; ++i) {
      auto s = bits_of(code(rng), 12);
      const VarId v = var(rng);
      auto t = s;
      t[v] ^= 1U;
      const double expect = p.evaluate(t) - p.evaluate(s);
      CHECK(delta_energy(idx, s, v) == doctest::Approx(expect));
      // incremental state follows the same walk
      const VarId w = var(rng);
      const double d = idx.delta(st, w);
      auto before = st.bits;
      idx.flip(st, w, d);
      CHECK(d == doctest::Approx(p.evaluate(st.bits) - p.evaluate(before)));
      CHECK(st.energy == doctest::Approx(p.evaluate(st.bits)));
    }
  }
}

TEST_SUITE("annealing") {
  TEST_CASE("small examples") {
    Polynomial p(1);
    p.add_term(Monomial{0}, -1.0);
    SaConfig cfg;
    cfg.sweeps = 10;
    cfg.restarts = 2;
    auto r = simulated_annealing(p, cfg);
    CHECK(r.best == BitString{1});
    CHECK(r.best_energy == -1.0);
    CHECK(simulated_annealing(small_poly(), cfg).best_energy == doctest::Approx(-1.0));
  }

  TEST_CASE("best energy is the evaluated best bitstring and bounds every restart") {
    std::mt19937_64 rng(4);
    auto p = testing::random_polynomial(rng, 16, 60, 4);
    SaConfig cfg;
    cfg.sweeps = 50;
    cfg.restarts = 8;
    auto r = simulated_annealing(p, cfg);
    CHECK(r.best_energy == p.evaluate(r.best));
    for (double e : r.restart_energies) CHECK(e >= r.best_energy);
    std::size_t total = 0;
    for (const auto& [e, n] : r.energy_histogram) total += n;
    CHECK(total == cfg.restarts);
  }

  TEST_CASE("deterministic across runs and thread counts") {
    std::mt19937_64 rng(6);
    auto p = testing::random_polynomial(rng, 20, 80, 4);
    SaConfig cfg;
    cfg.sweeps = 40;
    cfg.restarts = 12;
    cfg.seed = 99;
    auto a = simulated_annealing(p, cfg);
    auto b = simulated_annealing(p, cfg);
    cfg.jobs = 4;
    auto c = simulated_annealing(p, cfg);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_json(a) == to_json(c));
    CHECK(a.restart_energies == c.restart_energies);
  }

  TEST_CASE("zero temperature is greedy descent") {
    std::mt19937_64 rng(8);
    auto p = testing::random_polynomial(rng, 12, 40, 3);
    SaConfig cfg;
    cfg.sweeps = 20;
    cfg.restarts = 4;
    cfg.t_initial = 1e-300;
    cfg.t_final = 1e-300;
    std::size_t accepted = 0;
    bool uphill = false;
    cfg.on_accept = [&](std::size_t, double d) {
      ++accepted;
      uphill = uphill || d > 0.0;
    };
    simulated_annealing(p, cfg);
    CHECK(accepted > 0);
    CHECK_FALSE(uphill);
  }

  TEST_CASE("target energy stops early and stays deterministic") {
    std::mt19937_64 rng(10);
    auto p = testing::random_polynomial(rng, 10, 30, 3);
    const double opt = brute_force(p).best_energy;
    SaConfig cfg;
    cfg.sweeps = 200;
    cfg.restarts = 64;
    cfg.target_energy = opt;
    auto a = simulated_annealing(p, cfg);
    cfg.jobs = 3;
    auto b = simulated_annealing(p, cfg);
    CHECK(a.best_energy == doctest::Approx(opt));
    CHECK(a.restart_energies.size() < 64);
    CHECK(a.restart_energies == b.restart_energies);
  }

  TEST_CASE("QUEST up to five breakers reaches ratio one") {
    std::mt19937_64 rng(12);
    for (std::size_t n = 2; n <= 5; ++n) {
      auto inst = random_quest(rng, n);
      auto ep = build_quest(inst);
      const double opt = permutation_optimum(quest_cost_matrix(inst));
      SaConfig cfg;
      cfg.sweeps = 2000;
      cfg.restarts = 16;
      cfg.seed = n;
      auto r = simulated_annealing(ep.polynomial, cfg);
      CHECK(approximation_ratio(opt, r.best_energy) == 1.0);
    }
  }

  TEST_CASE("config validation") {
    SaConfig cfg;
    cfg.sweeps = 0;
    CHECK_THROWS(simulated_annealing(small_poly(), cfg));
    cfg.sweeps = 1;
    cfg.t_initial = 1.0;
    cfg.t_final = 2.0;
    CHECK_THROWS(simulated_annealing(small_poly(), cfg));
  }
}

TEST_CASE("approximation ratio convention") {
  CHECK(approximation_ratio(4.0, 4.0) == 1.0);
  CHECK(approximation_ratio(4.0, 5.0) == doctest::Approx(0.8));
  CHECK(approximation_ratio(-10.0, -8.0) == doctest::Approx(0.8));
  CHECK(approximation_ratio(-10.0, 3.0) == 0.0);
  CHECK(approximation_ratio(4.0, 3.0) == 1.0);
}

TEST_SUITE("rolling horizon") {
  TEST_CASE("FIFO-only instance keeps the input order") {
    auto inst = fifo_only({1, 2, 3, 4}, 4);
    HorizonConfig cfg;
    cfg.n_sub = 2;
    cfg.m_sub = 2;
    cfg.inner = brute_inner();
    auto r = rolling_horizon(inst, cfg);
    CHECK(r.solution.feasible);
    CHECK(std::get<ScheduleAssignment>(r.solution.payload).job_at_slot == std::vector<int>{0, 1, 2, 3});
    CHECK(r.solution.soft->total_binary() == 0);
    CHECK(r.solution.soft->fifo_severity == 0.0);
    CHECK(r.windows.size() == 2);
  }

  TEST_CASE("whole-horizon window reproduces the global solve") {
    SchedulingInstance s = fifo_only({3, 1, 2}, 3);
    s.criteria = {{"a", false, GapRule{GapKind::kAtLeast, 1}, std::nullopt, {1}}};
    s.membership = {{1}, {0}, {1}};
    s.span_threshold = 1.0;
    SaConfig sa;
    sa.sweeps = 30;
    sa.restarts = 3;
    HorizonConfig cfg;
    cfg.n_sub = 3;
    cfg.m_sub = 3;
    cfg.seed = 5;
    cfg.inner = sa_inner(sa);
    auto r = rolling_horizon(s, cfg);

    auto ep = build_scheduling(s);
    sa.seed = 5;
    auto global = decode_scheduling(ep, simulated_annealing(ep.polynomial, sa).best);
    CHECK(std::get<ScheduleAssignment>(r.solution.payload).job_at_slot ==
          std::get<ScheduleAssignment>(global.payload).job_at_slot);
    CHECK(r.solution.objective == doctest::Approx(global.objective));
  }

  TEST_CASE("window history carries the fixed prefix") {
    SchedulingInstance s = fifo_only({1, 2, 3, 4, 5, 6}, 6);
    s.criteria = {{"a", false, GapRule{GapKind::kAtLeast, 2}, std::nullopt, {0, 1}}};
    s.membership = {{1}, {0}, {1}, {0}, {1}, {0}};
    auto sub = window_instance(s, {0, 1}, {-1, -1}, {2, 3, 5}, 2);
    CHECK(sub.criteria[0].history == std::vector<std::uint8_t>{0, 1, 1, 0});
    CHECK(sub.previous_sequence == 2.0);
    CHECK(sub.sequence == std::vector<double>{3, 4, 6});
    CHECK_FALSE(sub.span_threshold.has_value());
  }

  TEST_CASE("window energies add up to the global energy") {
    SchedulingInstance s = fifo_only({1, 2, 3, 4, 5, 6}, 6);
    s.criteria = {{"a", false, GapRule{GapKind::kAtLeast, 2}, std::nullopt, {1}},
                  {"b", false, std::nullopt, GroupRule{GroupKind::kExact, 2}, {0, 1}}};
    s.membership = {{1, 1}, {0, 0}, {1, 1}, {0, 1}, {1, 0}, {0, 1}};
    s.step_threshold = 1.0;
    s.span_threshold = 4.0;
    HorizonConfig cfg;
    cfg.n_sub = 3;
    cfg.m_sub = 2;
    cfg.inner = brute_inner();
    auto r = rolling_horizon(s, cfg);
    REQUIRE(r.solution.feasible);
    const auto& seq = std::get<ScheduleAssignment>(r.solution.payload).job_at_slot;

    auto ep = build_scheduling(s);
    auto global = decode_scheduling(ep, encode_schedule(ep, seq));
    CHECK(global.feasible);
    CHECK(r.solution.objective == doctest::Approx(global.objective));

    // the global optimum can only be better
    SaConfig sa;
    sa.sweeps = 3000;
    sa.restarts = 8;
    auto best = decode_scheduling(ep, simulated_annealing(ep.polynomial, sa).best);
    if (best.feasible) CHECK(best.objective <= r.solution.objective + 1e-9);
  }

  TEST_CASE("cross-window gap is respected") {
    // job 0 carries the criterion and lands in the last slot of window 1;
    // the other criterion job must stay two slots away.
    SchedulingInstance s = fifo_only({1, 2, 3, 4, 5, 6}, 6);
    s.criteria = {{"a", false, GapRule{GapKind::kAtLeast, 2}, std::nullopt, {}}};
    s.membership = {{0}, {1}, {1}, {0}, {0}, {0}};
    s.weights.gap = 10.0;
    HorizonConfig cfg;
    cfg.n_sub = 3;
    cfg.m_sub = 2;
    cfg.inner = brute_inner();
    auto r = rolling_horizon(s, cfg);
    REQUIRE(r.solution.feasible);
    CHECK(r.solution.soft->gap_violations == 0);

    // global optimum over all feasible schedules
    auto ep = build_scheduling(s);
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    double best = 1e300;
    std::size_t best_gaps = 0;
    do {
      auto d = decode_scheduling(ep, encode_schedule(ep, perm));
      if (d.objective < best) {
        best = d.objective;
        best_gaps = d.soft->gap_violations;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(best_gaps == 0);
    CHECK(best <= r.solution.objective + 1e-9);
    CHECK(std::get<ScheduleAssignment>(r.solution.payload).job_at_slot[1] == 1);
  }

  TEST_CASE("infeasible windows raise with the partial schedule") {
    SchedulingInstance s = fifo_only({1, 2, 3}, 3);
    s.criteria = {{"left", true, std::nullopt, std::nullopt, {}}};
    s.membership = {{1}, {1}, {0}};  // job 2 has no lane
    HorizonConfig cfg;
    cfg.n_sub = 1;
    cfg.m_sub = 1;
    cfg.inner = brute_inner();
    try {
      rolling_horizon(s, cfg);
      FAIL("expected HorizonError");
    } catch (const HorizonError& e) {
      CHECK(e.partial() == std::vector<int>{0, 1, -1});
    }
  }

  TEST_CASE("config validation") {
    HorizonConfig cfg;
    cfg.n_sub = 1;
    cfg.m_sub = 2;
    CHECK_THROWS_AS(rolling_horizon(fifo_only({1, 2}, 2), cfg), ValidationError);
  }
}
