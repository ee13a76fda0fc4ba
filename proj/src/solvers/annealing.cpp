#include "hubo/solvers/annealing.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "hubo/solvers/poly_index.hpp"

namespace hubo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct RestartOutcome {
  BitString best;
  double energy = 0.0;
};

RestartOutcome run_restart(const PolyIndex& index, const SaConfig& cfg, double t0, double t1,
                           std::size_t restart) {
  std::mt19937_64 rng(restart_seed(cfg.seed, restart));
  const std::size_t n = index.num_vars();
  BitString init(n);
  for (auto& b : init) b = static_cast<std::uint8_t>(rng() >> 63);
  auto st = index.make_state(std::move(init));
  RestartOutcome out{st.bits, st.energy};

  const double ratio = cfg.sweeps > 1 ? std::pow(t1 / t0, 1.0 / static_cast<double>(cfg.sweeps - 1)) : 1.0;
  double temp = t0;
  for (std::size_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (VarId v = 0; v < n; ++v) {
      const double d = index.delta(st, v);
      const bool accept = d <= 0.0 || (temp > 0.0 && uniform01(rng) < std::exp(-d / temp));
      if (!accept) continue;
      index.flip(st, v, d);
      if (cfg.on_accept) cfg.on_accept(restart, d);
      if (st.energy < out.energy) {
        out.energy = st.energy;
        out.best = st.bits;
      }
    }
    temp *= ratio;
  }
  out.energy = index.energy(out.best);
  return out;
}

}  // namespace

void validate(const SaConfig& cfg) {
  if (cfg.sweeps < 1) throw std::invalid_argument("sweeps must be at least 1");
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (cfg.t_initial && !(*cfg.t_initial > 0.0)) throw std::invalid_argument("t_initial must be positive");
  if (cfg.t_final && !(*cfg.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (cfg.t_initial && cfg.t_final && *cfg.t_final > *cfg.t_initial) {
    throw std::invalid_argument("t_final must not exceed t_initial");
  }
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  return splitmix64(splitmix64(seed) ^ splitmix64(restart + 0x632BE59BD9B4E019ULL));
}

SolveResult simulated_annealing(const Polynomial& p, const SaConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const PolyIndex index(p);

  double t0 = cfg.t_initial.value_or(index.max_abs_coefficient());
  double t1 = cfg.t_final.value_or(1e-3 * index.min_abs_coefficient());
  if (!(t0 > 0.0)) t0 = 1.0;
  if (!(t1 > 0.0)) t1 = 1e-3 * t0;
  if (t1 > t0) t1 = t0;

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::vector<char> done(cfg.restarts, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= cfg.restarts || r > first_hit.load()) return;
      outcomes[r] = run_restart(index, cfg, t0, t1, r);
      done[r] = 1;
      if (cfg.target_energy && outcomes[r].energy <= *cfg.target_energy) {
        std::size_t cur = first_hit.load();
        while (r < cur && !first_hit.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.restarts)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Restarts up to the first target hit are all complete, so the result does
  // not depend on the thread count.
  const std::size_t last = std::min(cfg.restarts - 1, first_hit.load());
  SolveResult r;
  r.solver = "sa";
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    if (!done[i]) throw std::logic_error("restart did not complete");
    outcomes[i].energy = p.evaluate(outcomes[i].best);
    r.restart_energies.push_back(outcomes[i].energy);
    ++r.energy_histogram[outcomes[i].energy];
    if (outcomes[i].energy < outcomes[best_idx].energy) best_idx = i;
  }
  r.best = outcomes[best_idx].best;
  r.best_energy = outcomes[best_idx].energy;
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hubo
