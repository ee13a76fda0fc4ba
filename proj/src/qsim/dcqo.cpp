#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hubo/qsim/bf_dcqo.hpp"
#include "hubo/solvers/annealing.hpp"

namespace hubo {

namespace {

void require_cap(std::size_t n, const BfDcqoConfig& cfg) {
  const std::size_t cap = std::min(cfg.max_qubits, kStatevectorMaxQubits);
  if (n > cap) {
    throw QubitCapError(std::to_string(n) + " qubits exceed the statevector cap of " +
                        std::to_string(cap) + "; use the resource estimator instead");
  }
}

BitString bits_of(std::uint64_t code, std::size_t n) {
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((code >> i) & 1U);
  return b;
}

}  // namespace

void validate(const BfDcqoConfig& cfg) {
  if (cfg.n_iter < 1) throw std::invalid_argument("n_iter must be at least 1");
  if (cfg.n_shots < 1) throw std::invalid_argument("n_shots must be at least 1");
  if (!(cfg.alpha_cvar > 0.0 && cfg.alpha_cvar <= 1.0)) {
    throw std::invalid_argument("alpha_cvar must lie in (0, 1]");
  }
  if (cfg.steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (!(cfg.total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
  if (cfg.hx == 0.0) throw std::invalid_argument("hx must be nonzero");
}

std::vector<Amplitude> evolve(const ProblemHamiltonian& hp, std::span<const double> bias,
                              const BfDcqoConfig& cfg, EvolveInfo* info) {
  validate(cfg);
  const std::size_t n = hp.num_qubits();
  require_cap(n, cfg);
  if (bias.size() != n) throw std::invalid_argument("bias length must equal the qubit count");

  const auto energies = diagonal_energies(hp);
  const auto theta = initial_state_angles(bias, cfg.hx);
  std::vector<Amplitude> psi(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    double a = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      a *= ((b >> q) & 1U) ? std::sin(theta[q] / 2.0) : std::cos(theta[q] / 2.0);
    }
    psi[b] = a;
  }

  const CdPool pool = cfg.counterdiabatic ? build_cd_pool(hp) : CdPool{};
  const double dt = cfg.total_time / static_cast<double>(cfg.steps);
  if (info) *info = EvolveInfo{};
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    const auto sv = schedule_lambda((static_cast<double>(k) + 0.5) * dt, cfg.total_time);
    if (info) info->schedule.push_back(sv);
    const double lam = sv.lambda;

    // Diagonal part: lambda H_final - (1 - lambda) sum_i bias_i Z_i.
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
      double e = lam * energies[b];
      for (std::size_t q = 0; q < n; ++q) {
        e -= (1.0 - lam) * bias[q] * (((b >> q) & 1U) ? -1.0 : 1.0);
      }
      psi[b] *= std::polar(1.0, -dt * e);
    }
    for (std::size_t q = 0; q < n; ++q) {
      apply_rotation(psi, PauliString::pauli_x(static_cast<unsigned>(q)), dt * (1.0 - lam) * cfg.hx);
    }
    if (!cfg.counterdiabatic) continue;
    const auto agp = agp_coefficients(hp, bias, cfg.hx, lam, pool);
    if (info && agp.singular) info->agp_singular = true;
    for (std::size_t j = 0; j < pool.strings.size(); ++j) {
      apply_rotation(psi, pool.strings[j], dt * sv.rate * agp.coefficients[j]);
    }
  }
  return psi;
}

SampleResult sample_and_bias(std::span<const Amplitude> psi, std::span<const double> energies,
                             std::size_t n_shots, double alpha_cvar, std::uint64_t seed) {
  if (!(alpha_cvar > 0.0 && alpha_cvar <= 1.0)) {
    throw std::invalid_argument("alpha_cvar must lie in (0, 1]");
  }
  if (energies.size() != psi.size()) throw std::invalid_argument("one energy per basis state");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < psi.size()) ++n;

  std::vector<double> cdf(psi.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < psi.size(); ++b) cdf[b] = acc += std::norm(psi[b]);

  SampleResult out;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < n_shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++out.histogram[static_cast<std::uint64_t>(it - cdf.begin())];
  }

  std::vector<std::pair<double, std::uint64_t>> order;
  for (const auto& [code, count] : out.histogram) order.emplace_back(energies[code], code);
  std::sort(order.begin(), order.end());
  const auto keep = static_cast<std::size_t>(std::ceil(alpha_cvar * static_cast<double>(n_shots)));
  std::size_t taken = 0;
  double cutoff = std::numeric_limits<double>::infinity();
  for (const auto& [e, code] : order) {
    taken += out.histogram[code];
    if (taken >= keep) {
      cutoff = e;
      break;
    }
  }
  const double tie = 1e-9 * std::max(1.0, std::abs(cutoff));
  out.bias.assign(n, 0.0);
  std::size_t used = 0;
  for (const auto& [e, code] : order) {
    if (e > cutoff + tie) break;
    const auto count = out.histogram[code];
    used += count;
    for (std::size_t q = 0; q < n; ++q) {
      out.bias[q] += static_cast<double>(count) * (((code >> q) & 1U) ? -1.0 : 1.0);
    }
  }
  for (auto& v : out.bias) v /= static_cast<double>(used);
  return out;
}

BfDcqoRun bf_dcqo(const Polynomial& p, const BfDcqoConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto hp = problem_hamiltonian(p);
  const std::size_t n = hp.num_qubits();
  require_cap(n, cfg);
  const auto energies = diagonal_energies(hp);

  BfDcqoRun run;
  run.trace.num_qubits = n;
  SolveResult& r = run.result;
  r.solver = "bf-dcqo";
  std::vector<double> bias(n, 0.0);
  double best_so_far = std::numeric_limits<double>::infinity();
  std::map<double, std::size_t> last_histogram;
  for (std::size_t it = 0; it < cfg.n_iter; ++it) {
    EvolveInfo info;
    const auto psi = evolve(hp, bias, cfg, &info);
    auto sample = sample_and_bias(psi, energies, cfg.n_shots, cfg.alpha_cvar, restart_seed(cfg.seed, it));

    IterationTrace tr;
    tr.bias = bias;
    tr.agp_singular = info.agp_singular;
    tr.best_energy = std::numeric_limits<double>::infinity();
    last_histogram.clear();
    for (const auto& [code, count] : sample.histogram) {
      auto bits = bits_of(code, n);
      const double e = p.evaluate(bits);
      last_histogram[e] += count;
      // Histogram keys ascend, so ties keep the smallest code.
      if (e < tr.best_energy) {
        tr.best_energy = e;
        tr.best = std::move(bits);
      }
    }
    if (tr.best_energy < best_so_far) {
      best_so_far = tr.best_energy;
      r.best = tr.best;
      r.best_energy = tr.best_energy;
    }
    tr.best_so_far = best_so_far;
    tr.next_bias = sample.bias;
    tr.histogram = std::move(sample.histogram);
    r.restart_energies.push_back(tr.best_energy);
    bias = std::move(sample.bias);
    run.trace.iterations.push_back(std::move(tr));
  }
  r.energy_histogram = std::move(last_histogram);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

nlohmann::json to_json(const BfDcqoTrace& trace) {
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& it : trace.iterations) {
    std::vector<std::pair<std::uint64_t, std::size_t>> top(it.histogram.begin(), it.histogram.end());
    std::stable_sort(top.begin(), top.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (top.size() > 64) top.resize(64);
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [code, count] : top) {
      hist.push_back({{"bits", bits_to_string(bits_of(code, trace.num_qubits))}, {"count", count}});
    }
    iters.push_back({{"bias", it.bias},
                     {"next_bias", it.next_bias},
                     {"best", bits_to_string(it.best)},
                     {"best_energy", it.best_energy},
                     {"best_so_far", it.best_so_far},
                     {"agp_singular", it.agp_singular},
                     {"histogram", hist}});
  }
  return {{"num_qubits", trace.num_qubits}, {"iterations", iters}};
}

}  // namespace hubo
