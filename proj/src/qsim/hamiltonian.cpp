#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hubo/qsim/bf_dcqo.hpp"

namespace hubo {

namespace {

constexpr std::size_t kPauliMaxQubits = 32;

PauliString z_string(const Monomial& m) {
  PauliString p;
  for (auto v : m.vars()) p.z |= 1U << v;
  return p;
}

void require_pauli_width(std::size_t n) {
  if (n > kPauliMaxQubits) {
    throw QubitCapError(std::to_string(n) + " qubits exceed the Pauli-string width of 32");
  }
}

using PauliSum = std::map<PauliString, double>;

// H(lambda) and its lambda derivative as Pauli sums.
std::pair<PauliSum, PauliSum> interpolated(const ProblemHamiltonian& hp,
                                           std::span<const double> bias, double hx, double lambda) {
  PauliSum h, dh;
  for (std::size_t q = 0; q < hp.num_qubits(); ++q) {
    const auto xq = PauliString::pauli_x(static_cast<unsigned>(q));
    const auto zq = PauliString::pauli_z(static_cast<unsigned>(q));
    const double b = q < bias.size() ? bias[q] : 0.0;
    h[xq] += (1.0 - lambda) * hx;
    dh[xq] -= hx;
    h[zq] -= (1.0 - lambda) * b;
    dh[zq] += b;
  }
  for (const auto& [m, c] : hp.spins.terms()) {
    const auto zs = z_string(m);
    h[zs] += lambda * c;
    dh[zs] += c;
  }
  return {h, dh};
}

}  // namespace

ProblemHamiltonian problem_hamiltonian(const Polynomial& p) {
  const SpinPolynomial full = to_spin(p);
  ProblemHamiltonian hp;
  hp.scale = full.max_abs_coefficient();
  if (!(hp.scale > 0.0)) hp.scale = 1.0;
  hp.spins = SpinPolynomial(full.num_spins());
  for (const auto& [m, c] : full.terms()) {
    if (m.is_constant()) {
      hp.offset = c;
    } else {
      hp.spins.add_term(m, c / hp.scale);
    }
  }
  return hp;
}

std::vector<double> diagonal_energies(const ProblemHamiltonian& hp) {
  const std::size_t n = hp.num_qubits();
  if (n > kStatevectorMaxQubits) {
    throw QubitCapError(std::to_string(n) + " qubits exceed the statevector cap of " +
                        std::to_string(kStatevectorMaxQubits));
  }
  // Walsh-Hadamard transform of the Z-string coefficients.
  std::vector<double> e(std::size_t{1} << n, 0.0);
  for (const auto& [m, c] : hp.spins.terms()) e[z_string(m).z] += c;
  for (std::size_t h = 1; h < e.size(); h <<= 1) {
    for (std::size_t i = 0; i < e.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = e[j];
        const double b = e[j + h];
        e[j] = a + b;
        e[j + h] = a - b;
      }
    }
  }
  return e;
}

ScheduleValue schedule_lambda(double t, double total_time) {
  if (!(total_time > 0.0)) throw std::invalid_argument("total time must be positive");
  if (t < 0.0 || t > total_time) {
    throw std::invalid_argument("time " + std::to_string(t) + " outside [0, T]");
  }
  const double v = std::numbers::pi * t / (2.0 * total_time);
  const double sv = std::sin(v);
  const double u = std::numbers::pi / 2.0 * sv * sv;
  const double su = std::sin(u);
  const double rate = std::sin(2.0 * u) * (std::numbers::pi / 2.0) * std::sin(2.0 * v) *
                      std::numbers::pi / (2.0 * total_time);
  return {su * su, rate};
}

std::vector<double> initial_state_angles(std::span<const double> bias, double hx) {
  if (hx == 0.0) throw std::invalid_argument("transverse field must be nonzero");
  std::vector<double> theta;
  theta.reserve(bias.size());
  for (double h : bias) {
    const double r = std::hypot(h, hx);
    // h - r, rewritten to avoid cancellation for h > 0
    const double num = h > 0.0 ? -hx * hx / (h + r) : h - r;
    theta.push_back(2.0 * std::atan(num / hx));
  }
  return theta;
}

CdPool build_cd_pool(const ProblemHamiltonian& hp) {
  require_pauli_width(hp.num_qubits());
  CdPool pool;
  std::set<PauliString> seen;
  auto push = [&](PauliString p) {
    if (seen.insert(p).second) pool.strings.push_back(p);
  };
  for (const auto& [m, c] : hp.spins.terms()) {
    const auto zs = z_string(m);
    for (auto v : m.vars()) push({1U << v, zs.z});
  }
  for (std::size_t q = 0; q < hp.num_qubits(); ++q) {
    push(PauliString::pauli_y(static_cast<unsigned>(q)));
  }
  return pool;
}

AgpSolution agp_coefficients(const ProblemHamiltonian& hp, std::span<const double> bias, double hx,
                             double lambda, const CdPool& pool) {
  require_pauli_width(hp.num_qubits());
  const auto [h, dh] = interpolated(hp, bias, hx, lambda);

  // G = dH + M alpha, one row per Pauli string appearing in G.
  std::unordered_map<std::uint64_t, Eigen::Index> row_of;
  auto row = [&](PauliString p) {
    return row_of.try_emplace(p.key(), static_cast<Eigen::Index>(row_of.size())).first->second;
  };
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t k = 0; k < pool.strings.size(); ++k) {
    for (const auto& [q, hq] : h) {
      if (hq == 0.0) continue;
      PauliString r;
      const double c = commutator_coefficient(pool.strings[k], q, &r);
      if (c != 0.0) entries.emplace_back(row(r), static_cast<Eigen::Index>(k), c * hq);
    }
  }
  std::vector<std::pair<Eigen::Index, double>> rhs;
  for (const auto& [q, c] : dh) {
    if (c != 0.0) rhs.emplace_back(row(q), c);
  }

  const auto rows = static_cast<Eigen::Index>(row_of.size());
  const auto cols = static_cast<Eigen::Index>(pool.strings.size());
  Eigen::SparseMatrix<double> m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (const auto& [r, c] : rhs) b(r) += c;

  AgpSolution out;
  out.coefficients.assign(pool.strings.size(), 0.0);
  if (cols == 0) return out;
  const Eigen::MatrixXd normal = Eigen::MatrixXd(m.transpose() * m);
  const Eigen::VectorXd target = -(m.transpose() * b);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(normal);
  out.singular = cod.rank() < cols;
  const Eigen::VectorXd alpha = cod.solve(target);
  for (Eigen::Index k = 0; k < cols; ++k) out.coefficients[static_cast<std::size_t>(k)] = alpha(k);
  return out;
}

}  // namespace hubo
