// Dense-matrix oracles for the statevector simulator: Pauli strings built by
// explicit Kronecker products, matrix exponentials via Eigen.
#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace hubo::testing {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline CMatrix single_pauli(char c) {
  using C = std::complex<double>;
  CMatrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = CMatrix::Identity(2, 2);
  }
  return m;
}

// letters[q] acts on qubit q; basis index bit q is qubit q, so qubit 0 is the
// rightmost Kronecker factor.
inline CMatrix dense_pauli(const std::string& letters) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (char c : letters) {
    CMatrix next = Eigen::kroneckerProduct(single_pauli(c), m).eval();
    m = next;
  }
  return m;
}

inline CMatrix expm_minus_i(const CMatrix& h, double t) {
  const CMatrix a = (std::complex<double>(0.0, -t) * h).eval();
  return a.exp();
}

}  // namespace hubo::testing
