#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace knotflow {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int ambiguous = 0;  // exact path never sets this

  int signature() const { return positive - negative; }
  int dim() const { return positive + negative + zero + ambiguous; }
};

// Congruence-based inertia of a symmetric integer matrix. Fraction-free
// elimination over arbitrary-precision integers; symmetric pivoting keeps
// every step a congruence, so the count is exact (no tolerances).
Inertia inertia_symmetric_exact(const IntMatrix& m);

// |det(m)| of an integer matrix, as a decimal string (the exact value
// outgrows 64 bits quickly).
std::string determinant_abs_string(const IntMatrix& m);

// Eigenvalue counts of a Hermitian matrix with an explicit zero tolerance.
// |l| <= tol counts as zero, tol < |l| <= 2 tol as ambiguous. tol <= 0
// selects the default 1e-8 * dim * max-row-sum.
Inertia inertia_hermitian(const ComplexMatrix& m, double tol = 0.0);

double default_hermitian_tol(const ComplexMatrix& m);

}  // namespace knotflow
