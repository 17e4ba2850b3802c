#include "knotflow/inertia.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace knotflow {

namespace {

// Sparse-aware square array of big integers. Row-major vector; sizes here
// stay modest (a few hundred), bandedness of the inputs does the real work.
struct BigMat {
  int n = 0;
  std::vector<mpz_class> a;
  explicit BigMat(const IntMatrix& m) : n(static_cast<int>(m.rows())), a(static_cast<std::size_t>(n) * n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[std::size_t(i) * n + j] = static_cast<long>(m(i, j));
  }
  mpz_class& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  void swap_symmetric(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(at(i, k), at(j, k));
    for (int k = 0; k < n; ++k) std::swap(at(k, i), at(k, j));
  }
  // congruence: row i += row j, col i += col j
  void add_symmetric(int i, int j) {
    for (int k = 0; k < n; ++k) at(i, k) += at(j, k);
    for (int k = 0; k < n; ++k) at(k, i) += at(k, j);
  }
};

void check_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inertia: matrix not square");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) throw std::invalid_argument("inertia: matrix not symmetric");
}

}  // namespace

Inertia inertia_symmetric_exact(const IntMatrix& m) {
  check_symmetric(m);
  Inertia out;
  int n = static_cast<int>(m.rows());
  if (n == 0) return out;

  BigMat b(m);
  // The trailing block always equals (a positive rational) * flip * the true
  // restricted form; flip tracks the accumulated sign of that scale.
  int flip = +1;
  mpz_class prev = 1;
  int k = 0;
  while (k < n) {
    // prefer a diagonal pivot; the closest one keeps band structure intact
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (b.at(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv >= 0) {
      b.swap_symmetric(k, piv);
      const mpz_class p = b.at(k, k);
      int s = sgn(p) * flip;
      if (s > 0)
        ++out.positive;
      else
        ++out.negative;
      // one-step fraction-free update of the trailing block
      for (int i = k + 1; i < n; ++i) {
        const mpz_class bik = b.at(i, k);
        for (int j = k + 1; j <= i; ++j) {
          mpz_class v = b.at(i, j) * p - bik * b.at(k, j);
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
          b.at(i, j) = v;
          if (i != j) b.at(j, i) = b.at(i, j);
        }
      }
      // trailing block got scaled by p/prev relative to the true form
      if (sgn(p) * sgn(prev) < 0) flip = -flip;
      prev = p;
      ++k;
      continue;
    }
    // diagonal of the trailing block is all zero
    int zi = -1, zj = -1;
    for (int i = k; i < n && zi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (b.at(i, j) != 0) {
          zi = i;
          zj = j;
          break;
        }
    if (zi < 0) {
      out.zero += n - k;
      return out;
    }
    // hyperbolic pair: congruence add makes the diagonal nonzero, the pair
    // contributes one +1 and one -1 regardless of flip
    b.swap_symmetric(k, zi);
    b.swap_symmetric(k + 1, zj == k ? zi : zj);
    b.add_symmetric(k, k + 1);
    // now b(k,k) = 2*old off-diagonal entry != 0; continue with plain pivots,
    // resetting the fraction-free chain (divisibility restarts here)
    prev = 1;
  }
  return out;
}

std::string determinant_abs_string(const IntMatrix& m) {
  int n = static_cast<int>(m.rows());
  if (n == 0) return "1";
  // fraction-free elimination with row pivoting; last pivot is the determinant
  BigMat b(m);
  mpz_class prev = 1;
  mpz_class det = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (b.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return "0";
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(piv, j));
      sign = -sign;
    }
    const mpz_class p = b.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const mpz_class bik = b.at(i, k);
      for (int j = k + 1; j < n; ++j) {
        mpz_class v = b.at(i, j) * p - bik * b.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        b.at(i, j) = v;
      }
      b.at(i, k) = 0;
    }
    prev = p;
    det = p;
  }
  mpz_class out = det < 0 ? mpz_class(-det) : det;
  (void)sign;  // |det| requested
  return out.get_str();
}

double default_hermitian_tol(const ComplexMatrix& m) {
  double maxrow = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    maxrow = std::max(maxrow, s);
  }
  return 1e-8 * static_cast<double>(m.rows()) * std::max(maxrow, 1.0);
}

Inertia inertia_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inertia: matrix not square");
  double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.rows() > 0 && herm_err > 1e-10 * scale)
    throw std::invalid_argument("inertia: matrix not Hermitian");
  Inertia out;
  if (m.rows() == 0) return out;
  if (tol <= 0.0) tol = default_hermitian_tol(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("inertia: eigensolver failed");
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    double a = std::abs(l);
    if (a <= tol)
      ++out.zero;
    else if (a <= 2.0 * tol)
      ++out.ambiguous;
    else if (l > 0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

}  // namespace knotflow
