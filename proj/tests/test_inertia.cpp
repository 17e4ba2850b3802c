#include <doctest.h>

#include <complex>
#include <stdexcept>

#include "knotflow/inertia.hpp"
#include "knotflow/util.hpp"

using namespace knotflow;

namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("exact inertia on literal matrices") {
  Inertia d = inertia_symmetric_exact(from_rows({{2, 0, 0}, {0, -3, 0}, {0, 0, 0}}));
  CHECK(d.positive == 1);
  CHECK(d.negative == 1);
  CHECK(d.zero == 1);
  CHECK(d.signature() == 0);
  CHECK(d.dim() == 3);

  // hyperbolic plane: zero diagonal forces the 2x2 fallback
  Inertia h = inertia_symmetric_exact(from_rows({{0, 1}, {1, 0}}));
  CHECK(h.positive == 1);
  CHECK(h.negative == 1);

  Inertia h4 = inertia_symmetric_exact(from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}));
  CHECK(h4.positive == 2);
  CHECK(h4.negative == 2);

  Inertia z = inertia_symmetric_exact(IntMatrix::Zero(3, 3));
  CHECK(z.zero == 3);

  CHECK(inertia_symmetric_exact(IntMatrix(0, 0)).dim() == 0);
  CHECK_THROWS_AS(inertia_symmetric_exact(from_rows({{0, 1}, {2, 0}})), std::invalid_argument);
}

TEST_CASE("exact inertia agrees with floating eigenvalues on random matrices") {
  Rng rng = make_rng(7, 1, 2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.uniform_int(1, 10));
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform_int(-4, 4);
    Eigen::MatrixXd md = m.cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(md, Eigen::EigenvaluesOnly);
    int pos = 0, neg = 0, zero = 0;
    bool clean = true;
    for (int i = 0; i < n; ++i) {
      double ev = es.eigenvalues()[i];
      if (std::abs(ev) < 1e-7)
        ++zero;
      else if (ev > 0)
        ++pos;
      else
        ++neg;
      if (std::abs(ev) >= 1e-7 && std::abs(ev) < 1e-4) clean = false;
    }
    if (!clean) continue;  // rare: float separation too poor to be an oracle
    Inertia in = inertia_symmetric_exact(m);
    CHECK(in.positive == pos);
    CHECK(in.negative == neg);
    CHECK(in.zero == zero);
    CHECK(in.ambiguous == 0);
  }
}

TEST_CASE("determinant string") {
  CHECK(determinant_abs_string(from_rows({{-2, 1}, {1, -2}})) == "3");
  CHECK(determinant_abs_string(from_rows({{1, 2}, {2, 4}})) == "0");
  CHECK(determinant_abs_string(IntMatrix(0, 0)) == "1");
  // non-symmetric input is legal here
  CHECK(determinant_abs_string(from_rows({{0, 1}, {-1, 0}})) == "1");
  // 40x40 +-1 checkerboard with heavy diagonal: |det| far beyond 64 bits
  int n = 40;
  IntMatrix big(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) big(i, j) = i == j ? 7 : ((i + j) % 2 ? 1 : -1);
  std::string s = determinant_abs_string(big);
  CHECK(s.size() > 19);  // bigger than any 64-bit value
}

TEST_CASE("hermitian inertia and the ambiguity band") {
  ComplexMatrix m(2, 2);
  m << std::complex<double>(-1, 0), std::complex<double>(0.5, -0.8660254037844386),
      std::complex<double>(0.5, 0.8660254037844386), std::complex<double>(-1, 0);
  // eigenvalues -1 +- 1: one zero within tolerance, one negative
  Inertia in = inertia_hermitian(m);
  CHECK(in.negative == 1);
  CHECK(in.zero == 1);
  CHECK(in.positive == 0);

  ComplexMatrix amb = ComplexMatrix::Zero(2, 2);
  amb(0, 0) = 3e-8;  // default tol 2e-8, ambiguous band (2e-8, 4e-8]
  amb(1, 1) = 1.0;
  CHECK(default_hermitian_tol(amb) == doctest::Approx(2e-8));
  Inertia a = inertia_hermitian(amb);
  CHECK(a.positive == 1);
  CHECK(a.ambiguous == 1);
  // explicit looser tolerance swallows it into the kernel
  Inertia loose = inertia_hermitian(amb, 1e-6);
  CHECK(loose.zero == 1);
  CHECK(loose.ambiguous == 0);

  ComplexMatrix bad(2, 2);
  bad << 1.0, std::complex<double>(0, 1), std::complex<double>(0, 1), 1.0;
  CHECK_THROWS_AS(inertia_hermitian(bad), std::invalid_argument);
}
