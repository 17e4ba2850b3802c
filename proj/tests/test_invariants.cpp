#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "knotflow/braid.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/util.hpp"

using namespace knotflow;

TEST_CASE("classical signature on reference closures") {
  for (int k = 2; k <= 8; ++k) CHECK(signature(torus_braid(2, k)) == -(k - 1));
  CHECK(signature(torus_braid(3, 4)) == -6);
  CHECK(signature(torus_braid(3, 5)) == -8);
  CHECK(signature(BraidWord{3, {1, -2, 1, -2}}) == 0);
  CHECK(signature(BraidWord{2, {1}}) == 0);
  CHECK(signature(BraidWord{3, {1, 2, 2, 1}}) == -2);

  // mirror antisymmetry, disjoint additivity
  CHECK(signature(mirror_braid(torus_braid(3, 4))) == 6);
  CHECK(signature(disjoint_union(torus_braid(2, 3), torus_braid(3, 5))) == -10);

  Inertia in = signature_inertia(torus_braid(2, 3));
  CHECK(in.negative == 2);
  CHECK(in.zero == 0);
  CHECK(in.ambiguous == 0);
}

TEST_CASE("omega signature at theta=1/2 is the classical signature") {
  Rng rng = make_rng(11, 4, 0, 0);
  for (int trial = 0; trial < 40; ++trial) {
    int strands = rng.uniform_int(2, 5);
    int len = rng.uniform_int(1, 12);
    BraidWord w{strands, {}};
    for (int i = 0; i < len; ++i) {
      int g = rng.uniform_int(1, strands - 1);
      w.letters.push_back(rng.uniform() < 0.5 ? g : -g);
    }
    OmegaSignature o = omega_signature(w, Rational{1, 2});
    CAPTURE(format_braid_text(w));
    CHECK(o.value == signature(w));
    CHECK(o.reliable);
  }
}

TEST_CASE("omega signature reference values") {
  // trefoil at theta=1/3: eigenvalues -3 +- sqrt(3)
  OmegaSignature o = omega_signature(torus_braid(2, 3), Rational{1, 3});
  CHECK(o.value == -2);
  CHECK(o.nullity == 0);
  CHECK(o.dim == 2);
  CHECK(o.reliable);
  CHECK(o.theta == Rational{1, 3});

  // theta=1/6 is the Alexander root of the trefoil: one exact zero
  OmegaSignature root = omega_signature(torus_braid(2, 3), Rational{1, 6});
  CHECK(root.value == -1);
  CHECK(root.nullity == 1);

  // figure eight: omega signature vanishes identically
  for (auto th : {Rational{1, 3}, Rational{1, 4}, Rational{2, 5}, Rational{1, 7}})
    CHECK(omega_signature(BraidWord{3, {1, -2, 1, -2}}, th).value == 0);

  CHECK_THROWS_AS(omega_signature(torus_braid(2, 3), Rational{3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(omega_signature(torus_braid(2, 3), Rational{-1, 3}), std::invalid_argument);
}

TEST_CASE("presentation independence: K(n,m) against the torus word") {
  for (int n = 2; n <= 6; ++n)
    for (int m = 2; m <= 6; ++m)
      CHECK(signature(knm_braid(n, m)) == signature(torus_braid(n, m)));
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 4; ++m)
      for (auto th : {Rational{1, 3}, Rational{2, 5}})
        CHECK(omega_signature(knm_braid(n, m), th).value ==
              omega_signature(torus_braid(n, m), th).value);
}

TEST_CASE("window bookkeeping") {
  CHECK(l_theta(6, Rational{1, 3}) == 3);
  CHECK(l_theta(6, Rational{0, 1}) == 1);
  CHECK(l_theta(2, Rational{1, 2}) == 2);
  CHECK(l_theta(4, Rational{1, 4}) == 2);
  CHECK(l_theta(5, Rational{2, 5}) == 3);
  CHECK(l_theta(7, Rational{1, 2}) == 4);

  CHECK(torus_center(6, 6, Rational{1, 3}) == Rational{16});
  // theta=1/2: l = n/2+1 for even n, center = p(n+1-2l) + 2p l(l-1)/n
  CHECK(torus_center(2, 3, Rational{1, 2}) == Rational{3});
  CHECK(alpha_ratio(Rational{1, 3}) == Rational{8, 9});
  CHECK(alpha_ratio(Rational{1, 2}) == Rational{1});
  CHECK(alpha_ratio(Rational{1, 4}) == Rational{3, 4});

  CHECK(calibrate_center_sign() == -1);
}

TEST_CASE("signatures stay inside the calibrated window") {
  for (int n = 3; n <= 7; ++n)
    for (int p : {n, 2 * n}) {
      for (auto th : {Rational{1, 2}, Rational{1, 3}, Rational{1, 4}}) {
        OmegaSignature o = omega_signature(torus_braid(n, p), th);
        double center = -torus_center(n, p, th).value();
        CAPTURE(n);
        CAPTURE(p);
        CHECK(std::abs(o.value - center) <= 2.0 * n + 1e-9);
      }
    }
}

TEST_CASE("invariant registry") {
  auto reg = invariant_registry({Rational{1, 3}, Rational{1, 4}});
  REQUIRE(reg.size() == 4);
  CHECK(reg[0].name == "sigma");
  CHECK(reg[0].saddle_constant == 1.0);
  CHECK(reg[0].additive);
  CHECK(reg[1].name == "sigma_omega(1/3)");
  CHECK(reg[1].saddle_constant == 2.0);
  CHECK(reg[2].name == "sigma_omega(1/4)");
  CHECK(reg[3].name == "gstar_positive");
  CHECK_FALSE(reg[3].additive);

  BraidWord unknot{2, {1}};
  for (const auto& d : reg) CHECK(d.eval(unknot) == d.unknot_value);

  CHECK(reg[0].eval(torus_braid(2, 3)) == -2.0);
  CHECK(reg[1].eval(torus_braid(2, 3)) == -2.0);
  CHECK(reg[3].eval(torus_braid(2, 3)) == 1.0);

  // additivity of the additive entries on a disjoint union
  BraidWord du = disjoint_union(torus_braid(2, 3), torus_braid(3, 4));
  for (const auto& d : reg)
    if (d.additive)
      CHECK(d.eval(du) == d.eval(torus_braid(2, 3)) + d.eval(torus_braid(3, 4)));
}
