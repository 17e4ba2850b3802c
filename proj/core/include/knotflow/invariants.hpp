#pragma once

#include <functional>
#include <string>
#include <vector>

#include "knotflow/braid.hpp"
#include "knotflow/inertia.hpp"
#include "knotflow/seifert.hpp"
#include "knotflow/util.hpp"

namespace knotflow {

inline constexpr const char* kSignConvention = "V+Vt, positive trefoil = -2";

// Classical signature of the closure: sign(V + V^T), exact arithmetic.
int signature(const BraidWord& b);
Inertia signature_inertia(const BraidWord& b);

struct OmegaSignature {
  int value = 0;
  int nullity = 0;
  int ambiguous = 0;
  int dim = 0;
  double tol = 0.0;
  bool reliable = true;  // false when the ambiguous band is populated

  Rational theta;
};

// Signature of (1-w)V + (1-conj w)V^T at w = exp(2 pi i theta); theta must be
// rational in [0,1). theta = 1/2 reproduces the classical signature.
OmegaSignature omega_signature(const BraidWord& b, Rational theta, double tol = 0.0);
OmegaSignature omega_signature(const SeifertData& sd, Rational theta, double tol = 0.0);

void validate_theta(Rational theta);

// l in {1..n} with (l-1)/n <= theta < l/n.
int l_theta(int n, Rational theta);

// Center 2p theta (n+1-2l) + (2p/n) l (l-1) of the omega-signature window for
// the (n,p) torus braid; the window halfwidth is 2n, up to one global sign.
Rational torus_center(int n, int p, Rational theta);

// 4 theta (1 - theta): the limiting ratio of omega-signature to signature.
Rational alpha_ratio(Rational theta);

// Global sign s in {+1,-1} aligning centers with computed values, fixed by
// the (2,3) torus braid at theta = 1/2.
int calibrate_center_sign();

struct InvariantDescriptor {
  std::string name;
  double saddle_constant = 1.0;  // one-band move changes the value by at most this
  double unknot_value = 0.0;
  bool additive = true;
  std::function<double(const BraidWord&)> eval;
};

// sigma, sigma_omega for each requested theta, and the positive-braid slice
// genus (not additive-normalized; saddle constants per descriptor).
std::vector<InvariantDescriptor> invariant_registry(const std::vector<Rational>& thetas);

}  // namespace knotflow
