#include "knotflow/invariants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knotflow {

Inertia signature_inertia(const BraidWord& b) {
  SeifertData sd = seifert_matrix(b);
  IntMatrix sym = sd.V + IntMatrix(sd.V.transpose());
  return inertia_symmetric_exact(sym);
}

int signature(const BraidWord& b) { return signature_inertia(b).signature(); }

void validate_theta(Rational theta) {
  if (theta.den < 1 || theta.num < 0 || theta.num >= theta.den)
    throw std::invalid_argument("theta must be rational in [0,1), got " + theta.str());
}

OmegaSignature omega_signature(const SeifertData& sd, Rational theta, double tol) {
  validate_theta(theta);
  OmegaSignature out;
  out.theta = theta;
  out.dim = static_cast<int>(sd.V.rows());
  if (out.dim == 0) return out;
  double angle = 2.0 * std::numbers::pi * theta.value();
  std::complex<double> w(std::cos(angle), std::sin(angle));
  ComplexMatrix M = (1.0 - w) * sd.V.cast<std::complex<double>>() +
                    (1.0 - std::conj(w)) * sd.V.transpose().cast<std::complex<double>>();
  if (tol <= 0.0) tol = default_hermitian_tol(M);
  Inertia in = inertia_hermitian(M, tol);
  out.value = in.signature();
  out.nullity = in.zero;
  out.ambiguous = in.ambiguous;
  out.tol = tol;
  out.reliable = (in.ambiguous == 0);
  return out;
}

OmegaSignature omega_signature(const BraidWord& b, Rational theta, double tol) {
  return omega_signature(seifert_matrix(b), theta, tol);
}

int l_theta(int n, Rational theta) {
  validate_theta(theta);
  if (n < 1) throw std::invalid_argument("l_theta: n >= 1 required");
  // floor(n * num / den) + 1
  long long q = (static_cast<long long>(n) * theta.num) / theta.den;
  return static_cast<int>(q) + 1;
}

Rational torus_center(int n, int p, Rational theta) {
  int l = l_theta(n, theta);
  Rational a = Rational(2LL * p) * theta * Rational(n + 1 - 2 * l);
  Rational b = Rational(2LL * p * l * (l - 1), n);
  return a + b;
}

Rational alpha_ratio(Rational theta) {
  validate_theta(theta);
  return Rational(4) * theta * (Rational(1) - theta);
}

int calibrate_center_sign() {
  BraidWord ref = torus_braid(2, 3);
  int sig = signature(ref);
  double center = torus_center(2, 3, Rational(1, 2)).value();
  double dplus = std::abs(sig - center);
  double dminus = std::abs(sig + center);
  return dminus <= dplus ? -1 : +1;
}

std::vector<InvariantDescriptor> invariant_registry(const std::vector<Rational>& thetas) {
  std::vector<InvariantDescriptor> out;
  InvariantDescriptor sig;
  sig.name = "sigma";
  sig.saddle_constant = 1.0;
  sig.unknot_value = 0.0;
  sig.additive = true;
  sig.eval = [](const BraidWord& b) { return static_cast<double>(signature(b)); };
  out.push_back(sig);
  for (Rational t : thetas) {
    validate_theta(t);
    InvariantDescriptor d;
    d.name = "sigma_omega(" + t.str() + ")";
    d.saddle_constant = 2.0;  // asserted bound; observed jumps stay within 1
    d.unknot_value = 0.0;
    d.additive = true;
    d.eval = [t](const BraidWord& b) {
      return static_cast<double>(omega_signature(b, t).value);
    };
    out.push_back(d);
  }
  InvariantDescriptor gs;
  gs.name = "gstar_positive";
  gs.saddle_constant = 1.0;
  gs.unknot_value = 0.0;
  gs.additive = false;  // genus adds over split unions but is not normalized here
  gs.eval = [](const BraidWord& b) { return genus_data(b).genus_smooth.value(); };
  out.push_back(gs);
  return out;
}

}  // namespace knotflow
