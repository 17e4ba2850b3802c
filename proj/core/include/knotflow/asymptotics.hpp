#pragma once

#include <string>
#include <vector>

#include "knotflow/braid.hpp"
#include "knotflow/invariants.hpp"

namespace knotflow {

struct GridCell {
  int n = 0, m = 0;
  double F = 0.0;          // invariant of the K(n, m) closure
  double f = 0.0;          // F / (n m)
  double runtime_ms = 0.0;
};

// How the diagonal readout f(k, k) approaches the reported value.
struct TrendReport {
  std::vector<double> diagonal;
  int violations = 0;      // diagonal steps that move away from tauBar
  bool monotone = false;
};

struct LimitEstimate {
  double tauBar = 0.0;     // f at the largest square grid point, not extrapolated
  std::vector<GridCell> grid;
  double errorBound = 0.0; // covers |f(nmax, mmax) - tauBar| by construction
  TrendReport monotoneTrend;
};

struct Lemma2Schedule {
  int n = 0, m = 0, a = 0;
  int k = 0, r = 0;            // n = a k + r with 0 <= r < a
  long long b = 0;             // k m
  long long movesUsed = 0;     // z = m + (k-1)(m+a) + r m
  double declaredBound = 0.0;  // m + n + n m / a + a m
};

struct GenusSandwich {
  double lower = 0.0;  // |sigma| / 2
  double upper = 0.0;  // Seifert genus
};

// Evaluates inv over the full K(n, m) grid up to (nmax, mmax). Rejects
// non-additive descriptors. Cells are evaluated independently and merged
// in grid order.
LimitEstimate family_scan(const InvariantDescriptor& inv, int nmax, int mmax, int jobs = 1);

// |F(n1+n2, m) - F(n1, m) - F(n2, m)|, bounded by saddle_constant * m.
double quasimorphism_defect(const InvariantDescriptor& inv, int n1, int n2, int m);

// Rescaling schedule K(n, m) -> K(a, km) in z saddle moves; every normalized
// linear saddle invariant then moves by at most saddle_constant * z.
Lemma2Schedule lemma2_schedule(int n, int m, int a);

// |sigma|/2 <= slice genus <= Seifert genus, valid for connected closures.
GenusSandwich genus_sandwich(const BraidWord& b);

// Rows n,m,F,f,runtime_ms in grid order.
std::string scan_to_csv(const LimitEstimate& e);
// {"tauBar", "errorBound", "convention", ...}
std::string scan_summary_json(const LimitEstimate& e, const InvariantDescriptor& inv);

}  // namespace knotflow
