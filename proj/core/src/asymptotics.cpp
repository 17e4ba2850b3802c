#include "knotflow/asymptotics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "knotflow/seifert.hpp"
#include "knotflow/util.hpp"

namespace knotflow {

namespace {

void require_additive(const InvariantDescriptor& inv, const char* op) {
  if (!inv.additive)
    throw std::invalid_argument(std::string(op) + ": descriptor '" + inv.name +
                                "' is not additive");
}

}  // namespace

LimitEstimate family_scan(const InvariantDescriptor& inv, int nmax, int mmax, int jobs) {
  require_additive(inv, "family_scan");
  if (nmax < 1 || mmax < 1) throw std::invalid_argument("family_scan: grid must be positive");

  LimitEstimate est;
  est.grid.resize(static_cast<std::size_t>(nmax) * mmax);
  parallel_for(est.grid.size(), jobs, [&](std::size_t idx) {
    int n = static_cast<int>(idx) / mmax + 1;
    int m = static_cast<int>(idx) % mmax + 1;
    auto t0 = std::chrono::steady_clock::now();
    double F = inv.eval(knm_braid(n, m));
    auto t1 = std::chrono::steady_clock::now();
    GridCell& cell = est.grid[idx];
    cell.n = n;
    cell.m = m;
    cell.F = F;
    cell.f = F / (static_cast<double>(n) * m);
    cell.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  });

  auto f_at = [&](int n, int m) { return est.grid[(n - 1) * static_cast<std::size_t>(mmax) + (m - 1)].f; };
  int s = std::min(nmax, mmax);
  est.tauBar = f_at(s, s);

  TrendReport& trend = est.monotoneTrend;
  for (int k = 1; k <= s; ++k) trend.diagonal.push_back(f_at(k, k));
  for (int k = 0; k + 1 < s; ++k)
    if (std::abs(trend.diagonal[k + 1] - est.tauBar) >
        std::abs(trend.diagonal[k] - est.tauBar) + 1e-12)
      ++trend.violations;
  trend.monotone = trend.violations == 0;

  // trailing anti-diagonal cells plus the readout point; the spread over this
  // set dominates |f(corner) - tauBar|
  double lo = est.tauBar, hi = est.tauBar;
  for (const GridCell& cell : est.grid)
    if (cell.n + cell.m >= nmax + mmax - 1) {
      lo = std::min(lo, cell.f);
      hi = std::max(hi, cell.f);
    }
  est.errorBound = inv.saddle_constant * (1.0 / nmax + 1.0 / mmax) + (hi - lo);
  return est;
}

double quasimorphism_defect(const InvariantDescriptor& inv, int n1, int n2, int m) {
  require_additive(inv, "quasimorphism_defect");
  if (n1 < 1 || n2 < 1 || m < 1)
    throw std::invalid_argument("quasimorphism_defect: arguments must be positive");
  double whole = inv.eval(knm_braid(n1 + n2, m));
  double part1 = inv.eval(knm_braid(n1, m));
  double part2 = inv.eval(knm_braid(n2, m));
  return std::abs(whole - part1 - part2);
}

Lemma2Schedule lemma2_schedule(int n, int m, int a) {
  if (n < 1 || m < 1) throw std::invalid_argument("lemma2_schedule: n, m must be positive");
  if (a < 1 || a > std::min(n, m))
    throw std::invalid_argument("lemma2_schedule: need 1 <= a <= min(n, m)");
  Lemma2Schedule s;
  s.n = n;
  s.m = m;
  s.a = a;
  s.k = n / a;
  s.r = n % a;
  s.b = static_cast<long long>(s.k) * m;
  s.movesUsed = static_cast<long long>(m) + static_cast<long long>(s.k - 1) * (m + a) +
                static_cast<long long>(s.r) * m;
  s.declaredBound = static_cast<double>(m) + n + static_cast<double>(n) * m / a +
                    static_cast<double>(a) * m;
  if (static_cast<double>(s.movesUsed) > s.declaredBound)
    throw std::logic_error("lemma2_schedule: move count exceeds its own bound");
  return s;
}

GenusSandwich genus_sandwich(const BraidWord& b) {
  if (closure_info(b).components != 1)
    throw std::invalid_argument("genus_sandwich: closure is not connected");
  GenusSandwich gs;
  gs.lower = std::abs(signature(b)) / 2.0;
  gs.upper = genus_data(b).genus.value();
  return gs;
}

std::string scan_to_csv(const LimitEstimate& e) {
  std::ostringstream out;
  out << "n,m,F,f,runtime_ms\n";
  for (const GridCell& cell : e.grid)
    out << cell.n << ',' << cell.m << ',' << format_double(cell.F) << ','
        << format_double(cell.f) << ',' << format_double(cell.runtime_ms) << '\n';
  return out.str();
}

std::string scan_summary_json(const LimitEstimate& e, const InvariantDescriptor& inv) {
  nlohmann::json j;
  j["invariant"] = inv.name;
  j["tauBar"] = e.tauBar;
  j["errorBound"] = e.errorBound;
  j["convention"] = kSignConvention;
  j["saddleConstant"] = inv.saddle_constant;
  j["gridCells"] = e.grid.size();
  j["diagonal"] = e.monotoneTrend.diagonal;
  j["trendViolations"] = e.monotoneTrend.violations;
  return j.dump(2);
}

}  // namespace knotflow
