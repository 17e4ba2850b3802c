#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotflow/field.hpp"
#include "knotflow/orbit.hpp"
#include "knotflow/util.hpp"

namespace knotflow {

struct ThetaRecord {
  Rational theta;
  int value = 0;
  int nullity = 0;
  bool reliable = true;
  bool ratio_defined = false;  // false when sigma == 0
  double ratio = 0.0;          // sigma_omega / sigma
};

struct FlowRecord {
  double T = 0.0;
  bool embedded = false;
  bool ok = false;             // whole pipeline completed for this T
  std::string note;            // diagnostic when it did not
  double chord_length = 0.0;
  int crossings = 0;
  int strands = 0;
  int sigma = 0;
  double sigma_over_T2 = 0.0;
  double lower = 0.0, upper = 0.0;  // genus sandwich of the braided knot
  double lower_over_T2 = 0.0, upper_over_T2 = 0.0;
  std::vector<ThetaRecord> omegas;
  double runtime_ms = 0.0;     // excluded from the manifest hash
};

struct FlowRun {
  FieldSpec field;
  Vec3 x0;
  std::vector<double> Tgrid;
  std::vector<Rational> thetas;
  std::uint64_t seed = 0;
  double h = 0.0;
  int retries = 0;
  std::vector<FlowRecord> records;
  std::uint64_t manifest_hash = 0;  // over everything except wall-clock fields
};

// Field must pass validate_field; Tgrid must be strictly increasing and
// positive. Each T runs integrate -> close -> project -> braid -> invariants;
// non-embedded closures and per-T errors are recorded, not fatal.
FlowRun asymptotic_run(const FieldSpec& f, const Vec3& x0, const std::vector<double>& Tgrid,
                       const std::vector<Rational>& thetas, std::uint64_t seed,
                       double h = 0.005, int retries = 8, int jobs = 1);

std::string flow_run_csv(const FlowRun& run);
std::string flow_run_json(const FlowRun& run);
// self-contained line chart of sigma/T^2 and the first-theta ratio versus T
std::string flow_run_svg(const FlowRun& run);

struct FlowConfig {
  FieldSpec field;
  Vec3 x0;
  std::vector<double> Tgrid;
  double h = 0.005;
  std::vector<Rational> thetas;
  std::uint64_t seed = 1;
  int retries = 8;
  bool svg = false;
};

// Key-value text: domain, field (or fx/fy/fz), x0, Tgrid, h, thetas, seed,
// retries, svg. '#' starts a comment. Errors carry line numbers.
FlowConfig parse_flow_config(const std::string& text);

}  // namespace knotflow
