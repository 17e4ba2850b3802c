#pragma once

#include <vector>

#include "knotflow/braid.hpp"
#include "knotflow/diagram.hpp"
#include "knotflow/field.hpp"

namespace knotflow {

struct OrbitKnot {
  Vec3 base;
  double horizon = 0.0;
  std::vector<Vec3> polyline;  // closed: front() == back()
  double chord_length = 0.0;
  bool embedded = false;
  Diagram diagram;             // filled by the projection stage
  BraidWord braid;             // filled by the braiding stage
};

// Fixed-step classical RK4 from x0 for time T; the returned samples start at
// x0 and end at time exactly T (final fractional step). Escaped points are
// pulled back inside the domain and the event is logged. Aborts when the
// speed drops under 1e-9 (singularity neighborhood).
std::vector<Vec3> integrate_orbit(const FieldSpec& f, const Vec3& x0, double T, double h);

// Appends the straight closing chord and flags embeddedness: no two
// non-adjacent segments come closer than 1e-5 times the bounding box
// diagonal. Non-embedded curves are flagged, never rejected.
OrbitKnot close_and_validate(std::vector<Vec3> polyline, double horizon = 0.0);

// Orthogonal projection along `direction`. Degenerate pictures (tangential
// meetings, triple points, depth ties) trigger a deterministic redraw of the
// direction derived from the previous one, at most `retries` times; when
// they run out the error lists the degeneracy census.
Diagram project_to_diagram(const OrbitKnot& k, Vec3 direction, int retries = 8);

}  // namespace knotflow
