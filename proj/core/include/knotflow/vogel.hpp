#pragma once

#include <vector>

#include "knotflow/braid.hpp"
#include "knotflow/diagram.hpp"

namespace knotflow {

// Circles of the oriented smoothing, as a partition of the live edges.
struct SeifertCircles {
  std::vector<int> circle_of_edge;  // -1 on dead edges
  int count = 0;
};

SeifertCircles seifert_circles(const Diagram& d);

// Faces whose boundary carries arcs of two distinct circles with the same
// alignment; zero exactly when the circle system is braid-readable.
int defect_face_count(const Diagram& d);

// One reducing move: push an arc of the first defect face over the other
// (a type-2 move adding two crossings of opposite sign, preserving the
// circle count and the link). Returns false when no defect face remains.
bool vogel_step(Diagram& d);

// Braid word whose closure is the diagram's link: reducing moves until no
// defect face remains, then read the nested circle system off a cut path.
// Bare circles become idle strands. Throws std::runtime_error past the move
// cap and std::logic_error when a structural check fails.
BraidWord vogel_braid(const Diagram& d);

}  // namespace knotflow
