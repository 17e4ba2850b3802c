#pragma once

#include "knotflow/braid.hpp"
#include "knotflow/inertia.hpp"
#include "knotflow/util.hpp"

namespace knotflow {

// Disk-and-band surface data for a braid closure. The closure may split;
// V is then block diagonal with one block per split part, and the genus
// fields aggregate over parts.
struct SeifertData {
  IntMatrix V;           // lk(a_i, a_j^+) in a fixed cycle basis
  int strands = 0;
  int crossings = 0;
  int components = 0;    // boundary components of the closure
  int parts = 0;         // split pieces (untouched strands count one each)
  int chi = 0;           // strands - crossings
  Rational genus;        // sum of part genera
  bool positive = false; // all letters positive
};

struct GenusData {
  int chi = 0;
  Rational genus;        // Seifert-surface genus of the closure
  Rational genus_smooth; // slice genus; exact only when `exact` is set
  bool exact = false;    // positive words realize the minimum
};

SeifertData seifert_matrix(const BraidWord& b);
GenusData genus_data(const BraidWord& b);

// |det(V + V^T)|; throws std::overflow_error beyond 64 bits.
long long alexander_det(const SeifertData& sd);

// Row-major JSON export of V plus the bookkeeping fields.
std::string seifert_to_json(const SeifertData& sd);

}  // namespace knotflow
