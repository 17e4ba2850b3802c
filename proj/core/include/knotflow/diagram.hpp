#pragma once

#include <string>
#include <vector>

#include "knotflow/braid.hpp"

namespace knotflow {

struct Endpoint {
  int crossing = -1;
  int slot = -1;

  bool valid() const { return crossing >= 0; }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// One 4-valent vertex of a planar rotation system. Slots 0..3 list the edge
// ends counterclockwise; the two strands occupy the opposite slot pairs
// (0,2) and (1,3), and over_pair picks the one running over. A braid-form
// crossing reads 0 = bottom-left, 1 = bottom-right, 2 = top-right,
// 3 = top-left, with both strands entering from below.
struct Crossing {
  int sign = 0;
  int over_pair = 0;
  bool alive = true;
  int edge_at[4] = {-1, -1, -1, -1};
};

// Directed with the strand orientation.
struct DiagramEdge {
  Endpoint from, to;
  bool alive = true;
};

// Crossings and edges keep stable ids for the lifetime of the diagram;
// moves tombstone them. Circles that touch no crossing are only counted.
struct Diagram {
  std::vector<Crossing> crossings;
  std::vector<DiagramEdge> edges;
  int free_loops = 0;

  int alive_crossings() const;
  int alive_edges() const;
};

struct SaddleMove {
  enum class Kind { SmoothCrossing, JoinComponents };
  Kind kind = Kind::SmoothCrossing;
  // SmoothCrossing: a = crossing id, b unused. JoinComponents: a, b are edge
  // ids anchoring the band; -1 stands for an anonymous free loop.
  int a = -1;
  int b = -1;

  friend bool operator==(const SaddleMove&, const SaddleMove&) = default;
};

struct SaddleSchedule {
  std::vector<SaddleMove> moves;

  std::string to_json() const;
  static SaddleSchedule from_json(const std::string& text);
};

Diagram braid_to_diagram(const BraidWord& w);

// Oriented resolution: the crossing is removed and each incoming strand is
// rejoined to the adjacent outgoing one. A single band move on the link.
void smooth_crossing(Diagram& d, int crossing_id);

// Band move anchored at two distinct edges (or free loops, id -1). Joining
// two circles or splitting one are both legal saddles; anchors whose edges
// share no face with matching direction would force the band out of the
// plane and are rejected with std::invalid_argument.
void join_components(Diagram& d, int edge_a, int edge_b);

void apply_move(Diagram& d, const SaddleMove& m);
Diagram replay(Diagram d, const SaddleSchedule& s);

// Closed curves traced through the crossings, free loops included.
int link_component_count(const Diagram& d);

// Connected pieces of the underlying 4-valent graph, free loops included.
int split_component_count(const Diagram& d);

// Face count of the rotation system, per connected piece of the graph.
std::vector<int> face_counts(const Diagram& d);

// Structural consistency: edge/slot back-references, two-in-two-out
// crossings, sign consistent with the rotation, and V - E + F = 2 on every
// connected piece. Throws std::logic_error with a description.
void validate_diagram(const Diagram& d);

// Smooth every crossing, then band the resulting circles together. The
// returned schedule has at most 2c + (link components) - 1 moves and its
// replay ends in a single free loop.
SaddleSchedule reduce_to_unknot(const Diagram& d);

// Saddle schedule splitting the closure of the (n1+n2, m) torus word into
// T(n1, m) and T(n2, m) side by side: smooth the m crossings where the two
// strand blocks cross. `after` is the word with those letters removed, so
// invariants of both sides of the schedule stay word-computable.
struct SplitSchedule {
  BraidWord before;
  BraidWord after;
  SaddleSchedule schedule;
};
SplitSchedule split_knm(int n1, int n2, int m);

std::string diagram_to_json(const Diagram& d);

}  // namespace knotflow
