#include "knotflow/diagram.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <stdexcept>

namespace knotflow {

namespace {

bool edge_in_at(const Diagram& d, const Endpoint& ep) {
  int e = d.crossings[ep.crossing].edge_at[ep.slot];
  return e >= 0 && d.edges[e].to == ep;
}

// The unique neighbouring out slot of an in slot: the opposite slot belongs
// to the same strand, so of the two neighbours exactly one points out.
int adjacent_out_slot(const Diagram& d, int cid, int in_slot) {
  for (int delta : {1, 3}) {
    int s = (in_slot + delta) % 4;
    Endpoint ep{cid, s};
    int e = d.crossings[cid].edge_at[s];
    if (e >= 0 && d.edges[e].from == ep) return s;
  }
  throw std::logic_error("diagram: in slot has no adjacent out slot");
}

void relink_to(Diagram& d, int edge_id, const Endpoint& new_to) {
  d.edges[edge_id].to = new_to;
  d.crossings[new_to.crossing].edge_at[new_to.slot] = edge_id;
}

int checked_crossing(const Diagram& d, int cid) {
  if (cid < 0 || cid >= static_cast<int>(d.crossings.size()) || !d.crossings[cid].alive)
    throw std::invalid_argument("diagram: no such crossing");
  return cid;
}

std::vector<int> crossing_piece_ids(const Diagram& d, int* pieces_out) {
  int n = static_cast<int>(d.crossings.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const DiagramEdge& e : d.edges)
    if (e.alive) parent[find(e.from.crossing)] = find(e.to.crossing);
  std::vector<int> piece(n, -1);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (!d.crossings[i].alive) continue;
    int r = find(i);
    if (piece[r] < 0) piece[r] = count++;
    piece[i] = piece[r];
  }
  if (pieces_out) *pieces_out = count;
  return piece;
}

// A band with the head swap resolution embeds in the plane only when some
// face shows both edges from matching sides, that is, carries codirectional
// darts of both. Separate pieces can always be arranged to face each other.
bool band_is_planar(const Diagram& d, int e1, int e2) {
  std::vector<int> piece = crossing_piece_ids(d, nullptr);
  if (piece[d.edges[e1].from.crossing] != piece[d.edges[e2].from.crossing]) return true;
  std::vector<char> seen(d.crossings.size() * 4, 0);
  for (std::size_t c0 = 0; c0 < d.crossings.size(); ++c0) {
    if (!d.crossings[c0].alive) continue;
    for (int s0 = 0; s0 < 4; ++s0) {
      if (seen[c0 * 4 + s0]) continue;
      int mask1 = 0, mask2 = 0;  // bit 0: dart along the edge, bit 1: against
      int c = static_cast<int>(c0), s = s0;
      while (!seen[c * 4 + s]) {
        seen[c * 4 + s] = 1;
        int e = d.crossings[c].edge_at[s];
        if (e < 0) throw std::logic_error("diagram: slot without an edge");
        Endpoint here{c, s};
        int align = d.edges[e].from == here ? 1 : 2;
        if (e == e1) mask1 |= align;
        if (e == e2) mask2 |= align;
        Endpoint other = d.edges[e].from == here ? d.edges[e].to : d.edges[e].from;
        c = other.crossing;
        s = (other.slot + 1) % 4;
      }
      if (mask1 & mask2) return true;
    }
  }
  return false;
}

}  // namespace

int Diagram::alive_crossings() const {
  int n = 0;
  for (const Crossing& c : crossings) n += c.alive;
  return n;
}

int Diagram::alive_edges() const {
  int n = 0;
  for (const DiagramEdge& e : edges) n += e.alive;
  return n;
}

Diagram braid_to_diagram(const BraidWord& w) {
  validate_braid(w);
  Diagram d;
  d.crossings.reserve(w.letters.size());

  // loose[i]: endpoint most recently left open at the top of column i;
  // entry[i]: endpoint where column i first enters a crossing from below.
  std::vector<Endpoint> loose(w.strands), entry(w.strands);
  for (std::size_t t = 0; t < w.letters.size(); ++t) {
    int letter = w.letters[t];
    int col = std::abs(letter) - 1;
    Crossing c;
    c.sign = letter > 0 ? 1 : -1;
    c.over_pair = letter > 0 ? 0 : 1;
    int cid = static_cast<int>(d.crossings.size());
    d.crossings.push_back(c);
    for (int side = 0; side < 2; ++side) {  // 0: left column enters BL, 1: right enters BR
      Endpoint in{cid, side};
      if (loose[col + side].valid()) {
        d.edges.push_back({loose[col + side], in});
        int eid = static_cast<int>(d.edges.size()) - 1;
        d.crossings[loose[col + side].crossing].edge_at[loose[col + side].slot] = eid;
        d.crossings[cid].edge_at[side] = eid;
      } else {
        entry[col + side] = in;
      }
    }
    loose[col] = {cid, 3};      // strand continuing up the left column exits TL
    loose[col + 1] = {cid, 2};  // right column exits TR
  }
  for (int i = 0; i < w.strands; ++i) {
    if (!loose[i].valid()) {
      ++d.free_loops;  // untouched strand closes into a bare circle
      continue;
    }
    d.edges.push_back({loose[i], entry[i]});
    int eid = static_cast<int>(d.edges.size()) - 1;
    d.crossings[loose[i].crossing].edge_at[loose[i].slot] = eid;
    d.crossings[entry[i].crossing].edge_at[entry[i].slot] = eid;
  }
  return d;
}

void smooth_crossing(Diagram& d, int cid) {
  checked_crossing(d, cid);
  int in_slots[2];
  int found = 0;
  for (int s = 0; s < 4; ++s)
    if (edge_in_at(d, {cid, s})) {
      if (found == 2) throw std::logic_error("diagram: more than two in slots");
      in_slots[found++] = s;
    }
  if (found != 2) throw std::logic_error("diagram: crossing is not two-in-two-out");

  for (int k = 0; k < 2; ++k) {
    int s_in = in_slots[k];
    int s_out = adjacent_out_slot(d, cid, s_in);
    // re-read edge ids: the first splice may have rerouted them
    int e_in = d.crossings[cid].edge_at[s_in];
    int e_out = d.crossings[cid].edge_at[s_out];
    if (e_in == e_out) {
      d.edges[e_in].alive = false;
      ++d.free_loops;
    } else {
      relink_to(d, e_in, d.edges[e_out].to);
      d.edges[e_out].alive = false;
    }
  }
  Crossing& c = d.crossings[cid];
  c.alive = false;
  std::fill(std::begin(c.edge_at), std::end(c.edge_at), -1);
}

void join_components(Diagram& d, int edge_a, int edge_b) {
  if (edge_a < 0 && edge_b < 0) {
    if (d.free_loops < 2) throw std::invalid_argument("join: fewer than two free loops");
    --d.free_loops;
    return;
  }
  if (edge_a < 0 || edge_b < 0) {
    if (d.free_loops < 1) throw std::invalid_argument("join: no free loop to absorb");
    int e = std::max(edge_a, edge_b);
    if (e >= static_cast<int>(d.edges.size()) || !d.edges[e].alive)
      throw std::invalid_argument("join: no such edge");
    --d.free_loops;  // band absorbs the loop into the strand, no new vertex
    return;
  }
  if (edge_a == edge_b) throw std::invalid_argument("join: need two distinct anchors");
  if (edge_a >= static_cast<int>(d.edges.size()) || edge_b >= static_cast<int>(d.edges.size()) ||
      !d.edges[edge_a].alive || !d.edges[edge_b].alive)
    throw std::invalid_argument("join: no such edge");
  if (!band_is_planar(d, edge_a, edge_b))
    throw std::invalid_argument("join: band between these edges is not planar");
  Endpoint ta = d.edges[edge_a].to;
  Endpoint tb = d.edges[edge_b].to;
  relink_to(d, edge_a, tb);
  relink_to(d, edge_b, ta);
}

void apply_move(Diagram& d, const SaddleMove& m) {
  switch (m.kind) {
    case SaddleMove::Kind::SmoothCrossing:
      smooth_crossing(d, m.a);
      return;
    case SaddleMove::Kind::JoinComponents:
      join_components(d, m.a, m.b);
      return;
  }
  throw std::invalid_argument("apply_move: unknown kind");
}

Diagram replay(Diagram d, const SaddleSchedule& s) {
  for (const SaddleMove& m : s.moves) apply_move(d, m);
  return d;
}

int link_component_count(const Diagram& d) {
  std::vector<char> seen(d.edges.size(), 0);
  int circles = d.free_loops;
  for (std::size_t e0 = 0; e0 < d.edges.size(); ++e0) {
    if (!d.edges[e0].alive || seen[e0]) continue;
    ++circles;
    int e = static_cast<int>(e0);
    while (!seen[e]) {
      seen[e] = 1;
      Endpoint in = d.edges[e].to;
      int out_slot = (in.slot + 2) % 4;  // the strand leaves opposite its entry
      e = d.crossings[in.crossing].edge_at[out_slot];
      if (e < 0) throw std::logic_error("diagram: strand runs into a missing edge");
    }
  }
  return circles;
}

int split_component_count(const Diagram& d) {
  int pieces = 0;
  crossing_piece_ids(d, &pieces);
  return pieces + d.free_loops;
}

std::vector<int> face_counts(const Diagram& d) {
  int pieces = 0;
  std::vector<int> piece = crossing_piece_ids(d, &pieces);
  std::vector<int> faces(pieces, 0);
  // darts point away from a crossing: dart = (crossing, slot). The face
  // permutation follows the edge and turns counterclockwise.
  std::vector<char> seen(d.crossings.size() * 4, 0);
  for (std::size_t c0 = 0; c0 < d.crossings.size(); ++c0) {
    if (!d.crossings[c0].alive) continue;
    for (int s0 = 0; s0 < 4; ++s0) {
      if (seen[c0 * 4 + s0]) continue;
      ++faces[piece[c0]];
      int c = static_cast<int>(c0), s = s0;
      while (!seen[c * 4 + s]) {
        seen[c * 4 + s] = 1;
        int e = d.crossings[c].edge_at[s];
        if (e < 0) throw std::logic_error("diagram: slot without an edge");
        Endpoint here{c, s};
        Endpoint other = d.edges[e].from == here ? d.edges[e].to : d.edges[e].from;
        c = other.crossing;
        s = (other.slot + 1) % 4;
      }
    }
  }
  return faces;
}

void validate_diagram(const Diagram& d) {
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const DiagramEdge& e = d.edges[i];
    if (!e.alive) continue;
    for (const Endpoint& ep : {e.from, e.to}) {
      if (ep.crossing < 0 || ep.crossing >= static_cast<int>(d.crossings.size()) ||
          ep.slot < 0 || ep.slot > 3)
        throw std::logic_error("diagram: edge endpoint out of range");
      if (!d.crossings[ep.crossing].alive)
        throw std::logic_error("diagram: edge touches a dead crossing");
      if (d.crossings[ep.crossing].edge_at[ep.slot] != static_cast<int>(i))
        throw std::logic_error("diagram: slot back-reference mismatch");
    }
  }
  for (std::size_t ci = 0; ci < d.crossings.size(); ++ci) {
    const Crossing& c = d.crossings[ci];
    if (!c.alive) continue;
    int cid = static_cast<int>(ci);
    int over_out = -1, under_out = -1, ins = 0;
    for (int s = 0; s < 4; ++s) {
      int e = c.edge_at[s];
      if (e < 0 || !d.edges[e].alive)
        throw std::logic_error("diagram: live crossing with an empty slot");
      Endpoint ep{cid, s};
      bool is_in = d.edges[e].to == ep;
      bool is_out = d.edges[e].from == ep;
      if (is_in == is_out) throw std::logic_error("diagram: slot direction unclear");
      ins += is_in;
      if (is_out) {
        if (s % 2 == c.over_pair)
          over_out = s;
        else
          under_out = s;
      }
    }
    if (ins != 2) throw std::logic_error("diagram: crossing is not two-in-two-out");
    if (over_out < 0 || under_out < 0)
      throw std::logic_error("diagram: strand pair with no out slot");
    int expect = (under_out - over_out + 4) % 4 == 1 ? 1 : -1;
    if (c.sign != expect) throw std::logic_error("diagram: sign disagrees with rotation");
    if (c.over_pair != 0 && c.over_pair != 1)
      throw std::logic_error("diagram: bad over_pair");
  }
  // Euler relation on every connected piece of the 4-valent graph
  int pieces = 0;
  std::vector<int> piece = crossing_piece_ids(d, &pieces);
  std::vector<int> v(pieces, 0), eds(pieces, 0);
  for (std::size_t i = 0; i < d.crossings.size(); ++i)
    if (d.crossings[i].alive) ++v[piece[i]];
  for (const DiagramEdge& e : d.edges)
    if (e.alive) ++eds[piece[e.from.crossing]];
  std::vector<int> f = face_counts(d);
  for (int p = 0; p < pieces; ++p)
    if (v[p] - eds[p] + f[p] != 2) throw std::logic_error("diagram: Euler relation violated");
}

SaddleSchedule reduce_to_unknot(const Diagram& d) {
  if (d.alive_crossings() == 0 && d.free_loops == 0)
    throw std::invalid_argument("reduce_to_unknot: empty diagram");
  int c = d.alive_crossings();
  int link = link_component_count(d);
  Diagram work = d;
  SaddleSchedule s;
  for (std::size_t i = 0; i < work.crossings.size(); ++i) {
    if (!work.crossings[i].alive) continue;
    SaddleMove m{SaddleMove::Kind::SmoothCrossing, static_cast<int>(i), -1};
    apply_move(work, m);
    s.moves.push_back(m);
  }
  while (work.free_loops > 1) {
    SaddleMove m{SaddleMove::Kind::JoinComponents, -1, -1};
    apply_move(work, m);
    s.moves.push_back(m);
  }
  if (work.free_loops != 1 || work.alive_edges() != 0)
    throw std::logic_error("reduce_to_unknot: did not end on a single circle");
  if (static_cast<int>(s.moves.size()) > 2 * c + link - 1)
    throw std::logic_error("reduce_to_unknot: move bound exceeded");
  return s;
}

SplitSchedule split_knm(int n1, int n2, int m) {
  if (n1 < 1 || n2 < 1 || m < 1) throw std::invalid_argument("split_knm: need n1, n2, m >= 1");
  int n = n1 + n2;
  SplitSchedule out;
  out.before = torus_braid(n, m);
  out.after = BraidWord{n, {}};
  for (int block = 0; block < m; ++block) {
    int base = block * (n - 1);
    for (int i = 1; i <= n - 1; ++i) {
      if (i == n1) {
        out.schedule.moves.push_back({SaddleMove::Kind::SmoothCrossing, base + i - 1, -1});
        continue;
      }
      out.after.letters.push_back(i);
    }
  }
  // the two letter groups never share a strand, so the closure splits
  if (closure_info(out.after).components !=
      std::gcd(n1, m) + std::gcd(n2, m))
    throw std::logic_error("split_knm: unexpected component count after the split");
  return out;
}

std::string SaddleSchedule::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const SaddleMove& m : moves) {
    nlohmann::json jm;
    jm["kind"] = m.kind == SaddleMove::Kind::SmoothCrossing ? "SmoothCrossing" : "JoinComponents";
    jm["a"] = m.a;
    if (m.kind == SaddleMove::Kind::JoinComponents) jm["b"] = m.b;
    arr.push_back(std::move(jm));
  }
  nlohmann::json j;
  j["moves"] = std::move(arr);
  return j.dump(2);
}

SaddleSchedule SaddleSchedule::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SaddleSchedule s;
  for (const auto& jm : j.at("moves")) {
    SaddleMove m;
    std::string kind = jm.at("kind");
    if (kind == "SmoothCrossing")
      m.kind = SaddleMove::Kind::SmoothCrossing;
    else if (kind == "JoinComponents")
      m.kind = SaddleMove::Kind::JoinComponents;
    else
      throw std::invalid_argument("schedule: unknown move kind " + kind);
    m.a = jm.at("a");
    m.b = jm.value("b", -1);
    s.moves.push_back(m);
  }
  return s;
}

std::string diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["free_loops"] = d.free_loops;
  nlohmann::json cs = nlohmann::json::array();
  for (const Crossing& c : d.crossings) {
    nlohmann::json jc;
    jc["alive"] = c.alive;
    if (c.alive) {
      jc["sign"] = c.sign;
      jc["over_pair"] = c.over_pair;
      jc["edges"] = {c.edge_at[0], c.edge_at[1], c.edge_at[2], c.edge_at[3]};
    }
    cs.push_back(std::move(jc));
  }
  j["crossings"] = std::move(cs);
  nlohmann::json es = nlohmann::json::array();
  for (const DiagramEdge& e : d.edges) {
    nlohmann::json je;
    je["alive"] = e.alive;
    if (e.alive) {
      je["from"] = {e.from.crossing, e.from.slot};
      je["to"] = {e.to.crossing, e.to.slot};
    }
    es.push_back(std::move(je));
  }
  j["edges"] = std::move(es);
  return j.dump(2);
}

}  // namespace knotflow
