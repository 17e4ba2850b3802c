#include "knotflow/vogel.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

namespace knotflow {

namespace {

int out_slot_for(const Diagram& d, int cid, int in_slot) {
  for (int delta : {1, 3}) {
    int s = (in_slot + delta) % 4;
    int e = d.crossings[cid].edge_at[s];
    if (e >= 0 && d.edges[e].from == Endpoint{cid, s}) return s;
  }
  throw std::logic_error("vogel: in slot has no adjacent out slot");
}

// dart = crossing * 4 + slot, pointing away from the crossing
struct Faces {
  std::vector<int> of_dart;            // -1 on dead crossings
  std::vector<std::vector<int>> darts; // per face, in walk order
};

int dart_next(const Diagram& d, int dart) {
  int c = dart / 4, s = dart % 4;
  int e = d.crossings[c].edge_at[s];
  if (e < 0) throw std::logic_error("vogel: slot without an edge");
  Endpoint here{c, s};
  Endpoint other = d.edges[e].from == here ? d.edges[e].to : d.edges[e].from;
  return other.crossing * 4 + (other.slot + 1) % 4;
}

Faces face_map(const Diagram& d) {
  Faces f;
  f.of_dart.assign(d.crossings.size() * 4, -1);
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    if (!d.crossings[c].alive) continue;
    for (int s = 0; s < 4; ++s) {
      int start = static_cast<int>(c) * 4 + s;
      if (f.of_dart[start] >= 0) continue;
      int id = static_cast<int>(f.darts.size());
      f.darts.emplace_back();
      int dart = start;
      while (f.of_dart[dart] < 0) {
        f.of_dart[dart] = id;
        f.darts[id].push_back(dart);
        dart = dart_next(d, dart);
      }
    }
  }
  return f;
}

// +1 when the dart runs with its strand
int dart_align(const Diagram& d, int dart) {
  int c = dart / 4, s = dart % 4;
  int e = d.crossings[c].edge_at[s];
  return d.edges[e].from == Endpoint{c, s} ? 1 : -1;
}

int dart_edge(const Diagram& d, int dart) {
  return d.crossings[dart / 4].edge_at[dart % 4];
}

struct Defect {
  int e1 = -1, e2 = -1;  // arcs of distinct circles, e1 goes over
  int align = 0;
};

bool find_defect(const Diagram& d, const Faces& f, const SeifertCircles& sc, Defect* out) {
  for (const std::vector<int>& face : f.darts) {
    for (std::size_t j = 1; j < face.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        int ei = dart_edge(d, face[i]), ej = dart_edge(d, face[j]);
        if (sc.circle_of_edge[ei] == sc.circle_of_edge[ej]) continue;
        int a = dart_align(d, face[i]);
        if (a != dart_align(d, face[j])) continue;
        if (out) *out = {ei, ej, a};
        return true;
      }
  }
  return false;
}

// Push e1 over e2 across the face both border. Two new crossings appear; the
// one met first along e1 carries table A = [e2-in, e1-in, e2-out, e1-out]
// (sign -1) when the arcs run with the face walk, table B with the e1 slots
// swapped (sign +1) otherwise, and the second crossing carries the other
// table. e2 always enters at slot 0 and leaves at slot 2.
void poke(Diagram& d, const Defect& p) {
  struct Table {
    int e1_in, e1_out, sign;
  };
  Table A{1, 3, -1}, B{3, 1, 1};
  Table tx = p.align > 0 ? A : B;
  Table ty = p.align > 0 ? B : A;

  int X = static_cast<int>(d.crossings.size());
  int Y = X + 1;
  for (const Table& t : {tx, ty}) {
    Crossing c;
    c.sign = t.sign;
    c.over_pair = 1;
    d.crossings.push_back(c);
  }

  Endpoint Q1 = d.edges[p.e1].to;
  Endpoint Q2 = d.edges[p.e2].to;
  int e1m = static_cast<int>(d.edges.size());
  d.edges.push_back({{X, tx.e1_out}, {Y, ty.e1_in}});
  int e1b = static_cast<int>(d.edges.size());
  d.edges.push_back({{Y, ty.e1_out}, Q1});
  int e2m = static_cast<int>(d.edges.size());
  d.edges.push_back({{Y, 2}, {X, 0}});
  int e2b = static_cast<int>(d.edges.size());
  d.edges.push_back({{X, 2}, Q2});

  d.edges[p.e1].to = {X, tx.e1_in};
  d.edges[p.e2].to = {Y, 0};

  Crossing& cx = d.crossings[X];
  cx.edge_at[0] = e2m;
  cx.edge_at[2] = e2b;
  cx.edge_at[tx.e1_in] = p.e1;
  cx.edge_at[tx.e1_out] = e1m;
  Crossing& cy = d.crossings[Y];
  cy.edge_at[0] = p.e2;
  cy.edge_at[2] = e2m;
  cy.edge_at[ty.e1_in] = e1m;
  cy.edge_at[ty.e1_out] = e1b;
  d.crossings[Q1.crossing].edge_at[Q1.slot] = e1b;
  d.crossings[Q2.crossing].edge_at[Q2.slot] = e2b;
}

using Bits = std::vector<std::uint64_t>;

bool bit_get(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }
void bit_flip(Bits& b, int i) { b[i >> 6] ^= 1ull << (i & 63); }
int bit_count(const Bits& b) {
  int n = 0;
  for (std::uint64_t w : b) n += __builtin_popcountll(w);
  return n;
}

struct Axis {
  std::vector<int> rank_of_circle;    // 0 = outermost
  std::vector<int> circle_by_rank;
  int inner_face = -1;
};

// Containment structure relative to candidate outer face f0, or nullopt-like
// failure signalled by returning false.
bool axis_for(const Diagram& d, const Faces& f, const SeifertCircles& sc,
              const std::vector<std::array<int, 2>>& edge_faces, int f0, Axis* out) {
  int n = sc.count;
  int words = (n + 63) / 64;
  int nf = static_cast<int>(f.darts.size());
  std::vector<Bits> inside(nf);
  std::vector<char> seen(nf, 0);
  std::queue<int> q;
  inside[f0].assign(words, 0);
  seen[f0] = 1;
  q.push(f0);
  while (!q.empty()) {
    int face = q.front();
    q.pop();
    for (int dart : f.darts[face]) {
      int e = dart_edge(d, dart);
      int other = edge_faces[e][0] == face ? edge_faces[e][1] : edge_faces[e][0];
      Bits next = inside[face];
      bit_flip(next, sc.circle_of_edge[e]);
      if (!seen[other]) {
        seen[other] = 1;
        inside[other] = std::move(next);
        q.push(other);
      } else if (inside[other] != next) {
        throw std::logic_error("vogel: crossing parity is inconsistent");
      }
    }
  }
  for (int face = 0; face < nf; ++face)
    if (!seen[face]) return false;  // disconnected map: no common axis from here

  // circles strictly containing each circle
  std::vector<Bits> setof(n);
  std::vector<int> probe_edge(n, -1);
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (d.edges[e].alive && probe_edge[sc.circle_of_edge[e]] < 0)
      probe_edge[sc.circle_of_edge[e]] = static_cast<int>(e);
  for (int c = 0; c < n; ++c) {
    int e = probe_edge[c];
    const Bits& s1 = inside[edge_faces[e][0]];
    const Bits& s2 = inside[edge_faces[e][1]];
    setof[c] = bit_get(s1, c) ? s2 : s1;
  }

  // the sizes must be 0..n-1 and form a chain
  out->rank_of_circle.assign(n, -1);
  out->circle_by_rank.assign(n, -1);
  for (int c = 0; c < n; ++c) {
    int r = bit_count(setof[c]);
    if (r >= n || out->circle_by_rank[r] >= 0) return false;
    out->circle_by_rank[r] = c;
    out->rank_of_circle[c] = r;
  }
  for (int r = 0; r + 1 < n; ++r) {
    Bits expect = setof[out->circle_by_rank[r]];
    bit_flip(expect, out->circle_by_rank[r]);
    if (setof[out->circle_by_rank[r + 1]] != expect) return false;
  }

  // every crossing must tie circles of adjacent ranks
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    if (!d.crossings[c].alive) continue;
    int circ[2] = {-1, -1};
    int k = 0;
    for (int s = 0; s < 4 && k < 2; ++s) {
      int e = d.crossings[c].edge_at[s];
      if (d.edges[e].to == Endpoint{static_cast<int>(c), s})
        circ[k++] = sc.circle_of_edge[e];
    }
    if (k != 2 || circ[0] == circ[1]) return false;
    if (std::abs(out->rank_of_circle[circ[0]] - out->rank_of_circle[circ[1]]) != 1) return false;
  }

  // the face inside every circle
  out->inner_face = -1;
  for (int face = 0; face < nf; ++face)
    if (bit_count(inside[face]) == n) {
      if (out->inner_face >= 0) return false;
      out->inner_face = face;
    }
  return out->inner_face >= 0;
}

// one connected piece, at least one crossing, no free loops
BraidWord read_piece(const Diagram& d) {
  SeifertCircles sc = seifert_circles(d);
  int n = sc.count;
  Faces f = face_map(d);
  std::vector<std::array<int, 2>> edge_faces(d.edges.size(), {-1, -1});
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (!d.edges[e].alive) continue;
    const DiagramEdge& ed = d.edges[e];
    edge_faces[e][0] = f.of_dart[ed.from.crossing * 4 + ed.from.slot];
    edge_faces[e][1] = f.of_dart[ed.to.crossing * 4 + ed.to.slot];
  }

  Axis axis;
  bool found = false;
  for (int f0 = 0; f0 < static_cast<int>(f.darts.size()) && !found; ++f0)
    found = axis_for(d, f, sc, edge_faces, f0, &axis);
  if (!found) throw std::logic_error("vogel: no braid axis found");

  // cut path: from the innermost face outward, one circle per step
  std::vector<int> cut(n, -1);
  std::vector<std::vector<int>> circle_edges(n);
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (d.edges[e].alive) circle_edges[sc.circle_of_edge[e]].push_back(static_cast<int>(e));
  int face = axis.inner_face;
  for (int r = n - 1; r >= 0; --r) {
    int circ = axis.circle_by_rank[r];
    int pick = -1;
    for (int e : circle_edges[circ])
      if (edge_faces[e][0] == face || edge_faces[e][1] == face) {
        pick = e;
        break;
      }
    if (pick < 0) throw std::logic_error("vogel: cut path is stuck");
    cut[r] = pick;
    face = edge_faces[pick][0] == face ? edge_faces[pick][1] : edge_faces[pick][0];
  }

  // crossing order along each circle, cut open at the cut path
  std::vector<int> head(d.crossings.size(), -1);
  std::vector<std::vector<int>> next(d.crossings.size());
  std::vector<int> indeg(d.crossings.size(), 0);
  for (int r = 0; r < n; ++r) {
    int e = cut[r];
    int prev = -1;
    while (true) {
      Endpoint in = d.edges[e].to;
      int c = in.crossing;
      if (prev >= 0) {
        next[prev].push_back(c);
        ++indeg[c];
      }
      prev = c;
      e = d.crossings[c].edge_at[out_slot_for(d, c, in.slot)];
      if (e == cut[r]) break;
    }
  }

  BraidWord w{n, {}};
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  int emitted = 0;
  for (std::size_t c = 0; c < d.crossings.size(); ++c)
    if (d.crossings[c].alive && indeg[c] == 0) ready.push(static_cast<int>(c));
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    int rank_in = -1;
    for (int s = 0; s < 4; ++s) {
      int e = d.crossings[c].edge_at[s];
      rank_in = std::max(rank_in, axis.rank_of_circle[sc.circle_of_edge[e]]);
    }
    int g = n - rank_in;
    w.letters.push_back(d.crossings[c].sign > 0 ? g : -g);
    ++emitted;
    for (int v : next[c])
      if (--indeg[v] == 0) ready.push(v);
  }
  if (emitted != d.alive_crossings())
    throw std::logic_error("vogel: crossing order has a cycle");
  validate_braid(w);
  return w;
}

// connected pieces of the planar map, each repacked as its own diagram
std::vector<Diagram> split_pieces(const Diagram& d) {
  std::vector<int> parent(d.crossings.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const DiagramEdge& e : d.edges)
    if (e.alive) parent[find(e.from.crossing)] = find(e.to.crossing);

  std::vector<int> piece_of(d.crossings.size(), -1);
  std::vector<Diagram> pieces;
  std::vector<std::vector<int>> cmap;  // per piece: old crossing id -> new
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    if (!d.crossings[c].alive) continue;
    int r = find(static_cast<int>(c));
    if (piece_of[r] < 0) {
      piece_of[r] = static_cast<int>(pieces.size());
      pieces.emplace_back();
      cmap.emplace_back(d.crossings.size(), -1);
    }
    int p = piece_of[r];
    cmap[p][c] = static_cast<int>(pieces[p].crossings.size());
    pieces[p].crossings.push_back(d.crossings[c]);
  }
  for (const DiagramEdge& e : d.edges) {
    if (!e.alive) continue;
    int p = piece_of[find(e.from.crossing)];
    Diagram& sub = pieces[p];
    int id = static_cast<int>(sub.edges.size());
    Endpoint from{cmap[p][e.from.crossing], e.from.slot};
    Endpoint to{cmap[p][e.to.crossing], e.to.slot};
    sub.edges.push_back({from, to});
    sub.crossings[from.crossing].edge_at[from.slot] = id;
    sub.crossings[to.crossing].edge_at[to.slot] = id;
  }
  return pieces;
}

BraidWord read_braid(const Diagram& d) {
  if (d.alive_crossings() == 0) {
    if (d.free_loops == 0) throw std::invalid_argument("vogel: empty diagram");
    return BraidWord{d.free_loops, {}};
  }
  std::vector<Diagram> pieces = split_pieces(d);
  BraidWord w = read_piece(pieces[0]);
  for (std::size_t p = 1; p < pieces.size(); ++p)
    w = disjoint_union(w, read_piece(pieces[p]));
  w.strands += d.free_loops;
  return w;
}

}  // namespace

SeifertCircles seifert_circles(const Diagram& d) {
  SeifertCircles sc;
  sc.circle_of_edge.assign(d.edges.size(), -1);
  std::vector<int> parent(d.edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    if (!d.crossings[c].alive) continue;
    int cid = static_cast<int>(c);
    for (int s = 0; s < 4; ++s) {
      int e = d.crossings[c].edge_at[s];
      if (d.edges[e].to == Endpoint{cid, s})
        parent[find(e)] = find(d.crossings[c].edge_at[out_slot_for(d, cid, s)]);
    }
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (!d.edges[e].alive) continue;
    int r = find(static_cast<int>(e));
    if (sc.circle_of_edge[r] < 0) sc.circle_of_edge[r] = sc.count++;
    sc.circle_of_edge[e] = sc.circle_of_edge[r];
  }
  return sc;
}

int defect_face_count(const Diagram& d) {
  Faces f = face_map(d);
  SeifertCircles sc = seifert_circles(d);
  int count = 0;
  for (const std::vector<int>& face : f.darts) {
    bool defect = false;
    for (std::size_t j = 1; j < face.size() && !defect; ++j)
      for (std::size_t i = 0; i < j && !defect; ++i) {
        int ei = dart_edge(d, face[i]), ej = dart_edge(d, face[j]);
        defect = sc.circle_of_edge[ei] != sc.circle_of_edge[ej] &&
                 dart_align(d, face[i]) == dart_align(d, face[j]);
      }
    count += defect;
  }
  return count;
}

bool vogel_step(Diagram& d) {
  Faces f = face_map(d);
  SeifertCircles sc = seifert_circles(d);
  Defect def;
  if (!find_defect(d, f, sc, &def)) return false;
  poke(d, def);
  return true;
}

BraidWord vogel_braid(const Diagram& input) {
  Diagram d = input;
  int c0 = d.alive_crossings();
  if (c0 == 0) {
    if (d.free_loops == 0) throw std::invalid_argument("vogel: empty diagram");
    return BraidWord{d.free_loops, {}};
  }
  long long cap = 10LL * (c0 + 2) * (c0 + 2);
  long long steps = 0;
  while (vogel_step(d)) {
    if (++steps > cap) throw std::runtime_error("vogel: move cap exceeded");
  }
  BraidWord w = read_braid(d);
  if (closure_info(w).components != link_component_count(input))
    throw std::logic_error("vogel: component count changed");
  return w;
}

}  // namespace knotflow
