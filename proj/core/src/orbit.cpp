#include "knotflow/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "knotflow/util.hpp"

namespace knotflow {

namespace {

Vec3 rk4_step(const FieldSpec& f, const Vec3& p, double dt, const Vec3& k1) {
  Vec3 k2 = eval_field(f, p + (dt / 2.0) * k1);
  Vec3 k3 = eval_field(f, p + (dt / 2.0) * k2);
  Vec3 k4 = eval_field(f, p + dt * k3);
  return p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<Vec3> integrate_orbit(const FieldSpec& f, const Vec3& x0, double T, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_orbit: step must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("integrate_orbit: horizon must be nonnegative");
  if (!domain_contains(f.domain, x0))
    throw std::invalid_argument("integrate_orbit: start point is outside the domain");

  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(T / h) + 2);
  out.push_back(x0);
  Vec3 p = x0;
  double done = 0.0;
  int backprojections = 0;
  while (done < T - 1e-12 * (T + 1.0)) {
    double dt = std::min(h, T - done);
    Vec3 k1 = eval_field(f, p);
    if (norm(k1) < 1e-9) {
      std::ostringstream msg;
      msg << "integrate_orbit: stalled in a singularity neighborhood at (" << p.x << ", " << p.y
          << ", " << p.z << "), t = " << done;
      throw std::runtime_error(msg.str());
    }
    p = rk4_step(f, p, dt, k1);
    if (!domain_contains(f.domain, p)) {
      p = domain_project_inside(f.domain, p);
      ++backprojections;
    }
    out.push_back(p);
    done += dt;
  }
  if (backprojections > 0 && log_enabled(LogLevel::Info))
    log_line(LogLevel::Info, "integrate_orbit: projected " + std::to_string(backprojections) +
                                 " escaped points back into the domain");
  return out;
}

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : v > 1.0 ? 1.0 : v; }

// closest-distance between segments [p, p+u] and [q, q+v]
double segment_distance(const Vec3& p, const Vec3& u, const Vec3& q, const Vec3& v) {
  Vec3 w = p - q;
  double a = dot(u, u), b = dot(u, v), c = dot(v, v);
  double d = dot(u, w), e = dot(v, w);
  double den = a * c - b * b;
  double s, t;
  if (den > 1e-30) {
    s = clamp01((b * e - c * d) / den);
  } else {
    s = 0.0;  // near-parallel: pick an end and optimize the other parameter
  }
  t = c > 1e-30 ? clamp01((b * s + e) / c) : 0.0;
  s = a > 1e-30 ? clamp01((b * t - d) / a) : 0.0;
  Vec3 diff = (p + s * u) - (q + t * v);
  return norm(diff);
}

struct CellKey {
  long long x, y, z;
  bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    h = (h ^ static_cast<std::uint64_t>(k.x)) * 1099511628211ull;
    h = (h ^ static_cast<std::uint64_t>(k.y)) * 1099511628211ull;
    h = (h ^ static_cast<std::uint64_t>(k.z)) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

OrbitKnot close_and_validate(std::vector<Vec3> polyline, double horizon) {
  if (polyline.empty()) throw std::invalid_argument("close_and_validate: empty polyline");
  OrbitKnot k;
  k.base = polyline.front();
  k.horizon = horizon;
  k.chord_length = norm(polyline.back() - polyline.front());
  k.polyline = std::move(polyline);

  Vec3 lo = k.polyline[0], hi = k.polyline[0];
  for (const Vec3& p : k.polyline) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  double diag = norm(hi - lo);
  double delta = 1e-5 * diag;

  // a gap below the contact resolution is welded shut; a larger one becomes
  // a genuine chord segment
  if (k.chord_length > 0.0 && k.chord_length < delta)
    k.polyline.back() = k.polyline.front();
  else if (k.chord_length > 0.0)
    k.polyline.push_back(k.polyline.front());

  // drop exact duplicates so zero-length segments cannot fake contacts
  std::vector<Vec3> pts;
  pts.reserve(k.polyline.size());
  for (const Vec3& p : k.polyline)
    if (pts.empty() || norm(p - pts.back()) > 0.0) pts.push_back(p);
  int m = static_cast<int>(pts.size()) - 1;  // closed segments: pts[i] -> pts[i+1]
  if (m < 3) {
    k.embedded = true;  // a point or one bend cannot self-intersect transversally
    return k;
  }

  double mean_len = 0.0;
  for (int i = 0; i < m; ++i) mean_len += norm(pts[i + 1] - pts[i]);
  mean_len /= m;
  double cell = std::max(mean_len * 2.0, delta * 4.0);

  std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
  auto key_of = [&](double x, double y, double z) {
    return CellKey{static_cast<long long>(std::floor(x / cell)),
                   static_cast<long long>(std::floor(y / cell)),
                   static_cast<long long>(std::floor(z / cell))};
  };
  for (int i = 0; i < m; ++i) {
    Vec3 a = pts[i], b = pts[i + 1];
    CellKey k0 = key_of(std::min(a.x, b.x) - delta, std::min(a.y, b.y) - delta,
                        std::min(a.z, b.z) - delta);
    CellKey k1 = key_of(std::max(a.x, b.x) + delta, std::max(a.y, b.y) + delta,
                        std::max(a.z, b.z) + delta);
    for (long long cx = k0.x; cx <= k1.x; ++cx)
      for (long long cy = k0.y; cy <= k1.y; ++cy)
        for (long long cz = k0.z; cz <= k1.z; ++cz) grid[{cx, cy, cz}].push_back(i);
  }

  k.embedded = true;
  std::unordered_set<std::uint64_t> tested;
  for (const auto& bucket : grid) {
    const std::vector<int>& segs = bucket.second;
    for (std::size_t a = 0; a + 1 < segs.size() && k.embedded; ++a)
      for (std::size_t b = a + 1; b < segs.size() && k.embedded; ++b) {
        int i = std::min(segs[a], segs[b]), j = std::max(segs[a], segs[b]);
        if (j - i <= 1 || (i == 0 && j == m - 1)) continue;  // adjacent along the loop
        std::uint64_t id = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
        if (!tested.insert(id).second) continue;
        double dist = segment_distance(pts[i], pts[i + 1] - pts[i], pts[j], pts[j + 1] - pts[j]);
        if (dist < delta) k.embedded = false;
      }
  }
  return k;
}

namespace {

struct Passage {
  double t = 0.0;    // position along the segment
  int crossing = -1;
  int in_slot = 0, out_slot = 0;
};

struct DegeneracyCensus {
  int short_projection = 0;
  int parallel_overlap = 0;
  int endpoint_touch = 0;
  int depth_tie = 0;
  int triple_point = 0;
  int total() const {
    return short_projection + parallel_overlap + endpoint_touch + depth_tie + triple_point;
  }
  std::string str() const {
    std::ostringstream out;
    out << "shortProjection=" << short_projection << " parallelOverlap=" << parallel_overlap
        << " endpointTouch=" << endpoint_touch << " depthTie=" << depth_tie
        << " triplePoint=" << triple_point;
    return out.str();
  }
};

struct P2 {
  double x = 0.0, y = 0.0;
};

double cross2(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }

struct Key2 {
  long long x, y;
  bool operator==(const Key2& o) const { return x == o.x && y == o.y; }
};
struct Key2Hash {
  std::size_t operator()(const Key2& k) const {
    std::uint64_t h = 1469598103934665603ull;
    h = (h ^ static_cast<std::uint64_t>(k.x)) * 1099511628211ull;
    h = (h ^ static_cast<std::uint64_t>(k.y)) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// one projection attempt; returns true and fills `out` when the picture is
// degeneracy-free
bool try_project(const std::vector<Vec3>& pts, int m, const Vec3& dir, Diagram* out,
                 DegeneracyCensus* census) {
  Vec3 axis = std::abs(dir.x) <= std::abs(dir.y) && std::abs(dir.x) <= std::abs(dir.z)
                  ? Vec3{1, 0, 0}
              : std::abs(dir.y) <= std::abs(dir.z) ? Vec3{0, 1, 0}
                                                   : Vec3{0, 0, 1};
  Vec3 u = cross(dir, axis);
  u = (1.0 / norm(u)) * u;
  Vec3 v = cross(dir, u);

  std::vector<P2> q(m + 1);
  std::vector<double> depth(m + 1);
  for (int i = 0; i <= m; ++i) {
    q[i] = {dot(pts[i], u), dot(pts[i], v)};
    depth[i] = dot(pts[i], dir);
  }
  P2 lo = q[0], hi = q[0];
  for (int i = 0; i <= m; ++i) {
    lo = {std::min(lo.x, q[i].x), std::min(lo.y, q[i].y)};
    hi = {std::max(hi.x, q[i].x), std::max(hi.y, q[i].y)};
  }
  double scale = std::hypot(hi.x - lo.x, hi.y - lo.y);
  if (scale <= 0.0) {
    ++census->short_projection;
    return false;
  }
  double min_len = 1e-12 * scale;
  double mean_len = 0.0;
  for (int i = 0; i < m; ++i) {
    double len = std::hypot(q[i + 1].x - q[i].x, q[i + 1].y - q[i].y);
    if (len < min_len) {
      ++census->short_projection;
      return false;
    }
    mean_len += len;
  }
  mean_len /= m;

  // candidate pairs from a uniform grid over segment boxes
  double cell = std::max(mean_len * 2.0, scale * 1e-6);
  std::unordered_map<Key2, std::vector<int>, Key2Hash> grid;
  for (int i = 0; i < m; ++i) {
    long long x0 = static_cast<long long>(std::floor(std::min(q[i].x, q[i + 1].x) / cell));
    long long x1 = static_cast<long long>(std::floor(std::max(q[i].x, q[i + 1].x) / cell));
    long long y0 = static_cast<long long>(std::floor(std::min(q[i].y, q[i + 1].y) / cell));
    long long y1 = static_cast<long long>(std::floor(std::max(q[i].y, q[i + 1].y) / cell));
    for (long long cx = x0; cx <= x1; ++cx)
      for (long long cy = y0; cy <= y1; ++cy) grid[{cx, cy}].push_back(i);
  }
  std::vector<std::uint64_t> pairs;
  for (const auto& bucket : grid) {
    const std::vector<int>& segs = bucket.second;
    for (std::size_t a = 0; a + 1 < segs.size(); ++a)
      for (std::size_t b = a + 1; b < segs.size(); ++b) {
        int i = std::min(segs[a], segs[b]), j = std::max(segs[a], segs[b]);
        if (j - i <= 1 || (i == 0 && j == m - 1)) continue;
        pairs.push_back((static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j));
      }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  struct Hit {
    int si, sj;        // sj passes under or over si depending on depths
    double ti, tj;
    P2 at;
    double di, dj;
  };
  std::vector<Hit> hits;
  const double end_tol = 1e-8;
  for (std::uint64_t pk : pairs) {
    int i = static_cast<int>(pk >> 32), j = static_cast<int>(pk & 0xffffffffu);
    P2 A{q[i + 1].x - q[i].x, q[i + 1].y - q[i].y};
    P2 B{q[j + 1].x - q[j].x, q[j + 1].y - q[j].y};
    P2 W{q[j].x - q[i].x, q[j].y - q[i].y};
    double den = cross2(A, B);
    double lenA = std::hypot(A.x, A.y), lenB = std::hypot(B.x, B.y);
    if (std::abs(den) <= 1e-12 * lenA * lenB) {
      // parallel directions: degenerate only when the segments almost meet
      double dist01 = segment_distance({q[i].x, q[i].y, 0}, {A.x, A.y, 0}, {q[j].x, q[j].y, 0},
                                       {B.x, B.y, 0});
      if (dist01 < 1e-9 * scale) {
        ++census->parallel_overlap;
        return false;
      }
      continue;
    }
    double ti = cross2(W, B) / den;
    double tj = cross2(W, A) / den;
    if (ti < -end_tol || ti > 1.0 + end_tol || tj < -end_tol || tj > 1.0 + end_tol) continue;
    if (ti < end_tol || ti > 1.0 - end_tol || tj < end_tol || tj > 1.0 - end_tol) {
      ++census->endpoint_touch;
      return false;
    }
    Hit h;
    h.si = i;
    h.sj = j;
    h.ti = ti;
    h.tj = tj;
    h.at = {q[i].x + ti * A.x, q[i].y + ti * A.y};
    h.di = depth[i] + ti * (depth[i + 1] - depth[i]);
    h.dj = depth[j] + tj * (depth[j + 1] - depth[j]);
    if (std::abs(h.di - h.dj) < 1e-9 * (1.0 + std::abs(h.di) + std::abs(h.dj))) {
      ++census->depth_tie;
      return false;
    }
    hits.push_back(h);
  }

  for (std::size_t a = 0; a + 1 < hits.size(); ++a)
    for (std::size_t b = a + 1; b < hits.size(); ++b)
      if (std::hypot(hits[a].at.x - hits[b].at.x, hits[a].at.y - hits[b].at.y) < 1e-9 * scale) {
        ++census->triple_point;
        return false;
      }

  // assemble the diagram: one crossing per hit, slots from the planar angular
  // order around it, over strand always on the (1,3) pair
  Diagram d;
  d.crossings.resize(hits.size());
  std::vector<std::vector<Passage>> passages(m);
  for (std::size_t hidx = 0; hidx < hits.size(); ++hidx) {
    const Hit& h = hits[hidx];
    bool i_over = h.di < h.dj;  // depth grows along the view direction
    int over_seg = i_over ? h.si : h.sj;
    int under_seg = i_over ? h.sj : h.si;
    double over_t = i_over ? h.ti : h.tj;
    double under_t = i_over ? h.tj : h.ti;
    P2 d_over{q[over_seg + 1].x - q[over_seg].x, q[over_seg + 1].y - q[over_seg].y};
    P2 d_under{q[under_seg + 1].x - q[under_seg].x, q[under_seg + 1].y - q[under_seg].y};
    double det = cross2(d_under, d_over);

    Crossing& c = d.crossings[hidx];
    c.over_pair = 1;
    c.sign = det > 0.0 ? -1 : 1;
    Passage under;
    under.t = under_t;
    under.crossing = static_cast<int>(hidx);
    under.in_slot = 0;
    under.out_slot = 2;
    Passage over;
    over.t = over_t;
    over.crossing = static_cast<int>(hidx);
    over.in_slot = det > 0.0 ? 1 : 3;
    over.out_slot = det > 0.0 ? 3 : 1;
    passages[under_seg].push_back(under);
    passages[over_seg].push_back(over);
  }

  std::vector<Passage> ordered;
  for (int i = 0; i < m; ++i) {
    std::sort(passages[i].begin(), passages[i].end(),
              [](const Passage& a, const Passage& b) { return a.t < b.t; });
    ordered.insert(ordered.end(), passages[i].begin(), passages[i].end());
  }
  if (ordered.empty()) {
    d.free_loops = 1;
    *out = std::move(d);
    return true;
  }
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const Passage& from = ordered[k];
    const Passage& to = ordered[(k + 1) % ordered.size()];
    int e = static_cast<int>(d.edges.size());
    d.edges.push_back({{from.crossing, from.out_slot}, {to.crossing, to.in_slot}});
    d.crossings[from.crossing].edge_at[from.out_slot] = e;
    d.crossings[to.crossing].edge_at[to.in_slot] = e;
  }
  validate_diagram(d);
  if (link_component_count(d) != 1)
    throw std::logic_error("project: single closed curve mapped to a multi-component diagram");
  *out = std::move(d);
  return true;
}

Vec3 redraw_direction(const Vec3& previous, int attempt) {
  double buf[3] = {previous.x, previous.y, previous.z};
  Rng rng = make_rng(fnv1a64(buf, sizeof buf), 0x70726f6a, static_cast<std::uint64_t>(attempt), 0);
  double zc = rng.uniform(-1.0, 1.0);
  double phi = rng.uniform(0.0, 6.283185307179586);
  double s = std::sqrt(std::max(0.0, 1.0 - zc * zc));
  return {s * std::cos(phi), s * std::sin(phi), zc};
}

}  // namespace

Diagram project_to_diagram(const OrbitKnot& k, Vec3 direction, int retries) {
  if (!k.embedded) throw std::invalid_argument("project: orbit knot is not embedded");
  if (retries < 0) throw std::invalid_argument("project: retries must be nonnegative");
  double len = norm(direction);
  if (len <= 0.0) throw std::invalid_argument("project: direction must be nonzero");
  Vec3 dir = (1.0 / len) * direction;

  // reuse the deduplicated closed polyline
  std::vector<Vec3> pts;
  pts.reserve(k.polyline.size());
  for (const Vec3& p : k.polyline)
    if (pts.empty() || norm(p - pts.back()) > 0.0) pts.push_back(p);
  if (pts.size() >= 2 && norm(pts.front() - pts.back()) > 0.0) pts.push_back(pts.front());
  int m = static_cast<int>(pts.size()) - 1;
  if (m <= 0) {
    Diagram d;
    d.free_loops = 1;
    return d;
  }

  DegeneracyCensus census;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    Diagram d;
    if (try_project(pts, m, dir, &d, &census)) return d;
    dir = redraw_direction(dir, attempt);
  }
  throw std::runtime_error("project: retries exhausted after " + std::to_string(retries + 1) +
                           " attempts; census: " + census.str());
}

}  // namespace knotflow
