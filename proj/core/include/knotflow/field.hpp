#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "knotflow/expr.hpp"

namespace knotflow {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct Domain {
  enum class Kind { Ball, SolidTorus };
  Kind kind = Kind::Ball;
  double radius = 1.0;       // ball
  double R = 2.0, r = 1.0;   // solid torus: (sqrt(x^2+y^2)-R)^2 + z^2 <= r^2

  static Domain ball(double radius);
  static Domain solid_torus(double R, double r);
};

// < 0 inside, 0 on the boundary, > 0 outside (scaled distance proxy)
double domain_excess(const Domain& d, const Vec3& p);
bool domain_contains(const Domain& d, const Vec3& p);
// pulls an escaped point back just inside the boundary
Vec3 domain_project_inside(const Domain& d, const Vec3& p);
// outward unit normal of the boundary point nearest to p
Vec3 domain_normal(const Domain& d, const Vec3& p);
double domain_bbox_diagonal(const Domain& d);

struct FieldSpec {
  Domain domain;
  std::string name;              // builtin name, or "dsl"
  std::vector<double> params;
  bool declared_divergence_free = false;
  std::vector<Expr> components;  // three expressions when name == "dsl"
};

Vec3 eval_field(const FieldSpec& f, const Vec3& p);

// Three DSL expressions over x,y,z; probes a few interior points and rejects
// expressions that do not evaluate to finite numbers there.
FieldSpec parse_field(const std::string& fx, const std::string& fy, const std::string& fz,
                      const Domain& domain = Domain::ball(1.0));

// Built-ins on the solid torus, exactly divergence-free and boundary-tangent:
//   twist(w1, w2): rotation w1 about the z axis plus a meridian circulation
//     whose period is 2*pi/w2 on every invariant torus; integer (w1, w2)
//     close every orbit into a (w1, w2) torus knot at T = 2*pi.
//   perturbed-twist(eps): twist(2, 3) plus eps * zhat x grad G with
//     G = (r^2 - w) x z, w = (s-R)^2 + z^2; breaks both symmetries.
FieldSpec builtin_field(const std::string& name, const std::vector<double>& params);

struct FieldReport {
  bool passed = false;
  double scale = 0.0;          // max sampled |X|
  double max_divergence = 0.0;
  Vec3 worst_divergence_point;
  double max_tangency = 0.0;   // max sampled |X . n| on the boundary
  Vec3 worst_tangency_point;
  int interior_samples = 0;
  int boundary_samples = 0;
  std::string summary() const;
};

// Central-difference divergence at quasi-random interior points and normal
// components at boundary samples, both against 1e-6 * scale.
FieldReport validate_field(const FieldSpec& f, int samples = 1000);

// Halton low-discrepancy sequence member in [0,1).
double halton(int index, int base);

}  // namespace knotflow
