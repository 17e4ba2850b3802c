#include "knotflow/field.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace knotflow {

namespace {

constexpr double kTwoPi = 6.283185307179586;

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("domain: ") + what + " must be positive");
}

// twist core: rigid rotation w1 about the z axis plus the meridian field
// w2 * R/s in the (s,z) plane; both parts are exactly divergence-free and
// tangent to every torus (s-R)^2 + z^2 = const.
Vec3 twist_eval(double w1, double w2, double R, const Vec3& p) {
  double s2 = p.x * p.x + p.y * p.y;
  double s = std::sqrt(s2);
  if (s2 <= 0.0) throw std::domain_error("field: twist is singular on the z axis");
  Vec3 v{-w1 * p.y, w1 * p.x, 0.0};
  double a = w2 * R;
  v.x -= p.z * a * p.x / s2;
  v.y -= p.z * a * p.y / s2;
  v.z = (s - R) * a / s;
  return v;
}

// perturbation zhat x grad G with G = (r^2 - w) x z, w = (s-R)^2 + z^2;
// divergence-free for any G, tangent because G vanishes on the boundary
Vec3 perturbation_eval(double R, double r, const Vec3& p) {
  double s = std::sqrt(p.x * p.x + p.y * p.y);
  if (s <= 0.0) throw std::domain_error("field: perturbation is singular on the z axis");
  double u = s - R;
  double w = u * u + p.z * p.z;
  double wx = 2.0 * u * p.x / s;
  double wy = 2.0 * u * p.y / s;
  double gx = -wx * p.x * p.z + (r * r - w) * p.z;
  double gy = -wy * p.x * p.z;
  return {-gy, gx, 0.0};
}

}  // namespace

Domain Domain::ball(double radius) {
  check_positive(radius, "ball radius");
  Domain d;
  d.kind = Kind::Ball;
  d.radius = radius;
  return d;
}

Domain Domain::solid_torus(double R, double r) {
  check_positive(R, "torus R");
  check_positive(r, "torus r");
  if (r >= R) throw std::invalid_argument("domain: solid torus needs r < R");
  Domain d;
  d.kind = Kind::SolidTorus;
  d.R = R;
  d.r = r;
  return d;
}

double domain_excess(const Domain& d, const Vec3& p) {
  if (d.kind == Domain::Kind::Ball) return norm(p) - d.radius;
  double s = std::sqrt(p.x * p.x + p.y * p.y);
  double u = s - d.R;
  return std::sqrt(u * u + p.z * p.z) - d.r;
}

bool domain_contains(const Domain& d, const Vec3& p) { return domain_excess(d, p) <= 0.0; }

Vec3 domain_project_inside(const Domain& d, const Vec3& p) {
  double margin = 1.0 - 1e-12;
  if (d.kind == Domain::Kind::Ball) {
    double n = norm(p);
    if (n <= d.radius) return p;
    return (d.radius * margin / n) * p;
  }
  double s = std::sqrt(p.x * p.x + p.y * p.y);
  if (s <= 0.0) return p;  // axis points cannot be pulled toward the core circle
  double u = s - d.R;
  double rho = std::sqrt(u * u + p.z * p.z);
  if (rho <= d.r) return p;
  double scale = d.r * margin / rho;
  double s_new = d.R + u * scale;
  return {p.x * s_new / s, p.y * s_new / s, p.z * scale};
}

Vec3 domain_normal(const Domain& d, const Vec3& p) {
  if (d.kind == Domain::Kind::Ball) {
    double n = norm(p);
    if (n <= 0.0) throw std::domain_error("domain: no normal at the center");
    return (1.0 / n) * p;
  }
  double s = std::sqrt(p.x * p.x + p.y * p.y);
  if (s <= 0.0) throw std::domain_error("domain: no normal on the axis");
  double u = s - d.R;
  Vec3 n{u * p.x / s, u * p.y / s, p.z};
  double len = norm(n);
  if (len <= 0.0) throw std::domain_error("domain: no normal on the core circle");
  return (1.0 / len) * n;
}

double domain_bbox_diagonal(const Domain& d) {
  if (d.kind == Domain::Kind::Ball) return 2.0 * d.radius * std::sqrt(3.0);
  double a = 2.0 * (d.R + d.r);
  return std::sqrt(2.0 * a * a + 4.0 * d.r * d.r);
}

Vec3 eval_field(const FieldSpec& f, const Vec3& p) {
  if (f.name == "dsl")
    return {f.components[0].eval(p.x, p.y, p.z), f.components[1].eval(p.x, p.y, p.z),
            f.components[2].eval(p.x, p.y, p.z)};
  if (f.name == "twist") return twist_eval(f.params[0], f.params[1], f.domain.R, p);
  if (f.name == "perturbed-twist") {
    Vec3 v = twist_eval(2.0, 3.0, f.domain.R, p);
    if (f.params[0] != 0.0) v = v + f.params[0] * perturbation_eval(f.domain.R, f.domain.r, p);
    return v;
  }
  throw std::logic_error("field: unknown evaluator '" + f.name + "'");
}

double halton(int index, int base) {
  double f = 1.0, out = 0.0;
  for (int i = index + 1; i > 0; i /= base) {
    f /= base;
    out += f * (i % base);
  }
  return out;
}

namespace {

Vec3 interior_sample(const Domain& d, int i) {
  // rejection-free maps keep the sequence aligned with its index
  double a = halton(i, 2), b = halton(i, 3), c = halton(i, 5);
  if (d.kind == Domain::Kind::Ball) {
    double rho = d.radius * 0.98 * std::cbrt(a);
    double phi = kTwoPi * b;
    double ct = 2.0 * c - 1.0;
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    return {rho * st * std::cos(phi), rho * st * std::sin(phi), rho * ct};
  }
  double rho = d.r * 0.98 * std::sqrt(a);
  double psi = kTwoPi * b;
  double phi = kTwoPi * c;
  double s = d.R + rho * std::cos(psi);
  return {s * std::cos(phi), s * std::sin(phi), rho * std::sin(psi)};
}

Vec3 boundary_sample(const Domain& d, int i) {
  double a = halton(i, 2), b = halton(i, 3);
  if (d.kind == Domain::Kind::Ball) {
    double phi = kTwoPi * a;
    double ct = 2.0 * b - 1.0;
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    return {d.radius * st * std::cos(phi), d.radius * st * std::sin(phi), d.radius * ct};
  }
  double phi = kTwoPi * a;
  double psi = kTwoPi * b;
  double s = d.R + d.r * std::cos(psi);
  return {s * std::cos(phi), s * std::sin(phi), d.r * std::sin(psi)};
}

}  // namespace

FieldSpec parse_field(const std::string& fx, const std::string& fy, const std::string& fz,
                      const Domain& domain) {
  FieldSpec f;
  f.domain = domain;
  f.name = "dsl";
  f.components = {parse_expr(fx), parse_expr(fy), parse_expr(fz)};
  for (int i = 0; i < 32; ++i) {
    Vec3 p = interior_sample(domain, i);
    Vec3 v = eval_field(f, p);
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      std::ostringstream msg;
      msg << "field: expression is not finite at probe point (" << p.x << ", " << p.y << ", "
          << p.z << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  return f;
}

FieldSpec builtin_field(const std::string& name, const std::vector<double>& params) {
  FieldSpec f;
  f.name = name;
  f.declared_divergence_free = true;
  if (name == "twist") {
    if (params.size() < 2 || params.size() > 4)
      throw std::invalid_argument("field: twist expects (w1, w2[, R, r])");
    double R = params.size() > 2 ? params[2] : 2.0;
    double r = params.size() > 3 ? params[3] : 1.0;
    f.domain = Domain::solid_torus(R, r);
    f.params = {params[0], params[1]};
    return f;
  }
  if (name == "perturbed-twist") {
    if (params.size() < 1 || params.size() > 3)
      throw std::invalid_argument("field: perturbed-twist expects (eps[, R, r])");
    if (!(params[0] >= 0.0))
      throw std::invalid_argument("field: perturbed-twist needs eps >= 0");
    double R = params.size() > 1 ? params[1] : 2.0;
    double r = params.size() > 2 ? params[2] : 1.0;
    f.domain = Domain::solid_torus(R, r);
    f.params = {params[0]};
    return f;
  }
  throw std::invalid_argument("field: unknown builtin '" + name + "'");
}

FieldReport validate_field(const FieldSpec& f, int samples) {
  if (samples < 1) throw std::invalid_argument("validate_field: need samples >= 1");
  FieldReport rep;
  rep.interior_samples = samples;
  rep.boundary_samples = samples;
  const double h = 1e-4;

  std::vector<Vec3> interior(samples), boundary(samples);
  for (int i = 0; i < samples; ++i) {
    interior[i] = interior_sample(f.domain, i);
    boundary[i] = boundary_sample(f.domain, i);
  }
  for (const Vec3& p : interior) rep.scale = std::max(rep.scale, norm(eval_field(f, p)));
  for (const Vec3& p : boundary) rep.scale = std::max(rep.scale, norm(eval_field(f, p)));
  if (rep.scale <= 0.0) rep.scale = 1.0;  // the zero field validates trivially

  for (const Vec3& p : interior) {
    double div = (eval_field(f, {p.x + h, p.y, p.z}).x - eval_field(f, {p.x - h, p.y, p.z}).x +
                  eval_field(f, {p.x, p.y + h, p.z}).y - eval_field(f, {p.x, p.y - h, p.z}).y +
                  eval_field(f, {p.x, p.y, p.z + h}).z - eval_field(f, {p.x, p.y, p.z - h}).z) /
                 (2.0 * h);
    if (std::abs(div) > rep.max_divergence || !std::isfinite(div)) {
      rep.max_divergence = std::abs(div);
      rep.worst_divergence_point = p;
    }
    if (!std::isfinite(div)) {
      rep.max_divergence = std::numeric_limits<double>::infinity();
      rep.worst_divergence_point = p;
      break;
    }
  }
  for (const Vec3& p : boundary) {
    double t = std::abs(dot(eval_field(f, p), domain_normal(f.domain, p)));
    if (t > rep.max_tangency) {
      rep.max_tangency = t;
      rep.worst_tangency_point = p;
    }
  }
  double tol = 1e-6 * rep.scale;
  rep.passed = rep.max_divergence <= tol && rep.max_tangency <= tol;
  return rep;
}

std::string FieldReport::summary() const {
  std::ostringstream out;
  out << (passed ? "pass" : "FAIL") << ": scale " << scale << ", max divergence "
      << max_divergence << " at (" << worst_divergence_point.x << ", "
      << worst_divergence_point.y << ", " << worst_divergence_point.z
      << "), max boundary normal flow " << max_tangency << " at ("
      << worst_tangency_point.x << ", " << worst_tangency_point.y << ", "
      << worst_tangency_point.z << "), " << interior_samples << "+" << boundary_samples
      << " samples";
  return out.str();
}

}  // namespace knotflow
