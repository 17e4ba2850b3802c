#include "knotflow/flowrun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "knotflow/asymptotics.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/vogel.hpp"

namespace knotflow {

namespace {

Vec3 unit_from_rng(Rng rng) {
  double zc = rng.uniform(-1.0, 1.0);
  double phi = rng.uniform(0.0, 6.283185307179586);
  double s = std::sqrt(std::max(0.0, 1.0 - zc * zc));
  return {s * std::cos(phi), s * std::sin(phi), zc};
}

void append_domain(std::ostringstream& out, const Domain& d) {
  if (d.kind == Domain::Kind::Ball)
    out << "ball " << format_double(d.radius);
  else
    out << "solidTorus " << format_double(d.R) << ' ' << format_double(d.r);
}

// canonical text of everything reproducible; wall-clock fields stay out
std::string canonical_text(const FlowRun& run) {
  std::ostringstream out;
  out << "field " << run.field.name;
  for (double p : run.field.params) out << ' ' << format_double(p);
  for (const Expr& e : run.field.components) out << ' ' << e.text();
  out << "\ndomain ";
  append_domain(out, run.field.domain);
  out << "\nx0 " << format_double(run.x0.x) << ' ' << format_double(run.x0.y) << ' '
      << format_double(run.x0.z);
  out << "\nh " << format_double(run.h) << " seed " << run.seed << " retries " << run.retries;
  out << "\nthetas";
  for (const Rational& t : run.thetas) out << ' ' << t.str();
  out << "\nTgrid";
  for (double t : run.Tgrid) out << ' ' << format_double(t);
  for (const FlowRecord& r : run.records) {
    out << "\nrecord " << format_double(r.T) << ' ' << r.embedded << ' ' << r.ok << ' ' << r.note
        << ' ' << format_double(r.chord_length) << ' ' << r.crossings << ' ' << r.strands << ' '
        << r.sigma << ' ' << format_double(r.sigma_over_T2) << ' ' << format_double(r.lower)
        << ' ' << format_double(r.upper);
    for (const ThetaRecord& o : r.omegas)
      out << ' ' << o.theta.str() << ' ' << o.value << ' ' << o.nullity << ' ' << o.reliable
          << ' ' << (o.ratio_defined ? format_double(o.ratio) : "null");
  }
  return out.str();
}

}  // namespace

FlowRun asymptotic_run(const FieldSpec& f, const Vec3& x0, const std::vector<double>& Tgrid,
                       const std::vector<Rational>& thetas, std::uint64_t seed, double h,
                       int retries, int jobs) {
  if (Tgrid.empty()) throw std::invalid_argument("asymptotic_run: empty T grid");
  for (std::size_t i = 0; i < Tgrid.size(); ++i) {
    if (!(Tgrid[i] > 0.0)) throw std::invalid_argument("asymptotic_run: T values must be positive");
    if (i > 0 && !(Tgrid[i] > Tgrid[i - 1]))
      throw std::invalid_argument("asymptotic_run: T grid must be strictly increasing");
  }
  for (const Rational& t : thetas) validate_theta(t);
  FieldReport rep = validate_field(f);
  if (!rep.passed)
    throw std::invalid_argument("asymptotic_run: field failed validation: " + rep.summary());

  FlowRun run;
  run.field = f;
  run.x0 = x0;
  run.Tgrid = Tgrid;
  run.thetas = thetas;
  run.seed = seed;
  run.h = h;
  run.retries = retries;
  run.records.resize(Tgrid.size());

  parallel_for(Tgrid.size(), jobs, [&](std::size_t ti) {
    FlowRecord& rec = run.records[ti];
    rec.T = Tgrid[ti];
    auto t0 = std::chrono::steady_clock::now();
    try {
      std::vector<Vec3> orbit = integrate_orbit(f, x0, rec.T, h);
      OrbitKnot knot = close_and_validate(std::move(orbit), rec.T);
      rec.embedded = knot.embedded;
      rec.chord_length = knot.chord_length;
      if (!knot.embedded) {
        rec.note = "skipped: closed curve is not embedded";
      } else {
        Vec3 dir = unit_from_rng(make_rng(seed, 0x666c6f77, ti, 0));
        knot.diagram = project_to_diagram(knot, dir, retries);
        rec.crossings = knot.diagram.alive_crossings();
        knot.braid = vogel_braid(knot.diagram);
        rec.strands = knot.braid.strands;
        rec.sigma = signature(knot.braid);
        rec.sigma_over_T2 = rec.sigma / (rec.T * rec.T);
        GenusSandwich gs = genus_sandwich(knot.braid);
        rec.lower = gs.lower;
        rec.upper = gs.upper;
        rec.lower_over_T2 = gs.lower / (rec.T * rec.T);
        rec.upper_over_T2 = gs.upper / (rec.T * rec.T);
        SeifertData sd = seifert_matrix(knot.braid);
        for (const Rational& theta : thetas) {
          OmegaSignature om = omega_signature(sd, theta);
          ThetaRecord tr;
          tr.theta = theta;
          tr.value = om.value;
          tr.nullity = om.nullity;
          tr.reliable = om.reliable;
          if (rec.sigma != 0) {
            tr.ratio_defined = true;
            tr.ratio = static_cast<double>(om.value) / rec.sigma;
          }
          rec.omegas.push_back(tr);
        }
        rec.ok = true;
      }
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.note = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  });

  std::string canon = canonical_text(run);
  run.manifest_hash = fnv1a64(canon.data(), canon.size());
  return run;
}

std::string flow_run_csv(const FlowRun& run) {
  std::ostringstream out;
  out << "T,embedded,ok,crossings,strands,sigma,sigma_over_T2,lower,upper,lower_over_T2,"
         "upper_over_T2,chord";
  for (const Rational& t : run.thetas) out << ",omega_" << t.num << '_' << t.den << ",ratio_"
                                           << t.num << '_' << t.den;
  out << ",runtime_ms,note\n";
  for (const FlowRecord& r : run.records) {
    out << format_double(r.T) << ',' << r.embedded << ',' << r.ok << ',' << r.crossings << ','
        << r.strands << ',' << r.sigma << ',' << format_double(r.sigma_over_T2) << ','
        << format_double(r.lower) << ',' << format_double(r.upper) << ','
        << format_double(r.lower_over_T2) << ',' << format_double(r.upper_over_T2) << ','
        << format_double(r.chord_length);
    for (std::size_t i = 0; i < run.thetas.size(); ++i) {
      if (i < r.omegas.size()) {
        out << ',' << r.omegas[i].value << ',';
        if (r.omegas[i].ratio_defined) out << format_double(r.omegas[i].ratio);
      } else {
        out << ",,";
      }
    }
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    out << ',' << format_double(r.runtime_ms) << ',' << note << '\n';
  }
  return out.str();
}

std::string flow_run_json(const FlowRun& run) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["field"]["name"] = run.field.name;
  j["field"]["params"] = run.field.params;
  if (!run.field.components.empty()) {
    j["field"]["expressions"] = {run.field.components[0].text(), run.field.components[1].text(),
                                 run.field.components[2].text()};
  }
  if (run.field.domain.kind == Domain::Kind::Ball) {
    j["domain"] = {{"kind", "ball"}, {"radius", run.field.domain.radius}};
  } else {
    j["domain"] = {{"kind", "solidTorus"}, {"R", run.field.domain.R}, {"r", run.field.domain.r}};
  }
  j["x0"] = {run.x0.x, run.x0.y, run.x0.z};
  j["Tgrid"] = run.Tgrid;
  j["h"] = run.h;
  j["seed"] = run.seed;
  j["retries"] = run.retries;
  j["thetas"] = nlohmann::json::array();
  for (const Rational& t : run.thetas) j["thetas"].push_back(t.str());
  j["manifestHash"] = hex64(run.manifest_hash);
  j["records"] = nlohmann::json::array();
  for (const FlowRecord& r : run.records) {
    nlohmann::json rec;
    rec["T"] = r.T;
    rec["embedded"] = r.embedded;
    rec["ok"] = r.ok;
    if (!r.note.empty()) rec["note"] = r.note;
    rec["chord"] = r.chord_length;
    rec["crossings"] = r.crossings;
    rec["strands"] = r.strands;
    rec["sigma"] = r.sigma;
    rec["sigmaOverT2"] = r.sigma_over_T2;
    rec["sandwich"] = {{"lower", r.lower}, {"upper", r.upper}};
    rec["lowerOverT2"] = r.lower_over_T2;
    rec["upperOverT2"] = r.upper_over_T2;
    rec["runtimeMs"] = r.runtime_ms;
    rec["omegas"] = nlohmann::json::array();
    for (const ThetaRecord& o : r.omegas) {
      nlohmann::json jo;
      jo["theta"] = o.theta.str();
      jo["value"] = o.value;
      jo["nullity"] = o.nullity;
      jo["reliable"] = o.reliable;
      jo["ratio"] = o.ratio_defined ? nlohmann::json(o.ratio) : nlohmann::json(nullptr);
      rec["omegas"].push_back(jo);
    }
    j["records"].push_back(rec);
  }
  return j.dump(2);
}

std::string flow_run_svg(const FlowRun& run) {
  const int W = 640, H = 400, pad = 48;
  std::vector<std::pair<double, double>> sig, rat;
  for (const FlowRecord& r : run.records) {
    if (!r.ok) continue;
    sig.push_back({r.T, r.sigma_over_T2});
    if (!r.omegas.empty() && r.omegas[0].ratio_defined) rat.push_back({r.T, r.omegas[0].ratio});
  }
  double tmin = run.Tgrid.front(), tmax = run.Tgrid.back();
  double vmin = 0.0, vmax = 0.0;
  for (const auto& p : sig) {
    vmin = std::min(vmin, p.second);
    vmax = std::max(vmax, p.second);
  }
  for (const auto& p : rat) {
    vmin = std::min(vmin, p.second);
    vmax = std::max(vmax, p.second);
  }
  if (vmax <= vmin) vmax = vmin + 1.0;
  if (tmax <= tmin) tmax = tmin + 1.0;
  auto X = [&](double t) { return pad + (t - tmin) / (tmax - tmin) * (W - 2 * pad); };
  auto Y = [&](double v) { return H - pad - (v - vmin) / (vmax - vmin) * (H - 2 * pad); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\""
      << H - pad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
  auto poly = [&](const std::vector<std::pair<double, double>>& pts, const char* color) {
    if (pts.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& p : pts) out << X(p.first) << ',' << Y(p.second) << ' ';
    out << "\"/>\n";
    for (const auto& p : pts)
      out << "<circle cx=\"" << X(p.first) << "\" cy=\"" << Y(p.second)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  };
  poly(sig, "#1f77b4");
  poly(rat, "#d62728");
  out << "<text x=\"" << pad << "\" y=\"" << pad - 16 << "\" font-size=\"12\">sigma/T^2 (blue)";
  if (!run.thetas.empty()) out << ", sigma_omega/sigma at " << run.thetas[0].str() << " (red)";
  out << "</text>\n";
  out << "<text x=\"" << W - pad - 12 << "\" y=\"" << H - pad + 16 << "\" font-size=\"12\">T</text>\n";
  out << "</svg>\n";
  return out.str();
}

namespace {

[[noreturn]] void config_fail(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_num(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) config_fail(line, "bad number '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    config_fail(line, "bad number '" + tok + "'");
  } catch (const std::out_of_range&) {
    config_fail(line, "number out of range '" + tok + "'");
  }
}

Rational parse_theta(const std::string& tok, int line) {
  std::size_t slash = tok.find('/');
  if (slash == std::string::npos) config_fail(line, "theta must look like p/q: '" + tok + "'");
  try {
    long p = std::stol(tok.substr(0, slash));
    long q = std::stol(tok.substr(slash + 1));
    return Rational{p, q};
  } catch (const std::exception&) {
    config_fail(line, "bad theta '" + tok + "'");
  }
}

}  // namespace

FlowConfig parse_flow_config(const std::string& text) {
  FlowConfig cfg;
  bool have_field = false, have_x0 = false, have_domain = false;
  std::string field_kind;
  std::vector<double> field_params;
  std::string fx, fy, fz;
  Domain domain = Domain::ball(1.0);

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) config_fail(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) config_fail(lineno, "empty value for '" + key + "'");

    if (key == "domain") {
      std::vector<std::string> toks = split_ws(value);
      if (toks[0] == "ball" && toks.size() == 2) {
        domain = Domain::ball(parse_num(toks[1], lineno));
      } else if (toks[0] == "solidTorus" && toks.size() == 3) {
        domain = Domain::solid_torus(parse_num(toks[1], lineno), parse_num(toks[2], lineno));
      } else {
        config_fail(lineno, "domain must be 'ball r' or 'solidTorus R r'");
      }
      have_domain = true;
    } else if (key == "field") {
      std::vector<std::string> toks = split_ws(value);
      field_kind = toks[0];
      field_params.clear();
      for (std::size_t i = 1; i < toks.size(); ++i)
        field_params.push_back(parse_num(toks[i], lineno));
      have_field = true;
    } else if (key == "fx") {
      fx = value;
    } else if (key == "fy") {
      fy = value;
    } else if (key == "fz") {
      fz = value;
    } else if (key == "x0") {
      std::vector<std::string> toks = split_ws(value);
      if (toks.size() != 3) config_fail(lineno, "x0 needs three numbers");
      cfg.x0 = {parse_num(toks[0], lineno), parse_num(toks[1], lineno),
                parse_num(toks[2], lineno)};
      have_x0 = true;
    } else if (key == "Tgrid") {
      cfg.Tgrid.clear();
      for (const std::string& tok : split_ws(value)) cfg.Tgrid.push_back(parse_num(tok, lineno));
      if (cfg.Tgrid.empty()) config_fail(lineno, "Tgrid needs at least one value");
    } else if (key == "h") {
      cfg.h = parse_num(value, lineno);
      if (!(cfg.h > 0.0)) config_fail(lineno, "h must be positive");
    } else if (key == "thetas") {
      cfg.thetas.clear();
      for (const std::string& tok : split_ws(value)) cfg.thetas.push_back(parse_theta(tok, lineno));
    } else if (key == "seed") {
      try {
        cfg.seed = std::stoull(value);
      } catch (const std::exception&) {
        config_fail(lineno, "bad seed '" + value + "'");
      }
    } else if (key == "retries") {
      cfg.retries = static_cast<int>(parse_num(value, lineno));
      if (cfg.retries < 0) config_fail(lineno, "retries must be nonnegative");
    } else if (key == "svg") {
      if (value == "true" || value == "1") cfg.svg = true;
      else if (value == "false" || value == "0") cfg.svg = false;
      else config_fail(lineno, "svg must be true or false");
    } else {
      config_fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_field && fx.empty()) throw std::invalid_argument("config: missing 'field' (or fx/fy/fz)");
  if (!have_x0) throw std::invalid_argument("config: missing 'x0'");
  if (cfg.Tgrid.empty()) throw std::invalid_argument("config: missing 'Tgrid'");

  if (!field_kind.empty() && field_kind != "dsl") {
    cfg.field = builtin_field(field_kind, field_params);
    if (have_domain) cfg.field.domain = domain;
  } else {
    if (fx.empty() || fy.empty() || fz.empty())
      throw std::invalid_argument("config: DSL fields need fx, fy and fz");
    cfg.field = parse_field(fx, fy, fz, domain);
  }
  return cfg;
}

}  // namespace knotflow
