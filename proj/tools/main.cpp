#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "knotflow/asymptotics.hpp"
#include "knotflow/braid.hpp"
#include "knotflow/flowrun.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/seifert.hpp"
#include "knotflow/util.hpp"

using namespace knotflow;

namespace {

// exit codes: 0 success, 2 usage, 3 validation failure, 4 ambiguity present
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kValidation = 3;
constexpr int kAmbiguous = 4;

int usage_error(const std::string& what) {
  std::cerr << "knotflow: usage error: " << what << "\n";
  return kUsage;
}

int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

Rational parse_theta_arg(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("theta must look like P/Q, got '" + text + "'");
  Rational t{std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1))};
  validate_theta(t);
  return t;
}

std::string join_args(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) {
    if (i) out << ' ';
    out << argv[i];
  }
  return out.str();
}

std::string iso_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

struct ManifestInput {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  nlohmann::json input_hashes = nlohmann::json::object();
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
};

void write_manifest(const std::string& path, const ManifestInput& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["config"] = m.config;
  j["version"] = kVersion;
  j["seed"] = m.seed;
  j["inputHashes"] = m.input_hashes;
  j["outputs"] = m.outputs;
  j["wallClockMs"] = m.wall_ms;
  j["writtenAt"] = iso_now();
  atomic_write_file(path, j.dump(2) + "\n");
}

struct InvArgs {
  std::vector<std::string> family;
  std::string braid_text;
  int strands = 0;
  bool sig = false;
  std::string omega;
  bool gstar = false;
  std::string out;
};

int cmd_inv(const InvArgs& a, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  int sources = (a.family.empty() ? 0 : 1) + (a.braid_text.empty() ? 0 : 1);
  if (sources != 1) return usage_error("give exactly one of --family or --braid");
  int picks = (a.sig ? 1 : 0) + (a.omega.empty() ? 0 : 1) + (a.gstar ? 1 : 0);
  if (picks != 1) return usage_error("pick exactly one of --sig, --omega, --gstar");

  BraidWord b;
  nlohmann::json echo;
  if (!a.family.empty()) {
    int n = std::stoi(a.family[1]), m = std::stoi(a.family[2]);
    if (a.family[0] == "torus")
      b = torus_braid(n, m);
    else if (a.family[0] == "knm")
      b = knm_braid(n, m);
    else
      return usage_error("unknown family '" + a.family[0] + "' (torus | knm)");
    echo["family"] = {a.family[0], n, m};
  } else {
    if (a.strands <= 0) return usage_error("--braid needs --strands");
    b = parse_braid_text(a.braid_text, a.strands);
    echo["braid"] = a.braid_text;
    echo["strands"] = a.strands;
  }

  nlohmann::json j;
  bool ambiguous = false;
  if (a.sig) {
    Inertia in = signature_inertia(b);
    j["name"] = "sigma";
    j["value"] = in.signature();
    j["nullity"] = in.zero;
    j["ambiguous"] = false;
    j["dim"] = in.dim();
  } else if (!a.omega.empty()) {
    OmegaSignature os = omega_signature(b, parse_theta_arg(a.omega));
    j["name"] = "sigma_omega";
    j["theta"] = os.theta.str();
    j["value"] = os.value;
    j["nullity"] = os.nullity;
    j["ambiguous"] = !os.reliable;
    j["dim"] = os.dim;
    ambiguous = !os.reliable;
  } else {
    GenusData gd = genus_data(b);
    if (!gd.exact)
      throw std::invalid_argument("gstar is exact only for positive braid words here");
    j["name"] = "gstar";
    j["value"] = gd.genus_smooth.value();
    j["nullity"] = 0;
    j["ambiguous"] = false;
    j["dim"] = static_cast<int>(seifert_matrix(b).V.rows());
  }
  j["convention"] = kSignConvention;

  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    atomic_write_file(a.out, text);
    auto t1 = std::chrono::steady_clock::now();
    ManifestInput m;
    m.command = command;
    m.config = echo;
    m.input_hashes["args"] = hex64(fnv1a64(echo.dump()));
    m.outputs = {a.out};
    m.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    write_manifest(a.out + ".manifest.json", m);
  }
  return ambiguous ? kAmbiguous : kOk;
}

struct ScanArgs {
  bool sig = false;
  std::string omega;
  bool gstar = false;
  int nmax = 0;
  int mmax = 0;
  std::string out = "scan";
  int jobs = 0;
};

int cmd_scan(const ScanArgs& a, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  if (a.gstar) return usage_error("gstar is not additive; scan needs an additive invariant");
  int picks = (a.sig ? 1 : 0) + (a.omega.empty() ? 0 : 1);
  if (picks != 1) return usage_error("pick exactly one of --sig or --omega");
  if (a.nmax < 1) return usage_error("--nmax must be at least 1");
  int mmax = a.mmax > 0 ? a.mmax : a.nmax;
  int jobs = a.jobs > 0 ? a.jobs : default_jobs();

  std::vector<Rational> thetas;
  if (!a.omega.empty()) thetas.push_back(parse_theta_arg(a.omega));
  std::vector<InvariantDescriptor> reg = invariant_registry(thetas);
  const InvariantDescriptor& desc = a.sig ? reg[0] : reg[1];

  LimitEstimate est = family_scan(desc, a.nmax, mmax, jobs);
  std::string summary = scan_summary_json(est, desc);
  std::cout << summary << "\n";

  atomic_write_file(a.out + ".csv", scan_to_csv(est));
  atomic_write_file(a.out + ".json", summary + "\n");
  auto t1 = std::chrono::steady_clock::now();
  ManifestInput m;
  m.command = command;
  m.config = {{"invariant", desc.name}, {"nmax", a.nmax}, {"mmax", mmax}};
  m.input_hashes["args"] = hex64(fnv1a64(m.config.dump()));
  m.outputs = {a.out + ".csv", a.out + ".json"};
  m.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  write_manifest(a.out + ".manifest.json", m);

  // every cell must respect |f - tauBar| <= C (1/n + 1/m) + C (1/nmax + 1/mmax)
  double slack = desc.saddle_constant * (1.0 / a.nmax + 1.0 / mmax);
  for (const GridCell& c : est.grid) {
    double bound = desc.saddle_constant * (1.0 / c.n + 1.0 / c.m) + slack;
    if (std::abs(c.f - est.tauBar) > bound + 1e-12) {
      std::cerr << "knotflow: cell (" << c.n << "," << c.m << ") broke its error bound: |"
                << format_double(c.f) << " - " << format_double(est.tauBar) << "| > "
                << format_double(bound) << "\n";
      return kValidation;
    }
  }
  return kOk;
}

struct FlowArgs {
  std::string config;
  std::string out;
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

std::string path_stem(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base.empty() ? "flow" : base;
}

int cmd_flow(const FlowArgs& a, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  std::ifstream in(a.config);
  if (!in) {
    std::cerr << "knotflow: cannot read config '" << a.config << "'\n";
    return kValidation;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string config_text = buf.str();

  FlowConfig cfg = parse_flow_config(config_text);
  if (a.seed_set) cfg.seed = a.seed;
  int jobs = a.jobs > 0 ? a.jobs : default_jobs();
  std::string out = a.out.empty() ? path_stem(a.config) : a.out;

  FlowRun run =
      asymptotic_run(cfg.field, cfg.x0, cfg.Tgrid, cfg.thetas, cfg.seed, cfg.h, cfg.retries, jobs);

  std::vector<std::string> outputs = {out + ".csv", out + ".json"};
  atomic_write_file(out + ".csv", flow_run_csv(run));
  atomic_write_file(out + ".json", flow_run_json(run) + "\n");
  if (cfg.svg) {
    atomic_write_file(out + ".svg", flow_run_svg(run));
    outputs.push_back(out + ".svg");
  }

  auto t1 = std::chrono::steady_clock::now();
  ManifestInput m;
  m.command = command;
  m.config = nlohmann::json{{"text", config_text}, {"seed", cfg.seed}};
  m.seed = cfg.seed;
  m.input_hashes[a.config] = hex64(fnv1a64(config_text));
  m.outputs = outputs;
  m.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  write_manifest(out + ".manifest.json", m);

  bool ambiguous = false;
  for (const FlowRecord& r : run.records) {
    std::cout << "T=" << format_double(r.T);
    if (r.ok) {
      std::cout << " sigma=" << r.sigma << " crossings=" << r.crossings;
      for (const ThetaRecord& o : r.omegas) {
        std::cout << " sigma_omega(" << o.theta.str() << ")=" << o.value;
        if (!o.reliable) ambiguous = true;
      }
    } else {
      std::cout << " " << r.note;
    }
    std::cout << "\n";
  }
  std::cout << "manifest " << hex64(run.manifest_hash) << "\n";
  for (const std::string& f : outputs) std::cout << "wrote " << f << "\n";
  return ambiguous ? kAmbiguous : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear saddle invariants of braid closures and flow orbit knots"};
  app.require_subcommand(1);

  InvArgs inv_args;
  CLI::App* inv = app.add_subcommand("inv", "one braid closure, one invariant, JSON out");
  inv->add_option("--family", inv_args.family, "family: torus n p | knm n m")
      ->expected(3);
  inv->add_option("--braid", inv_args.braid_text, "braid word, signed generator indices");
  inv->add_option("--strands", inv_args.strands, "strand count for --braid");
  inv->add_flag("--sig", inv_args.sig, "classical signature");
  inv->add_option("--omega", inv_args.omega, "omega signature at theta = P/Q");
  inv->add_flag("--gstar", inv_args.gstar, "slice genus (positive words)");
  inv->add_option("--out", inv_args.out, "also write the JSON here");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "grid scan of K(n,m), CSV + summary");
  scan->add_flag("--sig", scan_args.sig, "classical signature");
  scan->add_option("--omega", scan_args.omega, "omega signature at theta = P/Q");
  scan->add_flag("--gstar", scan_args.gstar, "rejected: not additive");
  scan->add_option("--nmax", scan_args.nmax, "grid extent in n")->required();
  scan->add_option("--mmax", scan_args.mmax, "grid extent in m (default nmax)");
  scan->add_option("--out", scan_args.out, "output basename (default 'scan')");
  scan->add_option("--jobs", scan_args.jobs, "worker threads (default logical cores)");

  FlowArgs flow_args;
  CLI::App* flow = app.add_subcommand("flow", "orbit knots of a field config");
  flow->add_option("--config", flow_args.config, "key = value config file")->required();
  flow->add_option("--out", flow_args.out, "output basename (default config stem)");
  flow->add_option("--jobs", flow_args.jobs, "worker threads (default logical cores)");
  CLI::Option* seed_opt = flow->add_option("--seed", flow_args.seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::string command = join_args(argc, argv);
  try {
    if (inv->parsed()) return cmd_inv(inv_args, command);
    if (scan->parsed()) return cmd_scan(scan_args, command);
    flow_args.seed_set = seed_opt->count() > 0;
    return cmd_flow(flow_args, command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "knotflow: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "knotflow: internal error: " << e.what() << "\n";
    return 1;
  }
}
