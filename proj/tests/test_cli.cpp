#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef KNOTFLOW_BIN
#error "KNOTFLOW_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(KNOTFLOW_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scratch_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/knotflow_cli_XXXXXX";
    char* p = mkdtemp(tmpl);
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("inv reports the trefoil signature") {
  RunResult r = run("inv --family torus 2 3 --sig");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["name"] == "sigma");
  CHECK(j["value"] == -2);
  CHECK(j["nullity"] == 0);
  CHECK(j["ambiguous"] == false);
  CHECK(j["convention"].get<std::string>().find("V+Vt") != std::string::npos);
}

TEST_CASE("inv handles raw braid words") {
  RunResult r = run("inv --braid '1' --strands 2 --sig");
  CHECK(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"] == 0);
}

TEST_CASE("inv omega lands near the torus center") {
  RunResult r = run("inv --family knm 6 6 --omega 1/3");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  int v = j["value"];
  CHECK(std::min(std::abs(v - 16), std::abs(v + 16)) <= 12);
  CHECK(j["theta"] == "1/3");
}

TEST_CASE("inv genus of a torus knot") {
  RunResult r = run("inv --family torus 3 4 --gstar");
  CHECK(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"] == 3);
}

TEST_CASE("inv usage and validation exit codes") {
  CHECK(run("inv --sig").exit_code == 2);                                  // no source
  CHECK(run("inv --family torus 2 3").exit_code == 2);                     // no invariant
  CHECK(run("inv --family torus 2 3 --sig --gstar").exit_code == 2);       // two invariants
  CHECK(run("inv --family nosuch 2 3 --sig").exit_code == 2);              // unknown family
  CHECK(run("inv --braid 'x y' --strands 3 --sig").exit_code == 3);        // parse error
  CHECK(run("inv --braid '5' --strands 2 --sig").exit_code == 3);          // generator range
  CHECK(run("inv --family torus 2 3 --omega 7/3").exit_code == 3);         // theta range
  CHECK(run("bogus-subcommand").exit_code == 2);
  CHECK(run("").exit_code == 2);
}

TEST_CASE("scan rejects the non additive invariant") {
  CHECK(run("scan --gstar --nmax 5").exit_code == 2);
  CHECK(run("scan --nmax 5").exit_code == 2);
}

TEST_CASE("scan writes grid files and a summary") {
  std::string base = scratch_dir() + "/s6";
  RunResult r = run("scan --sig --nmax 6 --jobs 1 --out " + base);
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["invariant"] == "sigma");
  CHECK(j["tauBar"] < 0.0);
  CHECK(slurp(base + ".csv").find("n,m,F,f") == 0);
  CHECK(nlohmann::json::parse(slurp(base + ".json"))["tauBar"] == j["tauBar"]);
  nlohmann::json man = nlohmann::json::parse(slurp(base + ".manifest.json"));
  CHECK(man["version"].get<std::string>().size() > 0);
  CHECK(man["outputs"].size() == 2);
}

TEST_CASE("scan at theta one half reproduces the signature grid") {
  std::string a = scratch_dir() + "/half", b = scratch_dir() + "/sig";
  REQUIRE(run("scan --omega 1/2 --nmax 12 --jobs 1 --out " + a).exit_code == 0);
  REQUIRE(run("scan --sig --nmax 12 --jobs 1 --out " + b).exit_code == 0);
  std::istringstream ia(slurp(a + ".csv")), ib(slurp(b + ".csv"));
  std::string la, lb;
  std::getline(ia, la);
  std::getline(ib, lb);
  int cells = 0;
  while (std::getline(ia, la) && std::getline(ib, lb)) {
    // n,m,F,f agree cell by cell; runtime differs
    std::string ka = la.substr(0, la.find_last_of(','));
    std::string kb = lb.substr(0, lb.find_last_of(','));
    CHECK(ka == kb);
    ++cells;
  }
  CHECK(cells == 144);
}

TEST_CASE("flow runs a config end to end") {
  std::string dir = scratch_dir();
  std::string cfg = dir + "/trefoil.cfg";
  {
    std::ofstream out(cfg);
    out << "field = twist 2 3\nx0 = 2.5 0 0\nTgrid = 6.283185307179586\n"
           "h = 0.005\nthetas = 1/3\nseed = 7\nsvg = true\n";
  }
  RunResult r = run("flow --config " + cfg + " --out " + dir + "/t1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sigma=-2") != std::string::npos);
  std::string csv = slurp(dir + "/t1.csv");
  CHECK(csv.find(",-2,") != std::string::npos);
  CHECK(slurp(dir + "/t1.svg").find("<svg") == 0);

  RunResult r2 = run("flow --config " + cfg + " --out " + dir + "/t2");
  nlohmann::json j1 = nlohmann::json::parse(slurp(dir + "/t1.json"));
  nlohmann::json j2 = nlohmann::json::parse(slurp(dir + "/t2.json"));
  CHECK(j1["manifestHash"] == j2["manifestHash"]);
  for (auto& rec : j1["records"]) rec.erase("runtimeMs");
  for (auto& rec : j2["records"]) rec.erase("runtimeMs");
  CHECK(j1["records"] == j2["records"]);

  // a different seed changes the projection but not the knot type
  RunResult r3 = run("flow --config " + cfg + " --seed 12345 --out " + dir + "/t3");
  CHECK(r3.exit_code == 0);
  nlohmann::json j3 = nlohmann::json::parse(slurp(dir + "/t3.json"));
  CHECK(j3["manifestHash"] != j1["manifestHash"]);
  CHECK(j3["records"][0]["sigma"] == -2);
}

TEST_CASE("flow rejects bad configs and fields") {
  std::string dir = scratch_dir();
  std::string bad = dir + "/bad.cfg";
  {
    std::ofstream out(bad);
    out << "domain = ball 1\nfield = dsl\nfx = x\nfy = y\nfz = z\n"
           "x0 = 0.5 0 0\nTgrid = 1.0\n";
  }
  CHECK(run("flow --config " + bad).exit_code == 3);

  std::string broken = dir + "/broken.cfg";
  {
    std::ofstream out(broken);
    out << "field = twist 2 3\nwhatever = 1\n";
  }
  CHECK(run("flow --config " + broken).exit_code == 3);
  CHECK(run("flow --config " + dir + "/missing.cfg").exit_code == 3);
  CHECK(run("flow").exit_code == 2);
}
