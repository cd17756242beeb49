#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ovrv/serialization.hpp"

namespace fs = std::filesystem;
using ovrv::Json;

namespace {

const std::string kCli = OVRV_CLI_PATH;
const fs::path kData = OVRV_DATA_DIR;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("ovrv_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const Scratch& s, const std::string& args) {
  const auto out = s.dir / "stdout.txt";
  const auto err = s.dir / "stderr.txt";
  const std::string cmd = kCli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string param(const char* name) { return (kData / "params" / name).string(); }

}  // namespace

TEST_CASE("help exits 0 for every subcommand") {
  Scratch s;
  CHECK(run(s, "--help").code == 0);
  for (const char* sub : {"simulate", "stability", "calibrate", "evaluate", "profile", "ingest", "validate-gps",
                          "synthesize"}) {
    CAPTURE(sub);
    const auto r = run(s, std::string(sub) + " --help");
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(run(s, "").code == 2);
  CHECK(run(s, "frobnicate").code == 2);
}

TEST_CASE("stability report and Bode curve") {
  Scratch s;
  const auto r = run(s, "stability --params " + param("max.json") + " --bode --out " + s.dir.string());
  REQUIRE(r.code == 0);
  const auto j = Json::parse(slurp(s.dir / "stability.json"));
  CHECK(j["lambda2"].get<double>() == doctest::Approx(8.36).epsilon(0.01));
  CHECK(j["rdc"]["pass"] == true);
  const auto bode = slurp(s.dir / "bode.csv");
  CHECK(bode.rfind("omega_rad_s,gain_db\n", 0) == 0);
}

TEST_CASE("stability sweep and bad ranges") {
  Scratch s;
  const auto ok = run(s, "stability --sweep k1=0.1:1 k2=0.1:1 tau_e=0.5,1,2 --resolution 4 --out " + s.dir.string());
  REQUIRE(ok.code == 0);
  const auto csv = slurp(s.dir / "sweep.csv");
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + 3 * 16);
  CHECK(run(s, "stability --sweep k1=1:0.1 k2=0.1:1 tau_e=1").code == 2);
  CHECK(run(s, "stability --sweep k1=abc k2=0.1:1 tau_e=1").code == 2);
  CHECK(run(s, "stability --sweep k1=0.1:1 k2=0.1:1").code == 2);
}

TEST_CASE("simulate writes platoon and trajectory files") {
  Scratch s;
  const auto one = run(s, "simulate --params " + param("min.json") + " --profile F --followers 1 --out " + s.dir.string());
  REQUIRE(one.code == 0);
  CHECK(fs::exists(s.dir / "trajectory.csv"));
  CHECK(fs::exists(s.dir / "platoon.csv"));

  const auto nine = run(s, "simulate --params " + param("fig2.json") +
                               " --tau-e 0.75 --followers 9 --profile step --out " + s.dir.string());
  REQUIRE(nine.code == 0);
  const auto summary = Json::parse(slurp(s.dir / "summary.json"));
  CHECK(summary["amplification"].size() == 9);
  for (const auto& a : summary["amplification"]) CHECK(a.get<double>() > 1.0);
  CHECK(summary["params"]["tau_e"] == 0.75);
}

TEST_CASE("simulate errors") {
  Scratch s;
  const auto missing = run(s, "simulate --params /nonexistent/p.json --profile F");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("/nonexistent/p.json") != std::string::npos);
  CHECK(run(s, "simulate --params " + param("min.json") + " --profile Q").code == 2);
  CHECK(run(s, "simulate --params " + param("min.json")).code == 2);
  CHECK(run(s, "simulate --params " + param("min.json") + " --profile F --integrator heun").code == 2);
}

TEST_CASE("profile subcommand") {
  Scratch s;
  const auto r = run(s, "profile --name I --dt 0.1");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,velocity_mps\n", 0) == 0);
  const auto bad = run(s, "profile --name Z");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("A, B, C, D, E, F, G, H, I") != std::string::npos);

  const auto spec = s.dir / "spec.json";
  REQUIRE(run(s, "profile --name D --out " + (s.dir / "d.csv").string() + " --spec-out " + spec.string()).code == 0);
  REQUIRE(run(s, "profile --spec " + spec.string() + " --out " + (s.dir / "d2.csv").string()).code == 0);
  CHECK(slurp(s.dir / "d.csv") == slurp(s.dir / "d2.csv"));
}

TEST_CASE("calibrate on bundled data is reproducible") {
  Scratch s;
  const auto a = s.dir / "a";
  const auto b = s.dir / "b";
  const std::string base = "calibrate --data " + (kData / "synthetic").string() + " --seed 5 --starts 10 --threads 2 --out ";
  REQUIRE(run(s, base + a.string()).code == 0);
  REQUIRE(run(s, base + b.string()).code == 0);
  CHECK(slurp(a / "calibration.json") == slurp(b / "calibration.json"));
  CHECK(slurp(a / "error_table.csv") == slurp(b / "error_table.csv"));
  const auto j = Json::parse(slurp(a / "calibration.json"));
  CHECK(j["best_params"]["k1"].get<double>() == doctest::Approx(0.08).epsilon(1e-3));
  CHECK(j["best_params"]["eta"].get<double>() == doctest::Approx(8.3).epsilon(1e-3));
  CHECK(j["config"]["n_starts"] == 10);
}

TEST_CASE("calibrate input errors") {
  Scratch s;
  fs::create_directories(s.dir / "empty");
  CHECK(run(s, "calibrate --data " + (s.dir / "empty").string() + " --seed 1").code == 2);
  CHECK(run(s, "calibrate --data " + (kData / "synthetic").string()).code == 2);
  // Default start count.
  CHECK(run(s, "calibrate --help").out.find("default 100") != std::string::npos);
}

TEST_CASE("synthesize, ingest and validate-gps") {
  Scratch s;
  const auto tr = s.dir / "tr.csv";
  REQUIRE(run(s, "synthesize --params " + param("max.json") + " --profile D --out " + tr.string()).code == 0);
  const auto ev = run(s, "evaluate --params " + param("max.json") + " --trajectory " + tr.string() + " --out " + s.dir.string());
  REQUIRE(ev.code == 0);
  CHECK(slurp(s.dir / "error_table.csv").find("tr,,60,") != std::string::npos);

  std::ofstream(s.dir / "lead.csv") << "t_s,lat_deg,lon_deg,vel_mps\n0,36.0002,-86.8,10\n0.5,36.00025,-86.8,10\n1,36.0003,-86.8,10\n";
  std::ofstream(s.dir / "follow.csv") << "t_s,lat_deg,lon_deg,vel_mps\n0,36.0,-86.8,10\n0.5,36.00005,-86.8,10\n1,36.0001,-86.8,10\n";
  const auto out = s.dir / "paired.csv";
  const auto ing = run(s, "ingest --lead " + (s.dir / "lead.csv").string() + " --follow " + (s.dir / "follow.csv").string() +
                              " --lead-length 4.5 --out " + out.string());
  REQUIRE(ing.code == 0);
  CHECK(ing.err.find("warning") != std::string::npos);
  CHECK(slurp(out).rfind("t_s,v_lead_mps,v_follow_mps,space_gap_m\n", 0) == 0);

  const auto val = run(s, "validate-gps --a " + (s.dir / "lead.csv").string() + " --b " +
                              (s.dir / "follow.csv").string() + " --separation 22");
  REQUIRE(val.code == 0);
  // Resampled at the first log's 2 Hz rate.
  CHECK(Json::parse(val.out)["n_samples"] == 3);
}
