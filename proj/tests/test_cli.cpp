// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_binary;
int g_counter = 0;

struct RunResult {
  int exit_code = -1;
  fs::path dir;
};

fs::path fresh_dir() {
  fs::path d = fs::temp_directory_path() /
               ("bergmap_cli_" + std::to_string(++g_counter));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

RunResult run(const std::string& args, const std::string& domain_json) {
  RunResult r;
  r.dir = fresh_dir();
  write_file(r.dir / "domain.json", domain_json);
  std::string cmd = g_binary + " " + args + " --domain " +
                    (r.dir / "domain.json").string() + " --out " +
                    (r.dir / "out").string() + " > " +
                    (r.dir / "stdout.txt").string() + " 2> " +
                    (r.dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV rows keyed by the first two columns (the grid point)
std::map<std::string, std::vector<double>> csv_rows(const fs::path& p) {
  std::map<std::string, std::vector<double>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || !std::isdigit(line[0]) ? true : false) {
      if (line.empty() || line[0] == '#') continue;
      if (!(std::isdigit(line[0]) || line[0] == '-')) continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    std::vector<std::string> raw;
    while (std::getline(ss, cell, ',')) {
      raw.push_back(cell);
      try {
        vals.push_back(std::stod(cell));
      } catch (...) {
        vals.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    if (raw.size() >= 2) rows[raw[0] + "," + raw[1]] = vals;
  }
  return rows;
}

}  // namespace

TEST_CASE("kernel command: disc field values at the origin") {
  RunResult r = run("kernel --anchor 0,0 --degree 40 --spacing 0.5 --margin 0.05",
                    R"({"type":"disc","radius":1.0})");
  REQUIRE(r.exit_code == 0);
  auto rows = csv_rows(r.dir / "out" / "kernel.csv");
  REQUIRE(rows.count("0,0") == 1);
  const auto& row = rows["0,0"];
  // re_z, im_z, re_K_zp, im_K_zp, K_zz, g, kappa
  CHECK(std::abs(row[2] - 0.3183099) < 1e-6);
  CHECK(std::abs(row[5] - 2.0) < 1e-6);
  CHECK(std::abs(row[6] + 2.0) < 1e-6);
  json meta = json::parse(slurp(r.dir / "out" / "meta.json"));
  CHECK(meta["basis"]["N"] == 40);
  CHECK(meta["accuracy_probes"]["orthonormality_residual_doubled_panels"]
            .get<double>() < 1e-8);
  CHECK(meta.contains("config_hash"));
}

TEST_CASE("kernel command: analytic ball mode") {
  RunResult r = run("kernel", R"({"type":"ball","n":2})");
  REQUIRE(r.exit_code == 0);
  json meta = json::parse(slurp(r.dir / "out" / "meta.json"));
  CHECK(meta["mode"] == "analytic-ball");
  CHECK(std::abs(meta["K_at_origin"].get<double>() - 0.2026424) < 1e-7);
}

TEST_CASE("kernel command: ppm heatmap with recorded normalization") {
  RunResult r = run("kernel --spacing 0.1 --margin 0.05 --ppm g",
                    R"({"type":"disc","radius":1.0})");
  REQUIRE(r.exit_code == 0);
  std::string ppm = slurp(r.dir / "out" / "kernel.ppm");
  CHECK(ppm.substr(0, 2) == "P5");
  json meta = json::parse(slurp(r.dir / "out" / "meta.json"));
  CHECK(meta["ppm"]["field"] == "g");
  CHECK(meta["ppm"]["normalization_min"].get<double>() >= 2.0 - 1e-6);
}

TEST_CASE("parse errors exit with code 2 and name the missing field") {
  RunResult r = run("kernel", R"({"type":"disc"})");
  CHECK(r.exit_code == 2);
  std::string err = slurp(r.dir / "stderr.txt");
  CHECK(err.find("radius") != std::string::npos);

  RunResult r2 = run("check --checks foo", R"({"type":"disc","radius":1.0})");
  CHECK(r2.exit_code == 2);
  CHECK(slurp(r2.dir / "stderr.txt").find("foo") != std::string::npos);

  RunResult r3 = run("kernel", R"({"type":"heptagon"})");
  CHECK(r3.exit_code == 2);
}

TEST_CASE("map command: image radius and the slit-disc equivalence") {
  RunResult disc = run("map --anchor 0.5,0 --spacing 0.2 --margin 0.1",
                       R"({"type":"disc","radius":1.0})");
  REQUIRE(disc.exit_code == 0);
  json meta = json::parse(slurp(disc.dir / "out" / "map_meta.json"));
  CHECK(std::abs(meta["image_radius"].get<double>() - 0.75) < 1e-9);
  CHECK(meta["constant_curvature"] == true);
  CHECK(meta["inverse_check_max_residual"].get<double>() < 1e-9);

  RunResult slit = run("map --anchor -0.5,0 --spacing 0.2 --margin 0.1",
                       R"({"type":"slit_disc","slit_from":0.0,"slit_to":1.0})");
  REQUIRE(slit.exit_code == 0);
  RunResult disc2 = run("map --anchor -0.5,0 --spacing 0.2 --margin 0.1",
                        R"({"type":"disc","radius":1.0})");
  auto slit_rows = csv_rows(slit.dir / "out" / "map.csv");
  auto disc_rows = csv_rows(disc2.dir / "out" / "map.csv");
  int compared = 0;
  for (const auto& [key, svals] : slit_rows) {
    auto it = disc_rows.find(key);
    if (it == disc_rows.end()) continue;
    ++compared;
    for (size_t c = 2; c < 8; ++c)
      CHECK(std::abs(svals[c] - it->second[c]) <= 1e-9);
  }
  CHECK(compared >= 20);
}

TEST_CASE("map command: annulus carries no constant-curvature contract") {
  RunResult r = run("map --anchor 0.75,0 --spacing 0.1 --margin 0.05",
                    R"({"type":"annulus","r":0.5,"R":1.0})");
  REQUIRE(r.exit_code == 0);
  json meta = json::parse(slurp(r.dir / "out" / "map_meta.json"));
  CHECK(meta["constant_curvature"] == false);
  CHECK(meta["capacity"].is_null());
}

TEST_CASE("check command: disc all-checks run is expected and deterministic") {
  std::string spec = R"({"type":"disc","radius":1.0})";
  RunResult a = run("check --anchor 0,0", spec);
  CHECK(a.exit_code == 0);
  json summary = json::parse(slurp(a.dir / "out" / "summary.json"));
  CHECK(summary["reports"].size() == 9);
  CHECK(summary["all_expected"] == true);

  RunResult b = run("check --anchor 0,0", spec);
  CHECK(b.exit_code == 0);
  // byte-identical outputs across consecutive runs
  for (const auto& entry : fs::directory_iterator(a.dir / "out")) {
    fs::path other = b.dir / "out" / entry.path().filename();
    CAPTURE(entry.path().filename().string());
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}

TEST_CASE("check command: sector divergence is expected-by-theory") {
  RunResult r = run(
      "check --anchor -0.5,0 --checks condition_b,kernel_infimum,curvature",
      R"({"type":"sector_complement","r_max":1.0,"theta_min":1.5707963267948966,"theta_max":6.283185307179586})");
  CHECK(r.exit_code == 0);
  json cb = json::parse(slurp(r.dir / "out" / "check_condition_b.json"));
  CHECK(cb["verdict"] == "trend");
  CHECK(cb["expected"] == true);
  CHECK(cb["stats"]["last_over_first"].get<double>() >= 2.0);
  CHECK(fs::exists(r.dir / "out" / "check_condition_b_ladder.csv"));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-bergmap-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  doctest::Context ctx(argc - 1, argv + 1);
  return ctx.run();
}

