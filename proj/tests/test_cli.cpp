// Drives the installed CLI binary (path in GAPFIELD_BIN) through temp files:
// exit-status contract, output schemas, determinism, fault injection.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string bin_path() {
  const char* p = std::getenv("GAPFIELD_BIN");
  return p ? p : "";
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string out_path = "cli_test_out_" + std::to_string(counter++) + ".tmp";
  const std::string cmd = env_prefix + bin_path() + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("constants: JSON value and csv shape") {
  if (bin_path().empty()) {
    MESSAGE("GAPFIELD_BIN not set; skipping CLI tests");
    return;
  }
  const auto r = run("constants --r1 1 --r2 1 --eps 1e-4");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["Q1"]["closed"].get<double>() - 0.6931471805599453) < 1e-12);
  CHECK(std::fabs(j["Q2"]["closed"].get<double>() - 0.6931471805599453) < 1e-12);
  CHECK(j["M"]["series"].get<double>() > 0.0);

  const auto csv = run("constants --r1 1 --r2 1 --eps 1e-4 --format csv");
  REQUIRE(csv.exit_code == 0);
  int lines = 0;
  for (char c : csv.out) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 2);  // single header + single data row
  CHECK(csv.out.substr(0, 3) == "r1,");
}

TEST_CASE("constants --dump-images serializes the image systems") {
  if (bin_path().empty()) return;
  const auto r = run("constants --r1 1 --r2 0.5 --eps 1e-3 --dump-images");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& fam1 = j["images"]["family1"];
  CHECK(fam1["charges"][0].get<double>() == 1.0);
  CHECK(fam1["points"].size() == fam1["charges"].size());
  CHECK(fam1["points"][0].get<double>() == 1.001);
  CHECK(j["images"]["family2"]["points"][0].get<double>() == -0.501);
  CHECK(run("constants --dump-images --format csv").exit_code == 2);
}

TEST_CASE("exit codes: config errors are 2") {
  if (bin_path().empty()) return;
  CHECK(run("constants --r1 -1 --r2 1 --eps 1e-4").exit_code == 2);
  CHECK(run("constants --eps 0.5").exit_code == 2);                      // gap too wide
  CHECK(run("constants --harmonic 'x1^^2'").exit_code == 2);             // parse diagnostic
  CHECK(run("constants --harmonic 'x1^2'").exit_code == 2);              // fails harmonic check
  CHECK(run("field --emit bogus").exit_code == 2);
  CHECK(run("constants --format yaml").exit_code == 2);
  CHECK(run("bogus-subcommand").exit_code == 2);
}

TEST_CASE("determinism: field and blowup-curve are byte-identical across runs") {
  if (bin_path().empty()) return;
  const auto a = run("field --r1 1 --r2 0.5 --eps 1e-3 --n 9");
  const auto b = run("field --r1 1 --r2 0.5 --eps 1e-3 --n 9");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.substr(0, a.out.find('\n')) ==
        "x1,x2,x3,rho,main_x1,main_x2,main_x3,sing_x1,sing_x2,sing_x3,region_ok");

  const auto c = run("blowup-curve --samples 12");
  const auto d = run("blowup-curve --samples 12");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);

  // threading must not affect bytes
  const auto serial = run("field --r1 1 --r2 0.5 --eps 1e-3 --n 9", "GAPFIELD_THREADS=1 ");
  CHECK(serial.out == a.out);
}

TEST_CASE("field --emit h schema") {
  if (bin_path().empty()) return;
  const auto r = run("field --emit h --n 3 --span 0.02");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "x1,x2,x3,h,gx1,gx2,gx3,rho");
  int lines = 0;
  for (char c : r.out) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 10);  // header + 9 rows
}

TEST_CASE("blowup-curve: closed column and monotone increasing psi") {
  if (bin_path().empty()) return;
  const auto r = run("blowup-curve --samples 25 --harmonic x1");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);  // comment
  CHECK(line.substr(0, 1) == "#");
  std::getline(is, line);
  CHECK(line == "r,psi_series,psi_closed");
  double prev = 0.0;
  int rows = 0;
  while (std::getline(is, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    const double psi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double closed = std::stod(line.substr(c2 + 1));
    CHECK(psi > prev);
    CHECK(std::fabs(psi - closed) <= 1e-8 * closed);
    prev = psi;
    ++rows;
  }
  CHECK(rows == 25);

  // transverse background: all-zero psi column, empty closed column
  const auto z = run("blowup-curve --samples 5 --harmonic x2");
  REQUIRE(z.exit_code == 0);
  std::istringstream zs(z.out);
  std::getline(zs, line);
  std::getline(zs, line);
  while (std::getline(zs, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(line.substr(c1 + 1, c2 - c1 - 1) == "0");
    CHECK(line.substr(c2 + 1).empty());
  }
}

TEST_CASE("figures: two monotone positive datasets") {
  if (bin_path().empty()) return;
  const auto r = run("figures --prefix cli_test_");
  REQUIRE(r.exit_code == 0);
  for (int fig = 1; fig <= 2; ++fig) {
    const std::string path = "cli_test_figure" + std::to_string(fig) + ".csv";
    std::istringstream is(slurp(path));
    std::string line;
    std::getline(is, line);
    CHECK(line.substr(0, 5) == "# H =");
    std::getline(is, line);
    CHECK(line == "r,psi");
    double prev = 0.0;
    int rows = 0;
    while (std::getline(is, line)) {
      const double psi = std::stod(line.substr(line.find(',') + 1));
      CHECK(psi > 0.0);
      CHECK(psi > prev);
      prev = psi;
      ++rows;
    }
    CHECK(rows == 100);
    std::remove(path.c_str());
  }
}

TEST_CASE("config file precedence: flags beat file, file beats defaults") {
  if (bin_path().empty()) return;
  {
    std::ofstream cfg("cli_test_cfg.json");
    cfg << R"({"r1": 2.0, "r2": 2.0, "eps": 1e-3, "format": "csv"})";
  }
  const auto file_only = run("constants --config cli_test_cfg.json");
  REQUIRE(file_only.exit_code == 0);
  CHECK(file_only.out.substr(0, 3) == "r1,");  // format from file
  CHECK(file_only.out.find("\n2,2,") != std::string::npos);

  const auto overridden = run("constants --config cli_test_cfg.json --r1 1 --r2 1 --format json");
  REQUIRE(overridden.exit_code == 0);
  const auto j = nlohmann::json::parse(overridden.out);
  CHECK(j["r1"].get<double>() == 1.0);
  CHECK(j["eps"].get<double>() == 1e-3);  // still from file
  std::remove("cli_test_cfg.json");
}

TEST_CASE("numeric non-convergence reports exit 4") {
  if (bin_path().empty()) return;
  // a 64-term budget cannot reach the 1e-12 charge tail at this gap
  const auto r = run("constants --r1 1 --r2 1 --eps 1e-3 --max-terms 64");
  CHECK(r.exit_code == 4);
}

TEST_CASE("validate emits parseable JSON") {
  if (bin_path().empty()) return;
  const auto r = run("validate --quick --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_array());
  CHECK(j.size() > 20);
  bool found = false;
  for (const auto& item : j) {
    if (item["name"] == "constants.m_decompositions") {
      found = true;
      CHECK(item["pass"].get<bool>());
    }
  }
  CHECK(found);
}

TEST_CASE("validate --quick passes; --perturb-q trips the M decomposition check") {
  if (bin_path().empty()) return;
  const auto ok = run("validate --quick --format csv");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS constants.m_decompositions") != std::string::npos);

  const auto bad = run("validate --quick --format csv --perturb-q 1e-3");
  CHECK(bad.exit_code == 3);
  CHECK(bad.out.find("FAIL constants.m_decompositions") != std::string::npos);
  CHECK(bad.out.find("decomposition mismatch detected") != std::string::npos);
}

TEST_SUITE_END();
