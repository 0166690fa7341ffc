#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() /
                 ("qortho_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path scratch(const std::string& name) {
  const fs::path p = scratch_root() / name;
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + QORTHO_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

const char* kM0 = R"({
  "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": 1.0},
  "n_max": 10
})";

const char* kM1 = R"({
  "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": -1.0,
              "rho_roots": [[2.0, 0.0]]},
  "n_max": 12
})";

}  // namespace

TEST_CASE("build writes one record per degree") {
  const fs::path dir = scratch("build_m0");
  write_file(dir / "config.json", kM0);
  const int rc = run_cli("build --config " + (dir / "config.json").string() +
                         " --out " + (dir / "out").string());
  REQUIRE(rc == 0);

  const json rec = read_json(dir / "out" / "records.json");
  CHECK(rec.at("version") == "1.0.0");
  CHECK(rec.at("measure").at("m") == 0);
  CHECK(rec.at("n_max") == 10);
  REQUIRE(rec.at("records").size() == 10);
  const json& first = rec.at("records")[0];
  CHECK(first.at("n") == 1);
  CHECK(first.at("lambda") == doctest::Approx(-2.0));
  CHECK(first.at("zeta")[0] == doctest::Approx(3.5));
  REQUIRE(first.contains("qhat_coeffs"));
  REQUIRE(first.contains("q_coeffs"));
  CHECK(first.at("residuals").at("ode").get<double>() <= 1e-12);
}

TEST_CASE("build is deterministic") {
  const fs::path dir = scratch("build_det");
  write_file(dir / "config.json", kM1);
  REQUIRE(run_cli("build --config " + (dir / "config.json").string() +
                  " --out " + (dir / "a").string()) == 0);
  REQUIRE(run_cli("build --config " + (dir / "config.json").string() +
                  " --out " + (dir / "b").string()) == 0);
  std::ifstream a(dir / "a" / "records.json"), b(dir / "b" / "records.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}

TEST_CASE("config errors exit with status 2") {
  const fs::path dir = scratch("bad_configs");
  CHECK(run_cli("build --config " + (dir / "missing.json").string()) == 2);

  write_file(dir / "malformed.json", "{ not json");
  CHECK(run_cli("build --config " + (dir / "malformed.json").string()) == 2);

  write_file(dir / "bad_measure.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": -1.0,
                "rho_roots": [[0.5, 0.0]]},
    "n_max": 10
  })");
  CHECK(run_cli("build --config " + (dir / "bad_measure.json").string() +
                " --out " + (dir / "out").string()) == 2);

  write_file(dir / "bad_nmax.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": -1.0,
                "rho_roots": [[2.0, 0.0]]},
    "n_max": 1
  })");
  CHECK(run_cli("build --config " + (dir / "bad_nmax.json").string()) == 2);

  CHECK(run_cli("definitely-not-a-command") == 2);
}

TEST_CASE("verify passes cleanly and fails under fault injection") {
  const fs::path dir = scratch("verify_m1");
  write_file(dir / "config.json", kM1);
  const std::string base = "verify --config " +
                           (dir / "config.json").string() + " --out " +
                           (dir / "out").string();
  REQUIRE(run_cli(base) == 0);

  const json rep = read_json(dir / "out" / "verify_report.json");
  CHECK(rep.at("all_pass") == true);
  REQUIRE(rep.at("checks").size() >= 7);
  for (const json& c : rep.at("checks")) {
    if (c.at("applicable") == true) CHECK(c.at("pass") == true);
  }

  CHECK(run_cli(base + " --inject-b-fault 5,1,1e-4") == 1);
  const json bad = read_json(dir / "out" / "verify_report.json");
  CHECK(bad.at("all_pass") == false);
}

TEST_CASE("asymptotics emits the diagnostic table") {
  const fs::path dir = scratch("asym_m0");
  write_file(dir / "config.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": 1.0},
    "n_max": 8,
    "asymptotics": {"z": [[5.0, 0.0]], "n": [4, 8]}
  })");
  REQUIRE(run_cli("asymptotics --config " + (dir / "config.json").string() +
                  " --out " + (dir / "out").string()) == 0);

  const auto lines = read_lines(dir / "out" / "asymptotics.csv");
  REQUIRE(lines.size() >= 5);
  CHECK(lines[0] == "n,quantity,value,target,abs_error");
  int qhat_rows = 0, nth_rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find("qhat_over_p(z=5+0i)") != std::string::npos) ++qhat_rows;
    if (lines[i].find("nth_root(z=5+0i)") != std::string::npos) ++nth_rows;
  }
  CHECK(qhat_rows == 2);
  CHECK(nth_rows == 2);

  // The trivial measure has an exactly unit ratio: abs_error ~ 0.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find("qhat_over_p") == std::string::npos) continue;
    const auto last_comma = lines[i].rfind(',');
    CHECK(std::stod(lines[i].substr(last_comma + 1)) <= 1e-12);
  }

  write_file(dir / "on_cut.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": 1.0},
    "n_max": 8,
    "asymptotics": {"z": [[0.5, 0.0]], "n": [4, 8]}
  })");
  CHECK(run_cli("asymptotics --config " + (dir / "on_cut.json").string() +
                " --out " + (dir / "out2").string()) == 2);
}

TEST_CASE("zeros writes the classification and the reference ellipse") {
  const fs::path dir = scratch("zeros_m1");
  write_file(dir / "config.json", kM1);
  REQUIRE(run_cli("zeros --config " + (dir / "config.json").string() +
                  " --out " + (dir / "out").string() + " --n 12") == 0);

  const auto zl = read_lines(dir / "out" / "zeros_n12.csv");
  REQUIRE(zl.size() == 13);
  CHECK(zl[0] == "re,im,class");
  for (std::size_t i = 1; i < zl.size(); ++i) {
    const bool named = zl[i].find("interval") != std::string::npos ||
                       zl[i].find("ellipse") != std::string::npos ||
                       zl[i].find("stray") != std::string::npos;
    CHECK(named);
  }

  const auto el = read_lines(dir / "out" / "ellipse.csv");
  CHECK(el.size() == 257);
  CHECK(el[0] == "re,im");

  CHECK(run_cli("zeros --config " + (dir / "config.json").string() +
                " --out " + (dir / "out").string() + " --n 99") == 2);
}

TEST_CASE("flow writes the field grid and the report") {
  const fs::path dir = scratch("flow_m1");
  write_file(dir / "config.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": -1.0,
                "rho_roots": [[2.0, 0.0]]},
    "n_max": 8,
    "flow": {"grid": {"re_min": -2.0, "re_max": 2.0, "im_min": -2.0,
                      "im_max": 2.0, "nre": 10, "nim": 10}}
  })");
  REQUIRE(run_cli("flow --config " + (dir / "config.json").string() +
                  " --out " + (dir / "out").string() + " --n 5") == 0);

  const auto lines = read_lines(dir / "out" / "flow_field_n5.csv");
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "re,im,v_re,v_im,v_abs");

  const json rep = read_json(dir / "out" / "flow_n5.json");
  CHECK(rep.at("n") == 5);
  CHECK(rep.at("sources").size() == 4);
  CHECK(rep.at("stagnation").size() == 5);
  CHECK(rep.at("far_field").at("target") == doctest::Approx(6.0));
  CHECK(rep.at("far_field").at("abs_error").get<double>() <= 1e-8);
  CHECK(rep.at("stagnation_check").at("ratio").get<double>() <= 1e-9);
  CHECK(rep.at("cross_check").get<double>() <= 1e-9);
  CHECK(rep.at("numerator_roots").at("unmatched").empty());

  // Flow without --n and without flow.n in the config is a usage error.
  write_file(dir / "no_n.json", kM1);
  CHECK(run_cli("flow --config " + (dir / "no_n.json").string() + " --out " +
                (dir / "out2").string()) == 2);
}

TEST_CASE("flow on other measure degrees needs the exploratory flag") {
  const fs::path dir = scratch("flow_m2");
  write_file(dir / "config.json", R"({
    "measure": {"alpha": 0.0, "beta": 0.0, "rho_lead": -1.0,
                "rho_roots": [[2.0, 0.0], [-2.0, 0.0]]},
    "n_max": 8,
    "flow": {"n": 6}
  })");
  const std::string base = "flow --config " + (dir / "config.json").string() +
                           " --out " + (dir / "out").string();
  CHECK(run_cli(base) == 2);
  CHECK(run_cli(base + " --exploratory") == 0);
}
