#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <catch_amalgamated.hpp>

#include "commands.hpp"
#include "idp/error.hpp"
#include "idp/io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result idp_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "stdout.txt";
  const std::string cmd = std::string(IDP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<fs::path> field_dumps(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("fields_", 0) == 0) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return std::stod(a.stem().string().substr(7)) < std::stod(b.stem().string().substr(7));
  });
  return out;
}

json without_wall_clock(json j) {
  j["run"].erase("wall_seconds");
  return j;
}

}  // namespace

TEST_CASE("run writes fields, report and resolved config", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_run");
  const Result r = idp_cli("run --problem smooth_wave --eos macaw --cells 100 --dump-every 50 --out " +
                               (dir / "a").string(),
                           dir);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("delta1=") != std::string::npos);

  const auto dumps = field_dumps(dir / "a");
  REQUIRE(dumps.size() >= 3);
  const idp::CsvTable first = idp::read_csv(dumps.front());
  const idp::CsvTable last = idp::read_csv(dumps.back());
  CHECK(first.meta.at("problem") == "smooth_wave");
  CHECK(first.meta.at("eos") == "macaw");
  CHECK(first.meta.at("cells") == "100");
  CHECK(std::stod(first.meta.at("t")) == 0.0);
  CHECK(std::stod(last.meta.at("t")) == 0.2);
  CHECK(last.rows.size() == 100);

  const json report = json::parse(slurp(dir / "a" / "report.json"));
  CHECK(report.at("problem") == "smooth_wave");
  CHECK(report.at("admissibility_final").at("ok") == true);
  CHECK(report.at("local_min").at("steps_failed") == 0);
  CHECK(report.at("run").at("t_end") == 0.2);
  CHECK(report.at("delta1").get<double>() > 0.0);

  const json config = json::parse(slurp(dir / "a" / "config.json"));
  CHECK(config.at("problem").at("name") == "smooth_wave");
  CHECK(config.at("mesh").at("cells").at(0) == 100);

  // Same configuration, same bytes.
  REQUIRE(idp_cli("run --problem smooth_wave --eos macaw --cells 100 --dump-every 50 --out " + (dir / "b").string(),
                  dir)
              .code == 0);
  const auto again = field_dumps(dir / "b");
  REQUIRE(again.size() == dumps.size());
  for (std::size_t k = 0; k < dumps.size(); ++k) CHECK(slurp(dumps[k]) == slurp(again[k]));
  CHECK(without_wall_clock(report) == without_wall_clock(json::parse(slurp(dir / "b" / "report.json"))));

  // The last dump validates, and so does the last step against its predecessor.
  CHECK(idp_cli("validate " + dumps.back().string(), dir).code == 0);
  CHECK(idp_cli("validate " + dumps.back().string() + " --sigma-floor -1", dir).code == 0);
}

TEST_CASE("validate flags a corrupted dump", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_validate");
  REQUIRE(idp_cli("run --problem pull_apart_1d --cells 64 --t-final 0.001 --out " + dir.string(), dir).code == 0);
  const auto dumps = field_dumps(dir);
  REQUIRE(dumps.size() == 2);
  CHECK(idp_cli("validate " + dumps[1].string() + " --before " + dumps[0].string(), dir).code == 0);

  std::string text = slurp(dumps[1]);
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  int data_rows = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 'x' && ++data_rows == 10) {
      // Halve the total energy of one node: far below the cold curve.
      std::vector<std::string> f;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) f.push_back(cell);
      f.back() = idp::format_double(0.5 * std::stod(f.back()) - 100.0);
      line.clear();
      for (std::size_t k = 0; k < f.size(); ++k) line += (k ? "," : "") + f[k];
    }
    os << line << '\n';
  }
  std::ofstream(dir / "bad.csv") << os.str();
  const Result r = idp_cli("validate " + (dir / "bad.csv").string(), dir);
  CHECK(r.code == 3);
  CHECK(r.out.find("\"ok\": false") != std::string::npos);
}

TEST_CASE("entropy runs tabulate the initial isentrope", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_entropy");
  REQUIRE(idp_cli("run --problem entropy_test_admissible --cells 200 --t-final 0.01 --out " + dir.string(), dir).code ==
          0);
  const idp::CsvTable curve = idp::read_csv(dir / "isentrope_curve.csv");
  CHECK(curve.rows.size() > 100);
  CHECK(curve.columns == std::vector<std::string>{"tau", "e"});

  // The published data are inadmissible under the Davis floor.
  const Result r = idp_cli("run --problem entropy_test --cells 200 --out " + (dir / "verbatim").string(), dir);
  CHECK(r.code == 2);
  CHECK(r.out.find("inadmissible") != std::string::npos);
}

TEST_CASE("converge prints one rate per refinement", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_converge");
  const Result r = idp_cli("converge --problem smooth_wave --eos davis --cells 100 --refinements 1 --out " +
                               dir.string(),
                           dir);
  REQUIRE(r.code == 0);
  const idp::CsvTable t = idp::read_csv(dir / "convergence.csv");
  CHECK(t.columns == std::vector<std::string>{"cells", "delta1", "rate"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == 100);
  CHECK(t.rows[1][0] == 200);
  CHECK(std::isnan(t.rows[0][2]));
  CHECK(t.rows[1][2] == Catch::Approx(std::log2(t.rows[0][1] / t.rows[1][1])).epsilon(1e-12));
  CHECK(t.meta.at("eos") == "davis");
}

TEST_CASE("wavespeed probe", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_probe");
  const Result r = idp_cli("wavespeed probe --eos stiffened --eos-params '{\"gamma\": 1.4}' --left 1,0,1 --right 1,0,1",
                           dir);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("lambda_max").get<double>() == Catch::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(j.at("p_hat_star").get<double>() == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(j.at("left").at("p_inf").get<double>() == Catch::Approx(0.4).epsilon(1e-14));
  CHECK(j.contains("p_star_bisect"));

  CHECK(idp_cli("wavespeed probe --left 1,0 --right 1,0,1", dir).code == 2);
  CHECK(idp_cli("wavespeed probe --eos stiffened --left 1,0,-5 --right 1,0,1", dir).code == 4);
}

TEST_CASE("configuration errors exit with code 2", "[cli]") {
  const fs::path dir = idp::test::scratch_dir("cli_errors");
  CHECK(idp_cli("run --cfl 1.5 --out " + dir.string(), dir).code == 2);
  CHECK(idp_cli("run --problem nope --out " + dir.string(), dir).code == 2);
  CHECK(idp_cli("run --cells 1 --out " + dir.string(), dir).code == 2);
  CHECK(idp_cli("run --eos-params '{bad' --out " + dir.string(), dir).code == 2);
  CHECK(idp_cli("run --config /nonexistent.json", dir).code == 2);
  CHECK(idp_cli("frobnicate", dir).code == 2);
  CHECK(idp_cli("--help", dir).code == 0);
  CHECK(idp_cli("validate /nonexistent.csv", dir).code == 2);

  std::ofstream(dir / "cfg.json") << R"({"problem": {"name": "pull_apart_1d"}, "mesh": {"cells": [50]},
                                         "timeloop": {"t_final": 0.001}})";
  const Result r = idp_cli("run --config " + (dir / "cfg.json").string() + " --cells 40 --out " +
                               (dir / "cfg_out").string(),
                           dir);
  REQUIRE(r.code == 0);
  const json echo = json::parse(slurp(dir / "cfg_out" / "config.json"));
  CHECK(echo.at("mesh").at("cells").at(0) == 40);
  CHECK(echo.at("problem").at("name") == "pull_apart_1d");
}

TEST_CASE("exit codes for library exceptions", "[cli]") {
  std::ostringstream err;
  const auto code_for = [&](auto&& thrower) {
    try {
      thrower();
    } catch (...) {
      return idp::cli::exit_code_for_current_exception(err);
    }
    return -1;
  };
  CHECK(code_for([] { throw idp::ConfigError("x"); }) == 2);
  CHECK(code_for([] { throw idp::InvariantViolation("x", 3); }) == 3);
  CHECK(code_for([] { throw idp::TimeStepError("x"); }) == 3);
  CHECK(code_for([] { throw idp::EosError("x", 1.0, 2.0); }) == 4);
  CHECK(code_for([] { throw idp::DomainError("x"); }) == 4);
  CHECK(code_for([] { throw idp::StepLimitError("x"); }) == 1);
  CHECK(code_for([] { throw std::runtime_error("x"); }) == 1);
}
