#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "idp/config.hpp"
#include "idp/error.hpp"
#include "idp/io.hpp"
#include "idp/problems.hpp"
#include "test_support.hpp"

using namespace idp;
using Catch::Approx;
using idp::test::Rng;

TEST_CASE("doubles survive text formatting", "[io]") {
  Rng rng(71);
  for (int k = 0; k < 10000; ++k) {
    const double x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-300.0, 300.0));
    const double y = std::strtod(format_double(x).c_str(), nullptr);
    REQUIRE(std::memcmp(&x, &y, sizeof x) == 0);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("field CSV round trip is bitwise", "[io]") {
  Rng rng(72);
  const auto eos = EosModel::macaw();
  for (int dim : {1, 2}) {
    const Mesh mesh = dim == 1 ? Mesh::interval(0.0, 1.0, 37) : Mesh::rectangle({0.0, 0.0}, {2.0, 1.0}, 7, 5);
    const auto u = test::random_field(eos, rng, mesh.num_nodes(), dim == 2);
    const CsvMeta meta{"pull_apart_1d", "macaw", 0.012345678901234567, dim, mesh.cells()};
    std::stringstream ss;
    write_field_csv(ss, meta, mesh, eos, u);
    const CsvTable t = read_csv(ss);

    CHECK(t.meta.at("problem") == "pull_apart_1d");
    CHECK(t.meta.at("eos") == "macaw");
    CHECK(std::strtod(t.meta.at("t").c_str(), nullptr) == meta.t);
    CHECK(t.meta.at("cells") == (dim == 1 ? "37" : "7x5"));
    CHECK(t.columns == field_columns(dim));
    REQUIRE(t.rows.size() == mesh.num_nodes());

    const auto back = conserved_from_csv(t);
    REQUIRE(back.size() == u.size());
    CHECK(std::memcmp(back.data(), u.data(), u.size() * sizeof(ConservedState)) == 0);

    for (std::size_t i = 0; i < u.size(); ++i) {
      const double e = specific_internal_energy(u[i]);
      const ThermoPoint pt{1.0 / u[i].rho, e};
      CHECK(t.rows[i][t.column("x")] == mesh.coordinates()[i][0]);
      CHECK(t.rows[i][t.column("rho")] == u[i].rho);
      CHECK(t.rows[i][t.column("p")] == eos.pressure(pt));
      CHECK(t.rows[i][t.column("e")] == e);
      CHECK(t.rows[i][t.column("sigma")] == eos.entropy_like(pt));
    }
  }
  CHECK(field_columns(1) == std::vector<std::string>{"x", "rho", "v", "p", "e", "sigma", "m", "E"});
  CHECK(field_columns(2) ==
        std::vector<std::string>{"x", "y", "rho", "v", "vy", "p", "e", "sigma", "m", "my", "E"});
}

TEST_CASE("malformed CSV input is rejected", "[io]") {
  std::stringstream ss("# problem=x\na,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ss), ConfigError);
  CHECK_THROWS_AS(read_csv(std::filesystem::path("/nonexistent/file.csv")), ConfigError);
  std::stringstream ok("a,b\n1,2\n");
  const CsvTable t = read_csv(ok);
  CHECK_THROWS_AS(t.column("c"), ConfigError);
}

TEST_CASE("isentrope curve file", "[io]") {
  const auto dir = test::scratch_dir("isentrope");
  const auto eos = EosModel::davis();
  const double s = eos.entropy_like({0.6, 1.0});
  write_isentrope_csv(dir / "curve.csv", eos, s, 0.2, 2.0, 50);
  const CsvTable t = read_csv(dir / "curve.csv");
  REQUIRE(t.rows.size() == 50);
  const std::size_t tau = t.column("tau");
  const std::size_t e = t.column("e");
  CHECK(t.rows.front()[tau] == Approx(0.2).epsilon(1e-14));
  CHECK(t.rows.back()[tau] == Approx(2.0).epsilon(1e-14));
  for (const auto& r : t.rows) CHECK(eos.entropy_like({r[tau], r[e]}) == Approx(s).epsilon(1e-12));
}

TEST_CASE("report serialization", "[io]") {
  RunReport r;
  r.steps = 7;
  r.t_end = 0.5;
  r.sigma_trace = {{0, 0.0, 1.0}, {7, 0.5, 1.5}};
  r.initial.mass = 2.0;
  const nlohmann::json j = to_json(r);
  CHECK(j.at("steps") == 7);
  CHECK(j.at("t_end") == 0.5);
  CHECK(j.at("sigma_trace").size() == 2);
  CHECK(j.at("totals_initial").at("mass") == 2.0);

  AdmissibilityReport a;
  a.ok = false;
  a.worst_node = 4;
  const nlohmann::json ja = to_json(a);
  CHECK(ja.at("ok") == false);
  CHECK(ja.at("worst_node") == 4);
  CHECK(to_json(LocalMinReport{}).at("ok") == true);
}

TEST_CASE("configuration defaults and overrides", "[config]") {
  const RunConfig d = config_from_json(nlohmann::json::object());
  CHECK(d.problem == "smooth_wave");
  CHECK(d.cfl == 0.9);
  CHECK(d.enforcement == Enforcement::enforce);
  CHECK_FALSE(d.t_final.has_value());

  const auto j = nlohmann::json::parse(R"({
    "problem": {"name": "pull_apart_1d"},
    "eos": {"law": "macaw", "params": {"gamma0": 0.6}},
    "mesh": {"cells": [250]},
    "timeloop": {"cfl": 0.5, "t_final": 0.01, "boundary": "slip"},
    "output": {"dir": "somewhere", "dump_every": 10},
    "validate": {"mode": "report"},
    "seed": 99
  })");
  const RunConfig c = config_from_json(j);
  CHECK(c.problem == "pull_apart_1d");
  CHECK(c.cells[0] == 250);
  CHECK(c.cfl == 0.5);
  CHECK(*c.t_final == 0.01);
  CHECK(c.boundary == "slip");
  CHECK(c.output_dir == "somewhere");
  CHECK(c.dump_every == 10);
  CHECK(c.enforcement == Enforcement::report);
  CHECK(c.seed == 99);
  const auto eos = build_eos(c);
  REQUIRE(eos.has_value());
  CHECK(eos->get_if<SimpleMacaw>()->params().gamma0 == 0.6);
  const ProblemSpec spec = build_problem(c);
  CHECK(spec.bc == BoundaryKind::slip);
  CHECK(spec.t_final == 0.01);
  CHECK(resolved_cells(c, spec)[0] == 250);

  const RunConfig again = config_from_json(to_json(c));
  CHECK(to_json(again) == to_json(c));
}

TEST_CASE("configuration errors", "[config]") {
  const auto bad = [](const char* text) { return config_from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"timeloop": {"cfl": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"timeloop": {"cfl": 0.0}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"mesh": {"cells": [1]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"timeloop": {"speed": 1}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"validate": {"mode": "loud"}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"timeloop": {"cfl": "fast"}})"), ConfigError);
  CHECK_THROWS_AS(build_eos(bad(R"({"eos": {"law": "ideal"}})")), ConfigError);
  CHECK_THROWS_AS(build_eos(bad(R"({"eos": {"law": "macaw", "params": {"tau9": 1}}})")), ConfigError);
  CHECK_THROWS_AS(build_problem(bad(R"({"problem": {"name": "nope"}})")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);

  const auto dir = test::scratch_dir("config");
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);
}
