#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "idp/error.hpp"

namespace {

using idp::RunConfig;

struct Overrides {
  std::string config;
  std::string problem;
  std::string variant;
  std::string eos;
  std::string eos_params;
  std::vector<std::size_t> cells;
  std::optional<double> cfl;
  std::optional<double> t_final;
  std::string out;
  std::optional<std::size_t> dump_every;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string boundary;
};

void add_run_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--problem", o.problem, "problem name");
  app->add_option("--variant", o.variant, "verbatim | corrected (pull_apart_2d)");
  app->add_option("--eos", o.eos, "macaw | davis | stiffened");
  app->add_option("--eos-params", o.eos_params, "EOS parameters as a JSON object");
  app->add_option("--cells", o.cells, "cells per dimension")->expected(1, 2);
  app->add_option("--cfl", o.cfl, "CFL number in (0, 1]");
  app->add_option("--t-final", o.t_final, "final time [us]");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--dump-every", o.dump_every, "steps between field dumps");
  app->add_option("--mode", o.mode, "enforce | report");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--boundary", o.boundary, "dirichlet | slip | do_nothing | periodic");
}

RunConfig resolve(const Overrides& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config.empty()) j = idp::to_json(idp::load_config(o.config));
  if (!o.problem.empty()) j["problem"]["name"] = o.problem;
  if (!o.variant.empty()) j["problem"]["variant"] = o.variant;
  if (!o.eos.empty()) {
    if (j.contains("eos") && j["eos"].value("law", "") != o.eos) j["eos"]["params"] = nlohmann::json::object();
    j["eos"]["law"] = o.eos;
  }
  if (!o.eos_params.empty()) {
    try {
      j["eos"]["params"] = nlohmann::json::parse(o.eos_params);
    } catch (const nlohmann::json::parse_error& e) {
      throw idp::ConfigError(std::string("--eos-params: ") + e.what());
    }
  }
  if (!o.cells.empty()) j["mesh"]["cells"] = o.cells;
  if (o.cfl) j["timeloop"]["cfl"] = *o.cfl;
  if (o.t_final) j["timeloop"]["t_final"] = *o.t_final;
  if (!o.boundary.empty()) j["timeloop"]["boundary"] = o.boundary;
  if (!o.out.empty()) j["output"]["dir"] = o.out;
  if (o.dump_every) j["output"]["dump_every"] = *o.dump_every;
  if (!o.mode.empty()) j["validate"]["mode"] = o.mode;
  if (o.seed) j["seed"] = *o.seed;
  return idp::config_from_json(j);
}

idp::Primitive primitive_from(const std::vector<double>& v, const char* flag) {
  if (v.size() == 3) return {v[0], {v[1], 0.0}, v[2]};
  if (v.size() == 4) return {v[0], {v[1], v[2]}, v[3]};
  throw idp::ConfigError(std::string(flag) + ": expected rho,vx,p or rho,vx,vy,p");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-domain-preserving Euler solver"};
  app.require_subcommand(1);

  Overrides run_o;
  CLI::App* run = app.add_subcommand("run", "run a problem to its final time");
  add_run_flags(run, run_o);

  Overrides conv_o;
  int refinements = 6;
  CLI::App* conv = app.add_subcommand("converge", "uniform refinement study");
  add_run_flags(conv, conv_o);
  conv->add_option("--refinements", refinements, "number of mesh doublings");

  CLI::App* wave = app.add_subcommand("wavespeed", "wave speed tools");
  wave->require_subcommand(1);
  CLI::App* probe = wave->add_subcommand("probe", "upper bound on the max wave speed for one Riemann problem");
  std::string probe_eos = "macaw";
  std::string probe_params;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> normal{1.0, 0.0};
  probe->add_option("--eos", probe_eos, "macaw | davis | stiffened");
  probe->add_option("--eos-params", probe_params, "EOS parameters as a JSON object");
  probe->add_option("--left", left, "rho,vx[,vy],p")->required()->delimiter(',');
  probe->add_option("--right", right, "rho,vx[,vy],p")->required()->delimiter(',');
  probe->add_option("--normal", normal, "nx,ny")->delimiter(',')->expected(2);

  Overrides val_o;
  std::string field;
  std::string before;
  std::optional<double> sigma_floor;
  CLI::App* val = app.add_subcommand("validate", "check a field dump");
  add_run_flags(val, val_o);
  val->add_option("field", field, "field CSV")->required();
  val->add_option("--before", before, "previous field CSV; enables the local minimum check");
  val->add_option("--sigma-floor", sigma_floor, "global lower bound on sigma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? idp::cli::kOk : idp::cli::kConfigError;
  }

  try {
    if (*run) return idp::cli::run(resolve(run_o), std::cout);
    if (*conv) return idp::cli::converge(resolve(conv_o), refinements, std::cout);
    if (*probe) {
      idp::cli::ProbeInput in;
      in.eos_law = probe_eos;
      if (!probe_params.empty()) {
        try {
          in.eos_params = nlohmann::json::parse(probe_params);
        } catch (const nlohmann::json::parse_error& e) {
          throw idp::ConfigError(std::string("--eos-params: ") + e.what());
        }
      }
      in.left = primitive_from(left, "--left");
      in.right = primitive_from(right, "--right");
      in.normal = {normal[0], normal[1]};
      return idp::cli::wavespeed_probe(in, std::cout);
    }
    if (*val) {
      idp::cli::ValidateInput in;
      in.config = resolve(val_o);
      in.field = field;
      if (!before.empty()) in.before = before;
      in.sigma_floor = sigma_floor;
      return idp::cli::validate_field(in, std::cout);
    }
  } catch (...) {
    return idp::cli::exit_code_for_current_exception(std::cerr);
  }
  return idp::cli::kFailure;
}
