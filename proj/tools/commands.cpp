#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "idp/error.hpp"
#include "idp/io.hpp"
#include "idp/problems.hpp"
#include "idp/timeloop.hpp"
#include "idp/validate.hpp"
#include "idp/wavespeed.hpp"

namespace idp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation (node " << e.node() << ", stage " << e.stage() << "): " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const TimeStepError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const EosError& e) {
    err << "eos error: " << e.what() << '\n';
    return kEosError;
  } catch (const DomainError& e) {
    err << "eos error: " << e.what() << '\n';
    return kEosError;
  } catch (const BoundUnavailableError& e) {
    err << "eos error: " << e.what() << '\n';
    return kEosError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

namespace {

std::string time_tag(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}

CsvMeta meta_for(const ProblemSpec& spec, const Mesh& mesh, double t) {
  return {spec.name, std::string(spec.eos.name()), t, spec.dimension, mesh.cells()};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

struct LocalMinTally {
  std::size_t steps_checked = 0;
  std::size_t steps_failed = 0;
  double min_margin = std::numeric_limits<double>::infinity();
};

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = build_problem(config);
  const auto cells = resolved_cells(config, spec);
  const Mesh mesh = make_mesh(spec, cells);
  const FieldState init = initial_field(spec, mesh);
  const BoundaryCondition bc = make_bc(spec, mesh, init.u);

  ensure_dir(config.output_dir);
  json echo = to_json(config);
  echo["problem"]["name"] = spec.name;
  echo["eos"]["law"] = std::string(spec.eos.name());
  echo["mesh"]["cells"] = spec.dimension == 2 ? json{cells[0], cells[1]} : json{cells[0]};
  echo["timeloop"]["t_final"] = spec.t_final;
  echo["timeloop"]["boundary"] = std::string(to_string(spec.bc));
  write_json(config.output_dir / "config.json", echo);

  const auto dump = [&](const FieldState& f) {
    write_field_csv(config.output_dir / ("fields_" + time_tag(f.t) + ".csv"), meta_for(spec, mesh, f.t), mesh, spec.eos,
                    f.u);
  };
  dump(init);

  if (spec.isentrope_sigma) {
    double tau_lo = std::numeric_limits<double>::infinity();
    double tau_hi = 0.0;
    for (const auto& u : init.u) {
      tau_lo = std::min(tau_lo, 1.0 / u.rho);
      tau_hi = std::max(tau_hi, 1.0 / u.rho);
    }
    write_isentrope_csv(config.output_dir / "isentrope_curve.csv", spec.eos, *spec.isentrope_sigma, 0.5 * tau_lo,
                        2.0 * tau_hi, 400);
  }

  RunOptions opts;
  opts.cfl = config.cfl;
  opts.max_steps = config.max_steps;
  opts.entropy_every = config.entropy_every;
  LocalMinTally tally;
  opts.observers.push_back([&](const StepInfo& info, const FieldState& before, const FieldState& after) {
    const LocalMinReport r = check_local_min_principle(spec.eos, before.u, after.u, mesh, &bc, 3);
    ++tally.steps_checked;
    tally.min_margin = std::min(tally.min_margin, r.min_margin);
    if (!r.ok) {
      ++tally.steps_failed;
      if (config.enforcement == Enforcement::enforce) {
        throw InvariantViolation("local minimum entropy principle violated at step " + std::to_string(info.step),
                                 r.worst_node);
      }
    }
    if (config.dump_every > 0 && info.step % config.dump_every == 0 && after.t < spec.t_final) dump(after);
  });

  json report;
  report["problem"] = spec.name;
  report["eos"] = std::string(spec.eos.name());
  report["cells"] = spec.dimension == 2 ? json{cells[0], cells[1]} : json{cells[0]};
  report["admissibility_initial"] = to_json(check_admissible(spec.eos, init.u));

  RunResult res;
  try {
    res = run_to_time(spec.eos, init, mesh, bc, spec.t_final, opts);
  } catch (...) {
    report["error"] = "run aborted";
    report["local_min"] = {{"steps_checked", tally.steps_checked}, {"steps_failed", tally.steps_failed}};
    write_json(config.output_dir / "report.json", report);
    throw;
  }
  dump(res.field);

  const std::optional<double> floor =
      spec.isentrope_sigma ? spec.isentrope_sigma : std::optional<double>(std::nullopt);
  const AdmissibilityReport adm = check_admissible(spec.eos, res.field.u, floor);
  report["run"] = to_json(res.report);
  report["admissibility_final"] = to_json(adm);
  report["local_min"] = {{"steps_checked", tally.steps_checked},
                         {"steps_failed", tally.steps_failed},
                         {"min_margin", tally.min_margin}};
  out << spec.name << " eos=" << spec.eos.name() << " cells=" << cells[0];
  if (spec.dimension == 2) out << 'x' << cells[1];
  out << " steps=" << res.report.steps << " t=" << format_double(res.field.t);
  if (spec.exact) {
    const double d1 = delta1(mesh, res.field.u, exact_field(spec, mesh, res.field.t));
    report["delta1"] = d1;
    out << " delta1=" << format_double(d1);
  }
  out << '\n';
  write_json(config.output_dir / "report.json", report);

  if (!adm.ok || (tally.steps_failed > 0 && config.enforcement == Enforcement::enforce)) return kInvariantViolation;
  return kOk;
}

int converge(const RunConfig& config, int refinements, std::ostream& out) {
  if (refinements < 1) throw ConfigError("converge: need at least one refinement");
  const ProblemSpec spec = build_problem(config);
  if (!spec.exact) throw ConfigError("converge: problem '" + spec.name + "' has no exact solution");
  if (spec.dimension != 1) throw ConfigError("converge: 1D problems only");
  std::size_t cells = resolved_cells(config, spec)[0];

  ensure_dir(config.output_dir);
  std::ofstream csv(config.output_dir / "convergence.csv");
  if (!csv) throw ConfigError("cannot write convergence.csv");
  csv << "# problem=" << spec.name << "\n# eos=" << spec.eos.name() << "\ncells,delta1,rate\n";

  RunOptions opts;
  opts.cfl = config.cfl;
  opts.max_steps = config.max_steps;
  opts.entropy_every = 0;

  out << std::setw(10) << "cells" << std::setw(16) << "delta1" << std::setw(10) << "rate" << '\n';
  double prev = 0.0;
  for (int level = 0; level <= refinements; ++level, cells *= 2) {
    const Mesh mesh = make_mesh(spec, {cells, 1});
    const FieldState init = initial_field(spec, mesh);
    const BoundaryCondition bc = make_bc(spec, mesh, init.u);
    const RunResult res = run_to_time(spec.eos, init, mesh, bc, spec.t_final, opts);
    const double d1 = delta1(mesh, res.field.u, exact_field(spec, mesh, res.field.t));
    out << std::setw(10) << cells << std::setw(16) << std::setprecision(6) << d1;
    csv << cells << ',' << format_double(d1) << ',';
    if (level > 0) {
      const double rate = std::log2(prev / d1);
      out << std::setw(10) << std::fixed << std::setprecision(2) << rate << std::defaultfloat;
      csv << format_double(rate);
    } else {
      out << std::setw(10) << "--";
    }
    out << '\n';
    csv << '\n';
    prev = d1;
  }
  return kOk;
}

namespace {

json side_json(const SideData& s) {
  return {{"rho", s.rho}, {"tau", s.tau}, {"v_n", s.v_n}, {"p", s.p}, {"bulk_k", s.bulk_k}, {"c", s.c},
          {"p_inf", s.p_inf}};
}

}  // namespace

int wavespeed_probe(const ProbeInput& in, std::ostream& out) {
  RunConfig c;
  c.eos_law = in.eos_law;
  c.eos_params = in.eos_params;
  const EosModel eos = *build_eos(c);
  const double len = norm(in.normal);
  if (!(len > 0.0)) throw ConfigError("probe: normal must be nonzero");
  const Vec2 n{in.normal[0] / len, in.normal[1] / len};
  const SideData l = make_side_data(eos, to_conserved(eos, in.left), n);
  const SideData r = make_side_data(eos, to_conserved(eos, in.right), n);
  const WaveEstimate w = estimate_wave_speed(l, r);
  const double p_star = p_star_bisect(l, r);
  const auto [el, er] = wave_speeds(l, r, p_star);
  const json j = {{"eos", std::string(eos.name())},
                  {"normal", {n[0], n[1]}},
                  {"left", side_json(l)},
                  {"right", side_json(r)},
                  {"p_hat_star", w.p_hat_star},
                  {"p_star_bisect", p_star},
                  {"lambda_left", w.lambda_left},
                  {"lambda_right", w.lambda_right},
                  {"lambda_max", w.lambda_max},
                  {"lambda_left_exact", el},
                  {"lambda_right_exact", er}};
  out << j.dump(2) << '\n';
  return kOk;
}

int validate_field(const ValidateInput& in, std::ostream& out) {
  const CsvTable after_t = read_csv(in.field);
  RunConfig cfg = in.config;
  if (cfg.eos_law.empty() && after_t.meta.count("eos")) cfg.eos_law = after_t.meta.at("eos");
  if (after_t.meta.count("problem")) {
    const auto names = problem_names();
    const std::string name = after_t.meta.at("problem");
    if (std::find(names.begin(), names.end(), name) != names.end()) cfg.problem = name;
    if (name == "pull_apart_2d_corrected") {
      cfg.problem = "pull_apart_2d";
      cfg.variant = "corrected";
    }
  }
  const ProblemSpec spec = build_problem(cfg);
  const std::vector<ConservedState> after = conserved_from_csv(after_t);
  json j;
  j["field"] = in.field.string();
  j["eos"] = std::string(spec.eos.name());
  const AdmissibilityReport adm = check_admissible(spec.eos, after, in.sigma_floor);
  j["admissibility"] = to_json(adm);
  bool ok = adm.ok;
  if (in.before) {
    const std::vector<ConservedState> before = conserved_from_csv(read_csv(*in.before));
    if (before.size() != after.size()) throw ConfigError("validate: fields differ in size");
    std::array<std::size_t, 2> cells{after.size(), 1};
    if (spec.dimension == 2) {
      const std::string tag = after_t.meta.count("cells") ? after_t.meta.at("cells") : "";
      const std::size_t xpos = tag.find('x');
      if (xpos == std::string::npos) throw ConfigError("validate: 2D dump without cells=NXxNY metadata");
      cells = {std::stoul(tag.substr(0, xpos)), std::stoul(tag.substr(xpos + 1))};
    }
    const Mesh mesh = make_mesh(spec, cells);
    if (mesh.num_nodes() != after.size()) throw ConfigError("validate: dump does not match the problem mesh");
    const BoundaryCondition bc = make_bc(spec, mesh, before);
    const LocalMinReport lm = check_local_min_principle(spec.eos, before, after, mesh, &bc);
    j["local_min"] = to_json(lm);
    ok = ok && lm.ok;
  }
  j["ok"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kOk : kInvariantViolation;
}

}  // namespace idp::cli
