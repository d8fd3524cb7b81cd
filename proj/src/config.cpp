#include "idp/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>

#include "idp/error.hpp"

namespace idp {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

void read_param(const json& params, const char* key, double& out) { read(params, key, out, "eos.params"); }

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  only_keys(j, "config", {"problem", "eos", "mesh", "timeloop", "output", "validate", "seed"});
  if (j.contains("problem")) {
    const json& p = j["problem"];
    only_keys(p, "problem", {"name", "variant", "smooth_wave"});
    read(p, "name", c.problem, "problem");
    read(p, "variant", c.variant, "problem");
    if (p.contains("smooth_wave")) {
      only_keys(p["smooth_wave"], "problem.smooth_wave", {"rho_base", "amplitude", "p_bar", "v_bar", "x0", "width"});
      c.smooth_wave = p["smooth_wave"];
    }
  }
  if (j.contains("eos")) {
    const json& e = j["eos"];
    only_keys(e, "eos", {"law", "params"});
    read(e, "law", c.eos_law, "eos");
    if (e.contains("params")) {
      if (!e["params"].is_object()) throw ConfigError("eos.params: expected an object");
      c.eos_params = e["params"];
    }
  }
  if (j.contains("mesh")) {
    const json& m = j["mesh"];
    only_keys(m, "mesh", {"cells"});
    if (m.contains("cells")) {
      const json& cells = m["cells"];
      try {
        if (cells.is_number_unsigned()) {
          c.cells = {cells.get<std::size_t>(), 0};
        } else if (cells.is_array() && !cells.empty() && cells.size() <= 2) {
          c.cells = {cells[0].get<std::size_t>(), cells.size() == 2 ? cells[1].get<std::size_t>() : 0};
        } else {
          throw ConfigError("mesh.cells: expected a count or [nx] / [nx, ny]");
        }
      } catch (const json::exception& ex) {
        throw ConfigError(std::string("mesh.cells: ") + ex.what());
      }
    }
  }
  if (j.contains("timeloop")) {
    const json& t = j["timeloop"];
    only_keys(t, "timeloop", {"cfl", "t_final", "max_steps", "entropy_every", "boundary"});
    read(t, "cfl", c.cfl, "timeloop");
    if (t.contains("t_final")) {
      double tf = 0.0;
      read(t, "t_final", tf, "timeloop");
      c.t_final = tf;
    }
    read(t, "max_steps", c.max_steps, "timeloop");
    read(t, "entropy_every", c.entropy_every, "timeloop");
    read(t, "boundary", c.boundary, "timeloop");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, "output", {"dir", "dump_every"});
    std::string dir = c.output_dir.string();
    read(o, "dir", dir, "output");
    c.output_dir = dir;
    read(o, "dump_every", c.dump_every, "output");
  }
  if (j.contains("validate")) {
    const json& v = j["validate"];
    only_keys(v, "validate", {"mode"});
    std::string mode = "enforce";
    read(v, "mode", mode, "validate");
    if (mode == "enforce") {
      c.enforcement = Enforcement::enforce;
    } else if (mode == "report") {
      c.enforcement = Enforcement::report;
    } else {
      throw ConfigError("validate.mode: expected 'enforce' or 'report'");
    }
  }
  read(j, "seed", c.seed, "config");
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["problem"] = {{"name", c.problem}, {"variant", c.variant}};
  if (!c.smooth_wave.empty()) j["problem"]["smooth_wave"] = c.smooth_wave;
  j["eos"] = {{"law", c.eos_law}, {"params", c.eos_params}};
  j["mesh"] = {{"cells", c.cells[1] ? json{c.cells[0], c.cells[1]} : json{c.cells[0]}}};
  j["timeloop"] = {{"cfl", c.cfl}, {"max_steps", c.max_steps}, {"entropy_every", c.entropy_every}};
  if (c.t_final) j["timeloop"]["t_final"] = *c.t_final;
  if (!c.boundary.empty()) j["timeloop"]["boundary"] = c.boundary;
  j["output"] = {{"dir", c.output_dir.string()}, {"dump_every", c.dump_every}};
  j["validate"] = {{"mode", c.enforcement == Enforcement::enforce ? "enforce" : "report"}};
  j["seed"] = c.seed;
  return j;
}

void validate(const RunConfig& c) {
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if ((c.cells[0] != 0 && c.cells[0] < 2) || (c.cells[1] != 0 && c.cells[1] < 2)) {
    throw ConfigError("cells must be >= 2");
  }
  if (c.t_final && !(*c.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  if (c.max_steps == 0) throw ConfigError("max_steps must be >= 1");
  if (c.variant != "verbatim" && c.variant != "corrected") {
    throw ConfigError("problem.variant: expected 'verbatim' or 'corrected'");
  }
  if (!c.boundary.empty()) boundary_kind_from_string(c.boundary);
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), c.problem) == names.end()) {
    throw ConfigError("unknown problem '" + c.problem + "'");
  }
  if (!c.eos_law.empty() && c.eos_law != "macaw" && c.eos_law != "davis" && c.eos_law != "stiffened") {
    throw ConfigError("unknown eos law '" + c.eos_law + "'");
  }
}

std::optional<EosModel> build_eos(const RunConfig& c) {
  const json& p = c.eos_params;
  if (c.eos_law.empty()) {
    if (!p.empty()) throw ConfigError("eos.params given without eos.law");
    return std::nullopt;
  }
  if (c.eos_law == "macaw") {
    only_keys(p, "eos.params", {"tau0", "gamma0", "a_coef", "b_coef"});
    MacawParams m;
    read_param(p, "tau0", m.tau0);
    read_param(p, "gamma0", m.gamma0);
    read_param(p, "a_coef", m.a_coef);
    read_param(p, "b_coef", m.b_coef);
    return EosModel::macaw(m);
  }
  if (c.eos_law == "davis") {
    only_keys(p, "eos.params",
              {"tau0", "gamma0", "t0", "a_coef", "b_coef", "c_coef", "z_coef", "cv0", "alpha_st", "e0"});
    DavisParams d;
    read_param(p, "tau0", d.tau0);
    read_param(p, "gamma0", d.gamma0);
    read_param(p, "t0", d.t0);
    read_param(p, "a_coef", d.a_coef);
    read_param(p, "b_coef", d.b_coef);
    read_param(p, "c_coef", d.c_coef);
    read_param(p, "z_coef", d.z_coef);
    read_param(p, "cv0", d.cv0);
    read_param(p, "alpha_st", d.alpha_st);
    read_param(p, "e0", d.e0);
    return EosModel::davis(d);
  }
  only_keys(p, "eos.params", {"gamma", "p_inf", "q"});
  StiffenedParams s;
  read_param(p, "gamma", s.gamma);
  read_param(p, "p_inf", s.p_inf);
  read_param(p, "q", s.q);
  return EosModel::stiffened(s);
}

ProblemSpec build_problem(const RunConfig& c) {
  const std::optional<EosModel> eos = build_eos(c);
  const QuadrantVariant variant = c.variant == "corrected" ? QuadrantVariant::corrected : QuadrantVariant::verbatim;
  ProblemSpec spec = make_problem(c.problem, eos, variant);
  if (c.problem == "smooth_wave" && !c.smooth_wave.empty()) {
    SmoothWaveParams prm = smooth_wave_defaults(spec.eos);
    const std::string where = "problem.smooth_wave";
    read(c.smooth_wave, "rho_base", prm.rho_base, where);
    read(c.smooth_wave, "amplitude", prm.amplitude, where);
    read(c.smooth_wave, "p_bar", prm.p_bar, where);
    read(c.smooth_wave, "v_bar", prm.v_bar, where);
    read(c.smooth_wave, "x0", prm.x0, where);
    read(c.smooth_wave, "width", prm.width, where);
    spec = smooth_wave(spec.eos, prm);
  }
  if (c.t_final) spec.t_final = *c.t_final;
  if (!c.boundary.empty()) spec.bc = boundary_kind_from_string(c.boundary);
  return spec;
}

std::array<std::size_t, 2> resolved_cells(const RunConfig& c, const ProblemSpec& spec) {
  std::array<std::size_t, 2> cells = spec.default_cells;
  if (c.cells[0]) {
    cells[0] = c.cells[0];
    if (spec.dimension == 2) cells[1] = c.cells[1] ? c.cells[1] : c.cells[0];
  }
  if (spec.dimension == 1) cells[1] = 1;
  return cells;
}

}  // namespace idp
