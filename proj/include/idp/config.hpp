#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "idp/eos.hpp"
#include "idp/problems.hpp"

#include <json.hpp>

namespace idp {

enum class Enforcement { enforce, report };

/// Resolved run configuration. JSON layout, every key optional:
///
///   {
///     "problem":  {"name": "smooth_wave", "variant": "verbatim",
///                  "smooth_wave": {"rho_base": .., "amplitude": .., "p_bar": ..,
///                                  "v_bar": .., "x0": .., "width": ..}},
///     "eos":      {"law": "macaw", "params": {"tau0": .., ...}},
///     "mesh":     {"cells": [100]},
///     "timeloop": {"cfl": 0.9, "t_final": 0.2, "max_steps": 50000000,
///                  "entropy_every": 1, "boundary": "dirichlet"},
///     "output":   {"dir": "out", "dump_every": 0},
///     "validate": {"mode": "enforce"},
///     "seed": 12345
///   }
struct RunConfig {
  std::string problem = "smooth_wave";
  std::string variant = "verbatim";
  nlohmann::json smooth_wave = nlohmann::json::object();
  std::string eos_law;  // empty: the problem's default
  nlohmann::json eos_params = nlohmann::json::object();
  std::array<std::size_t, 2> cells{0, 0};  // 0: the problem's default
  double cfl = 0.9;
  std::optional<double> t_final;
  std::size_t max_steps = 50'000'000;
  std::size_t entropy_every = 1;
  std::string boundary;  // empty: the problem's default
  std::filesystem::path output_dir = "out";
  std::size_t dump_every = 0;  // steps between field dumps; 0: initial and final only
  Enforcement enforcement = Enforcement::enforce;
  std::uint64_t seed = 12345;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& c);

/// Throws ConfigError on out-of-range values.
void validate(const RunConfig& c);

/// EOS from eos_law/eos_params, or nullopt to use the problem's default.
std::optional<EosModel> build_eos(const RunConfig& c);
ProblemSpec build_problem(const RunConfig& c);
std::array<std::size_t, 2> resolved_cells(const RunConfig& c, const ProblemSpec& spec);

}  // namespace idp
