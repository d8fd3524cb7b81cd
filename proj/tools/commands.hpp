#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "idp/config.hpp"
#include "idp/state.hpp"

namespace idp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kInvariantViolation = 3,
  kEosError = 4,
};

/// Exit code for the exception currently being handled.
int exit_code_for_current_exception(std::ostream& err);

/// Writes fields_<t>.csv, report.json and config.json (plus
/// isentrope_curve.csv for the entropy tests) under config.output_dir.
int run(const RunConfig& config, std::ostream& out);

/// Runs `refinements + 1` meshes, doubling the cell count each time, and
/// prints the (cells, delta1, rate) table; also writes convergence.csv.
int converge(const RunConfig& config, int refinements, std::ostream& out);

struct ProbeInput {
  std::string eos_law = "macaw";
  nlohmann::json eos_params = nlohmann::json::object();
  Primitive left;
  Primitive right;
  Vec2 normal{1.0, 0.0};
};

/// Prints side data, the star-pressure bound, the bisected star pressure and
/// the wave speeds as JSON.
int wavespeed_probe(const ProbeInput& in, std::ostream& out);

struct ValidateInput {
  RunConfig config;  // eos_law / eos_params / problem select the EOS
  std::filesystem::path field;
  std::optional<std::filesystem::path> before;  // enables the local minimum check
  std::optional<double> sigma_floor;
};

/// Checks a field dump; prints a JSON report. Exit 3 when a check fails.
int validate_field(const ValidateInput& in, std::ostream& out);

}  // namespace idp::cli
