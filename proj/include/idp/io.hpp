#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "idp/eos.hpp"
#include "idp/mesh.hpp"
#include "idp/state.hpp"
#include "idp/timeloop.hpp"
#include "idp/validate.hpp"

#include <json.hpp>

namespace idp {

/// Shortest text that reads back as the same double ("%.17g").
std::string format_double(double x);

struct CsvMeta {
  std::string problem;
  std::string eos;
  double t = 0.0;
  int dimension = 1;
  std::array<std::size_t, 2> cells{0, 1};
};

/// Column layout of a field dump.
///   1D: x,rho,v,p,e,sigma,m,E
///   2D: x,y,rho,v,vy,p,e,sigma,m,my,E
/// m, my and E are the conserved values themselves, so a dump reads back
/// bitwise.
std::vector<std::string> field_columns(int dimension);

void write_field_csv(std::ostream& os, const CsvMeta& meta, const Mesh& mesh, const EosModel& eos,
                     std::span<const ConservedState> u);
void write_field_csv(const std::filesystem::path& path, const CsvMeta& meta, const Mesh& mesh,
                     const EosModel& eos, std::span<const ConservedState> u);

/// A parsed CSV: `# key=value` metadata lines, one header row, numeric rows.
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

/// Conserved states from the rho, m[, my], E columns of a field dump.
std::vector<ConservedState> conserved_from_csv(const CsvTable& table);

/// (tau, e) samples of the isentrope at level sigma, log-spaced in tau.
void write_isentrope_csv(const std::filesystem::path& path, const EosModel& eos, double sigma, double tau_lo,
                         double tau_hi, int samples);

nlohmann::json to_json(const Totals& t);
nlohmann::json to_json(const RunReport& r);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const LocalMinReport& r);

}  // namespace idp
