#include "idp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "idp/error.hpp"

namespace idp {

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string> field_columns(int dimension) {
  if (dimension == 1) return {"x", "rho", "v", "p", "e", "sigma", "m", "E"};
  return {"x", "y", "rho", "v", "vy", "p", "e", "sigma", "m", "my", "E"};
}

void write_field_csv(std::ostream& os, const CsvMeta& meta, const Mesh& mesh, const EosModel& eos,
                     std::span<const ConservedState> u) {
  if (u.size() != mesh.num_nodes()) throw DomainError("write_field_csv: field does not match the mesh");
  os << "# problem=" << meta.problem << '\n';
  os << "# eos=" << meta.eos << '\n';
  os << "# t=" << format_double(meta.t) << '\n';
  os << "# dimension=" << meta.dimension << '\n';
  os << "# cells=" << meta.cells[0];
  if (meta.dimension == 2) os << 'x' << meta.cells[1];
  os << '\n';
  const auto cols = field_columns(meta.dimension);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';

  const auto x = mesh.coordinates();
  std::string line;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const ThermoPoint pt{1.0 / u[i].rho, specific_internal_energy(u[i])};
    const Vec2 v = velocity(u[i]);
    const double p = eos.pressure(pt);
    const double sigma = eos.admissible(pt) ? eos.entropy_like(pt) : std::nan("");
    line.clear();
    const auto put = [&](double value) {
      if (!line.empty()) line += ',';
      line += format_double(value);
    };
    put(x[i][0]);
    if (meta.dimension == 2) put(x[i][1]);
    put(u[i].rho);
    put(v[0]);
    if (meta.dimension == 2) put(v[1]);
    put(p);
    put(pt.e);
    put(sigma);
    put(u[i].m[0]);
    if (meta.dimension == 2) put(u[i].m[1]);
    put(u[i].E);
    os << line << '\n';
  }
}

void write_field_csv(const std::filesystem::path& path, const CsvMeta& meta, const Mesh& mesh,
                     const EosModel& eos, std::span<const ConservedState> u) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  write_field_csv(os, meta, mesh, eos, u);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw ConfigError("csv: missing column '" + name + "'");
}

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  // An empty cell is a missing value, e.g. the first rate of a convergence table.
  if (s.empty() || s == "nan" || s == "-nan") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("csv: bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      const std::size_t eq = body.find('=');
      if (eq != std::string_view::npos) t.meta[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
      continue;
    }
    const auto fields = split(line);
    if (!header) {
      for (auto f : fields) t.columns.emplace_back(f);
      header = true;
      continue;
    }
    if (fields.size() != t.columns.size()) throw ConfigError("csv: row width does not match the header");
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_double(f));
    t.rows.push_back(std::move(row));
  }
  if (!header) throw ConfigError("csv: no header row");
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path.string());
  return read_csv(is);
}

std::vector<ConservedState> conserved_from_csv(const CsvTable& table) {
  const std::size_t rho = table.column("rho");
  const std::size_t m = table.column("m");
  const std::size_t e = table.column("E");
  const bool two_d = std::find(table.columns.begin(), table.columns.end(), "my") != table.columns.end();
  const std::size_t my = two_d ? table.column("my") : 0;
  std::vector<ConservedState> u;
  u.reserve(table.rows.size());
  for (const auto& r : table.rows) u.push_back({r[rho], {r[m], two_d ? r[my] : 0.0}, r[e]});
  return u;
}

void write_isentrope_csv(const std::filesystem::path& path, const EosModel& eos, double sigma, double tau_lo,
                         double tau_hi, int samples) {
  if (!(tau_lo > 0.0) || !(tau_hi > tau_lo) || samples < 2) throw ConfigError("isentrope: bad tau range");
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os << "# eos=" << eos.name() << '\n';
  os << "# sigma=" << format_double(sigma) << '\n';
  os << "tau,e\n";
  const double a = std::log(tau_lo);
  const double b = std::log(tau_hi);
  for (int k = 0; k < samples; ++k) {
    const double tau = std::exp(a + (b - a) * k / (samples - 1));
    os << format_double(tau) << ',' << format_double(eos.isentrope_energy(tau, sigma)) << '\n';
  }
}

nlohmann::json to_json(const Totals& t) {
  return {{"mass", t.mass}, {"momentum", {t.momentum[0], t.momentum[1]}}, {"energy", t.energy}};
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : r.sigma_trace) trace.push_back({{"step", s.step}, {"t", s.t}, {"min_sigma", s.min_sigma}});
  return {{"steps", r.steps},
          {"restarts", r.restarts},
          {"t_start", r.t_start},
          {"t_end", r.t_end},
          {"min_rho", r.min_rho},
          {"min_p", r.min_p},
          {"min_dt", r.min_dt},
          {"max_dt", r.max_dt},
          {"sigma_trace", trace},
          {"totals_initial", to_json(r.initial)},
          {"totals_final", to_json(r.final)},
          {"rr_clamps", r.rr_clamps},
          {"wall_seconds", r.wall_seconds}};
}

nlohmann::json to_json(const AdmissibilityReport& r) {
  nlohmann::json j = {{"ok", r.ok},
                      {"worst_node", r.worst_node},
                      {"violations", r.violations},
                      {"min_rho", r.min_rho},
                      {"min_excess_energy", r.min_excess_energy},
                      {"min_sigma", r.min_sigma},
                      {"excess_tolerance", r.excess_tolerance},
                      {"sigma_tolerance", r.sigma_tolerance}};
  j["sigma_floor"] = r.sigma_floor ? nlohmann::json(*r.sigma_floor) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const LocalMinReport& r) {
  return {{"ok", r.ok}, {"worst_node", r.worst_node}, {"violations", r.violations}, {"min_margin", r.min_margin}};
}

}  // namespace idp
