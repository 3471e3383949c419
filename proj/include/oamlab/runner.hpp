#pragma once

#include "oamlab/config.hpp"
#include "oamlab/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace oam
{

namespace fs = std::filesystem;

/// b at a common propagation distance, next to its z = 0 value.
struct ZInvarianceRow
{
  int l0 = 0;
  double lambda_width = 0.0;
  double z_rayleigh = 0.0;
  double b_at_z = 0.0;
  double b_at_0 = 0.0;
};

struct SimulationOutput
{
  std::vector<EntanglementResult> rows;
  std::vector<ZInvarianceRow> z_rows;
};

inline SweepSpec sweep_spec(const RunConfig& c, double z_rayleigh = 0.0)
{
  SweepSpec s;
  s.grid = c.grid();
  s.w = c.w;
  s.wavenumber = c.wavenumber();
  s.l0s = c.l0;
  s.lambdas = c.lambda.expand();
  s.aperture_radius = c.aperture_radius;
  s.aperture_power = c.aperture_power;
  s.z = z_rayleigh * rayleigh_length(s.wavenumber, c.w);
  s.workers = c.workers;
  return s;
}

inline SimulationOutput simulate(const RunConfig& c)
{
  validate(c);
  SimulationOutput out;
  out.rows = run_sweep(sweep_spec(c));
  for (double z : c.z_rayleigh) {
    if (z == 0.0) continue;
    const auto moved = run_sweep(sweep_spec(c, z));
    for (std::size_t i = 0; i < moved.size(); ++i)
      out.z_rows.push_back({moved[i].l0, moved[i].lambda_width, z, moved[i].b_numeric, out.rows[i].b_numeric});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

inline nlohmann::ordered_json results_json(const std::vector<EntanglementResult>& rows)
{
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"l0", r.l0},
                   {"lambda", r.lambda_width},
                   {"delta_phi", r.delta_phi},
                   {"b_numeric", r.b_numeric},
                   {"b_analytic", r.b_analytic},
                   {"b_gaussian", r.b_gaussian},
                   {"concurrence_numeric", r.concurrence},
                   {"concurrence_universal", universal_concurrence(r.l0, r.delta_phi)}});
  return arr;
}

inline void write_z_invariance_csv(std::ostream& out, const std::vector<ZInvarianceRow>& rows)
{
  out << "l0,lambda,z[z_R],b_numeric,b_numeric_z0,abs_change\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{}\n", r.l0, r.lambda_width, r.z_rayleigh, r.b_at_z, r.b_at_0,
                       std::abs(r.b_at_z - r.b_at_0));
}

inline void ensure_directory(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorCode::config_error, fmt::format("cannot create output directory '{}'", dir.string()));
  const fs::path probe = dir / ".oamlab_write_probe";
  {
    std::ofstream p(probe);
    if (!p) throw Error(ErrorCode::config_error, fmt::format("output directory '{}' is not writable", dir.string()));
  }
  fs::remove(probe, ec);
}

inline void write_text(const fs::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::invalid_argument, fmt::format("failed to write '{}'", path.string()));
}

inline void write_simulation(const SimulationOutput& sim, const fs::path& dir)
{
  ensure_directory(dir);
  std::ostringstream csv;
  write_results_csv(csv, sim.rows);
  write_text(dir / "results.csv", csv.str());
  write_text(dir / "results.json", results_json(sim.rows).dump(2) + "\n");
  if (!sim.z_rows.empty()) {
    std::ostringstream z;
    write_z_invariance_csv(z, sim.z_rows);
    write_text(dir / "z_invariance.csv", z.str());
  }
}

/// Reads back results.csv. Only the stored columns are restored (b_imag is not persisted).
inline std::vector<EntanglementResult> read_results_csv(const fs::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::missing_results, fmt::format("no results at '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != kResultColumns)
    throw Error(ErrorCode::missing_results, fmt::format("'{}' is not a results file", path.string()));
  std::vector<EntanglementResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EntanglementResult r;
    double c_universal = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &r.l0, &r.lambda_width, &r.delta_phi,
                    &r.b_numeric, &r.b_analytic, &r.b_gaussian, &r.concurrence, &c_universal) != 8)
      throw Error(ErrorCode::missing_results, fmt::format("malformed row in '{}': {}", path.string(), line));
    rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorCode::missing_results, fmt::format("'{}' has no rows", path.string()));
  return rows;
}

} // namespace oam
