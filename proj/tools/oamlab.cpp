// oamlab: biphoton OAM entanglement behind angular apertures.
//
//   oamlab simulate --config run.json --out results/
//   oamlab figures  --config run.json --out results/
//   oamlab validate [--fast] [--report json]
//   oamlab --print-default-config
//
// Exit codes: 0 success, 1 failed validation or runtime error, 2 bad config or usage.

#include "oamlab/acceptance.hpp"
#include "oamlab/figures.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace
{

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

oam::RunConfig resolve_config(const std::string& path, const std::string& out, int workers)
{
  oam::RunConfig c = path.empty() ? oam::RunConfig{} : oam::load_config(path);
  if (!out.empty()) c.output_dir = out;
  if (workers > 0) c.workers = workers;
  oam::validate(c);
  return c;
}

int cmd_simulate(const oam::RunConfig& c)
{
  oam::ensure_directory(c.output_dir);
  const auto sim = oam::simulate(c);
  oam::write_simulation(sim, c.output_dir);
  std::cout << fmt::format("wrote {} rows to {}\n", sim.rows.size(), (oam::fs::path(c.output_dir) / "results.csv").string());
  return kOk;
}

int cmd_figures(const oam::RunConfig& c, bool compute)
{
  const oam::fs::path dir = c.output_dir;
  const auto results_path = dir / "results.csv";
  std::vector<oam::EntanglementResult> rows;
  if (oam::fs::exists(results_path)) {
    rows = oam::read_results_csv(results_path);
  } else if (compute) {
    oam::ensure_directory(dir);
    const auto sim = oam::simulate(c);
    oam::write_simulation(sim, dir);
    rows = sim.rows;
  } else {
    throw oam::Error(oam::ErrorCode::missing_results,
                     fmt::format("'{}' not found; run simulate first or drop --no-compute", results_path.string()));
  }
  oam::write_figures(c, rows, dir);
  std::cout << fmt::format("figures written to {}\n", dir.string());
  return kOk;
}

int cmd_validate(bool fast, const std::string& report, int workers)
{
  oam::acceptance::Suite suite({.workers = std::max(workers, 1)});
  const int n = fast ? 256 : 512;
  std::vector<oam::acceptance::Check> all;
  for (int k = 1; k <= (fast ? 7 : 8); ++k) {
    auto checks = suite.run(k, n);
    if (report == "text")
      for (const auto& c : checks) std::cout << oam::acceptance::format_check(c) << '\n' << std::flush;
    all.insert(all.end(), checks.begin(), checks.end());
  }
  const auto j = oam::acceptance::report_json(all);
  if (report == "json")
    std::cout << j.dump(2) << '\n';
  else if (fast)
    std::cout << "criterion 8 (resolution study) skipped in --fast mode\n";
  return j["pass"].get<bool>() ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Entanglement of OAM-encoded photon pairs behind angular apertures"};
  app.require_subcommand(0, 1);
  bool print_default = false;
  int workers = 0;
  app.add_flag("--print-default-config", print_default, "print the default configuration as JSON and exit");
  app.add_option("--workers", workers, "worker threads for sweeps (overrides the config)")
    ->check(CLI::PositiveNumber);

  std::string sim_config, sim_out;
  auto* simulate = app.add_subcommand("simulate", "run the (lambda, l0) sweep and write results.csv/json");
  simulate->add_option("--config", sim_config, "JSON run configuration")->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "output directory (overrides output_dir)");

  std::string fig_config, fig_out;
  bool no_compute = false;
  auto* figures = app.add_subcommand("figures", "write fig1..fig4 as SVG + CSV");
  figures->add_option("--config", fig_config, "JSON run configuration")->check(CLI::ExistingFile);
  figures->add_option("--out", fig_out, "directory holding results.csv; figures go here too");
  figures->add_flag("--no-compute", no_compute, "fail instead of simulating when results.csv is missing");

  bool fast = false;
  std::string report = "text";
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_flag("--fast", fast, "criteria 1-7 on a 256 grid, no resolution study");
  validate->add_option("--report", report, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (print_default) {
      std::cout << oam::to_json(oam::RunConfig{}).dump(2) << '\n';
      return kOk;
    }
    if (*simulate) return cmd_simulate(resolve_config(sim_config, sim_out, workers));
    if (*figures) return cmd_figures(resolve_config(fig_config, fig_out, workers), !no_compute);
    if (*validate) return cmd_validate(fast, report, workers);
    std::cout << app.help();
    return kConfigError;
  } catch (const oam::Error& e) {
    std::cerr << "oamlab: " << e.what() << '\n';
    return e.code() == oam::ErrorCode::config_error ? kConfigError : kFailure;
  } catch (const std::exception& e) {
    std::cerr << "oamlab: " << e.what() << '\n';
    return kFailure;
  }
}
