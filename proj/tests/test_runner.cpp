#include "oamlab/figures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace oam;

namespace
{

ErrorCode config_error_code(const std::string& text)
{
  try {
    (void)parse_config(nlohmann::json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invalid_argument; // sentinel: no error
}

fs::path scratch_dir(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("oamlab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

RunConfig small_config()
{
  RunConfig c;
  c.n = 128;
  c.lambda.count = 6;
  c.l0 = {1, 2};
  return c;
}

} // namespace

TEST(Config, DefaultsMatchThePublishedSweep)
{
  const RunConfig c = parse_config(nlohmann::json::object());
  EXPECT_EQ(c.n, 512);
  EXPECT_EQ(c.l0, (std::vector<int>{1, 2, 5}));
  const auto lambdas = c.lambda.expand();
  ASSERT_EQ(lambdas.size(), 40u);
  EXPECT_EQ(lambdas.front(), 0.005);
  EXPECT_EQ(lambdas.back(), 500.0);
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    EXPECT_NEAR(lambdas[i] / lambdas[i - 1], std::pow(1e5, 1.0 / 39.0), 1e-12);
}

TEST(Config, RoundTripsThroughJson)
{
  RunConfig c;
  c.lambda.values = {0.1, 1.0, 3.0};
  c.z_rayleigh = {0.0, 0.5};
  c.workers = 3;
  const auto back = parse_config(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(back.lambda.values, c.lambda.values);
  EXPECT_EQ(back.z_rayleigh, c.z_rayleigh);
  EXPECT_EQ(back.workers, 3);
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
}

TEST(Config, RejectsBadValuesBeforeComputing)
{
  EXPECT_EQ(config_error_code(R"({"aperture": {"lambda": [0.1, 2e4]}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"aperture": {"lambda": {"min": 1e-5}}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"grid": {"n": 500}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"grid": {"n": "512"}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"l0": [0, 1]})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"l0": []})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"z_rayleigh": [-1]})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"workers": 0})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"gird": {}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"({"beam": {"w": 1, "colour": 2}})"), ErrorCode::config_error);
  EXPECT_EQ(config_error_code(R"([1, 2])"), ErrorCode::config_error);
  EXPECT_THROW(load_config("/nonexistent/config.json"), Error);
}

TEST(Sweep, LogSpacingEndpointsAreExact)
{
  const auto v = log_spaced(0.005, 500.0, 40);
  EXPECT_EQ(v.front(), 0.005);
  EXPECT_EQ(v.back(), 500.0);
  EXPECT_EQ(log_spaced(3.0, 3.0, 1), std::vector<double>{3.0});
  EXPECT_THROW(log_spaced(0.0, 1.0, 3), Error);
}

TEST(Sweep, ParallelRunIsBitIdenticalAndOrdered)
{
  SweepSpec s;
  s.grid = make_grid(128, 4.0);
  s.l0s = {5, 1, 2};
  s.lambdas = {10.0, 0.1, 1.0, 0.01};
  const auto serial = run_sweep(s);
  s.workers = 3;
  const auto parallel = run_sweep(s);
  ASSERT_EQ(serial.size(), 12u);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].b_numeric, parallel[i].b_numeric);
    EXPECT_EQ(serial[i].l0, parallel[i].l0);
    if (i > 0) {
      const auto& a = serial[i - 1];
      const auto& b = serial[i];
      EXPECT_TRUE(a.l0 < b.l0 || (a.l0 == b.l0 && a.lambda_width < b.lambda_width));
    }
  }
}

TEST(Sweep, WorkerExceptionReachesCaller)
{
  EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                 if (i == 7) throw Error(ErrorCode::domain_error, "boom");
               }),
               Error);
}

TEST(Runner, ResultsCsvRoundTripsAndRerunsIdentically)
{
  const auto dir = scratch_dir("results");
  RunConfig c = small_config();
  c.z_rayleigh = {0.0, 0.5};
  const auto sim = simulate(c);
  write_simulation(sim, dir);
  const std::string first = slurp(dir / "results.csv");
  write_simulation(simulate(c), dir);
  EXPECT_EQ(slurp(dir / "results.csv"), first);

  const auto rows = read_results_csv(dir / "results.csv");
  ASSERT_EQ(rows.size(), sim.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].b_numeric, sim.rows[i].b_numeric);
    EXPECT_EQ(rows[i].lambda_width, sim.rows[i].lambda_width);
  }
  EXPECT_EQ(first.substr(0, first.find('\n')), kResultColumns);

  const auto j = nlohmann::json::parse(slurp(dir / "results.json"));
  ASSERT_EQ(j.size(), rows.size());
  EXPECT_EQ(j[0]["b_numeric"].get<double>(), rows[0].b_numeric);

  ASSERT_EQ(sim.z_rows.size(), sim.rows.size());
  for (const auto& z : sim.z_rows) EXPECT_LT(std::abs(z.b_at_z - z.b_at_0), 1e-8);
  EXPECT_TRUE(fs::exists(dir / "z_invariance.csv"));
}

TEST(Runner, MissingResultsAreReported)
{
  try {
    (void)read_results_csv(scratch_dir("missing") / "results.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_results);
  }
}

TEST(Svg, TicksAndEscaping)
{
  EXPECT_EQ(svg::escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
  const auto t = svg::ticks({0.0, 1.9, "", false});
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_LE(t.back(), 1.9);
  const auto lt = svg::ticks({0.005, 500.0, "", true});
  EXPECT_EQ(lt, (std::vector<double>{0.01, 0.1, 1.0, 10.0, 100.0}));
  EXPECT_THROW(svg::Plot(0, 0, 10, 10, {1.0, 1.0, "", false}, {0.0, 1.0, "", false}), Error);
}

TEST(Svg, DocumentIsWellFormed)
{
  svg::Document doc(200, 100);
  svg::Plot p(40, 10, 150, 60, {0.0, 1.0, "x"}, {0.0, 1.0, "y & z"});
  p.line({0.0, 1.0}, {0.0, 1.0}, "red");
  p.markers({0.5}, {0.5}, "blue");
  p.bars({0.5}, {0.3}, 0.1, "green");
  doc.add(p);
  const std::string s = doc.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_NE(s.find("y &amp; z"), std::string::npos);
  EXPECT_EQ(std::count(s.begin(), s.end(), '<'), std::count(s.begin(), s.end(), '>'));
}

TEST(Figures, CsvContentsMatchTheirDefinitions)
{
  const auto dir = scratch_dir("figures");
  RunConfig c;
  c.n = 256;
  c.lambda.count = 12;
  const auto sim = simulate(c);
  write_figures(c, sim.rows, dir);
  for (const char* f : {"fig1.svg", "fig2.svg", "fig3.svg", "fig4.svg", "fig1.csv", "fig2.csv", "fig2_inset.csv",
                        "fig3.csv", "fig4.csv", "fig4_curves.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;

  // fig1: each histogram holds unit mass
  std::ifstream s1(dir / "fig1_summary.csv");
  std::string line;
  std::getline(s1, line);
  int n1 = 0;
  while (std::getline(s1, line)) {
    double lam, fit, sup, mass;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &lam, &fit, &sup, &mass), 4);
    EXPECT_NEAR(mass, 1.0, 1e-4);
    ++n1;
  }
  EXPECT_EQ(n1, 3);

  // fig2: open-aperture rows are near zero for every l0
  std::ifstream s2(dir / "fig2.csv");
  std::getline(s2, line);
  EXPECT_EQ(line, "l0,lambda[1],delta_phi[rad],b_numeric[1],b_analytic[1]");
  int open_rows = 0;
  while (std::getline(s2, line)) {
    int l0;
    double lam, dphi, b, ba;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf", &l0, &lam, &dphi, &b, &ba), 5);
    if (lam == 0.005) {
      EXPECT_NEAR(b, 0.0, 0.02);
      ++open_rows;
    }
  }
  EXPECT_EQ(open_rows, 3);

  // fig4: universal column is tanh(2 x^2)
  std::ifstream s4(dir / "fig4.csv");
  std::getline(s4, line);
  while (std::getline(s4, line)) {
    int l0;
    double lam, x, b, cn, bu, cu;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf", &l0, &lam, &x, &b, &cn, &bu, &cu), 7);
    EXPECT_EQ(cu, std::tanh(2.0 * x * x));
    EXPECT_EQ(bu, std::exp(-2.0 * x * x));
  }
}
