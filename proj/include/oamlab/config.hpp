#pragma once

#include "oamlab/aperture.hpp"
#include "oamlab/field.hpp"
#include "oamlab/sweep.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oam
{

/// Either an explicit list of aperture widths or a log-spaced range.
struct LambdaSweep
{
  std::vector<double> values; ///< used when non-empty
  double min = 0.005;
  double max = 500.0;
  int count = 40;

  std::vector<double> expand() const { return values.empty() ? log_spaced(min, max, count) : values; }
};

struct FigureOptions
{
  bool fig1 = true;
  bool fig2 = true;
  bool fig3 = true;
  bool fig4 = true;
  std::vector<double> fig1_lambda{0.5, 2.0, 10.0};
  double fig3_lambda = 4.0;
  std::vector<int> fig3_l0{2, 5};
};

struct RunConfig
{
  int n = 512;
  double half_width = 4.0;
  double w = 1.0;
  double wavelength = 0.8e-3;
  LambdaSweep lambda;
  double aperture_radius = 3.0;
  int aperture_power = 12;
  std::vector<int> l0{1, 2, 5};
  std::vector<double> z_rayleigh{0.0}; ///< propagation distances in Rayleigh lengths
  std::string output_dir = "results";
  FigureOptions figures;
  int workers = 1;

  GridSpec grid() const { return GridSpec{n, half_width}; }
  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
};

namespace detail
{

using json = nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& msg)
{
  throw Error(ErrorCode::config_error, msg);
}

inline void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
  if (!j.is_object()) config_fail(fmt::format("'{}' must be an object", where));
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) config_fail(fmt::format("unknown key '{}{}'", where.empty() ? "" : where + ".", key));
}

template <class T>
T get(const json& j, const char* key, const std::string& where, T fallback)
{
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  const std::string name = where.empty() ? key : where + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) config_fail(fmt::format("'{}' must be true or false", name));
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) config_fail(fmt::format("'{}' must be an integer", name));
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) config_fail(fmt::format("'{}' must be a number", name));
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) config_fail(fmt::format("'{}' must be a string", name));
  }
  return v.get<T>();
}

template <class T>
std::vector<T> get_list(const json& j, const char* key, const std::string& where, std::vector<T> fallback)
{
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  const std::string name = where.empty() ? key : where + "." + key;
  if (!v.is_array() || v.empty()) config_fail(fmt::format("'{}' must be a non-empty array", name));
  std::vector<T> out;
  for (const auto& e : v) {
    if constexpr (std::is_integral_v<T>) {
      if (!e.is_number_integer()) config_fail(fmt::format("'{}' must hold integers", name));
    } else {
      if (!e.is_number()) config_fail(fmt::format("'{}' must hold numbers", name));
    }
    out.push_back(e.get<T>());
  }
  return out;
}

} // namespace detail

/// Checks value ranges. Everything here runs before any computation.
inline void validate(const RunConfig& c)
{
  using detail::config_fail;
  if (c.n < 64 || !is_power_of_two(c.n)) config_fail(fmt::format("grid.n must be a power of two >= 64, got {}", c.n));
  if (!(c.half_width > 0.0)) config_fail("grid.half_width must be positive");
  if (!(c.w > 0.0)) config_fail("beam.w must be positive");
  if (!(c.wavelength > 0.0)) config_fail("beam.wavelength must be positive");
  if (!(c.aperture_radius > 0.0)) config_fail("aperture.radius must be positive");
  if (c.aperture_power < 1) config_fail("aperture.power must be >= 1");
  if (c.lambda.values.empty()) {
    if (c.lambda.count < 1) config_fail("aperture.lambda.count must be >= 1");
    if (!(c.lambda.min <= c.lambda.max)) config_fail("aperture.lambda.min must not exceed max");
  }
  const auto in_range = [](double v) { return v >= 1e-4 && v <= 1e4; };
  const std::vector<double> lambdas =
    c.lambda.values.empty() ? std::vector<double>{c.lambda.min, c.lambda.max} : c.lambda.values;
  for (double v : lambdas)
    if (!in_range(v)) config_fail(fmt::format("aperture lambda {} outside [1e-4, 1e4]", v));
  for (double v : c.figures.fig1_lambda)
    if (!in_range(v)) config_fail(fmt::format("figures.fig1_lambda {} outside [1e-4, 1e4]", v));
  if (!in_range(c.figures.fig3_lambda))
    config_fail(fmt::format("figures.fig3_lambda {} outside [1e-4, 1e4]", c.figures.fig3_lambda));
  for (int l : c.l0)
    if (l < 1) config_fail(fmt::format("l0 values must be >= 1, got {}", l));
  for (int l : c.figures.fig3_l0)
    if (l < 1) config_fail(fmt::format("figures.fig3_l0 values must be >= 1, got {}", l));
  for (double z : c.z_rayleigh)
    if (!(z >= 0.0) || !std::isfinite(z)) config_fail(fmt::format("z_rayleigh values must be >= 0, got {}", z));
  if (c.output_dir.empty()) config_fail("output_dir must not be empty");
  if (c.workers < 1) config_fail("workers must be >= 1");
}

inline RunConfig parse_config(const nlohmann::json& j)
{
  using namespace detail;
  RunConfig c;
  check_keys(j, "", {"grid", "beam", "aperture", "l0", "z_rayleigh", "output_dir", "figures", "workers"});
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, "grid", {"n", "half_width"});
    c.n = get(g, "n", "grid", c.n);
    c.half_width = get(g, "half_width", "grid", c.half_width);
  }
  if (j.contains("beam")) {
    const auto& b = j["beam"];
    check_keys(b, "beam", {"w", "wavelength"});
    c.w = get(b, "w", "beam", c.w);
    c.wavelength = get(b, "wavelength", "beam", c.wavelength);
  }
  if (j.contains("aperture")) {
    const auto& a = j["aperture"];
    check_keys(a, "aperture", {"lambda", "radius", "power"});
    c.aperture_radius = get(a, "radius", "aperture", c.aperture_radius);
    c.aperture_power = get(a, "power", "aperture", c.aperture_power);
    if (a.contains("lambda")) {
      const auto& l = a["lambda"];
      if (l.is_array()) {
        c.lambda.values = get_list<double>(a, "lambda", "aperture", {});
      } else {
        check_keys(l, "aperture.lambda", {"min", "max", "count"});
        c.lambda.min = get(l, "min", "aperture.lambda", c.lambda.min);
        c.lambda.max = get(l, "max", "aperture.lambda", c.lambda.max);
        c.lambda.count = get(l, "count", "aperture.lambda", c.lambda.count);
      }
    }
  }
  c.l0 = get_list<int>(j, "l0", "", c.l0);
  c.z_rayleigh = get_list<double>(j, "z_rayleigh", "", c.z_rayleigh);
  c.output_dir = get(j, "output_dir", "", c.output_dir);
  c.workers = get(j, "workers", "", c.workers);
  if (j.contains("figures")) {
    const auto& f = j["figures"];
    check_keys(f, "figures", {"fig1", "fig2", "fig3", "fig4", "fig1_lambda", "fig3_lambda", "fig3_l0"});
    c.figures.fig1 = get(f, "fig1", "figures", c.figures.fig1);
    c.figures.fig2 = get(f, "fig2", "figures", c.figures.fig2);
    c.figures.fig3 = get(f, "fig3", "figures", c.figures.fig3);
    c.figures.fig4 = get(f, "fig4", "figures", c.figures.fig4);
    c.figures.fig1_lambda = get_list<double>(f, "fig1_lambda", "figures", c.figures.fig1_lambda);
    c.figures.fig3_lambda = get(f, "fig3_lambda", "figures", c.figures.fig3_lambda);
    c.figures.fig3_l0 = get_list<int>(f, "fig3_l0", "figures", c.figures.fig3_l0);
  }
  validate(c);
  return c;
}

inline RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_error, fmt::format("cannot open config file '{}'", path));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::config_error, fmt::format("{}: {}", path, e.what()));
  }
  return parse_config(j);
}

inline nlohmann::ordered_json to_json(const RunConfig& c)
{
  nlohmann::ordered_json lambda;
  if (c.lambda.values.empty())
    lambda = {{"min", c.lambda.min}, {"max", c.lambda.max}, {"count", c.lambda.count}};
  else
    lambda = c.lambda.values;
  return {
    {"grid", {{"n", c.n}, {"half_width", c.half_width}}},
    {"beam", {{"w", c.w}, {"wavelength", c.wavelength}}},
    {"aperture", {{"lambda", lambda}, {"radius", c.aperture_radius}, {"power", c.aperture_power}}},
    {"l0", c.l0},
    {"z_rayleigh", c.z_rayleigh},
    {"output_dir", c.output_dir},
    {"figures",
     {{"fig1", c.figures.fig1},
      {"fig2", c.figures.fig2},
      {"fig3", c.figures.fig3},
      {"fig4", c.figures.fig4},
      {"fig1_lambda", c.figures.fig1_lambda},
      {"fig3_lambda", c.figures.fig3_lambda},
      {"fig3_l0", c.figures.fig3_l0}}},
    {"workers", c.workers},
  };
}

} // namespace oam
