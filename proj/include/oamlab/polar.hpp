#pragma once

#include "oamlab/field.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace oam
{

/// Midpoint radii rho_i = (i + 1/2) d_rho up to max_radius, angles phi_j = -pi + j 2pi/n_phi.
struct PolarGrid
{
  int n_rho = 0;
  int n_phi = 0;
  double max_radius = 0.0;

  double d_rho() const { return max_radius / n_rho; }
  double d_phi() const { return 2.0 * std::numbers::pi / n_phi; }
  double rho(int i) const { return (i + 0.5) * d_rho(); }
  double phi(int j) const { return -std::numbers::pi + j * d_phi(); }
};

/// n/2 radii out to half_width.
inline PolarGrid default_polar_grid(const GridSpec& grid, int n_phi = 1024)
{
  return PolarGrid{grid.n / 2, n_phi, grid.half_width};
}

struct PolarSamples
{
  PolarGrid grid;
  std::vector<cplx> values; ///< [i_rho * n_phi + j_phi]

  cplx operator()(int i_rho, int j_phi) const { return values[std::size_t(i_rho) * grid.n_phi + j_phi]; }
};

namespace detail
{

// Keys cubic convolution kernel, a = -1/2.
inline std::array<double, 4> keys_weights(double t)
{
  constexpr double a = -0.5;
  auto far = [](double s) { return a * s * s * s - 5.0 * a * s * s + 8.0 * a * s - 4.0 * a; };
  auto near = [](double s) { return (a + 2.0) * s * s * s - (a + 3.0) * s * s + 1.0; };
  return {far(1.0 + t), near(t), near(1.0 - t), far(2.0 - t)};
}

} // namespace detail

/// Bicubic (Keys) resampling of f onto a polar grid. Stencil points beyond the Cartesian
/// domain read as zero.
inline PolarSamples resample_polar(const ScalarField& f, const PolarGrid& polar)
{
  const auto& g = f.grid();
  if (polar.n_rho < 1 || polar.n_phi < 1)
    throw Error(ErrorCode::invalid_argument, "polar grid needs at least one radius and one angle");
  if (polar.max_radius > g.half_width * (1.0 + 1e-12))
    throw Error(ErrorCode::interpolation_out_of_range,
                fmt::format("polar radius {} exceeds the grid half width {}", polar.max_radius, g.half_width));

  const double inv_step = 1.0 / g.step();
  const int n = g.n;
  auto sample = [&](int ix, int iy) -> cplx {
    if (ix < 0 || iy < 0 || ix >= n || iy >= n) return {};
    return f(ix, iy);
  };

  std::vector<double> cos_phi(polar.n_phi), sin_phi(polar.n_phi);
  for (int j = 0; j < polar.n_phi; ++j) {
    cos_phi[j] = std::cos(polar.phi(j));
    sin_phi[j] = std::sin(polar.phi(j));
  }

  PolarSamples out{polar, std::vector<cplx>(std::size_t(polar.n_rho) * polar.n_phi)};
  for (int i = 0; i < polar.n_rho; ++i) {
    const double r = polar.rho(i);
    for (int j = 0; j < polar.n_phi; ++j) {
      // Continuous index u with sample ix at u == ix.
      const double u = (r * cos_phi[j] + g.half_width) * inv_step - 0.5;
      const double v = (r * sin_phi[j] + g.half_width) * inv_step - 0.5;
      const int ix0 = static_cast<int>(std::floor(u));
      const int iy0 = static_cast<int>(std::floor(v));
      const auto wx = detail::keys_weights(u - ix0);
      const auto wy = detail::keys_weights(v - iy0);
      cplx acc{};
      for (int b = 0; b < 4; ++b) {
        cplx row{};
        for (int a = 0; a < 4; ++a) row += wx[a] * sample(ix0 - 1 + a, iy0 - 1 + b);
        acc += wy[b] * row;
      }
      out.values[std::size_t(i) * polar.n_phi + j] = acc;
    }
  }
  return out;
}

} // namespace oam
