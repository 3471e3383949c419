#pragma once

#include "oamlab/field.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace oam
{

/// Gaussian-in-angle, super-Gaussian-in-radius screen centred on the beam axis.
struct AngularApertureSpec
{
  double lambda_width = 1.0; ///< angular confinement; larger is narrower
  double radius = 3.0;       ///< super-Gaussian radius a (length units)
  int power = 12;            ///< super-Gaussian power m

  void validate() const
  {
    if (!(lambda_width >= 1e-4 && lambda_width <= 1e4))
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("aperture lambda {} outside [1e-4, 1e4]", lambda_width));
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw Error(ErrorCode::invalid_argument, fmt::format("aperture radius {} must be positive", radius));
    if (power < 1)
      throw Error(ErrorCode::invalid_argument, fmt::format("aperture power {} must be >= 1", power));
  }
};

/// (lambda/pi)^{1/4} / sqrt(erf(pi sqrt(lambda))): makes the angular factor a unit-norm
/// wavefunction on [-pi, pi].
inline double angular_prefactor(double lambda)
{
  return std::pow(lambda / std::numbers::pi, 0.25) /
         std::sqrt(std::erf(std::numbers::pi * std::sqrt(lambda)));
}

inline double transmission(const AngularApertureSpec& spec, double x, double y)
{
  const double phi = std::atan2(y, x);
  const double rho = std::hypot(x, y);
  return angular_prefactor(spec.lambda_width) * std::exp(-0.5 * spec.lambda_width * phi * phi) *
         std::exp(-std::pow(rho / spec.radius, 2 * spec.power));
}

/// t sampled on a grid. Sweeps apply one map to many input modes.
class TransmissionMap
{
public:
  TransmissionMap(const GridSpec& grid, const AngularApertureSpec& spec) : grid_(grid), spec_(spec)
  {
    spec.validate();
    values_.resize(grid.size());
    for (int iy = 0; iy < grid.n; ++iy) {
      const double y = grid.coord(iy);
      for (int ix = 0; ix < grid.n; ++ix)
        values_[std::size_t(iy) * grid.n + ix] = transmission(spec, grid.coord(ix), y);
    }
  }

  const GridSpec& grid() const { return grid_; }
  const AngularApertureSpec& spec() const { return spec_; }
  std::span<const double> values() const { return values_; }

private:
  GridSpec grid_;
  AngularApertureSpec spec_;
  std::vector<double> values_;
};

struct ApertureOutput
{
  ScalarField field;           ///< t f renormalized to unit power
  double transmitted_fraction; ///< power passed by the screen scaled to unit peak transmission
};

inline ApertureOutput apply_aperture(const ScalarField& f, const TransmissionMap& t)
{
  if (!(f.grid() == t.grid()))
    throw Error(ErrorCode::grid_mismatch, "transmission map and field use different grids");
  const auto in = f.samples();
  const auto tv = t.values();
  std::vector<cplx> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * tv[i];
  ScalarField transmitted(f.grid(), f.wavenumber(), std::move(out));

  const double p_in = total_power(f);
  const double p_out = total_power(transmitted);
  if (!(p_out > 0.0))
    throw Error(ErrorCode::zero_power, "aperture annihilated the field");
  const double peak = angular_prefactor(t.spec().lambda_width);
  return {normalize(transmitted), p_out / (p_in * peak * peak)};
}

inline ApertureOutput apply_aperture(const ScalarField& f, const AngularApertureSpec& spec)
{
  return apply_aperture(f, TransmissionMap(f.grid(), spec));
}

} // namespace oam
