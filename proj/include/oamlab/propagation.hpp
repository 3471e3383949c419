#pragma once

#include "oamlab/fft.hpp"
#include "oamlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oam
{

struct PropagatorSpec
{
  double distance = 0.0; ///< z, same length unit as the grid
  int pad_factor = 1;    ///< 1 or 2; 2 embeds the field in a zero-padded grid twice as wide
};

inline double rayleigh_length(double wavenumber, double w)
{
  return 0.5 * wavenumber * w * w;
}

namespace detail
{

// Radius in kappa containing all but `tail` of the spectral power.
inline double occupied_bandwidth(std::span<const cplx> spectrum, int n, double step, double tail)
{
  // Rings one frequency step wide.
  const double dk = 2.0 * std::numbers::pi / (n * step);
  std::vector<double> rings(std::size_t(n), 0.0);
  double total = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double ky = fft::angular_frequency(iy, n, step);
    for (int ix = 0; ix < n; ++ix) {
      const double kx = fft::angular_frequency(ix, n, step);
      const double p = std::norm(spectrum[std::size_t(iy) * n + ix]);
      total += p;
      rings[std::size_t(std::hypot(kx, ky) / dk)] += p;
    }
  }
  double outside = 0.0;
  for (std::size_t r = rings.size(); r-- > 0;) {
    outside += rings[r];
    if (outside > tail * total) return (double(r) + 1.0) * dk;
  }
  return 0.0;
}

// e^{ikz}. kz is ~1e8 rad at optical wavenumbers; splitting it exactly into hi + lo keeps
// e^{ik z1} e^{ik z2} == e^{ik(z1 + z2)} to round-off instead of to ulp(kz).
inline cplx carrier(double k, double z)
{
  const double hi = k * z;
  const double lo = std::fma(k, z, -hi);
  return std::polar(1.0, hi) * std::polar(1.0, lo);
}

inline std::vector<cplx> embed(const ScalarField& f, int big_n)
{
  const int n = f.grid().n;
  const int off = (big_n - n) / 2;
  std::vector<cplx> out(std::size_t(big_n) * big_n, cplx{});
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) out[std::size_t(iy + off) * big_n + ix + off] = f(ix, iy);
  return out;
}

} // namespace detail

/// Paraxial angular-spectrum propagation: F^-1{ exp[i(kz - kappa^2 z / 2k)] F[f] }.
inline ScalarField propagate(const ScalarField& f, const PropagatorSpec& spec)
{
  if (!(spec.distance >= 0.0) || !std::isfinite(spec.distance))
    throw Error(ErrorCode::invalid_argument, fmt::format("propagation distance {} must be >= 0", spec.distance));
  if (spec.pad_factor != 1 && spec.pad_factor != 2)
    throw Error(ErrorCode::invalid_argument, "pad_factor must be 1 or 2");

  const int n = f.grid().n;
  const int big_n = n * spec.pad_factor;
  const double step = f.grid().step();
  const double k = f.wavenumber();
  const double z = spec.distance;

  std::vector<cplx> data =
    spec.pad_factor == 1 ? std::vector<cplx>(f.samples().begin(), f.samples().end()) : detail::embed(f, big_n);
  fft::transform_2d(data, big_n, fft::Direction::forward);

  if (z > 0.0) {
    const double dk = 2.0 * std::numbers::pi / (big_n * step);
    const double band = detail::occupied_bandwidth(data, big_n, step, 1e-12);
    const double dphase = (2.0 * band * dk + dk * dk) * z / (2.0 * k);
    if (dphase >= std::numbers::pi)
      warn(WarningCode::sampling_violation,
           fmt::format("spectral chirp changes by {:.3g} rad between samples at z = {:.6g}", dphase, z));
  }

  const cplx carrier = detail::carrier(k, z);
  std::vector<double> kappa(big_n);
  for (int i = 0; i < big_n; ++i) kappa[i] = fft::angular_frequency(i, big_n, step);
  for (int iy = 0; iy < big_n; ++iy) {
    const double ky2 = kappa[iy] * kappa[iy];
    for (int ix = 0; ix < big_n; ++ix) {
      const double chirp = -(kappa[ix] * kappa[ix] + ky2) * z / (2.0 * k);
      data[std::size_t(iy) * big_n + ix] *= carrier * std::polar(1.0, chirp);
    }
  }
  fft::transform_2d(data, big_n, fft::Direction::inverse);

  if (spec.pad_factor == 1) return ScalarField(f.grid(), k, std::move(data));

  const int off = (big_n - n) / 2;
  std::vector<cplx> out(f.grid().size());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) out[std::size_t(iy) * n + ix] = data[std::size_t(iy + off) * big_n + ix + off];
  return ScalarField(f.grid(), k, std::move(out));
}

} // namespace oam
