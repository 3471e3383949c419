#pragma once

#include "oamlab/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace oam
{

using cplx = std::complex<double>;

/// Wavenumber used when none is given: 800 nm light with lengths in millimetres.
/// Observables never depend on it once distances are measured in Rayleigh lengths.
inline constexpr double kDefaultWavenumber = 2.0 * std::numbers::pi / 0.8e-3;

/// Square, cell-centred sampling of the transverse plane.
///
/// Sample (ix, iy) sits at x = (ix - n/2 + 1/2) * step, y = (iy - n/2 + 1/2) * step,
/// so no sample lands on the optical axis and the grid is mirror symmetric:
/// coord(n - 1 - i) == -coord(i) exactly.
struct GridSpec
{
  int n = 0;
  double half_width = 0.0;

  double step() const { return 2.0 * half_width / n; }
  double coord(int i) const { return (i - n / 2 + 0.5) * step(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline bool is_power_of_two(int n)
{
  return n > 0 && (n & (n - 1)) == 0;
}

inline GridSpec make_grid(int n, double half_width)
{
  if (n < 64 || !is_power_of_two(n))
    throw Error(ErrorCode::invalid_argument,
                fmt::format("grid size must be a power of two >= 64, got {}", n));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorCode::invalid_argument,
                fmt::format("grid half_width must be positive, got {}", half_width));
  return GridSpec{n, half_width};
}

/// Immutable sampled complex field. Storage is row-major with rows of constant y:
/// index = iy * n + ix.
class ScalarField
{
public:
  ScalarField(GridSpec grid, double wavenumber, std::vector<cplx> samples)
    : grid_(grid), wavenumber_(wavenumber), samples_(std::move(samples))
  {
    if (samples_.size() != grid_.size())
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("field has {} samples, grid needs {}", samples_.size(), grid_.size()));
    if (!(wavenumber_ > 0.0))
      throw Error(ErrorCode::invalid_argument, "wavenumber must be positive");
  }

  template <class Fn>
  static ScalarField from_function(GridSpec grid, double wavenumber, Fn&& fn)
  {
    std::vector<cplx> s(grid.size());
    for (int iy = 0; iy < grid.n; ++iy) {
      const double y = grid.coord(iy);
      for (int ix = 0; ix < grid.n; ++ix)
        s[static_cast<std::size_t>(iy) * grid.n + ix] = fn(grid.coord(ix), y);
    }
    return ScalarField(grid, wavenumber, std::move(s));
  }

  const GridSpec& grid() const { return grid_; }
  double wavenumber() const { return wavenumber_; }
  std::span<const cplx> samples() const { return samples_; }

  cplx operator()(int ix, int iy) const
  {
    return samples_[static_cast<std::size_t>(iy) * grid_.n + ix];
  }

  ScalarField scaled(cplx factor) const
  {
    std::vector<cplx> s(samples_);
    for (auto& v : s) v *= factor;
    return ScalarField(grid_, wavenumber_, std::move(s));
  }

  ScalarField conjugated() const
  {
    std::vector<cplx> s(samples_);
    for (auto& v : s) v = std::conj(v);
    return ScalarField(grid_, wavenumber_, std::move(s));
  }

  /// y -> -y reflection (row iy <-> row n-1-iy).
  ScalarField mirrored_y() const
  {
    std::vector<cplx> s(samples_.size());
    const std::size_t n = grid_.n;
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t ix = 0; ix < n; ++ix)
        s[iy * n + ix] = samples_[(n - 1 - iy) * n + ix];
    return ScalarField(grid_, wavenumber_, std::move(s));
  }

private:
  GridSpec grid_;
  double wavenumber_;
  std::vector<cplx> samples_;
};

/// Laguerre-Gaussian mode with radial index p = 0.
struct LGModeSpec
{
  int l0 = 0;
  double w = 1.0;
};

/// |u| at rho = half_width relative to the ring maximum at rho = w sqrt(|l0|/2).
inline double lg_edge_amplitude_ratio(const GridSpec& grid, const LGModeSpec& spec)
{
  const double l = std::abs(spec.l0);
  const double r = grid.half_width / spec.w;
  const double r_peak = std::sqrt(l / 2.0);
  const double log_ratio =
    (l > 0 ? l * (std::log(r) - std::log(r_peak)) : 0.0) - (r * r - r_peak * r_peak);
  return std::exp(log_ratio);
}

inline void require_same_grid(const ScalarField& f, const ScalarField& g)
{
  if (!(f.grid() == g.grid()))
    throw Error(ErrorCode::grid_mismatch,
                fmt::format("grids differ (n={} hw={} vs n={} hw={})", f.grid().n, f.grid().half_width,
                            g.grid().n, g.grid().half_width));
}

/// Riemann sum of conj(f) g with weight step^2.
inline cplx inner_product(const ScalarField& f, const ScalarField& g)
{
  require_same_grid(f, g);
  const auto a = f.samples();
  const auto b = g.samples();
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  const double h2 = f.grid().step() * f.grid().step();
  return {re * h2, im * h2};
}

inline double total_power(const ScalarField& f)
{
  double p = 0.0;
  for (const auto& v : f.samples()) p += std::norm(v);
  return p * f.grid().step() * f.grid().step();
}

inline ScalarField normalize(const ScalarField& f)
{
  const double p = total_power(f);
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::zero_power, fmt::format("cannot normalize a field with power {}", p));
  return f.scaled(1.0 / std::sqrt(p));
}

/// u_l0 = N (rho/w)^|l0| e^{i l0 phi} e^{-rho^2/w^2}, normalized numerically on the grid.
///
/// The helical factor is evaluated as ((x +- i y)/w)^|l0| so that u_{-l0} is the exact
/// sample-wise conjugate of u_{+l0}.
inline ScalarField lg_mode(const GridSpec& grid, const LGModeSpec& spec,
                           double wavenumber = kDefaultWavenumber)
{
  if (!(spec.w > 0.0))
    throw Error(ErrorCode::invalid_argument, "beam waist w must be positive");
  const double ratio = lg_edge_amplitude_ratio(grid, spec);
  if (ratio >= 1e-8)
    warn(WarningCode::aliasing,
         fmt::format("LG mode l0={} has edge amplitude {:.3g} of peak at rho = half_width = {}", spec.l0,
                     ratio, grid.half_width));

  const int order = std::abs(spec.l0);
  const double sign = spec.l0 >= 0 ? 1.0 : -1.0;
  const double inv_w = 1.0 / spec.w;
  auto field = ScalarField::from_function(grid, wavenumber, [&](double x, double y) {
    const double xs = x * inv_w;
    const double ys = sign * y * inv_w;
    double re = 1.0, im = 0.0;
    for (int k = 0; k < order; ++k) {
      const double t = re * xs - im * ys;
      im = re * ys + im * xs;
      re = t;
    }
    const double g = std::exp(-(xs * xs + ys * ys));
    return cplx(re * g, im * g);
  });
  return normalize(field);
}

// ---------------------------------------------------------------------------
// Text dump: "# oamfield v1 n=<int> half_width=<float> k=<float>" followed by n rows
// (constant y, increasing), each holding n "re im" pairs.

inline void write_field(std::ostream& out, const ScalarField& f)
{
  const auto& g = f.grid();
  out << fmt::format("# oamfield v1 n={} half_width={} k={}\n", g.n, g.half_width, f.wavenumber());
  for (int iy = 0; iy < g.n; ++iy) {
    std::string line;
    for (int ix = 0; ix < g.n; ++ix) {
      const cplx v = f(ix, iy);
      if (ix) line += ' ';
      line += fmt::format("{} {}", v.real(), v.imag());
    }
    line += '\n';
    out << line;
  }
}

inline ScalarField read_field(std::istream& in)
{
  std::string header;
  if (!std::getline(in, header))
    throw Error(ErrorCode::invalid_argument, "empty field dump");
  int n = 0;
  double hw = 0.0, k = 0.0;
  char tail = 0;
  if (std::sscanf(header.c_str(), "# oamfield v1 n=%d half_width=%lf k=%lf%c", &n, &hw, &k, &tail) != 3)
    throw Error(ErrorCode::invalid_argument, "bad field dump header: " + header);
  const GridSpec grid = make_grid(n, hw);
  std::vector<cplx> s(grid.size());
  for (auto& v : s) {
    double re = 0.0, im = 0.0;
    if (!(in >> re >> im))
      throw Error(ErrorCode::invalid_argument, "truncated field dump");
    v = {re, im};
  }
  return ScalarField(grid, k, std::move(s));
}

} // namespace oam
