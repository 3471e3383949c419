#pragma once

#include "oamlab/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <numbers>

namespace oam::special
{

/// e^{-y^2} erf(x + i y).
///
/// Abramowitz & Stegun 7.1.29: erf(x) plus a Gaussian-weighted series in n whose cosh(ny),
/// sinh(ny) growth is cancelled term by term against the e^{-y^2} prefactor. Works for
/// arguments whose unscaled erf overflows (|y| up to ~1e150); absolute error is a few ulp
/// of the scaled magnitude.
inline std::complex<double> erf_scaled(std::complex<double> z)
{
  using std::numbers::pi;
  double x = z.real();
  double y = z.imag();
  if (x < 0.0) // erf(-z) = -erf(z); e^{-y^2} is even in y
    return -erf_scaled({-x, -y});

  const double ey2 = std::exp(-y * y);
  const double ex2 = std::exp(-x * x);
  const double c2 = std::cos(2.0 * x * y);
  const double s2 = std::sin(2.0 * x * y);

  double re = ey2 * std::erf(x);
  double im = 0.0;

  if (x > 0.0) {
    const double sxy = std::sin(x * y);
    re += ex2 * ey2 * sxy * sxy / (pi * x);
    im += ex2 * ey2 * s2 / (2.0 * pi * x);
  } else {
    im += ey2 * y / pi;
  }

  double sum_re = 0.0, sum_im = 0.0;
  const int n_max = static_cast<int>(std::ceil(2.0 * std::abs(y) + 20.0));
  for (int n = 1; n <= n_max; ++n) {
    const double h = 0.5 * n;
    const double e_minus = std::exp(-(y - h) * (y - h));
    const double e_plus = std::exp(-(y + h) * (y + h));
    const double ch = 0.5 * (e_minus + e_plus);
    const double sh = 0.5 * (e_minus - e_plus);
    const double lead = std::exp(-y * y - h * h);
    const double denom = double(n) * n + 4.0 * x * x;
    sum_re += (2.0 * x * lead - 2.0 * x * ch * c2 + n * sh * s2) / denom;
    sum_im += (2.0 * x * ch * s2 + n * sh * c2) / denom;
  }
  re += (2.0 / pi) * ex2 * sum_re;
  im += (2.0 / pi) * ex2 * sum_im;
  return {re, im};
}

/// erf of a complex argument. Overflows to inf once y^2 exceeds ~709; use erf_scaled there.
inline std::complex<double> erf(std::complex<double> z)
{
  return std::exp(z.imag() * z.imag()) * erf_scaled(z);
}

/// e^{-y^2} Re erf(x + i y), through Re[erf(z)] = [erf(z) + erf(conj z)] / 2.
inline double erf_real_part_scaled(double x, double y)
{
  const auto a = erf_scaled({x, y});
  const auto b = erf_scaled({x, -y});
  return 0.5 * (a + b).real();
}

namespace detail
{

struct Panel
{
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool converged = true;
};

// Bisection on top of the fixed G30/K61 rule. Boost's own recursion halves an absolute
// tolerance at every level and never stops on near-cancelling integrands; here each panel
// accepts once its error is below its share of the budget or at the round-off floor.
template <class F>
Panel adaptive_panel(F& f, double a, double b, double tol, unsigned depth)
{
  using boost::math::quadrature::gauss_kronrod;
  Panel p;
  p.value = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  // Integrands like cos(q phi) at q ~ 400 carry ~1e-13 relative noise, which the Kronrod
  // error formula inflates to a few 1e-12.
  const double floor = 1e-10 * p.l1;
  if (p.error <= std::max(tol, floor)) return p;
  if (depth == 0) {
    p.converged = false;
    return p;
  }
  const double mid = 0.5 * (a + b);
  const Panel left = adaptive_panel(f, a, mid, tol / std::numbers::sqrt2, depth - 1);
  const Panel right = adaptive_panel(f, mid, b, tol / std::numbers::sqrt2, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1,
          left.converged && right.converged};
}

} // namespace detail

/// Adaptive Gauss-Kronrod (G30/K61) integration with an absolute error budget.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-13, unsigned max_depth = 18)
{
  const detail::Panel p = detail::adaptive_panel(f, a, b, abs_tol, max_depth);
  if (!p.converged || !std::isfinite(p.value))
    throw Error(ErrorCode::quadrature_nonconvergence,
                fmt::format("integral over [{}, {}] did not converge (estimate {}, error {})", a, b, p.value,
                            p.error));
  return p.value;
}

} // namespace oam::special
