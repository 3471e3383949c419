#pragma once

#include "oamlab/aperture.hpp"
#include "oamlab/fft.hpp"
#include "oamlab/field.hpp"
#include "oamlab/polar.hpp"
#include "oamlab/special.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

namespace oam
{

/// P(l) for l in [l_min, l_max].
struct OamSpectrum
{
  int l_min = 0;
  int l_max = -1;
  std::vector<double> probs;

  double at(int l) const { return (l < l_min || l > l_max) ? 0.0 : probs[std::size_t(l - l_min)]; }

  double total() const
  {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
  }

  double mean() const
  {
    double s = 0.0;
    for (int l = l_min; l <= l_max; ++l) s += l * at(l);
    return s / total();
  }

  double variance() const
  {
    const double m = mean();
    double s = 0.0;
    for (int l = l_min; l <= l_max; ++l) s += (l - m) * (l - m) * at(l);
    return s / total();
  }
};

/// P(phi_j) on phi_j = -pi + j 2pi/n (1/radian).
struct AngularDensity
{
  std::vector<double> probs;

  int n_phi() const { return static_cast<int>(probs.size()); }
  double step() const { return 2.0 * std::numbers::pi / n_phi(); }
  double phi(int j) const { return -std::numbers::pi + j * step(); }
};

struct IntelligentStateParams
{
  double lambda_width = 1.0;
  double l_bar = 0.0;
};

struct UncertaintyReport
{
  double delta_phi = 0.0;
  double delta_l = 0.0;
  double p_boundary = 0.0; ///< P(pi)
  double product_gap = 0.0; ///< delta_phi delta_l - |1 - 2 pi P(pi)| / 2
};

// ---------------------------------------------------------------------------
// Densities of sampled fields

inline AngularDensity angular_density(const ScalarField& f, int n_phi = 1024)
{
  if (n_phi < 256)
    throw Error(ErrorCode::invalid_argument, fmt::format("n_phi must be >= 256, got {}", n_phi));
  const PolarGrid polar = default_polar_grid(f.grid(), n_phi);
  const PolarSamples ps = resample_polar(f, polar);

  AngularDensity out{std::vector<double>(n_phi, 0.0)};
  for (int i = 0; i < polar.n_rho; ++i) {
    const double w = polar.rho(i) * polar.d_rho();
    for (int j = 0; j < n_phi; ++j) out.probs[j] += std::norm(ps(i, j)) * w;
  }
  double integral = 0.0;
  for (double p : out.probs) integral += p * polar.d_phi();
  if (!(integral > 0.0))
    throw Error(ErrorCode::zero_power, "field has no power inside the polar disc");
  for (double& p : out.probs) p /= integral;
  return out;
}

/// OAM spectrum from the azimuthal Fourier series of a polar resampling:
/// c_l(rho) = (1/2pi) \int psi(rho, phi) e^{-i l phi} dphi, P(l) = 2pi \int |c_l|^2 rho drho,
/// divided by the power of the resampled disc so an unobstructed u_l0 gives P(l0) = 1.
inline OamSpectrum oam_spectrum(const ScalarField& f, int l_min, int l_max, int n_phi = 1024)
{
  if (l_max < l_min)
    throw Error(ErrorCode::invalid_argument, "l_max must be >= l_min");
  if (l_max - l_min >= n_phi)
    throw Error(ErrorCode::invalid_argument, "l range wider than the azimuthal sampling");
  const PolarGrid polar = default_polar_grid(f.grid(), n_phi);
  PolarSamples ps = resample_polar(f, polar);
  fft::transform_rows(ps.values, n_phi, polar.n_rho, fft::Direction::forward);

  // |c_l|^2 = |DFT_l|^2 / n_phi^2; the e^{i l pi} offset from phi_0 = -pi drops out.
  std::vector<double> raw(n_phi, 0.0);
  const double scale = 2.0 * std::numbers::pi / (double(n_phi) * n_phi);
  for (int i = 0; i < polar.n_rho; ++i) {
    const double w = polar.rho(i) * polar.d_rho() * scale;
    for (int m = 0; m < n_phi; ++m) raw[m] += std::norm(ps(i, m)) * w;
  }
  double annulus = 0.0;
  for (double r : raw) annulus += r;
  if (!(annulus > 0.0))
    throw Error(ErrorCode::zero_power, "field has no power inside the polar disc");

  OamSpectrum out{l_min, l_max, std::vector<double>(std::size_t(l_max - l_min + 1))};
  for (int l = l_min; l <= l_max; ++l) {
    const int m = ((l % n_phi) + n_phi) % n_phi;
    out.probs[std::size_t(l - l_min)] = raw[m] / annulus;
  }
  const double mass = out.total();
  if (mass < 1.0 - 1e-4)
    warn(WarningCode::mass_deficit,
         fmt::format("spectrum over l in [{}, {}] holds only {:.6f} of the power", l_min, l_max, mass));
  return out;
}

// ---------------------------------------------------------------------------
// Intelligent states

/// g(phi) = (lambda/pi)^{1/4} / sqrt(erf(pi sqrt(lambda))) e^{i lbar phi} e^{-lambda phi^2 / 2}.
inline cplx intelligent_angle_wavefunction(const IntelligentStateParams& p, double phi)
{
  const double mag = angular_prefactor(p.lambda_width) * std::exp(-0.5 * p.lambda_width * phi * phi);
  return std::polar(mag, p.l_bar * phi);
}

/// g(l) = (1/sqrt(2pi)) \int_{-pi}^{pi} e^{-i l phi} g(phi) dphi by adaptive quadrature.
/// The Gaussian is centred on the symmetric interval, so the sine part vanishes and g(l) is real.
inline cplx intelligent_oam_amplitude(const IntelligentStateParams& p, int l)
{
  if (!(p.lambda_width > 0.0))
    throw Error(ErrorCode::invalid_argument, "intelligent state needs lambda > 0");
  const double q = p.l_bar - l;
  const double lam = p.lambda_width;
  // About one period per panel keeps the Kronrod error estimate honest for large |q|.
  const int panels = 1 + static_cast<int>(std::abs(q) / 2.0);
  const double width = std::numbers::pi / panels;
  double half = 0.0;
  for (int i = 0; i < panels; ++i)
    half += special::integrate([&](double phi) { return std::cos(q * phi) * std::exp(-0.5 * lam * phi * phi); },
                               i * width, (i + 1) * width, 1e-14);
  const double re = angular_prefactor(lam) * 2.0 * half / std::sqrt(2.0 * std::numbers::pi);
  return {re, 0.0};
}

inline OamSpectrum intelligent_spectrum(const IntelligentStateParams& p, int l_min, int l_max)
{
  OamSpectrum out{l_min, l_max, std::vector<double>(std::size_t(l_max - l_min + 1))};
  for (int l = l_min; l <= l_max; ++l) out.probs[std::size_t(l - l_min)] = std::norm(intelligent_oam_amplitude(p, l));
  return out;
}

/// Angular spread of the truncated Gaussian with parameter lambda:
/// (dphi)^2 = 1/(2 lambda) - sqrt(pi) e^{-pi^2 lambda} / (sqrt(lambda) erf(pi sqrt(lambda))).
inline double delta_phi_of_lambda(double lambda)
{
  using std::numbers::pi;
  if (!(lambda > 0.0))
    throw Error(ErrorCode::invalid_argument, fmt::format("lambda must be positive, got {}", lambda));
  // Below 1e-6 the two terms cancel to ~1e-10 relative; the small-lambda expansion is exact there.
  if (lambda < 1e-6) return std::sqrt(pi * pi / 3.0 - 4.0 * std::pow(pi, 4) * lambda / 45.0);
  const double s = std::sqrt(lambda);
  return std::sqrt(0.5 / lambda - std::sqrt(pi) * std::exp(-pi * pi * lambda) / (s * std::erf(pi * s)));
}

/// dl = lambda dphi.
inline double delta_l_of_lambda(double lambda)
{
  return lambda * delta_phi_of_lambda(lambda);
}

// ---------------------------------------------------------------------------
// Uncertainty relation

inline UncertaintyReport uncertainty_report(const AngularDensity& ad, const OamSpectrum& os)
{
  using std::numbers::pi;
  const int n = ad.n_phi();
  const double h = ad.step();

  // Trapezoid on [-pi, pi]: the phi_0 = -pi sample stands for both ends. phi P(phi) takes
  // opposite values there, so it contributes nothing to the mean.
  double mean = 0.0, second = 0.0;
  for (int j = 0; j < n; ++j) {
    const double phi = ad.phi(j);
    if (j != 0) mean += phi * ad.probs[j] * h;
    second += phi * phi * ad.probs[j] * h;
  }
  const double delta_phi = std::sqrt(std::max(0.0, second - mean * mean));
  const double delta_l = std::sqrt(std::max(0.0, os.variance()));

  const auto nearest = [&](double target) {
    const long j = std::lround((target + pi) / h);
    return static_cast<int>(((j % n) + n) % n);
  };
  const double p_boundary = 0.5 * (ad.probs[nearest(-pi)] + ad.probs[nearest(pi)]);
  const double bound = 0.5 * std::abs(1.0 - 2.0 * pi * p_boundary);
  return {delta_phi, delta_l, p_boundary, delta_phi * delta_l - bound};
}

// ---------------------------------------------------------------------------
// One-parameter fit

struct IntelligentFit
{
  IntelligentStateParams params;
  double residual = 0.0; ///< sum over the spectrum range of (P(l) - |g(l)|^2)^2
};

inline double fit_objective(const OamSpectrum& os, const IntelligentStateParams& p)
{
  double s = 0.0;
  for (int l = os.l_min; l <= os.l_max; ++l) {
    const double d = os.at(l) - std::norm(intelligent_oam_amplitude(p, l));
    s += d * d;
  }
  return s;
}

/// Least-squares lambda for a spectrum with fixed mean, by coarse log-spaced bracketing then
/// golden-section search in log lambda over [1e-3, 1e4].
inline IntelligentFit fit_intelligent(const OamSpectrum& os, double l_bar_fixed)
{
  const double lo = std::log(1e-3), hi = std::log(1e4);
  auto objective = [&](double log_lambda) {
    return fit_objective(os, {std::exp(log_lambda), l_bar_fixed});
  };

  constexpr int scan = 57;
  std::vector<double> xs(scan), fs(scan);
  int best = 0;
  for (int i = 0; i < scan; ++i) {
    xs[i] = lo + (hi - lo) * i / (scan - 1);
    fs[i] = objective(xs[i]);
    if (fs[i] < fs[best]) best = i;
  }
  if (best == 0 || best == scan - 1)
    throw Error(ErrorCode::no_bracket, "fit objective is monotone over lambda in [1e-3, 1e4]");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = xs[best - 1], b = xs[best + 1];
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {{std::exp(x), l_bar_fixed}, objective(x)};
}

// ---------------------------------------------------------------------------
// Aperture-on-Gaussian check

/// A Gaussian beam behind an angular aperture, compared with the intelligent-state model.
struct IntelligentStateCheck
{
  double lambda_width = 0.0;
  IntelligentFit fit;
  OamSpectrum numeric;   ///< over the fit range
  OamSpectrum fitted;    ///< |g(l)|^2 at the fitted lambda, same range
  double sup_error = 0.0;
  UncertaintyReport uncertainty; ///< delta_l from the wide spectrum
};

inline IntelligentStateCheck intelligent_state_check(const GridSpec& grid, const AngularApertureSpec& aperture,
                                                     double w = 1.0, double wavenumber = kDefaultWavenumber,
                                                     int fit_range = 30)
{
  const auto psi = apply_aperture(lg_mode(grid, {0, w}, wavenumber), aperture).field;
  IntelligentStateCheck c;
  c.lambda_width = aperture.lambda_width;
  c.numeric = oam_spectrum(psi, -fit_range, fit_range);
  c.fit = fit_intelligent(c.numeric, 0.0);
  c.fitted = intelligent_spectrum(c.fit.params, -fit_range, fit_range);
  for (int l = -fit_range; l <= fit_range; ++l)
    c.sup_error = std::max(c.sup_error, std::abs(c.numeric.at(l) - c.fitted.at(l)));
  // The second moment converges like 1/l_max, so it takes every harmonic the sampling holds.
  const int n_phi = 1024;
  const auto wide = oam_spectrum(psi, -n_phi / 2 + 1, n_phi / 2 - 1, n_phi);
  c.uncertainty = uncertainty_report(angular_density(psi, n_phi), wide);
  return c;
}

// ---------------------------------------------------------------------------
// CSV export

inline void write_spectrum_csv(std::ostream& out, const OamSpectrum& os)
{
  out << "l,P_l\n";
  for (int l = os.l_min; l <= os.l_max; ++l) out << fmt::format("{},{}\n", l, os.at(l));
}

inline void write_density_csv(std::ostream& out, const AngularDensity& ad)
{
  out << "phi[rad],P_phi[1/rad]\n";
  for (int j = 0; j < ad.n_phi(); ++j) out << fmt::format("{},{}\n", ad.phi(j), ad.probs[j]);
}

} // namespace oam
