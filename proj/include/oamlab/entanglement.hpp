#pragma once

#include "oamlab/aperture.hpp"
#include "oamlab/field.hpp"
#include "oamlab/oam_analysis.hpp"
#include "oamlab/propagation.hpp"
#include "oamlab/special.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace oam
{

struct BiphotonRunSpec
{
  int l0 = 1;
  AngularApertureSpec aperture;
  GridSpec grid;
  double w = 1.0;
  double wavenumber = kDefaultWavenumber;
  double z = 0.0; ///< common propagation distance applied to both photons before the overlap
};

struct EntanglementResult
{
  int l0 = 0;
  double lambda_width = 0.0;
  double b_numeric = 0.0;
  double b_imag = 0.0; ///< residual imaginary part of the numeric overlap
  double b_analytic = 0.0;
  double b_gaussian = 0.0;
  double concurrence = 0.0;
  double delta_phi = 0.0;
};

/// C = (1 - b^2) / (1 + b^2) for the symmetric two-photon superposition.
inline double concurrence_from_overlap(double b)
{
  const double a = std::abs(b);
  if (!(a <= 1.0 + 1e-9))
    throw Error(ErrorCode::domain_error, fmt::format("overlap |b| = {} exceeds 1", a));
  const double b2 = std::min(a, 1.0) * std::min(a, 1.0);
  return (1.0 - b2) / (1.0 + b2);
}

/// Overlap of intelligent states with mean OAM -l0 and +l0:
/// b = e^{-l0^2/lambda} Re erf((pi lambda + i l0)/sqrt(lambda)) / erf(pi sqrt(lambda)).
inline double overlap_analytic(double lambda, int l0)
{
  if (!(lambda > 0.0))
    throw Error(ErrorCode::invalid_argument, fmt::format("lambda must be positive, got {}", lambda));
  const double s = std::sqrt(lambda);
  const double x = std::numbers::pi * s;
  const double y = l0 / s;
  // erf_real_part_scaled carries the e^{-y^2} = e^{-l0^2/lambda} factor.
  const double value = special::erf_real_part_scaled(x, y) / std::erf(x);
  if (!std::isfinite(value))
    throw Error(ErrorCode::domain_error, fmt::format("overlap did not converge at lambda={} l0={}", lambda, l0));
  return value;
}

/// Independent route to the same overlap: direct quadrature of
/// (lambda/pi)^{1/2} / erf(pi sqrt(lambda)) \int_{-pi}^{pi} e^{2 i l0 phi} e^{-lambda phi^2} dphi.
inline double overlap_by_quadrature(double lambda, int l0)
{
  if (!(lambda > 0.0))
    throw Error(ErrorCode::invalid_argument, fmt::format("lambda must be positive, got {}", lambda));
  const double half = special::integrate(
    [&](double phi) { return std::cos(2.0 * l0 * phi) * std::exp(-lambda * phi * phi); }, 0.0,
    std::numbers::pi, 1e-15);
  return 2.0 * half * std::sqrt(lambda / std::numbers::pi) / std::erf(std::numbers::pi * std::sqrt(lambda));
}

/// e^{-2 (l0 dphi(lambda))^2}.
inline double overlap_gaussian_approx(double lambda, int l0)
{
  const double x = l0 * delta_phi_of_lambda(lambda);
  return std::exp(-2.0 * x * x);
}

/// tanh(2 l0^2 dphi^2).
inline double universal_concurrence(int l0, double delta_phi)
{
  if (!(delta_phi >= 0.0))
    throw Error(ErrorCode::invalid_argument, "delta_phi must be >= 0");
  const double x = l0 * delta_phi;
  return std::tanh(2.0 * x * x);
}

/// Concurrence of (|a>|-a> + |-a>|a>)/N for coherent states |+-a>, |a| = alpha.
///
/// Works in the orthonormal basis e1 ~ |a> + |-a>, e2 ~ |a> - |-a>: the two-photon state is a
/// 2x2 coefficient matrix M and C = 2|det M|.
inline double coherent_state_concurrence(double alpha)
{
  if (!(alpha >= 0.0))
    throw Error(ErrorCode::invalid_argument, "alpha must be >= 0");
  const double s = std::exp(-2.0 * alpha * alpha); // <a|-a>
  const double c1 = std::sqrt(0.5 * (1.0 + s));
  const double c2 = std::sqrt(0.5 * (1.0 - s));
  // |a> = (c1, c2), |-a> = (c1, -c2)
  const double norm = std::sqrt(2.0 * (1.0 + s * s));
  const double m11 = (c1 * c1 + c1 * c1) / norm;
  const double m12 = (-c1 * c2 + c2 * c1) / norm;
  const double m21 = (c2 * c1 - c1 * c2) / norm;
  const double m22 = (-c2 * c2 - c2 * c2) / norm;
  return 2.0 * std::abs(m11 * m22 - m12 * m21);
}

/// Coherent-state concurrence, checked against the universal law at l0 dphi = alpha.
inline double coherent_state_identity_check(double alpha)
{
  const double c = coherent_state_concurrence(alpha);
  const double u = std::tanh(2.0 * alpha * alpha);
  if (std::abs(c - u) > 1e-12)
    throw Error(ErrorCode::domain_error,
                fmt::format("coherent-state concurrence {} differs from tanh(2 alpha^2) = {}", c, u));
  return c;
}

/// The two diffracted photon fields psi_{+l0}, psi_{-l0} (renormalized, optionally propagated).
struct DiffractedPair
{
  ScalarField plus;
  ScalarField minus;
};

inline DiffractedPair diffract_pair(const ScalarField& u_plus, const ScalarField& u_minus, const TransmissionMap& t,
                                    double z = 0.0)
{
  auto plus = apply_aperture(u_plus, t).field;
  auto minus = apply_aperture(u_minus, t).field;
  if (z > 0.0) {
    plus = propagate(plus, {z});
    minus = propagate(minus, {z});
  }
  return {std::move(plus), std::move(minus)};
}

/// Overlap, concurrence and analytic references for one (l0, aperture) case, given the
/// undiffracted modes u_{+l0}, u_{-l0} on the aperture's grid.
inline EntanglementResult biphoton_from_modes(int l0, const ScalarField& u_plus, const ScalarField& u_minus,
                                              const TransmissionMap& t, double z = 0.0)
{
  const auto pair = diffract_pair(u_plus, u_minus, t, z);
  const cplx b = inner_product(pair.minus, pair.plus);
  if (std::abs(b.imag()) > 1e-8)
    throw Error(ErrorCode::symmetry_violation,
                fmt::format("overlap has imaginary part {} (l0={}, lambda={})", b.imag(), l0, t.spec().lambda_width));

  const double lambda = t.spec().lambda_width;
  EntanglementResult r;
  r.l0 = l0;
  r.lambda_width = lambda;
  r.b_numeric = b.real();
  r.b_imag = b.imag();
  r.b_analytic = overlap_analytic(lambda, l0);
  r.b_gaussian = overlap_gaussian_approx(lambda, l0);
  r.concurrence = concurrence_from_overlap(r.b_numeric);
  r.delta_phi = delta_phi_of_lambda(lambda);
  return r;
}

inline EntanglementResult run_biphoton(const BiphotonRunSpec& spec)
{
  if (spec.l0 < 0)
    throw Error(ErrorCode::invalid_argument, "l0 must be non-negative");
  spec.aperture.validate();
  const auto u_plus = lg_mode(spec.grid, {spec.l0, spec.w}, spec.wavenumber);
  const auto u_minus = lg_mode(spec.grid, {-spec.l0, spec.w}, spec.wavenumber);
  return biphoton_from_modes(spec.l0, u_plus, u_minus, TransmissionMap(spec.grid, spec.aperture), spec.z);
}

} // namespace oam
