#include "oamlab/aperture.hpp"
#include "oamlab/oam_analysis.hpp"
#include "oamlab/propagation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace oam;

namespace
{

double max_abs_diff(const ScalarField& a, const ScalarField& b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
  return m;
}

ScalarField random_smooth_field(const GridSpec& g, std::uint32_t seed)
{
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  cplx c[4];
  for (auto& v : c) v = {d(rng), d(rng)};
  return normalize(ScalarField::from_function(g, kDefaultWavenumber, [&](double x, double y) {
    const double r2 = x * x + y * y;
    return (c[0] + c[1] * x + c[2] * cplx(0, y) + c[3] * x * y) * std::exp(-r2);
  }));
}

} // namespace

TEST(Propagation, ZeroDistanceIsIdentity)
{
  const auto u = lg_mode(make_grid(128, 4.0), {2, 1.0});
  EXPECT_LT(max_abs_diff(propagate(u, {0.0}), u), 1e-15);
}

TEST(Propagation, MatchesGaussianBeamSolution)
{
  const auto g = make_grid(256, 8.0);
  const double k = kDefaultWavenumber, w = 1.0, zr = rayleigh_length(k, w);
  const auto u0 = lg_mode(g, {0, w}, k);
  const double z = zr;
  const auto uz = propagate(u0, {z});
  // Unnormalized envelope: q = 1 + i z/zR, u = e^{ikz} e^{-rho^2/(w^2 q)} / q.
  const cplx q(1.0, z / zr);
  const double n0 = std::abs(u0(g.n / 2, g.n / 2)) / std::exp(-2.0 * std::pow(g.coord(g.n / 2), 2));
  const cplx carrier = detail::carrier(k, z);
  double err = 0.0;
  for (int iy = 0; iy < g.n; iy += 7)
    for (int ix = 0; ix < g.n; ix += 5) {
      const double r2 = g.coord(ix) * g.coord(ix) + g.coord(iy) * g.coord(iy);
      err = std::max(err, std::abs(uz(ix, iy) - n0 * carrier * std::exp(-r2 / (w * w * q)) / q));
    }
  EXPECT_LT(err, 1e-12);
}

TEST(Propagation, UnitarityAndSemigroup)
{
  const auto g = make_grid(256, 6.0);
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_smooth_field(g, seed);
    const double zr = rayleigh_length(f.wavenumber(), 1.0);
    for (double z : {0.5 * zr, zr, 2.0 * zr}) {
      const auto a = propagate(f, {z});
      EXPECT_NEAR(total_power(a), 1.0, 1e-12);
      const double z1 = 0.6 * z; // z - z1 is exact
      const auto b = propagate(propagate(f, {z1}), {z - z1});
      EXPECT_LT(max_abs_diff(a, b), 1e-12);
    }
  }
}

TEST(Propagation, PaddingLeavesCompactFieldsUnchanged)
{
  const auto g = make_grid(128, 8.0);
  const auto u = lg_mode(g, {1, 1.0});
  const double z = 0.5 * rayleigh_length(u.wavenumber(), 1.0);
  EXPECT_LT(max_abs_diff(propagate(u, {z, 1}), propagate(u, {z, 2})), 1e-10);
}

TEST(Propagation, PreservesOamSpectrum)
{
  const auto g = make_grid(512, 12.0);
  const auto u = apply_aperture(lg_mode(g, {2, 1.0}), AngularApertureSpec{2.0}).field;
  const auto before = oam_spectrum(u, -20, 24);
  const auto after = oam_spectrum(propagate(u, {0.5 * rayleigh_length(u.wavenumber(), 1.0)}), -20, 24);
  double sup = 0.0;
  for (int l = -20; l <= 24; ++l) sup = std::max(sup, std::abs(before.at(l) - after.at(l)));
  EXPECT_LT(sup, 1e-4);
}

TEST(Propagation, WarnsWhenChirpIsUndersampled)
{
  const auto u = lg_mode(make_grid(64, 4.0), {1, 1.0});
  ScopedWarningCapture cap;
  (void)propagate(u, {1e3 * rayleigh_length(u.wavenumber(), 1.0)});
  EXPECT_TRUE(cap.contains(WarningCode::sampling_violation));
  ScopedWarningCapture quiet;
  (void)propagate(lg_mode(make_grid(256, 8.0), {1, 1.0}), {0.5 * rayleigh_length(u.wavenumber(), 1.0)});
  EXPECT_FALSE(quiet.contains(WarningCode::sampling_violation));
}

TEST(Propagation, RejectsBadSpecs)
{
  const auto u = lg_mode(make_grid(64, 4.0), {0, 1.0});
  EXPECT_THROW(propagate(u, {-1.0}), Error);
  EXPECT_THROW(propagate(u, {1.0, 3}), Error);
}
