#include "oamlab/aperture.hpp"
#include "oamlab/special.hpp"

#include <gtest/gtest.h>

using namespace oam;

TEST(Aperture, PrefactorOracle)
{
  EXPECT_NEAR(angular_prefactor(1.0), 0.7511288780372710, 1e-15);
}

TEST(Aperture, AngularFactorHasUnitNorm)
{
  for (double lam : {1e-3, 0.1, 1.0, 10.0, 500.0}) {
    const double t0 = angular_prefactor(lam);
    const double norm = special::integrate([&](double phi) { return t0 * t0 * std::exp(-lam * phi * phi); },
                                           -std::numbers::pi, std::numbers::pi);
    EXPECT_NEAR(norm, 1.0, 1e-12) << lam;
  }
}

TEST(Aperture, ShapeOnAxisAndBeyondRadius)
{
  const AngularApertureSpec s{2.0, 3.0, 12};
  EXPECT_NEAR(transmission(s, 1.0, 0.0), angular_prefactor(2.0) * std::exp(-std::pow(1.0 / 3.0, 24)), 1e-15);
  EXPECT_NEAR(transmission(s, 0.0, 1.0) / transmission(s, 1.0, 0.0), std::exp(-0.5 * 2.0 * M_PI * M_PI / 4.0),
              1e-14);
  EXPECT_LT(transmission(s, 4.0, 0.0), 1e-20);
  EXPECT_NEAR(transmission(s, 3.0, 0.0) / transmission(s, 1.0, 0.0), std::exp(-1.0 + std::pow(1.0 / 3.0, 24)), 1e-15);
}

TEST(Aperture, MirrorSymmetricInY)
{
  const AngularApertureSpec s{0.7, 3.0, 12};
  const auto g = make_grid(64, 4.0);
  const TransmissionMap t(g, s);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      EXPECT_EQ(t.values()[std::size_t(iy) * g.n + ix], t.values()[std::size_t(g.n - 1 - iy) * g.n + ix]);
}

TEST(Aperture, RejectsOutOfRangeParameters)
{
  for (AngularApertureSpec s : {AngularApertureSpec{1e-5, 3, 12}, AngularApertureSpec{2e4, 3, 12},
                                AngularApertureSpec{1, 0, 12}, AngularApertureSpec{1, 3, 0}}) {
    try {
      s.validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
    }
  }
}

TEST(Aperture, OutputIsNormalizedAndFractionBounded)
{
  const auto g = make_grid(256, 4.0);
  const auto u = lg_mode(g, {0, 1.0});
  double last = 0.0;
  for (double lam : {100.0, 10.0, 1.0, 1e-4}) {
    const auto out = apply_aperture(u, AngularApertureSpec{lam});
    EXPECT_NEAR(total_power(out.field), 1.0, 1e-12);
    EXPECT_GT(out.transmitted_fraction, last); // wider screens pass more
    EXPECT_LE(out.transmitted_fraction, 1.0);
    last = out.transmitted_fraction;
  }
  EXPECT_NEAR(last, 1.0, 1e-3);
}

TEST(Aperture, GridMismatchAndZeroPower)
{
  const auto u = lg_mode(make_grid(64, 4.0), {1, 1.0});
  const TransmissionMap t(make_grid(128, 4.0), {});
  EXPECT_THROW(apply_aperture(u, t), Error);
  // A screen far smaller than one pixel-cell centre radius blocks everything.
  const auto far = ScalarField::from_function(make_grid(64, 40.0), 1.0, [](double x, double y) {
    return std::hypot(x, y) > 30.0 ? oam::cplx(1.0) : oam::cplx(0.0);
  });
  try {
    (void)apply_aperture(far, AngularApertureSpec{1.0, 1.0, 12});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_power);
  }
}
