#include "oamlab/field.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace oam;

TEST(Grid, RejectsBadSizes)
{
  EXPECT_THROW(make_grid(100, 4.0), Error);
  EXPECT_THROW(make_grid(32, 4.0), Error);
  EXPECT_THROW(make_grid(128, 0.0), Error);
  EXPECT_NO_THROW(make_grid(128, 4.0));
}

TEST(Grid, CellCentredAndMirrorSymmetric)
{
  const auto g = make_grid(256, 4.0);
  EXPECT_DOUBLE_EQ(g.coord(0), -4.0 + 0.5 * g.step());
  for (int i = 0; i < g.n; ++i) EXPECT_EQ(g.coord(g.n - 1 - i), -g.coord(i));
}

TEST(LgMode, UnitPowerAndOrthogonal)
{
  const auto g = make_grid(256, 4.0);
  for (int l = -3; l <= 3; ++l) {
    const auto u = lg_mode(g, {l, 1.0});
    EXPECT_NEAR(total_power(u), 1.0, 1e-12);
    for (int m = l + 1; m <= 3; ++m) EXPECT_LT(std::abs(inner_product(u, lg_mode(g, {m, 1.0}))), 1e-10);
  }
}

TEST(LgMode, NegativeIndexIsExactConjugate)
{
  const auto g = make_grid(128, 4.0);
  for (int l : {1, 2, 5}) {
    const auto a = lg_mode(g, {l, 1.0}).conjugated();
    const auto b = lg_mode(g, {-l, 1.0});
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a.samples()[i], b.samples()[i]);
  }
}

TEST(LgMode, PhaseWindsByL0)
{
  const auto g = make_grid(256, 4.0);
  const int l0 = 3;
  const auto u = lg_mode(g, {l0, 1.0});
  // Walk the ring of samples nearest rho = 1 and count phase wraps.
  const int n_steps = 720;
  double total = 0.0, prev = 0.0;
  for (int s = 0; s <= n_steps; ++s) {
    const double phi = 0.1 + 2.0 * std::numbers::pi * s / n_steps;
    const int ix = static_cast<int>(std::lround((std::cos(phi) + 4.0) / g.step() - 0.5));
    const int iy = static_cast<int>(std::lround((std::sin(phi) + 4.0) / g.step() - 0.5));
    const double a = std::arg(u(ix, iy));
    if (s > 0) total += std::remainder(a - prev, 2.0 * std::numbers::pi);
    prev = a;
  }
  EXPECT_NEAR(total / (2.0 * std::numbers::pi), l0, 1e-9);
}

TEST(LgMode, WarnsWhenGridTruncatesTheMode)
{
  ScopedWarningCapture cap;
  (void)lg_mode(make_grid(64, 2.0), {5, 1.0});
  EXPECT_TRUE(cap.contains(WarningCode::aliasing));
  ScopedWarningCapture quiet;
  (void)lg_mode(make_grid(128, 6.0), {1, 1.0});
  EXPECT_FALSE(quiet.contains(WarningCode::aliasing));
}

TEST(Field, MismatchedGridsThrow)
{
  const auto a = lg_mode(make_grid(128, 4.0), {1, 1.0});
  const auto b = lg_mode(make_grid(128, 5.0), {1, 1.0});
  try {
    (void)inner_product(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_mismatch);
  }
}

TEST(Field, ZeroFieldCannotBeNormalized)
{
  const auto g = make_grid(64, 4.0);
  EXPECT_THROW(normalize(ScalarField(g, 1.0, std::vector<cplx>(g.size()))), Error);
}

TEST(Field, TextDumpRoundTripsExactly)
{
  const auto g = make_grid(64, 3.5);
  std::mt19937 rng(7);
  std::normal_distribution<double> d;
  const auto f = ScalarField::from_function(g, 123.25, [&](double, double) { return cplx(d(rng), d(rng)); });
  std::stringstream ss;
  write_field(ss, f);
  const auto back = read_field(ss);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.wavenumber(), 123.25);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(back.samples()[i], f.samples()[i]);
}

TEST(Field, TextDumpRejectsGarbage)
{
  std::stringstream bad("# something else\n");
  EXPECT_THROW(read_field(bad), Error);
  std::stringstream truncated("# oamfield v1 n=64 half_width=4 k=1\n0 0 1 1\n");
  EXPECT_THROW(read_field(truncated), Error);
}
