#include "oamlab/entanglement.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace oam;

TEST(Overlap, AnalyticOracleValues)
{
  EXPECT_NEAR(overlap_analytic(25.0, 5), 0.3678794411714423, 1e-14);
  EXPECT_NEAR(overlap_analytic(50.0, 5), 0.6065306597126334, 1e-14);
  EXPECT_NEAR(overlap_analytic(1.0, 1), 0.3678745112695057, 1e-14);
  EXPECT_NEAR(overlap_analytic(0.1, 1), -0.02586187121042834, 1e-14);
  EXPECT_NEAR(overlap_analytic(0.005, 1), -0.002436590562953932, 1e-14);
  EXPECT_EQ(overlap_analytic(3.0, 0), 1.0);
  EXPECT_THROW(overlap_analytic(0.0, 1), Error);
}

TEST(Overlap, ClosedFormMatchesQuadrature)
{
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logl(std::log(0.005), std::log(500.0));
  std::uniform_int_distribution<int> l0(1, 7);
  for (int i = 0; i < 150; ++i) {
    const double lam = std::exp(logl(rng));
    const int l = l0(rng);
    EXPECT_NEAR(overlap_analytic(lam, l), overlap_by_quadrature(lam, l), 1e-10) << lam << " " << l;
  }
}

TEST(Overlap, DecreasesWithL0AtFixedWidth)
{
  // Past dphi ~ 0.53 the higher-l0 overlaps are below 1e-3 and oscillate in sign, so the
  // ordering is only required where b is not negligible.
  for (int i = 1; i < 100; ++i) {
    const double dphi = 0.01 * i;
    double lo = std::log(0.01), hi = std::log(1e5);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (delta_phi_of_lambda(std::exp(mid)) > dphi ? lo : hi) = mid;
    }
    const double lam = std::exp(lo);
    for (int l = 1; l < 7; ++l) {
      const double a = overlap_analytic(lam, l), b = overlap_analytic(lam, l + 1);
      if (std::max(std::abs(a), std::abs(b)) > 1e-3) {
        EXPECT_GT(a, b) << dphi << " " << l;
      }
    }
  }
}

TEST(Concurrence, ClosedFormExamples)
{
  EXPECT_EQ(concurrence_from_overlap(0.0), 1.0);
  EXPECT_EQ(concurrence_from_overlap(1.0), 0.0);
  EXPECT_DOUBLE_EQ(concurrence_from_overlap(0.5), 0.6);
  EXPECT_EQ(concurrence_from_overlap(-0.5), concurrence_from_overlap(0.5));
  EXPECT_EQ(concurrence_from_overlap(1.0 + 1e-10), 0.0);
  try {
    (void)concurrence_from_overlap(1.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain_error);
  }
}

TEST(Concurrence, UniversalLaw)
{
  EXPECT_EQ(universal_concurrence(3, 0.0), 0.0);
  EXPECT_NEAR(universal_concurrence(1, 1.0), 0.9640275800758169, 1e-15);
  EXPECT_NEAR(universal_concurrence(2, 0.5), 0.9640275800758169, 1e-15);
  EXPECT_NEAR(overlap_gaussian_approx(50.0, 5), std::exp(-2.0 * 25.0 * std::pow(delta_phi_of_lambda(50.0), 2)),
              1e-15);
  EXPECT_THROW(universal_concurrence(1, -0.1), Error);
}

TEST(Concurrence, CoherentStateIdentity)
{
  EXPECT_EQ(coherent_state_concurrence(0.0), 0.0);
  EXPECT_NEAR(coherent_state_concurrence(1.0), std::tanh(2.0), 1e-15);
  for (int i = 0; i < 30; ++i) {
    const double a = 0.1 + 0.1 * i;
    EXPECT_NEAR(coherent_state_identity_check(a), std::tanh(2.0 * a * a), 1e-12);
  }
  EXPECT_THROW(coherent_state_concurrence(-1.0), Error);
}

TEST(Biphoton, ProductStateForZeroL0)
{
  const auto r = run_biphoton({0, AngularApertureSpec{1.0}, make_grid(128, 4.0)});
  EXPECT_NEAR(r.b_numeric, 1.0, 1e-12);
  EXPECT_NEAR(r.concurrence, 0.0, 1e-12);
}

TEST(Biphoton, OpenApertureIsMaximallyEntangled)
{
  const auto g = make_grid(256, 4.0);
  for (int l0 : {1, 2, 5}) {
    const auto r = run_biphoton({l0, AngularApertureSpec{0.005}, g});
    EXPECT_NEAR(r.b_numeric, 0.0, 0.02);
    EXPECT_NEAR(r.concurrence, 1.0, 1e-3);
    EXPECT_LT(std::abs(r.b_imag), 1e-12);
  }
}

TEST(Biphoton, NarrowApertureMatchesGaussianLimit)
{
  const auto r = run_biphoton({5, AngularApertureSpec{50.0}, make_grid(512, 4.0)});
  EXPECT_NEAR(r.b_numeric, std::exp(-0.5), 0.01);
  EXPECT_NEAR(r.b_analytic, std::exp(-0.5), 0.01);
  EXPECT_NEAR(r.concurrence, concurrence_from_overlap(r.b_numeric), 0.0);
  EXPECT_NEAR(r.delta_phi, delta_phi_of_lambda(50.0), 0.0);
}

TEST(Biphoton, NumericOverlapTracksAnalytic)
{
  const auto g = make_grid(256, 4.0);
  for (double lam : {0.05, 0.5, 3.0, 30.0})
    for (int l0 : {1, 3}) {
      const auto r = run_biphoton({l0, AngularApertureSpec{lam}, g});
      EXPECT_NEAR(r.b_numeric, r.b_analytic, 2e-3) << lam << " " << l0;
    }
}

TEST(Biphoton, OverlapIsInvariantUnderCommonPropagation)
{
  const auto g = make_grid(256, 8.0);
  BiphotonRunSpec spec{2, AngularApertureSpec{2.0}, g};
  const double b0 = run_biphoton(spec).b_numeric;
  spec.z = rayleigh_length(spec.wavenumber, 1.0);
  EXPECT_NEAR(run_biphoton(spec).b_numeric, b0, 1e-10);
}

TEST(Biphoton, AsymmetricInputIsRejected)
{
  const auto g = make_grid(128, 4.0);
  const auto plus = lg_mode(g, {1, 1.0});
  const auto minus = lg_mode(g, {-1, 1.0}).scaled(std::polar(1.0, 0.3));
  try {
    (void)biphoton_from_modes(1, plus, minus, TransmissionMap(g, {1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::symmetry_violation);
  }
  EXPECT_THROW(run_biphoton({-1, AngularApertureSpec{1.0}, g}), Error);
}
