#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "decolab/bath.hpp"
#include "decolab/realclock.hpp"
#include "decolab/zurek.hpp"

using namespace decolab;
using realclock::ClockChannel;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(ClockChannel, Validation) {
  EXPECT_THROW((ClockChannel{0.0, 1.0 / 3.0}.validate()), ParameterError);
  EXPECT_THROW((ClockChannel{5.39e-44, 1.0}.validate()), ParameterError);
  EXPECT_NEAR(ClockChannel{}.planck_weight(), std::pow(5.39e-44, 4.0 / 3.0), 1e-70);
}

TEST(DampingFactor, Examples) {
  const ClockChannel ch;
  EXPECT_EQ(realclock::damping_factor(0.0, 10.0, ch), 1.0);
  // Choose omega so that the exponent is ln 2 at t = 2 s.
  const double omega = std::sqrt(std::log(2.0) / (ch.planck_weight() * std::pow(2.0, 2.0 / 3.0)));
  EXPECT_NEAR(realclock::damping_factor(omega, 2.0, ch), 0.5, 1e-12);
  const double e = realclock::damping_exponent(1.0, 1.0, ch);
  EXPECT_NEAR(e / 2.05e-58, 1.0, 0.01);
  EXPECT_NEAR(e / std::pow(5.39e-44, 4.0 / 3.0), 1.0, 1e-12);
  EXPECT_THROW(realclock::damping_factor(-1.0, 1.0, ch), ParameterError);
}

TEST(Theta, Examples) {
  const ClockChannel ch;
  EXPECT_EQ(realclock::theta(0.0, ch), 0.0);
  EXPECT_NEAR(realclock::theta(1.0, ch) / 3.1e-58, 1.0, 0.02);
  EXPECT_NEAR(realclock::theta(8.0, ch), 1.5 * ch.planck_weight() * 4.0, 1e-70);
}

TEST(BohrMatrix, Gaps) {
  const auto w = realclock::bohr_matrix(2.0, 3.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(std::abs(w(0, 1)), 2 * 2.0 * 1.0);
  EXPECT_DOUBLE_EQ(std::abs(w(0, 2)), 2 * 2.0 * 3.0);
  EXPECT_DOUBLE_EQ(std::abs(w(0, 3)), 2 * 2.0 * 4.0);
  EXPECT_DOUBLE_EQ(std::abs(w(1, 2)), 2 * 2.0 * 2.0);
  EXPECT_EQ(w(2, 2), 0.0);
}

TEST(DampDensity, MatchesHandAssembledMatrix) {
  const double a = 0.6, b = 0.8, al = kInvSqrt2, be = kInvSqrt2;
  const double B = 1.3, g1 = 0.9, g2 = 0.4, th = 0.05;
  const Eigen::Vector4cd psi{a * al, a * be, b * al, b * be};
  const DensityMatrix rho(psi * psi.adjoint());
  const auto damped = realclock::damp_density(rho, realclock::bohr_matrix(B, g1, g2, 1.0), th);

  auto e = [&](double gap) { return std::exp(-gap * gap * th); };
  const double w2 = 2 * B * g2, w1 = 2 * B * g1, wp = 2 * B * (g1 + g2), wm = 2 * B * (g1 - g2);
  Eigen::Matrix4d expect;
  expect << a * a * al * al, a * a * al * be * e(w2), a * b * al * al * e(w1), a * b * al * be * e(wp),
      a * a * al * be * e(w2), a * a * be * be, a * b * al * be * e(wm), a * b * be * be * e(w1),
      a * b * al * al * e(w1), a * b * al * be * e(wm), b * b * al * al, b * b * al * be * e(w2),
      a * b * al * be * e(wp), a * b * be * be * e(w1), b * b * al * be * e(w2), b * b * be * be;
  EXPECT_LT((damped.entries() - expect.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DampDensity, Limits) {
  const Eigen::Vector4cd psi = Eigen::Vector4cd::Constant(0.5);
  const DensityMatrix rho(psi * psi.adjoint());
  const auto w = realclock::bohr_matrix(1.0, 2.0, 0.5, 1.0);
  EXPECT_EQ((realclock::damp_density(rho, w, 0.0).entries() - rho.entries()).cwiseAbs().maxCoeff(), 0.0);
  const auto full = realclock::damp_density(rho, w, kInf).entries();
  EXPECT_EQ((full - Eigen::Matrix4cd(rho.entries().diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DampedZ, UnityAtZeroAndExactSuppressionAtRevival) {
  const ClockChannel ch;
  const auto bath = sample_bath(10, FixedCoupling{kPi}, 2, SpinLaw::balanced);
  EXPECT_NEAR(realclock::damped_z(bath, 0.0, ch).abs(), 1.0, 1e-15);
  // With g = pi every factor is cos(2 pi t), exactly 1 at t = 1 s.
  const auto z = zurek::z_factor(bath, 1.0);
  const auto zd = realclock::damped_z(bath, 1.0, ch);
  EXPECT_LT(zd.log_mag(), z.log_mag());
  const double expect = -10.0 * std::pow(2 * kPi, 2) * ch.planck_weight();
  EXPECT_NEAR((zd.log_mag() - z.log_mag()) / expect, 1.0, 1e-9);
}

TEST(RevivalKilled, MicroscopicSurvives) {
  const auto v = realclock::revival_killed(2, 1.0, ClockChannel{});
  EXPECT_FALSE(v.killed);
  EXPECT_LT(v.margin, -100.0);
}

TEST(RevivalKilled, MonotoneWithCriticalCount) {
  const ClockChannel ch;
  bool seen = false;
  for (std::size_t n = 1; n <= 400; ++n) {
    const bool k = realclock::revival_killed(n, 1e9, ch).killed;
    if (seen) EXPECT_TRUE(k) << n;
    seen = seen || k;
  }
  const auto n_star = realclock::critical_particle_count(1e9, ch, 400);
  ASSERT_TRUE(n_star.has_value());
  EXPECT_EQ(*n_star, 52u);
  EXPECT_FALSE(realclock::critical_particle_count(1e9, ch, 40).has_value());
}

TEST(RevivalKilled, SmallerExponentNeedsMoreParticles) {
  const auto base = realclock::critical_particle_count(1e9, ClockChannel{5.39e-44, 1.0 / 3.0}, 2000);
  const auto small = realclock::critical_particle_count(1e9, ClockChannel{5.39e-44, 0.1}, 2000);
  ASSERT_TRUE(base && small);
  EXPECT_LE(*base, *small);
  EXPECT_EQ(*small, 169u);
}
