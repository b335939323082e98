#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "decolab/feasibility.hpp"

using namespace decolab;
using namespace decolab::feasibility;

namespace {

const double kHbar = PhysicalConstants{}.hbar;

// Heavy, strongly magnetic and slow: every condition holds.
PhysicalScenario synthetic_pass() {
  PhysicalScenario s;
  s.mass = 1.0;
  s.gamma1 = 2e-20;
  s.gamma2 = 1e-20;
  s.B = 1e-3;
  s.d = 1e-6;
  s.L = 1e-3;
  s.v = 0.1;
  s.tau = 2 * s.L / s.v;
  s.N = 10;
  return s;
}

bool within_decades(double x, double ref, double decades) { return std::abs(std::log10(x / ref)) <= decades; }

}  // namespace

TEST(Presets, BuiltinsResolve) {
  ASSERT_TRUE(find_species("neutron").has_value());
  EXPECT_NEAR(find_species("proton")->gamma, 1.4e-26, 1e-40);
  const auto s = make_scenario("nucleon", 100000);
  EXPECT_DOUBLE_EQ(s.tau, 2 * s.L / s.v);
  EXPECT_EQ(s.N, 100000u);
  EXPECT_THROW(make_scenario("nonexistent", 1), ParameterError);
}

TEST(Presets, LoadFromFileOverridesBuiltins) {
  const auto path = std::filesystem::temp_directory_path() / "decolab_presets_test.json";
  std::ofstream(path) << R"({"species": [{"name": "muonium", "mass_kg": 1.9e-28, "gamma_J_per_T": 1e-26}],
    "scenarios": [{"name": "light", "needle": "proton", "environment": "muonium",
                   "B_T": 2.0, "d_m": 1e-12, "L_m": 0.01, "v_m_per_s": 5.0}]})";
  const auto cat = load_presets(path.string());
  const auto s = make_scenario("light", 10, cat);
  EXPECT_DOUBLE_EQ(s.mass, 1.9e-28);
  EXPECT_DOUBLE_EQ(s.B, 2.0);
  std::ofstream(path) << R"({"species": [{"name": "x"}]})";
  EXPECT_THROW(load_presets(path.string()), ParameterError);
  std::filesystem::remove(path);
}

TEST(Check, RelationsAndMargins) {
  EXPECT_TRUE(make_check("a", 100.0, Relation::much_greater, 1.0).pass);
  EXPECT_FALSE(make_check("a", 5.0, Relation::much_greater, 1.0).pass);
  EXPECT_TRUE(make_check("a", 0.01, Relation::much_less, 1.0).pass);
  EXPECT_TRUE(make_check("a", 1.0, Relation::at_most, 1.0).pass);
  EXPECT_FALSE(make_check("a", 1.0, Relation::less, 1.0).pass);
  EXPECT_NEAR(make_check("a", 1000.0, Relation::greater, 1.0).margin, 3.0, 1e-12);
  EXPECT_NEAR(make_check("a", 1000.0, Relation::less, 1.0).margin, -3.0, 1e-12);
}

TEST(DecoherenceBound, NucleonPassesFastFails) {
  auto s = make_scenario("nucleon", 1);
  EXPECT_TRUE(decoherence_bound(s).pass);
  s.v = 1e30;
  EXPECT_FALSE(decoherence_bound(s).pass);
}

TEST(TransverseVelocity, NeutronScale) {
  const double m = find_species("neutron")->mass;
  const double coeff = transverse_velocity(m, 1.0);
  EXPECT_NEAR(coeff, kHbar / m, 1e-20);
  EXPECT_TRUE(within_decades(coeff, 1e-7, std::log10(2.0)));
  EXPECT_TRUE(within_decades(transverse_velocity(m, 1e-13), 1e6, 1.0));
}

TEST(Dispersion, Examples) {
  EXPECT_DOUBLE_EQ(packet_width(0.0, 1.67e-27, 3e-6), 1.5e-6);
  const double md = min_dispersion(1.0, 1.67e-27);
  EXPECT_NEAR(md, std::sqrt(kHbar / 1.67e-27), 1e-18);
  EXPECT_NEAR(md, 2.5e-4, 0.1e-4);
  const double delta = optimal_packet_delta(1.0, 1.67e-27);
  const double w = packet_width(1.0, 1.67e-27, delta);
  EXPECT_LE(w / md, std::sqrt(2.0) + 1e-12);
  EXPECT_GE(w / md, 1.0 / std::sqrt(2.0) - 1e-12);
  for (double f : {0.8, 1.25}) EXPECT_GT(packet_width(1.0, 1.67e-27, f * delta), w);
}

TEST(TauBound, FinitePositive) {
  const auto s = make_scenario("nucleon", 10000000000ULL);
  const double t = tau_upper_bound(s);
  EXPECT_TRUE(std::isfinite(t));
  EXPECT_GT(t, 0.0);
}

TEST(MassMoment, NucleonFailsAtHundredThousand) {
  const realclock::ClockChannel ch;
  const auto s = make_scenario("nucleon", 100000);
  const auto mm = mass_moment_threshold(s, 1e5, ch);
  EXPECT_FALSE(mm.check.pass);
  EXPECT_NEAR(mm.lhs, s.mass * std::pow(s.gamma1 * s.gamma2, 2.0 / 3.0), 1e-75);
}

TEST(MassMoment, AvogadroThreshold) {
  const realclock::ClockChannel ch;
  const PhysicalConstants c;
  const double exact =
      std::pow(ch.t_planck, 1.0 / 3.0) * std::pow(c.hbar, 5.0 / 3.0) * std::pow(1e23, 1.25) / std::pow(c.mu0, 2.0 / 3.0);
  const double rhs = mass_moment_rhs(1e23, ch);
  EXPECT_NEAR(rhs / exact, 1.0, 1e-12);
  EXPECT_TRUE(within_decades(rhs, 1e-38, 2.0));
}

TEST(MassMoment, GeneralExponentReducesToFiveQuarters) {
  const double a = mass_moment_rhs(1e10, {5.39e-44, 1.0 / 3.0});
  const double b = mass_moment_rhs(1e20, {5.39e-44, 1.0 / 3.0});
  EXPECT_NEAR(std::log10(b / a), 12.5, 1e-9);
}

TEST(PacketChain, DMaxScaling) {
  auto s = make_scenario("nucleon", 1);
  const double d = packet_chain_d_max(s);
  EXPECT_NEAR(d / (0.1 * s.constants.mu0 * s.gamma1 * s.gamma2 * s.mass / (kHbar * kHbar)), 1.0, 1e-12);
  EXPECT_TRUE(within_decades(d, 1e-19, 2.0));
  s.mass *= 1e3;
  s.gamma1 *= 1e3;  // the product g1 g2 grows by 10^3 as well
  EXPECT_NEAR(packet_chain_d_max(s) / d, 1e6, 1e-6);
  EXPECT_FALSE(packet_chain_analysis(make_scenario("nucleon", 100000)).overall);
}

TEST(FullReport, NucleonFailsSyntheticPasses) {
  const auto nucleon = full_report(make_scenario("nucleon", 100000), 100000);
  EXPECT_FALSE(nucleon.overall);
  ASSERT_NE(nucleon.find("mass_moment"), nullptr);
  EXPECT_FALSE(nucleon.find("mass_moment")->pass);
  EXPECT_TRUE(nucleon.find("decoherence_bound")->pass);
  EXPECT_EQ(nucleon.find("no_such_check"), nullptr);
  EXPECT_TRUE(full_report(synthetic_pass(), 10).overall);
}

TEST(RequiredMoment, PlanckMassIsFinite) {
  const double g = required_moment(2.18e-8, 1e23, realclock::ClockChannel{});
  EXPECT_GT(g, 0.0);
  EXPECT_NEAR(2.18e-8 * std::pow(g, 4.0 / 3.0) / mass_moment_rhs(1e23, realclock::ClockChannel{}), 1.0, 1e-12);
}
