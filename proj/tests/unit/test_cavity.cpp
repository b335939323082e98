#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "decolab/bath.hpp"
#include "decolab/cavity.hpp"
#include "decolab/oracle.hpp"

using namespace decolab;
using cavity::PassParams;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PassParams weak_params(double tau = 1.3) { return {0.0, 1.0, 15.0, 5.0, tau, 1.0}; }

double max_diff(const cavity::PassCoefficients& x, const cavity::PassCoefficients& y) {
  return (x.as_vector() - y.as_vector()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(PassParams, Validation) {
  EXPECT_THROW(PassParams(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(PassParams(1.0, 1.0, 1.0, 1.0, 1.0, 0.0), ParameterError);
  const PassParams p(0.5, 2.0, 3.0, 1.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(p.zeeman_plus(), 8.0);
  EXPECT_DOUBLE_EQ(p.zeeman_minus(), 4.0);
  EXPECT_DOUBLE_EQ(p.omega(), std::sqrt(1.0 + 16.0));
}

TEST(PassHamiltonian, Limits) {
  const auto h0 = cavity::pass_hamiltonian({0.0, 2.0, 3.0, 1.0, 1.0, 1.0});
  EXPECT_EQ((h0 - Eigen::Matrix4cd(h0.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(h0(0, 0).real(), 8.0);
  EXPECT_EQ(h0(3, 3).real(), -8.0);
  const auto hb = cavity::pass_hamiltonian({0.7, 0.0, 3.0, 1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(hb(1, 2).real(), 1.4);
  EXPECT_DOUBLE_EQ(hb(2, 1).real(), 1.4);
  EXPECT_LT((hb - hb.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SinglePass, ZeroTimeIsIdentity) {
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const BathSpin spin(kInvSqrt2, cplx(0, kInvSqrt2), 0.3);
  const PassParams p(0.3, 1.0, 2.0, 0.5, 0.0, 1.0);
  const auto c = cavity::single_pass_closed(sys, spin, p);
  EXPECT_NEAR(std::abs(c.R - sys.a() * spin.alpha()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.T - sys.a() * spin.beta()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.U - sys.b() * spin.alpha()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.V - sys.b() * spin.beta()), 0.0, 1e-15);
  EXPECT_LT(max_diff(cavity::single_pass_numeric(sys, spin, p, 100), c), 1e-15);
}

TEST(SinglePass, ClosedMatchesRk4OnRandomParameters) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = haar_qubit(rng);
    const auto [al, be] = haar_qubit(rng);
    const PassParams p(2.0 * u(rng), 2.0 * u(rng), 3.0 * u(rng), 3.0 * u(rng), 2.0 * u(rng), 1.0);
    const QubitAmplitudes sys(a, b);
    const BathSpin spin(al, be, p.f());
    const auto closed = cavity::single_pass_closed(sys, spin, p);
    EXPECT_LT(max_diff(closed, cavity::single_pass_numeric(sys, spin, p, 4000)), 1e-8);
    EXPECT_NEAR(closed.norm2(), 1.0, 1e-12);
  }
}

TEST(SinglePass, ClosedMatchesMatrixExponential) {
  // Independent of the closed form: eigendecomposition of the Hermitian pass Hamiltonian.
  const PassParams p(0.4, 1.2, 2.0, 0.7, 1.9, 1.0);
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const BathSpin spin(kInvSqrt2, cplx(0.5, 0.5), p.f());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(cavity::pass_hamiltonian(p));
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i) * p.tau());
  const Eigen::Matrix4cd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Vector4cd in{sys.a() * spin.alpha(), sys.a() * spin.beta(), sys.b() * spin.alpha(),
                            sys.b() * spin.beta()};
  const Eigen::Vector4cd out = u * in;
  EXPECT_LT((out - cavity::single_pass_closed(sys, spin, p).as_vector()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(SinglePass, UncoupledNumericIsExact) {
  const QubitAmplitudes sys(0.6, 0.8);
  const BathSpin spin(0.8, 0.6, 0.0);
  const PassParams p(0.0, 3.0, 5.0, 2.0, 7.0, 1.0);
  EXPECT_LT(max_diff(cavity::single_pass_numeric(sys, spin, p, 100), cavity::single_pass_closed(sys, spin, p)),
            1e-10);
}

TEST(SinglePass, Rk4ConvergenceOrder) {
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const BathSpin spin(kInvSqrt2, kInvSqrt2, 1.0);
  const PassParams p(1.0, 1.0, 2.0, 0.5, 2.0, 1.0);
  const auto exact = cavity::single_pass_closed(sys, spin, p);
  const double e1 = max_diff(cavity::single_pass_numeric(sys, spin, p, 100), exact);
  const double e2 = max_diff(cavity::single_pass_numeric(sys, spin, p, 200), exact);
  EXPECT_GE(std::log2(e1 / e2), 3.7);
  EXPECT_THROW(cavity::single_pass_numeric(sys, spin, p, 99), ParameterError);
}

TEST(BranchVectors, SingleSpinRegroupsSinglePass) {
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const BathSpin spin(kInvSqrt2, cplx(0.5, 0.5), 0.4);
  const auto p = weak_params().with_coupling(0.4);
  const auto c = cavity::single_pass_closed(sys, spin, p);
  const auto bv = cavity::branch_vectors(sys, Bath({spin}), weak_params());
  ASSERT_EQ(bv.size(), 1u);
  const auto& k = bv.factors[0];
  EXPECT_NEAR(std::abs(sys.a() * k.a_plus - c.R), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.a() * k.a_minus - c.T), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.b() * k.b_plus - c.U), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.b() * k.b_minus - c.V), 0.0, 1e-14);
}

TEST(BranchVectors, DegenerateNeedleThrows) {
  EXPECT_THROW(cavity::branch_vectors(QubitAmplitudes(1.0, 0.0), sample_bath(2, FixedCoupling{0.1}, 1),
                                      weak_params()),
               DegenerateBranchError);
}

TEST(InnerProducts, TermFormulasMatchDirectProducts) {
  const auto bath = sample_bath(6, UniformCoupling{0.1, 0.9}, 5);
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const auto bv = cavity::branch_vectors(sys, bath, weak_params());
  for (std::size_t k = 0; k < bv.size(); ++k) {
    const auto& f = bv.factors[k];
    EXPECT_NEAR(cavity::inner_aa_term(bv, k), std::norm(f.a_plus) + std::norm(f.a_minus), 1e-13);
    EXPECT_NEAR(cavity::inner_bb_term(bv, k), std::norm(f.b_plus) + std::norm(f.b_minus), 1e-13);
    const cplx direct = std::conj(f.a_plus) * f.b_plus + std::conj(f.a_minus) * f.b_minus;
    EXPECT_NEAR(std::abs(cavity::inner_ab_term(bv, k) - direct), 0.0, 1e-13);
  }
}

TEST(InnerProducts, WeakCouplingNormIsOne) {
  // f/Omega = 1e-3 on a single pass. With alpha beta* = 0 the correction is second order.
  const PassParams p(0.0, 1.0, 15.0, 5.0, 1.3, 1.0);
  const double f = 1e-3 * p.zeeman_minus();
  const auto bv = cavity::branch_vectors(QubitAmplitudes(0.6, 0.8), Bath({BathSpin(1.0, 0.0, f)}), p);
  EXPECT_NEAR(std::exp(cavity::inner_aa(bv)), 1.0, 1e-5);
  EXPECT_NEAR(std::exp(cavity::inner_bb(bv)), 1.0, 1e-5);
}

TEST(InnerProducts, GenericSpinNormDriftIsFirstOrder) {
  // For alpha beta* != 0 the product-form norm is off by O(f/Omega), and only the
  // Born-weighted sum |a|^2 <A|A> + |b|^2 <B|B> is exactly 1 for one spin.
  const PassParams p(0.0, 1.0, 15.0, 5.0, 1.3, 1.0);
  const QubitAmplitudes sys(0.6, 0.8);
  auto drift = [&](double ratio) {
    const auto bv = cavity::branch_vectors(sys, Bath({BathSpin(0.6, 0.8, ratio * p.zeeman_minus())}), p);
    EXPECT_NEAR(cavity::branch_state_norm2(sys, bv), 1.0, 1e-13);
    return std::abs(std::exp(cavity::inner_aa(bv)) - 1.0);
  };
  const double d3 = drift(1e-3), d4 = drift(1e-4);
  EXPECT_LT(d3, 1e-2);
  EXPECT_NEAR(d3 / d4, 10.0, 0.5);
}

TEST(InnerProducts, UncoupledOverlapIsPurePhase) {
  const auto bath = Bath({BathSpin(0.6, 0.8, 0.0)});
  const auto bv = cavity::branch_vectors(QubitAmplitudes(0.6, 0.8), bath, weak_params());
  EXPECT_NEAR(cavity::inner_ab(bv).abs(), 1.0, 1e-14);
}

TEST(InnerProducts, LargeBathDecaysAndTracksApprox) {
  const auto p = weak_params();
  const auto bath = sample_bath(500, UniformCoupling{1e-4, 1e-2}, 31);
  const auto bv = cavity::branch_vectors(QubitAmplitudes(kInvSqrt2, kInvSqrt2), bath, p);
  const auto exact = cavity::inner_ab(bv);
  const auto approx = cavity::inner_ab_approx(bath, p);
  EXPECT_LT(exact.log_mag(), 0.0);
  // Magnitudes agree to first order in f/Omega summed over the bath.
  EXPECT_LT(std::abs(exact.log_mag() - approx.log_mag()), 1e-3);

  const auto strong = sample_bath(500, UniformCoupling{0.5, 0.9}, 31);
  const auto bv_s = cavity::branch_vectors(QubitAmplitudes(kInvSqrt2, kInvSqrt2), strong, p);
  EXPECT_LT(cavity::inner_ab(bv_s).log10_abs(), -30.0);
}

TEST(InnerProducts, ApproxOmitsSumZeemanPhase) {
  // Uncoupled spins: <A|B> = e^{i (B G+ + B G-) tau / hbar} per spin, the approximation keeps e^{2 i Omega tau}.
  const auto p = weak_params();
  const auto bath = sample_bath(3, FixedCoupling{0.0}, 5);
  const auto exact = cavity::inner_ab(cavity::branch_vectors(QubitAmplitudes(0.6, 0.8), bath, p));
  EXPECT_NEAR(exact.abs(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(exact.to_complex() - std::polar(1.0, 3 * (p.zeeman_plus() + p.zeeman_minus()) * p.tau())), 0.0,
              1e-12);
  const auto approx = cavity::inner_ab_approx(bath, p);
  EXPECT_NEAR(std::abs(exact.to_complex() * std::conj(approx.to_complex()) -
                       std::polar(1.0, 3 * (p.zeeman_plus() - p.zeeman_minus()) * p.tau())),
              0.0, 1e-12);
}

TEST(InnerAbApprox, UncoupledIsPhase) {
  const auto p = weak_params();
  const auto bath = sample_bath(4, FixedCoupling{0.0}, 1);
  const auto z = cavity::inner_ab_approx(bath, p);
  EXPECT_NEAR(z.abs(), 1.0, 1e-14);
  EXPECT_NEAR(z.phase(), wrap_phase(4 * 2.0 * p.zeeman_minus() * p.tau()), 1e-10);
}

TEST(InnerAbApprox, RegimeGate) {
  const auto p = weak_params();
  const auto bath = sample_bath(2, FixedCoupling{0.5 * p.zeeman_minus()}, 1);
  EXPECT_THROW(cavity::inner_ab_approx(bath, p), RegimeError);
  const PassParams equal(0.0, 1.0, 5.0, 5.0, 1.0, 1.0);
  EXPECT_THROW(cavity::inner_ab_approx(sample_bath(2, FixedCoupling{0.01}, 1), equal), RegimeError);
}

TEST(InnerAbApprox, ErrorShrinksWithCoupling) {
  const auto p = weak_params();
  auto error_at = [&](double ratio) {
    const auto bath = sample_bath(50, FixedCoupling{ratio * p.zeeman_minus()}, 8);
    const auto bv = cavity::branch_vectors(QubitAmplitudes(kInvSqrt2, kInvSqrt2), bath, p);
    const double exact = cavity::inner_ab(bv).log_mag();
    const double approx = cavity::inner_ab_approx(bath, p, 0.2).log_mag();
    return std::abs(exact - approx);
  };
  EXPECT_LT(error_at(1e-3), error_at(1e-1));
}

TEST(ReducedDensityNeedle, SingleSpinMatchesOracle) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const auto bath = sample_bath(1, UniformCoupling{0.1, 1.0}, rng());
    const auto [a, b] = haar_qubit(rng);
    const QubitAmplitudes sys(a, b);
    const auto nd = cavity::reduced_density_needle(sys, cavity::branch_vectors(sys, bath, weak_params()));
    const auto dense = oracle::needle_reduced(
        oracle::dense_evolve_cavity(oracle::dense_from_product(sys, bath), bath, weak_params()));
    EXPECT_LT((nd.matrix() - dense).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ReducedDensityNeedle, BornWeightsSurviveDecoherence) {
  // Large Zeeman splitting keeps f/Omega below 1e-4 while f tau ~ 1 still decoheres. The
  // populations drift only through the first-order norm error of the product form.
  const PassParams p(0.0, 1.0, 15000.0, 5.0, 1.3, 1.0);
  const auto bath = sample_bath(1000, UniformCoupling{0.3, 0.9}, 2);
  const QubitAmplitudes sys(0.6, 0.8);
  const auto nd = cavity::reduced_density_needle(sys, cavity::branch_vectors(sys, bath, p));
  EXPECT_NEAR(nd.rho_pp / nd.trace(), 0.36, 1e-2);
  EXPECT_NEAR(nd.rho_mm / nd.trace(), 0.64, 1e-2);
  EXPECT_TRUE(std::isfinite(nd.rho_pm.log_mag()));
  EXPECT_LT(nd.rho_pm.log10_abs(), -30.0);
}

TEST(IntegratedCoupling, Limits) {
  PhysicalScenario s;
  s.mass = 1.67e-27;
  s.gamma1 = 1.4e-26;
  s.gamma2 = 9.66e-27;
  s.B = 1.0;
  s.d = 1e-13;
  s.L = 1e-2;
  s.v = 10.0;
  s.tau = 2e-3;
  const double far = 2 * s.constants.mu0 * s.gamma1 * s.gamma2 / (s.constants.hbar * s.v * s.d * s.d);
  EXPECT_NEAR(cavity::integrated_coupling(s) / far, 1.0, 1e-12);
  s.L = s.d;
  EXPECT_NEAR(cavity::integrated_coupling(s) / far, 1.0 / std::sqrt(2.0), 1e-14);
}
