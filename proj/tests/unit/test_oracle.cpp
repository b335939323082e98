#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "decolab/bath.hpp"
#include "decolab/cavity.hpp"
#include "decolab/oracle.hpp"

using namespace decolab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

cavity::PassParams weak_params() { return {0.0, 1.0, 15.0, 5.0, 1.3, 1.0}; }

}  // namespace

TEST(DenseFromProduct, BasisState) {
  const auto st = oracle::dense_from_product(QubitAmplitudes(1.0, 0.0), Bath({BathSpin(1.0, 0.0, 1.0)}));
  ASSERT_EQ(st.dim(), 4);
  EXPECT_EQ(st.amplitudes()(0), cplx(1.0));
  EXPECT_EQ(st.amplitudes().tail(3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DenseFromProduct, MatchesKroneckerAssembly) {
  std::mt19937_64 rng(3);
  const auto bath = sample_bath(3, FixedCoupling{1.0}, 9);
  const auto [a, b] = haar_qubit(rng);
  const QubitAmplitudes sys(a, b);
  Eigen::VectorXcd v(2);
  v << a, b;
  // Assemble right to left, the opposite order from the implementation.
  Eigen::VectorXcd env(1);
  env(0) = 1.0;
  for (std::size_t k = bath.size(); k-- > 0;) {
    Eigen::VectorXcd s(2);
    s << bath[k].alpha(), bath[k].beta();
    env = Eigen::VectorXcd(Eigen::kroneckerProduct(s, env));
  }
  const Eigen::VectorXcd full = Eigen::kroneckerProduct(v, env);
  const auto st = oracle::dense_from_product(sys, bath);
  EXPECT_NEAR(std::abs(full.dot(st.amplitudes())), 1.0, 1e-12);
}

TEST(DenseState, Validation) {
  EXPECT_THROW(oracle::DenseState(1, Eigen::VectorXcd::Ones(4)), ParameterError);
  EXPECT_THROW(oracle::DenseState(2, Eigen::VectorXcd::Ones(4) / 2.0), ParameterError);
  EXPECT_THROW(oracle::dense_from_product(QubitAmplitudes(1.0, 0.0), sample_bath(13, FixedCoupling{1.0}, 1)),
               CapacityError);
}

TEST(DenseEvolveZurek, IdentityAndReversibility) {
  const auto bath = sample_bath(4, UniformCoupling{0.2, 2.0}, 5);
  const auto st = oracle::dense_from_product(QubitAmplitudes(0.6, 0.8), bath);
  EXPECT_EQ((oracle::dense_evolve_zurek(st, bath, 0.0).amplitudes() - st.amplitudes()).cwiseAbs().maxCoeff(), 0.0);
  const auto back = oracle::dense_evolve_zurek(oracle::dense_evolve_zurek(st, bath, 2.7), bath, -2.7);
  EXPECT_LT((back.amplitudes() - st.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PassPropagator, MatchesEigendecomposition) {
  const cavity::PassParams p(0.4, 1.2, 2.0, 0.7, 1.9, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(cavity::pass_hamiltonian(p));
  Eigen::Vector4cd ph;
  for (int i = 0; i < 4; ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * p.tau());
  const Eigen::Matrix4cd u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LT((oracle::pass_propagator(p) - u).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(DenseEvolveCavity, UncoupledIsZeemanPhases) {
  const auto bath = sample_bath(3, FixedCoupling{0.0}, 2);
  const QubitAmplitudes sys(0.6, cplx(0, 0.8));
  const auto out = oracle::dense_evolve_cavity(oracle::dense_from_product(sys, bath), bath, weak_params());
  const auto bv = cavity::branch_vectors(sys, bath, weak_params());
  EXPECT_LT((out.amplitudes() - oracle::assemble_branch_state(bv)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(DenseEvolveCavity, PreservesNorm) {
  const auto bath = sample_bath(6, UniformCoupling{0.1, 1.0}, 2);
  const auto out =
      oracle::dense_evolve_cavity(oracle::dense_from_product(QubitAmplitudes(0.6, 0.8), bath), bath, weak_params());
  EXPECT_NEAR(out.amplitudes().squaredNorm(), 1.0, 1e-13);
}

TEST(DenseMExpect, Eigenstates) {
  const auto up = oracle::dense_from_product(QubitAmplitudes(1.0, 0.0), Bath({BathSpin(1.0, 0.0, 0.0)}));
  EXPECT_NEAR(oracle::dense_m_expect(up), 0.0, 1e-15);
  const auto x = oracle::dense_from_product(QubitAmplitudes(kInvSqrt2, kInvSqrt2),
                                            sample_bath(4, FixedCoupling{0.0}, 1, SpinLaw::symmetric));
  EXPECT_NEAR(oracle::dense_m_expect(x), 1.0, 1e-14);
}

TEST(DenseMExpect, ConservedAtZeroField) {
  const auto bath = sample_bath(5, UniformCoupling{0.1, 1.0}, 6);
  const cavity::PassParams p(0.0, 0.0, 15.0, 5.0, 1.3, 1.0);
  auto st = oracle::dense_from_product(QubitAmplitudes(0.6, 0.8), bath);
  const double m0 = oracle::dense_m_expect(st);
  for (std::size_t k = 0; k < bath.size(); ++k) {
    st = oracle::apply_pair(st, k, oracle::pass_propagator(p.with_coupling(bath[k].coupling())));
    EXPECT_NEAR(oracle::dense_m_expect(st), m0, 1e-12);
  }
}

TEST(NeedleReduced, TwoRoutesAgree) {
  const auto bath = sample_bath(5, UniformCoupling{0.1, 1.0}, 7);
  const auto st =
      oracle::dense_evolve_cavity(oracle::dense_from_product(QubitAmplitudes(0.6, 0.8), bath), bath, weak_params());
  EXPECT_LT((oracle::needle_reduced(st) - oracle::needle_reduced_via_partial_trace(st).entries()).cwiseAbs().maxCoeff(),
            1e-14);
}
