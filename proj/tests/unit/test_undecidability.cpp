#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "decolab/density.hpp"
#include "decolab/undecidability.hpp"

using namespace decolab;
using namespace decolab::undecidability;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vector plus_branch_state() {
  Vector v = Vector::Zero(8);
  v(0b001) = kInvSqrt2;
  v(0b010) = kInvSqrt2;
  return v;
}

}  // namespace

TEST(Projector, Validation) {
  Matrix bad = Matrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(Projector{bad}, ParameterError);
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 1.0;
  EXPECT_THROW(Projector{nonherm}, ParameterError);
  const auto p = Projector::onto(Vector::Ones(2));
  EXPECT_NEAR(p.entries()(0, 1).real(), 0.5, 1e-15);
}

TEST(BranchProject, Examples) {
  const auto ptr = pointer_projectors(3);
  const Vector psi = three_spin_event_state(kInvSqrt2, kInvSqrt2);
  EXPECT_NEAR(branch_project(psi, ptr[0]).squaredNorm(), 0.5, 1e-15);
  const Vector in = plus_branch_state();
  EXPECT_EQ((branch_project(in, ptr[0]) - in).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(branch_project(in, ptr[1]).cwiseAbs().maxCoeff(), 0.0);
  // A 2x2 projector acts on the leading factor.
  Matrix up = Matrix::Zero(2, 2);
  up(0, 0) = 1.0;
  EXPECT_NEAR(branch_project(psi, Projector(up)).squaredNorm(), 0.5, 1e-15);
}

TEST(ProjectionMixture, Examples) {
  const auto ptr = pointer_projectors(3);
  const Vector one = plus_branch_state();
  EXPECT_LT((projection_mixture(one, ptr).entries() - DensityMatrix::pure(one).entries()).cwiseAbs().maxCoeff(),
            1e-15);

  const double c1 = 0.6, c2 = 0.8;
  const Vector psi = three_spin_event_state(c1, c2);
  const auto mix = projection_mixture(psi, ptr);
  const std::vector<std::size_t> keep{0}, dims{2, 2, 2};
  const auto needle = partial_trace(mix, keep, dims);
  EXPECT_NEAR(needle(0, 0).real(), c1 * c1, 1e-15);
  EXPECT_NEAR(needle(1, 1).real(), c2 * c2, 1e-15);
  EXPECT_NEAR(std::abs(needle(0, 1)), 0.0, 1e-15);
  const auto pure_needle = partial_trace(DensityMatrix::pure(psi), keep, dims);
  EXPECT_LT((pure_needle.entries() - needle.entries()).cwiseAbs().maxCoeff(), 1e-15);

  EXPECT_NEAR(trace_distance(DensityMatrix::pure(psi), mix), c1 * c2, 1e-10);
  const Vector half = three_spin_event_state(kInvSqrt2, kInvSqrt2);
  EXPECT_NEAR(trace_distance(DensityMatrix::pure(half), projection_mixture(half, ptr)), 0.5, 1e-10);
}

TEST(ProjectionMixture, RejectsIncompleteSet) {
  const auto ptr = pointer_projectors(3);
  const std::vector<Projector> only_up{ptr[0]};
  EXPECT_THROW(projection_mixture(plus_branch_state(), only_up), ParameterError);
}

TEST(Compatibility, ThreeSpinEvent) {
  const auto essential = three_spin_essential();
  EXPECT_TRUE(is_compatible(pointer_projectors(3)[0], essential));
  EXPECT_TRUE(is_compatible(opposite_pair_projector(), essential));
  EXPECT_FALSE(is_compatible(pointer_projectors(3)[1], essential));
  EXPECT_NO_THROW(EventRecord(essential, {pointer_projectors(3)[0], opposite_pair_projector()}, 0.5));
  EXPECT_THROW(EventRecord(essential, {pointer_projectors(3)[1]}, 0.5), ParameterError);
  EXPECT_THROW(EventRecord(essential, {}, 1.5), ParameterError);
}

TEST(Margin, NoDampingNoEvent) {
  const Vector psi = three_spin_event_state(kInvSqrt2, kInvSqrt2);
  const auto r = undecidability_margin(psi, pointer_projectors(3), {pointer_energies(3, 1.0), 0.0});
  EXPECT_NEAR(r.margin, 0.5, 1e-12);
  EXPECT_FALSE(r.event);
}

TEST(Margin, FullDephasingIsEvent) {
  const Vector psi = three_spin_event_state(kInvSqrt2, kInvSqrt2);
  const auto r = undecidability_margin(psi, pointer_projectors(3),
                                       {pointer_energies(3, 1.0), std::numeric_limits<double>::infinity()});
  EXPECT_EQ(r.margin, 0.0);
  EXPECT_TRUE(r.event);
}

TEST(Margin, MonotoneInTheta) {
  const Vector psi = three_spin_event_state(0.6, 0.8);
  double prev = 1.0;
  for (double th = 0.0; th <= 50.0; th += 0.25) {
    const double m = undecidability_margin(psi, pointer_projectors(3), {pointer_energies(3, 1.0), th}).margin;
    EXPECT_LE(m, prev + 1e-15) << th;
    prev = m;
  }
  EXPECT_NEAR(undecidability_margin(psi, pointer_projectors(3), {pointer_energies(3, 1.0), 1.0}).margin,
              0.48 * std::exp(-1.0), 1e-12);
}
