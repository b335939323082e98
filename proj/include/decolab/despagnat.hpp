#pragma once

#include <cstddef>

#include "decolab/cavity.hpp"
#include "decolab/log_complex.hpp"
#include "decolab/realclock.hpp"
#include "decolab/types.hpp"

namespace decolab::despagnat {

enum class Regime { unitary, collapsed, damped };

const char* to_string(Regime r);

/// <M> for M = sigma_x (x) prod_k sigma_x^k.
///
/// `value` = 2 Re(term). `term` carries a b* prod_k [...] in log form, so its
/// magnitude stays meaningful after `value` underflows.
struct MExpectation {
  double value = 0.0;
  LogComplex term = LogComplex::zero();
  Regime regime = Regime::unitary;
};

/// 2 Re( a b* prod_k (alpha_k beta_k* + alpha_k* beta_k) e^{-2 i Omega_k tau} ).
/// Weak-coupling gate as cavity::require_weak_coupling.
MExpectation m_expect_unitary(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                              double max_ratio = cavity::kWeakCouplingRatio);

/// After a collapse of the needle <M> vanishes identically.
MExpectation m_expect_collapsed();

/// Damped form with an explicit per-pass damping parameter theta (s^2):
///   2 Re( a b* e^{-2 i sum_k Omega_k tau} e^{-4 N (B G-/hbar)^2 theta}
///         prod_k [alpha_k beta_k* e^{-16 B^2 g1 g2 theta / hbar^2} + alpha_k* beta_k] ).
/// theta = +inf gives 0.
MExpectation m_expect_damped(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                             double theta_val, double max_ratio = cavity::kWeakCouplingRatio);

/// Same, theta taken from the clock channel at the pass duration.
MExpectation m_expect_damped(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                             const realclock::ClockChannel& ch,
                             double max_ratio = cavity::kWeakCouplingRatio);

struct KExponent {
  double k = 0.0;            // N (B G-/hbar)^2 t_planck^(2-2a) tau^(2a)
  double lower_bound = 0.0;  // N t_planck^(2-2a) / tau^(2-2a)
  double alternate = 0.0;    // 6 k, the alternative coefficient
};

KExponent k_exponent(std::size_t n, double B, double gamma1, double gamma2, double tau,
                     const realclock::ClockChannel& ch, double hbar = PhysicalConstants{}.hbar);

enum class Verdict { distinguishable, undecidable };

const char* to_string(Verdict v);

/// distinguishable iff k < 1; the boundary counts as undecidable.
Verdict collapse_distinguishable(double k);

}  // namespace decolab::despagnat
