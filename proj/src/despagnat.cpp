#include "decolab/despagnat.hpp"

#include <cmath>
#include <limits>

namespace decolab::despagnat {

namespace {

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::unitary: return "unitary";
    case Regime::collapsed: return "collapsed";
    case Regime::damped: return "damped";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  return v == Verdict::distinguishable ? "distinguishable" : "undecidable";
}

MExpectation m_expect_unitary(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                              double max_ratio) {
  cavity::require_weak_coupling(bath, p, max_ratio);
  const double tau = p.tau();
  LogComplex acc = LogComplex::from_complex(sys.a() * std::conj(sys.b()));
  for (const BathSpin& s : bath) {
    if (acc.is_zero()) break;
    const cplx bracket = s.alpha() * std::conj(s.beta()) + std::conj(s.alpha()) * s.beta();
    acc *= bracket * expi(-2.0 * p.omega_for(s.coupling()) * tau);
  }
  MExpectation out;
  out.term = acc;
  out.value = acc.is_zero() ? 0.0 : 2.0 * acc.to_complex().real();
  out.regime = Regime::unitary;
  return out;
}

MExpectation m_expect_collapsed() {
  MExpectation out;
  out.regime = Regime::collapsed;
  return out;
}

MExpectation m_expect_damped(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                             double theta_val, double max_ratio) {
  if (!(theta_val >= 0.0)) throw ParameterError("m_expect_damped: theta must be >= 0");
  cavity::require_weak_coupling(bath, p, max_ratio);
  const double tau = p.tau();
  const double hb = p.hbar();
  const double zm = p.zeeman_minus();
  const double cross = 16.0 * p.B() * p.B() * p.gamma1() * p.gamma2() / (hb * hb) * theta_val;
  const double per_pass = 4.0 * zm * zm * theta_val;
  const double inner = std::isinf(cross) ? 0.0 : std::exp(-cross);

  MExpectation out;
  out.regime = Regime::damped;
  LogComplex acc = LogComplex::from_complex(sys.a() * std::conj(sys.b()));
  double total_damp = 0.0;
  for (const BathSpin& s : bath) {
    if (acc.is_zero()) break;
    const cplx bracket = s.alpha() * std::conj(s.beta()) * inner + std::conj(s.alpha()) * s.beta();
    acc *= bracket * expi(-2.0 * p.omega_for(s.coupling()) * tau);
    total_damp += per_pass;
  }
  if (std::isinf(total_damp) || acc.is_zero()) {
    out.term = LogComplex::zero();
    out.value = 0.0;
    return out;
  }
  out.term = acc.damped(total_damp);
  out.value = 2.0 * out.term.to_complex().real();
  return out;
}

MExpectation m_expect_damped(const QubitAmplitudes& sys, const Bath& bath, const cavity::PassParams& p,
                             const realclock::ClockChannel& ch, double max_ratio) {
  return m_expect_damped(sys, bath, p, realclock::theta(p.tau(), ch), max_ratio);
}

KExponent k_exponent(std::size_t n, double B, double gamma1, double gamma2, double tau,
                     const realclock::ClockChannel& ch, double hbar) {
  ch.validate();
  if (n == 0) throw ParameterError("k_exponent: n must be >= 1");
  if (!(B >= 0.0) || !(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !(tau >= 0.0) || !(hbar > 0.0)) {
    throw ParameterError("k_exponent: inputs must be nonnegative");
  }
  const double nn = static_cast<double>(n);
  const double zm = B * (gamma1 - gamma2) / hbar;
  const double w = ch.planck_weight();
  KExponent out;
  out.k = nn * zm * zm * w * std::pow(tau, 2.0 * ch.clock_exponent);
  out.lower_bound = tau == 0.0 ? std::numeric_limits<double>::infinity()
                               : nn * w / std::pow(tau, 2.0 - 2.0 * ch.clock_exponent);
  out.alternate = 6.0 * out.k;
  return out;
}

Verdict collapse_distinguishable(double k) {
  if (!(k >= 0.0)) throw ParameterError("collapse_distinguishable: k must be >= 0");
  return k < 1.0 ? Verdict::distinguishable : Verdict::undecidable;
}

}  // namespace decolab::despagnat
