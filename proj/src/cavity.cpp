#include "decolab/cavity.hpp"

#include <cmath>
#include <string>

namespace decolab::cavity {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

// sin(omega t) / omega, continuous through omega = 0.
double sin_over(double omega, double t) {
  if (omega == 0.0) return t;
  return std::sin(omega * t) / omega;
}

void require_finite_nonneg(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw ParameterError(std::string("PassParams: ") + name + " must be finite and >= 0");
  }
}

}  // namespace

PassParams::PassParams(double f, double B, double gamma1, double gamma2, double tau, double hbar)
    : f_(f), B_(B), gamma1_(gamma1), gamma2_(gamma2), tau_(tau), hbar_(hbar) {
  require_finite_nonneg(f, "f");
  require_finite_nonneg(B, "B");
  require_finite_nonneg(gamma1, "gamma1");
  require_finite_nonneg(gamma2, "gamma2");
  require_finite_nonneg(tau, "tau");
  if (!(hbar > 0.0)) throw ParameterError("PassParams: hbar must be > 0");
}

double PassParams::omega() const { return omega_for(f_); }

double PassParams::omega_for(double f) const { return std::hypot(2.0 * f, zeeman_minus()); }

PassParams PassParams::with_coupling(double f) const {
  return {f, B_, gamma1_, gamma2_, tau_, hbar_};
}

PassParams PassParams::with_tau(double tau) const {
  return {f_, B_, gamma1_, gamma2_, tau, hbar_};
}

Eigen::Matrix4cd pass_hamiltonian(const PassParams& p) {
  const double f = p.f();
  const double zp = p.zeeman_plus();
  const double zm = p.zeeman_minus();
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 0) = f + zp;
  h(1, 1) = -f + zm;
  h(1, 2) = 2.0 * f;
  h(2, 1) = 2.0 * f;
  h(2, 2) = -f - zm;
  h(3, 3) = f - zp;
  return h;
}

PassCoefficients single_pass_closed(const QubitAmplitudes& sys, const BathSpin& spin,
                                    const PassParams& p) {
  const cplx a = sys.a(), b = sys.b();
  const cplx al = spin.alpha(), be = spin.beta();
  const double f = p.f(), t = p.tau();
  const double zp = p.zeeman_plus(), zm = p.zeeman_minus();
  const double om = p.omega();
  const double c = std::cos(om * t);
  const double so = sin_over(om, t);
  const cplx ph = expi(f * t);

  PassCoefficients out;
  out.R = a * al * expi(-(f + zp) * t);
  out.V = b * be * expi(-(f - zp) * t);
  out.T = a * be * ph * (c - kI * zm * so) - 2.0 * kI * b * al * f * so * ph;
  out.U = b * al * ph * (c + kI * zm * so) - 2.0 * kI * a * be * f * so * ph;
  return out;
}

PassCoefficients single_pass_numeric(const QubitAmplitudes& sys, const BathSpin& spin,
                                     const PassParams& p, std::size_t steps) {
  if (steps < 100) throw ParameterError("single_pass_numeric: steps must be >= 100");
  const Eigen::Matrix4cd h = pass_hamiltonian(p);
  Eigen::Vector4d diag;
  for (int i = 0; i < 4; ++i) diag(i) = h(i, i).real();
  Eigen::Matrix4cd off = h;
  for (int i = 0; i < 4; ++i) off(i, i) = 0.0;

  // y = exp(i D t) psi obeys dy/dt = -i W(t) y with W_mn = e^{i (D_m - D_n) t} off_mn.
  auto rhs = [&](double t, const Eigen::Vector4cd& y) {
    Eigen::Vector4cd dy = Eigen::Vector4cd::Zero();
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        if (off(m, n) == cplx{0.0, 0.0}) continue;
        dy(m) += -kI * expi((diag(m) - diag(n)) * t) * off(m, n) * y(n);
      }
    }
    return dy;
  };

  const cplx a = sys.a(), b = sys.b();
  Eigen::Vector4cd y{a * spin.alpha(), a * spin.beta(), b * spin.alpha(), b * spin.beta()};
  const double tau = p.tau();
  const double hstep = tau / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = hstep * static_cast<double>(i);
    const Eigen::Vector4cd k1 = rhs(t, y);
    const Eigen::Vector4cd k2 = rhs(t + 0.5 * hstep, y + 0.5 * hstep * k1);
    const Eigen::Vector4cd k3 = rhs(t + 0.5 * hstep, y + 0.5 * hstep * k2);
    const Eigen::Vector4cd k4 = rhs(t + hstep, y + hstep * k3);
    y += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {y(0) * expi(-diag(0) * tau), y(1) * expi(-diag(1) * tau), y(2) * expi(-diag(2) * tau),
          y(3) * expi(-diag(3) * tau)};
}

BranchVectors branch_vectors(const QubitAmplitudes& sys, const Bath& bath, const PassParams& p_common) {
  const cplx a = sys.a(), b = sys.b();
  if (a == cplx{0.0, 0.0} || b == cplx{0.0, 0.0}) {
    throw DegenerateBranchError("branch_vectors: needle amplitude a or b is zero");
  }
  BranchVectors bv;
  bv.a = a;
  bv.b = b;
  bv.tau = p_common.tau();
  bv.zeeman_plus = p_common.zeeman_plus();
  bv.zeeman_minus = p_common.zeeman_minus();
  bv.factors.reserve(bath.size());

  const double t = bv.tau, zp = bv.zeeman_plus, zm = bv.zeeman_minus;
  for (const BathSpin& s : bath) {
    BranchFactor k;
    k.alpha = s.alpha();
    k.beta = s.beta();
    k.f = s.coupling();
    k.omega = p_common.omega_for(k.f);
    const double c = std::cos(k.omega * t);
    const double so = sin_over(k.omega, t);
    const cplx ph = expi(k.f * t);
    k.a_plus = k.alpha * expi(-(k.f + zp) * t);
    k.a_minus = k.beta * ph * (c - kI * zm * so) - 2.0 * kI * (b * k.alpha / a) * k.f * so * ph;
    k.b_plus = k.alpha * ph * (c + kI * zm * so) - 2.0 * kI * (a * k.beta / b) * k.f * so * ph;
    k.b_minus = k.beta * expi(-(k.f - zp) * t);
    bv.factors.push_back(k);
  }
  return bv;
}

double inner_aa_term(const BranchVectors& bv, std::size_t idx) {
  const BranchFactor& k = bv.factors.at(idx);
  const double t = bv.tau, zm = bv.zeeman_minus;
  const double c = std::cos(k.omega * t);
  const double so = sin_over(k.omega, t);    // sin / Omega
  const double rs = zm * so;                  // (B Gamma_- / Omega) sin
  const double fs = k.f * so;                 // (f / Omega) sin
  const cplx x = bv.b * k.alpha / bv.a;
  const cplx cross1 = 2.0 * kI * k.beta * std::conj(x) * fs * (c - kI * rs);
  const cplx cross2 = -2.0 * kI * x * std::conj(k.beta) * fs * (c + kI * rs);
  return std::norm(k.alpha) + std::norm(k.beta) * (c * c + rs * rs) +
         4.0 * std::norm(bv.b) * std::norm(k.alpha) / std::norm(bv.a) * fs * fs +
         (cross1 + cross2).real();
}

double inner_bb_term(const BranchVectors& bv, std::size_t idx) {
  const BranchFactor& k = bv.factors.at(idx);
  const double t = bv.tau, zm = bv.zeeman_minus;
  const double c = std::cos(k.omega * t);
  const double so = sin_over(k.omega, t);
  const double rs = zm * so;
  const double fs = k.f * so;
  const cplx y = bv.a * k.beta / bv.b;
  const cplx cross1 = 2.0 * kI * k.alpha * std::conj(y) * fs * (c + kI * rs);
  const cplx cross2 = -2.0 * kI * y * std::conj(k.alpha) * fs * (c - kI * rs);
  return std::norm(k.beta) + std::norm(k.alpha) * (c * c + rs * rs) +
         4.0 * std::norm(bv.a) * std::norm(k.beta) / std::norm(bv.b) * fs * fs + (cross1 + cross2).real();
}

cplx inner_ab_term(const BranchVectors& bv, std::size_t idx) {
  const BranchFactor& k = bv.factors.at(idx);
  const double t = bv.tau, zp = bv.zeeman_plus, zm = bv.zeeman_minus;
  const double c = std::cos(k.omega * t);
  const double so = sin_over(k.omega, t);
  const double fs = k.f * so;
  const cplx mix = c + kI * zm * so;
  const cplx x = bv.b * k.alpha / bv.a;
  const cplx y = bv.a * k.beta / bv.b;
  const cplx up = expi((2.0 * k.f + zp) * t);
  const cplx down = expi(-(2.0 * k.f - zp) * t);
  return std::norm(k.alpha) * up * mix - std::conj(k.alpha) * up * 2.0 * kI * y * fs +
         std::norm(k.beta) * down * mix + 2.0 * kI * std::conj(x) * k.beta * fs * down;
}

namespace {

double log_real_product(const BranchVectors& bv, double (*term)(const BranchVectors&, std::size_t)) {
  double acc = 0.0;
  for (std::size_t k = 0; k < bv.size(); ++k) {
    const double v = term(bv, k);
    if (!(v > 0.0)) {
      if (v == 0.0) return -std::numeric_limits<double>::infinity();
      throw ParameterError("branch norm factor is negative");
    }
    acc += std::log(v);
  }
  return acc;
}

}  // namespace

double inner_aa(const BranchVectors& bv) { return log_real_product(bv, &inner_aa_term); }

double inner_bb(const BranchVectors& bv) { return log_real_product(bv, &inner_bb_term); }

LogComplex inner_ab(const BranchVectors& bv) {
  LogComplex acc;
  for (std::size_t k = 0; k < bv.size(); ++k) {
    const cplx z = inner_ab_term(bv, k);
    if (z == cplx{0.0, 0.0}) return LogComplex::zero();
    acc *= z;
  }
  return acc;
}

void require_weak_coupling(const Bath& bath, const PassParams& p, double max_ratio) {
  const double zm = std::abs(p.zeeman_minus());
  if (zm == 0.0) {
    throw RegimeError("weak-coupling form needs gamma1 != gamma2 and B > 0");
  }
  for (const BathSpin& s : bath) {
    const double ratio = s.coupling() / zm;
    if (!(ratio < max_ratio)) {
      throw RegimeError("weak-coupling form needs f/(B Gamma_-/hbar) < " + std::to_string(max_ratio) +
                        ", got " + std::to_string(ratio));
    }
  }
}

LogComplex inner_ab_approx(const Bath& bath, const PassParams& p, double max_ratio) {
  require_weak_coupling(bath, p, max_ratio);
  const double t = p.tau();
  LogComplex acc;
  for (const BathSpin& s : bath) {
    const double x = 2.0 * s.coupling() * t;
    const cplx bracket{std::cos(x), s.polarization() * std::sin(x)};
    if (bracket == cplx{0.0, 0.0}) return LogComplex::zero();
    acc *= bracket * expi(2.0 * p.omega_for(s.coupling()) * t);
  }
  return acc;
}

Eigen::Matrix2cd NeedleDensity::matrix() const {
  const cplx pm = rho_pm.to_complex();
  Eigen::Matrix2cd m;
  m << rho_pp, pm, std::conj(pm), rho_mm;
  return m;
}

DensityMatrix NeedleDensity::density() const { return DensityMatrix(Matrix(matrix())); }

NeedleDensity reduced_density_needle(const QubitAmplitudes& sys, const BranchVectors& bv) {
  NeedleDensity out;
  const cplx a = sys.a(), b = sys.b();
  out.rho_pp = std::norm(a) * std::exp(inner_aa(bv));
  out.rho_mm = std::norm(b) * std::exp(inner_bb(bv));
  out.rho_pm = LogComplex::from_complex(a * std::conj(b)) * inner_ab(bv).conj();
  return out;
}

double branch_state_norm2(const QubitAmplitudes& sys, const BranchVectors& bv) {
  return std::norm(sys.a()) * std::exp(inner_aa(bv)) + std::norm(sys.b()) * std::exp(inner_bb(bv));
}

double integrated_coupling(const PhysicalScenario& s) {
  s.validate();
  const double pref = 2.0 * s.constants.mu0 * s.gamma1 * s.gamma2 / (s.constants.hbar * s.v * s.d * s.d);
  return pref / std::sqrt(1.0 + (s.d * s.d) / (s.L * s.L));
}

double dipolar_coupling(const PhysicalScenario& s, double r) {
  if (!(r > 0.0)) throw ParameterError("dipolar_coupling: r must be > 0");
  return s.constants.mu0 * s.gamma1 * s.gamma2 / (s.constants.hbar * r * r * r);
}

PassParams pass_params(const PhysicalScenario& s, double f) {
  return {f, s.B, s.gamma1, s.gamma2, s.tau, s.constants.hbar};
}

}  // namespace decolab::cavity
