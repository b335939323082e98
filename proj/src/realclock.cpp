#include "decolab/realclock.hpp"

#include <cmath>
#include <limits>

#include "decolab/zurek.hpp"

namespace decolab::realclock {

void ClockChannel::validate() const {
  if (!(t_planck > 0.0) || !std::isfinite(t_planck)) {
    throw ParameterError("ClockChannel: t_planck must be finite and > 0");
  }
  if (!(clock_exponent > 0.0 && clock_exponent < 1.0)) {
    throw ParameterError("ClockChannel: clock_exponent must lie in (0, 1)");
  }
}

double ClockChannel::planck_weight() const {
  return std::pow(t_planck, 2.0 - 2.0 * clock_exponent);
}

double damping_exponent(double omega, double t, const ClockChannel& ch) {
  ch.validate();
  if (!(omega >= 0.0) || !(t >= 0.0)) throw ParameterError("damping_exponent: omega and t must be >= 0");
  if (omega == 0.0 || t == 0.0) return 0.0;
  return omega * omega * ch.planck_weight() * std::pow(t, 2.0 * ch.clock_exponent);
}

double damping_factor(double omega, double t, const ClockChannel& ch) {
  return std::exp(-damping_exponent(omega, t, ch));
}

double theta(double tau, const ClockChannel& ch) {
  ch.validate();
  if (!(tau >= 0.0)) throw ParameterError("theta: tau must be >= 0");
  return 1.5 * ch.planck_weight() * std::pow(tau, 2.0 * ch.clock_exponent);
}

Eigen::Matrix4d bohr_matrix(double B, double gamma1, double gamma2, double hbar) {
  if (!(hbar > 0.0)) throw ParameterError("bohr_matrix: hbar must be > 0");
  const double gp = B * (gamma1 + gamma2) / hbar;
  const double gm = B * (gamma1 - gamma2) / hbar;
  const Eigen::Vector4d e{gp, gm, -gm, -gp};
  Eigen::Matrix4d w;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w(m, n) = e(m) - e(n);
  return w;
}

DensityMatrix damp_density(const DensityMatrix& rho, const Eigen::MatrixXd& bohr, double theta_val) {
  const Eigen::Index n = rho.dim();
  if (bohr.rows() != n || bohr.cols() != n) throw ParameterError("damp_density: bohr matrix size mismatch");
  if (!(theta_val >= 0.0)) throw ParameterError("damp_density: theta must be >= 0");
  Matrix out = rho.entries();
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!std::isfinite(bohr(m, k))) throw ParameterError("damp_density: non-finite Bohr frequency");
      if (std::abs(std::abs(bohr(m, k)) - std::abs(bohr(k, m))) > 1e-12 * (1.0 + std::abs(bohr(m, k)))) {
        throw ParameterError("damp_density: Bohr matrix magnitudes are not symmetric");
      }
      if (m == k) continue;
      const double w2 = bohr(m, k) * bohr(m, k);
      if (w2 == 0.0) continue;
      out(m, k) *= std::exp(-w2 * theta_val);
    }
  }
  return DensityMatrix(std::move(out));
}

double z_damping_exponent(const Bath& bath, double t, const ClockChannel& ch) {
  double acc = 0.0;
  for (const BathSpin& s : bath) acc += damping_exponent(2.0 * s.coupling(), t, ch);
  return acc;
}

LogComplex damped_z(const Bath& bath, double t, const ClockChannel& ch) {
  return zurek::z_factor(bath, t).damped(z_damping_exponent(bath, t, ch));
}

RevivalVerdict revival_killed(std::size_t n, double g, const ClockChannel& ch) {
  ch.validate();
  if (n == 0) throw ParameterError("revival_killed: n must be >= 1");
  if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("revival_killed: g must be finite and > 0");
  const double a = ch.clock_exponent;
  const double nn = static_cast<double>(n);
  const double log_tr = std::lgamma(nn + 1.0) - std::log(g);
  RevivalVerdict v;
  v.log_damping = std::log(nn) + 2.0 * std::log(2.0 * g) + (2.0 - 2.0 * a) * std::log(ch.t_planck) +
                  2.0 * a * log_tr;
  v.log_floor = std::log(0.5 * nn * std::log(2.0));
  v.margin = v.log_damping - v.log_floor;
  v.killed = v.margin > 0.0;
  return v;
}

std::optional<std::size_t> critical_particle_count(double g, const ClockChannel& ch, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (revival_killed(n, g, ch).killed) return n;
  }
  return std::nullopt;
}

}  // namespace decolab::realclock
