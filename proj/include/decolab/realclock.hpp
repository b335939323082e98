#pragma once

#include <cstddef>
#include <optional>

#include "decolab/density.hpp"
#include "decolab/log_complex.hpp"
#include "decolab/types.hpp"

namespace decolab::realclock {

/// Clock-error law dT ~ t_planck^(1-a) T^a.
struct ClockChannel {
  double t_planck = 5.39e-44;  // s
  double clock_exponent = 1.0 / 3.0;

  static ClockChannel from(const PhysicalConstants& c) { return {c.t_planck, c.clock_exponent}; }
  void validate() const;
  /// t_planck^(2 - 2a)
  double planck_weight() const;
};

/// omega^2 t_planck^(2-2a) t^(2a)
double damping_exponent(double omega, double t, const ClockChannel& ch);

/// exp(-damping_exponent), in (0, 1].
double damping_factor(double omega, double t, const ClockChannel& ch);

/// Per-pass damping parameter 3/2 t_planck^(2-2a) tau^(2a).
double theta(double tau, const ClockChannel& ch);

/// Bohr frequencies (E_m - E_n)/hbar of the Zeeman-only pass Hamiltonian
/// B diag(G+, G-, -G-, -G+) in the (++, +-, -+, --) basis.
Eigen::Matrix4d bohr_matrix(double B, double gamma1, double gamma2, double hbar);

/// Multiplies rho_mn by exp(-omega_mn^2 theta). Diagonal untouched.
/// theta may be +inf (full dephasing of every nondegenerate pair).
DensityMatrix damp_density(const DensityMatrix& rho, const Eigen::MatrixXd& bohr, double theta_val);

/// Sum_k (2 g_k)^2 t_planck^(2-2a) t^(2a): the log suppression of z(t).
double z_damping_exponent(const Bath& bath, double t, const ClockChannel& ch);

/// z(t) times exp(-z_damping_exponent).
LogComplex damped_z(const Bath& bath, double t, const ClockChannel& ch);

struct RevivalVerdict {
  bool killed = false;
  double log_damping = 0.0;  // ln of N (2g)^2 t_planck^(2-2a) t_r^(2a), t_r = N!/g
  double log_floor = 0.0;    // ln of (N/2) ln 2
  double margin = 0.0;       // log_damping - log_floor; killed iff > 0
};

/// Whether real-clock damping at the first revival exceeds the between-revival
/// suppression (N/2) ln 2. All quantities in log domain.
RevivalVerdict revival_killed(std::size_t n, double g, const ClockChannel& ch);

/// Smallest N in [1, n_max] for which revival_killed reports killed.
std::optional<std::size_t> critical_particle_count(double g, const ClockChannel& ch,
                                                   std::size_t n_max = 1000000);

}  // namespace decolab::realclock
