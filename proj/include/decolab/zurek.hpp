#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "decolab/density.hpp"
#include "decolab/log_complex.hpp"
#include "decolab/types.hpp"

namespace decolab::zurek {

/// Off-diagonal coherence factor
///   z(t) = prod_k [cos(2 g_k t) + i (|alpha_k|^2 - |beta_k|^2) sin(2 g_k t)].
LogComplex z_factor(const Bath& bath, double t);

/// One factor of z(t) for a single spin.
cplx z_factor_term(const BathSpin& spin, double t);

/// Needle reduced density matrix: diag(|a|^2, |b|^2), rho_{+-} = z(t) a b*.
DensityMatrix reduced_density(const QubitAmplitudes& system, const Bath& bath, double t);

struct RevivalPeak {
  double t = 0.0;
  double abs_z = 0.0;
};

struct RevivalReport {
  std::vector<double> scan_times;
  std::vector<double> z_magnitudes;
  std::vector<double> log_z_magnitudes;  // natural log, exact even when |z| underflows
  std::vector<RevivalPeak> peaks;
  double floor = 0.0;      // 2^(-N/2)
  double log_floor = 0.0;  // -(N/2) ln 2
  /// ln of the grid mean of |z|^2, computed with log-sum-exp.
  double log_mean_z2 = 0.0;
};

/// Evaluates |z| on a sorted, nonnegative grid. A peak is a grid point strictly
/// above both neighbours and above the 2^(-N/2) interference floor. Grid points
/// are split across `threads` workers; results do not depend on the split.
RevivalReport revival_scan(const Bath& bath, std::span<const double> t_grid,
                           std::size_t threads = 1);

/// ln(N! / Omega): revival time scale, proportionality constant taken as 1.
double revival_time_log(std::size_t n, double mean_freq);

/// ln of the typical off-diagonal magnitude between revivals, -(N/2) ln 2.
double interference_floor(std::size_t n);

/// Particle count needed when the clock exponent shrinks to epsilon:
/// ceil(n0 / (3 epsilon)), epsilon in (0, 1/3].
std::size_t suppression_particle_count(double epsilon, std::size_t n0);

}  // namespace decolab::zurek
