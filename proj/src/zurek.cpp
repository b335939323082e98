#include "decolab/zurek.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace decolab::zurek {

cplx z_factor_term(const BathSpin& spin, double t) {
  const double x = 2.0 * spin.coupling() * t;
  return {std::cos(x), spin.polarization() * std::sin(x)};
}

LogComplex z_factor(const Bath& bath, double t) {
  if (!(t >= 0.0)) throw ParameterError("z_factor: t must be >= 0");
  LogComplex acc;
  for (const BathSpin& s : bath) {
    const cplx f = z_factor_term(s, t);
    if (f == cplx{0.0, 0.0}) return LogComplex::zero();
    acc *= f;
  }
  return acc;
}

DensityMatrix reduced_density(const QubitAmplitudes& system, const Bath& bath, double t) {
  const cplx a = system.a();
  const cplx b = system.b();
  const cplx coh = (LogComplex::from_complex(a * std::conj(b)) * z_factor(bath, t)).to_complex();
  Matrix rho(2, 2);
  rho << std::norm(a), coh, std::conj(coh), std::norm(b);
  return DensityMatrix(std::move(rho));
}

RevivalReport revival_scan(const Bath& bath, std::span<const double> t_grid,
                           std::size_t threads) {
  if (t_grid.empty()) throw ParameterError("revival_scan: empty grid");
  if (t_grid.front() < 0.0) throw ParameterError("revival_scan: grid must be nonnegative");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw ParameterError("revival_scan: grid must be sorted");
  }

  const std::size_t m = t_grid.size();
  RevivalReport rep;
  rep.scan_times.assign(t_grid.begin(), t_grid.end());
  rep.log_z_magnitudes.resize(m);

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) rep.log_z_magnitudes[i] = z_factor(bath, t_grid[i]).log_mag();
  };
  threads = std::clamp<std::size_t>(threads, 1, m);
  if (threads == 1) {
    work(0, m);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (m + threads - 1) / threads;
    for (std::size_t lo = 0; lo < m; lo += chunk) pool.emplace_back(work, lo, std::min(m, lo + chunk));
    for (auto& th : pool) th.join();
  }

  rep.z_magnitudes.resize(m);
  for (std::size_t i = 0; i < m; ++i) rep.z_magnitudes[i] = std::exp(rep.log_z_magnitudes[i]);

  rep.log_floor = interference_floor(bath.size());
  rep.floor = std::exp(rep.log_floor);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double l = rep.log_z_magnitudes[i];
    if (l > rep.log_z_magnitudes[i - 1] && l > rep.log_z_magnitudes[i + 1] && l > rep.log_floor) {
      rep.peaks.push_back({t_grid[i], rep.z_magnitudes[i]});
    }
  }

  // log-sum-exp of 2 ln|z| over the grid, in grid order.
  const double top = 2.0 * *std::max_element(rep.log_z_magnitudes.begin(), rep.log_z_magnitudes.end());
  if (top == -std::numeric_limits<double>::infinity()) {
    rep.log_mean_z2 = top;
  } else {
    double acc = 0.0;
    for (double l : rep.log_z_magnitudes) acc += std::exp(2.0 * l - top);
    rep.log_mean_z2 = top + std::log(acc / static_cast<double>(m));
  }
  return rep;
}

double revival_time_log(std::size_t n, double mean_freq) {
  if (n < 1) throw ParameterError("revival_time_log: n must be >= 1");
  if (!(mean_freq > 0.0)) throw ParameterError("revival_time_log: mean_freq must be > 0");
  return std::lgamma(static_cast<double>(n) + 1.0) - std::log(mean_freq);
}

double interference_floor(std::size_t n) {
  if (n < 1) throw ParameterError("interference_floor: n must be >= 1");
  return -0.5 * static_cast<double>(n) * std::log(2.0);
}

std::size_t suppression_particle_count(double epsilon, std::size_t n0) {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 3.0 + 1e-15) {
    throw ParameterError("suppression_particle_count: epsilon must lie in (0, 1/3]");
  }
  if (n0 < 1) throw ParameterError("suppression_particle_count: n0 must be >= 1");
  const double x = static_cast<double>(n0) / (3.0 * epsilon);
  // Absorb roundoff so exact quotients (e.g. epsilon = 1/3) are not bumped up.
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace decolab::zurek
