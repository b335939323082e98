#include "decolab/log_complex.hpp"

#include <cmath>

namespace decolab {

double wrap_phase(double phase) {
  double w = std::remainder(phase, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

LogComplex::LogComplex(double log_mag, double phase)
    : log_mag_(log_mag), phase_(wrap_phase(phase)) {
  if (std::isnan(log_mag) || log_mag == std::numeric_limits<double>::infinity()) {
    throw ParameterError("LogComplex: log magnitude must be finite or -inf");
  }
  if (is_zero()) phase_ = 0.0;
}

LogComplex LogComplex::from_complex(cplx z) {
  const double m = std::abs(z);
  if (m == 0.0) return zero();
  return {std::log(m), std::arg(z)};
}

double LogComplex::log10_abs() const { return log_mag_ / std::log(10.0); }

double LogComplex::abs() const { return std::exp(log_mag_); }

cplx LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

LogComplex LogComplex::conj() const {
  if (is_zero()) return zero();
  return {log_mag_, -phase_};
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = zero();
    return *this;
  }
  log_mag_ += rhs.log_mag_;
  phase_ = wrap_phase(phase_ + rhs.phase_);
  return *this;
}

LogComplex LogComplex::damped(double exponent) const {
  if (is_zero()) return zero();
  if (exponent == std::numeric_limits<double>::infinity()) return zero();
  return {log_mag_ - exponent, phase_};
}

LogComplex log_product(std::span<const cplx> factors) {
  LogComplex acc;
  for (const cplx& z : factors) {
    if (z == cplx{0.0, 0.0}) return LogComplex::zero();
    acc *= z;
  }
  return acc;
}

}  // namespace decolab
