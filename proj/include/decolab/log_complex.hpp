#pragma once

#include <limits>
#include <span>

#include "decolab/types.hpp"

namespace decolab {

/// Complex number stored as (natural log of magnitude, phase in (-pi, pi]).
///
/// Used for products of thousands of unit-scale factors whose magnitude
/// drops far below the smallest normal double. An exact zero is encoded as
/// log_mag = -inf, and stays zero under multiplication.
class LogComplex {
 public:
  LogComplex() = default;  // == 1
  LogComplex(double log_mag, double phase);

  static LogComplex from_complex(cplx z);
  static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  double log10_abs() const;
  double abs() const;
  cplx to_complex() const;

  LogComplex conj() const;
  LogComplex& operator*=(const LogComplex& rhs);
  LogComplex& operator*=(cplx rhs) { return *this *= from_complex(rhs); }
  /// Multiply by exp(-x) for real x (a damping exponent).
  LogComplex damped(double exponent) const;

  friend LogComplex operator*(LogComplex lhs, const LogComplex& rhs) { return lhs *= rhs; }

 private:
  double log_mag_ = 0.0;
  double phase_ = 0.0;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// Product of all factors, accumulated left to right in the log domain.
LogComplex log_product(std::span<const cplx> factors);

}  // namespace decolab
