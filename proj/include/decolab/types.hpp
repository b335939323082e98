#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace decolab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors

/// Invalid argument: bad range, dimension mismatch, violated precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs outside the approximation regime an operation is valid for.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Branch decomposition undefined because one needle amplitude is zero.
class DegenerateBranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense representation would exceed the supported size.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// ---------------------------------------------------------------------------
// State amplitudes

/// Needle / system qubit a|+> + b|->.
class QubitAmplitudes {
 public:
  QubitAmplitudes(cplx a, cplx b);

  /// Rescales (a, b) to unit norm; throws on the zero vector.
  static QubitAmplitudes normalized(cplx a, cplx b);

  cplx a() const { return a_; }
  cplx b() const { return b_; }

 private:
  cplx a_;
  cplx b_;
};

/// One environment spin alpha|+>_k + beta|->_k and its coupling frequency (rad/s).
class BathSpin {
 public:
  BathSpin(cplx alpha, cplx beta, double coupling);

  static BathSpin normalized(cplx alpha, cplx beta, double coupling);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  double coupling() const { return coupling_; }

  /// |alpha|^2 - |beta|^2
  double polarization() const { return std::norm(alpha_) - std::norm(beta_); }

 private:
  cplx alpha_;
  cplx beta_;
  double coupling_;
};

class Bath {
 public:
  explicit Bath(std::vector<BathSpin> spins);

  std::size_t size() const { return spins_.size(); }
  const BathSpin& operator[](std::size_t k) const { return spins_[k]; }
  const std::vector<BathSpin>& spins() const { return spins_; }

  auto begin() const { return spins_.begin(); }
  auto end() const { return spins_.end(); }

  /// Same spins, every coupling replaced.
  Bath with_couplings(const std::vector<double>& couplings) const;

 private:
  std::vector<BathSpin> spins_;
};

// ---------------------------------------------------------------------------
// Physical constants and scenarios (SI units throughout)

struct PhysicalConstants {
  double hbar = 1.054571e-34;      // J s
  double mu0 = 1.256637e-6;        // T m / A
  double t_planck = 5.39e-44;      // s
  double clock_exponent = 1.0 / 3.0;

  void validate() const;
};

struct PhysicalScenario {
  double mass = 0.0;    // kg, environment particle
  double gamma1 = 0.0;  // J/T, needle moment
  double gamma2 = 0.0;  // J/T, environment moment
  double B = 0.0;       // T
  double d = 0.0;       // m, impact parameter
  double L = 0.0;       // m, half cavity length
  double v = 0.0;       // m/s
  double tau = 0.0;     // s, time of flight
  std::size_t N = 1;
  PhysicalConstants constants{};

  double gamma_plus() const { return gamma1 + gamma2; }
  double gamma_minus() const { return gamma1 - gamma2; }
  /// Total experiment duration N * tau.
  double total_time() const { return static_cast<double>(N) * tau; }

  void validate() const;
};

}  // namespace decolab
