#include "decolab/types.hpp"

#include <cmath>
#include <string>

namespace decolab {

namespace {

constexpr double kNormTol = 1e-12;

void check_norm(cplx x, cplx y, const char* what) {
  const double n2 = std::norm(x) + std::norm(y);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTol) {
    throw ParameterError(std::string(what) + ": squared norm " + std::to_string(n2) +
                         " differs from 1");
  }
}

std::pair<cplx, cplx> rescale(cplx x, cplx y, const char* what) {
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ParameterError(std::string(what) + ": cannot normalize a zero or non-finite vector");
  }
  return {x / n, y / n};
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError(std::string(name) + " must be strictly positive and finite");
  }
}

}  // namespace

QubitAmplitudes::QubitAmplitudes(cplx a, cplx b) : a_(a), b_(b) {
  check_norm(a, b, "QubitAmplitudes");
}

QubitAmplitudes QubitAmplitudes::normalized(cplx a, cplx b) {
  auto [x, y] = rescale(a, b, "QubitAmplitudes");
  return {x, y};
}

BathSpin::BathSpin(cplx alpha, cplx beta, double coupling)
    : alpha_(alpha), beta_(beta), coupling_(coupling) {
  check_norm(alpha, beta, "BathSpin");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw ParameterError("BathSpin: coupling must be finite and >= 0");
  }
}

BathSpin BathSpin::normalized(cplx alpha, cplx beta, double coupling) {
  auto [x, y] = rescale(alpha, beta, "BathSpin");
  return {x, y, coupling};
}

Bath::Bath(std::vector<BathSpin> spins) : spins_(std::move(spins)) {
  if (spins_.empty()) throw ParameterError("Bath: needs at least one spin");
}

Bath Bath::with_couplings(const std::vector<double>& couplings) const {
  if (couplings.size() != spins_.size()) {
    throw ParameterError("Bath::with_couplings: size mismatch");
  }
  std::vector<BathSpin> out;
  out.reserve(spins_.size());
  for (std::size_t k = 0; k < spins_.size(); ++k) {
    out.emplace_back(spins_[k].alpha(), spins_[k].beta(), couplings[k]);
  }
  return Bath(std::move(out));
}

void PhysicalConstants::validate() const {
  require_positive(hbar, "hbar");
  require_positive(mu0, "mu0");
  require_positive(t_planck, "t_planck");
  if (!(clock_exponent > 0.0 && clock_exponent < 1.0)) {
    throw ParameterError("clock_exponent must lie in (0, 1)");
  }
}

void PhysicalScenario::validate() const {
  require_positive(mass, "mass");
  require_positive(gamma1, "gamma1");
  require_positive(gamma2, "gamma2");
  require_positive(B, "B");
  require_positive(d, "d");
  require_positive(L, "L");
  require_positive(v, "v");
  require_positive(tau, "tau");
  if (N < 1) throw ParameterError("N must be >= 1");
  constants.validate();
}

}  // namespace decolab
