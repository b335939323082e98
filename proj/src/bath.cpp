#include "decolab/bath.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace decolab {

void validate(const CouplingLaw& law) {
  if (const auto* f = std::get_if<FixedCoupling>(&law)) {
    if (!(f->value >= 0.0) || !std::isfinite(f->value)) {
      throw ParameterError("fixed coupling must be finite and >= 0");
    }
    return;
  }
  if (const auto* l = std::get_if<LogUniformCoupling>(&law)) {
    if (!(l->min > 0.0) || !(l->max > 0.0) || !std::isfinite(l->max)) {
      throw ParameterError("log-uniform coupling bounds must be positive and finite");
    }
    if (!(l->min <= l->max)) throw ParameterError("log-uniform coupling bounds out of order");
    return;
  }
  const auto& u = std::get<UniformCoupling>(law);
  if (!(u.min > 0.0) || !(u.max > 0.0) || !std::isfinite(u.max)) {
    throw ParameterError("uniform coupling bounds must be positive and finite");
  }
  if (!(u.min <= u.max)) throw ParameterError("uniform coupling bounds out of order");
}

std::pair<cplx, cplx> haar_qubit(std::mt19937_64& rng) {
  // Four iid normals normalized onto the unit 3-sphere in C^2 are Haar-distributed.
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const cplx x{gauss(rng), gauss(rng)};
    const cplx y{gauss(rng), gauss(rng)};
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    if (n > 1e-300) return {x / n, y / n};
  }
}

SpinLaw parse_spin_law(const std::string& name) {
  if (name == "haar") return SpinLaw::haar;
  if (name == "balanced") return SpinLaw::balanced;
  if (name == "symmetric") return SpinLaw::symmetric;
  if (name == "polarized") return SpinLaw::polarized;
  throw ParameterError("unknown spin law: " + name);
}

const char* to_string(SpinLaw law) {
  switch (law) {
    case SpinLaw::haar: return "haar";
    case SpinLaw::balanced: return "balanced";
    case SpinLaw::symmetric: return "symmetric";
    case SpinLaw::polarized: return "polarized";
  }
  return "haar";
}

Bath sample_bath(std::size_t n, const CouplingLaw& law, std::uint64_t seed, SpinLaw spin_law) {
  if (n < 1) throw ParameterError("sample_bath: n must be >= 1");
  validate(law);
  std::mt19937_64 rng(seed);
  std::vector<BathSpin> spins;
  spins.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx alpha{1.0, 0.0}, beta{0.0, 0.0};
    switch (spin_law) {
      case SpinLaw::haar:
        std::tie(alpha, beta) = haar_qubit(rng);
        break;
      case SpinLaw::balanced: {
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        alpha = std::polar(std::sqrt(0.5), phase(rng));
        beta = std::polar(std::sqrt(0.5), phase(rng));
        break;
      }
      case SpinLaw::symmetric:
        alpha = beta = std::sqrt(0.5);
        break;
      case SpinLaw::polarized:
        break;
    }
    double g = 0.0;
    if (const auto* f = std::get_if<FixedCoupling>(&law)) {
      g = f->value;
    } else if (const auto* l = std::get_if<LogUniformCoupling>(&law)) {
      g = std::exp(std::uniform_real_distribution<double>(std::log(l->min), std::log(l->max))(rng));
      g = std::clamp(g, l->min, l->max);
    } else {
      const auto& u = std::get<UniformCoupling>(law);
      g = std::uniform_real_distribution<double>(u.min, u.max)(rng);
    }
    spins.emplace_back(alpha, beta, g);
  }
  return Bath(std::move(spins));
}

}  // namespace decolab
