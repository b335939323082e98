#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "decolab/types.hpp"

namespace decolab {

struct FixedCoupling {
  double value = 1.0;  // rad/s
};

struct UniformCoupling {
  double min = 0.0;  // rad/s
  double max = 1.0;
};

/// Log-uniform on [min, max].
struct LogUniformCoupling {
  double min = 1e-3;
  double max = 1.0;
};

using CouplingLaw = std::variant<FixedCoupling, UniformCoupling, LogUniformCoupling>;

/// How the spin states (alpha_k, beta_k) are drawn.
enum class SpinLaw {
  haar,       // uniform on the unit sphere of C^2
  balanced,   // |alpha| = |beta| = 1/sqrt2, independent uniform phases
  symmetric,  // alpha = beta = 1/sqrt2
  polarized,  // alpha = 1, beta = 0
};

/// Parses "haar", "balanced", "symmetric", "polarized".
SpinLaw parse_spin_law(const std::string& name);
const char* to_string(SpinLaw law);

void validate(const CouplingLaw& law);

/// Haar-uniform pure qubit (alpha, beta) drawn from `rng`.
std::pair<cplx, cplx> haar_qubit(std::mt19937_64& rng);

/// N environment spins with states per `spins` (Haar by default) and couplings
/// drawn from `law`. Deterministic for a fixed seed.
Bath sample_bath(std::size_t n, const CouplingLaw& law, std::uint64_t seed, SpinLaw spins = SpinLaw::haar);

}  // namespace decolab
