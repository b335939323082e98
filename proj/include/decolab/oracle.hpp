#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "decolab/cavity.hpp"
#include "decolab/density.hpp"
#include "decolab/types.hpp"

namespace decolab::oracle {

/// Largest supported environment size (2^13 amplitudes).
inline constexpr std::size_t kMaxEnv = 12;

/// Dense needle + environment state. The needle is the most significant qubit;
/// environment spins follow in bath order. Bit value 0 is |+>.
class DenseState {
 public:
  /// Validates size 2^(n_env+1), n_env <= kMaxEnv, and unit norm within 1e-10.
  DenseState(std::size_t n_env, Vector amplitudes);

  std::size_t n_env() const { return n_env_; }
  const Vector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }

 private:
  std::size_t n_env_;
  Vector amps_;
};

/// Kronecker product (a,b) (x) (alpha_1, beta_1) (x) ...
DenseState dense_from_product(const QubitAmplitudes& sys, const Bath& bath);

/// Exact evolution under H = -sum_k g_k sigma_z sigma_z^k: phase e^{i t sum_k g_k s0 s_k}
/// per basis state. Negative t is allowed (time reversal).
DenseState dense_evolve_zurek(const DenseState& st, const Bath& bath, double t);

/// exp(-i H tau) of the pass Hamiltonian, from the analytic 2x2 block exponential.
Eigen::Matrix4cd pass_propagator(const cavity::PassParams& p);

/// Applies a 4x4 propagator to (needle, spin k).
DenseState apply_pair(const DenseState& st, std::size_t k, const Eigen::Matrix4cd& u);

/// Sequential passes k = 1..N, each with f = bath[k].coupling.
DenseState dense_evolve_cavity(const DenseState& st, const Bath& bath, const cavity::PassParams& p_common);

/// <psi| sigma_x^(x)(N+1) |psi>.
double dense_m_expect(const DenseState& st);

/// Needle reduced matrix, environment traced out by direct contraction.
Eigen::Matrix2cd needle_reduced(const DenseState& st);

/// Same via the general partial trace of |psi><psi|.
DensityMatrix needle_reduced_via_partial_trace(const DenseState& st);

/// Dense a|+>|A> + b|->|B> assembled from product-form branch vectors. Not normalized in general.
Vector assemble_branch_state(const cavity::BranchVectors& bv);

}  // namespace decolab::oracle
