#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "decolab/density.hpp"
#include "decolab/types.hpp"

namespace decolab::undecidability {

inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kDefaultEpsilon = 1e-12;

/// Orthogonal projector: P^2 = P and P = P^dagger within 1e-10.
class Projector {
 public:
  explicit Projector(Matrix entries);

  /// |v><v| / <v|v>.
  static Projector onto(const Vector& v);
  /// p (x) I on a space of total dimension `total_dim`, p acting on the leading factor.
  static Projector leading(const Matrix& p, Eigen::Index total_dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// |+><+| (x) I and |-><-| (x) I for a register of `n_qubits` qubits, |+> = bit 0.
std::vector<Projector> pointer_projectors(std::size_t n_qubits);

/// Essential property plus the properties compatible with it.
class EventRecord {
 public:
  /// Throws ParameterError if a listed projector is not compatible with `essential`
  /// or the probability lies outside [0, 1].
  EventRecord(Projector essential, std::vector<Projector> compatible, double probability);

  const Projector& essential() const { return essential_; }
  const std::vector<Projector>& compatible() const { return compatible_; }
  double probability() const { return probability_; }

 private:
  Projector essential_;
  std::vector<Projector> compatible_;
  double probability_;
};

/// P|psi>, unnormalized. A projector smaller than the state acts on the
/// leading factor and is extended by identities.
Vector branch_project(const Vector& state, const Projector& pointer);

/// sum_i P_i |psi><psi| P_i. Projectors must be mutually orthogonal and sum to I.
DensityMatrix projection_mixture(const Vector& state, std::span<const Projector> projectors);

/// ||P E - E||_max < 1e-10.
bool is_compatible(const Projector& p, const Projector& essential);

/// Dephasing in the eigenbasis of a diagonal Hamiltonian: rho_mn is multiplied by
/// exp(-(E_m - E_n)^2 theta). `energies` are angular frequencies per basis state.
struct Dephasing {
  Eigen::VectorXd energies;
  double theta = 0.0;  // may be +inf
};

DensityMatrix apply_dephasing(const DensityMatrix& rho, const Dephasing& damping);

/// Per-basis energies that split only the leading (pointer) qubit: +w/2 on |+>, -w/2 on |->.
Eigen::VectorXd pointer_energies(std::size_t n_qubits, double omega);

struct Undecidability {
  double margin = 0.0;  // trace distance between the damped pure state and damped mixture
  bool event = false;   // margin < epsilon
};

Undecidability undecidability_margin(const Vector& state, std::span<const Projector> projectors,
                                     const Dephasing& damping, double epsilon = kDefaultEpsilon);

/// Three-spin state c1/sqrt2 (|+,+,-> + |+,-,+>) + c2 |-,+,+>.
Vector three_spin_event_state(cplx c1, cplx c2);

/// Projector onto (|+,+,-> + |+,-,+>)/sqrt2.
Projector three_spin_essential();

/// I (x) projector onto (|+,-> + |-,+>)/sqrt2.
Projector opposite_pair_projector();

}  // namespace decolab::undecidability
