#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "decolab/density.hpp"
#include "decolab/log_complex.hpp"
#include "decolab/types.hpp"

namespace decolab::cavity {

/// Parameters of one pass of an environment spin through the cavity.
///
/// Magnetic energies B*Gamma are divided by hbar on construction, so every
/// frequency exposed here is an angular frequency (rad/s).
class PassParams {
 public:
  PassParams(double f, double B, double gamma1, double gamma2, double tau, double hbar);

  double f() const { return f_; }
  double B() const { return B_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }
  double tau() const { return tau_; }
  double hbar() const { return hbar_; }

  /// B (gamma1 + gamma2) / hbar
  double zeeman_plus() const { return B_ * (gamma1_ + gamma2_) / hbar_; }
  /// B (gamma1 - gamma2) / hbar
  double zeeman_minus() const { return B_ * (gamma1_ - gamma2_) / hbar_; }
  /// sqrt(4 f^2 + zeeman_minus^2)
  double omega() const;
  double omega_for(double f) const;

  PassParams with_coupling(double f) const;
  PassParams with_tau(double tau) const;

 private:
  double f_, B_, gamma1_, gamma2_, tau_, hbar_;
};

/// Amplitudes on |++>, |+->, |-+>, |--> after one pass.
struct PassCoefficients {
  cplx R, T, U, V;

  double norm2() const { return std::norm(R) + std::norm(T) + std::norm(U) + std::norm(V); }
  Eigen::Vector4cd as_vector() const { return {R, T, U, V}; }
};

/// Pass Hamiltonian in the (++, +-, -+, --) basis, rad/s.
Eigen::Matrix4cd pass_hamiltonian(const PassParams& p);

/// Closed-form solution of the pass ODEs at t = tau.
PassCoefficients single_pass_closed(const QubitAmplitudes& sys, const BathSpin& spin,
                                    const PassParams& p);

/// Fixed-step RK4 integration of the same ODEs, used as a cross-check.
///
/// Integrates in the frame rotating with the diagonal of the Hamiltonian, so the
/// uncoupled (f = 0) case is reproduced to roundoff for any step count.
PassCoefficients single_pass_numeric(const QubitAmplitudes& sys, const BathSpin& spin,
                                     const PassParams& p, std::size_t steps);

/// Per-spin factors of the branch states |A> and |B>, plus everything the
/// inner-product expressions need.
struct BranchFactor {
  cplx alpha, beta;
  double f = 0.0;      // rad/s
  double omega = 0.0;  // rad/s
  cplx a_plus, a_minus;  // components of A_k on |+>_k, |->_k
  cplx b_plus, b_minus;  // components of B_k
};

struct BranchVectors {
  cplx a, b;
  double tau = 0.0;
  double zeeman_plus = 0.0;
  double zeeman_minus = 0.0;
  std::vector<BranchFactor> factors;

  std::size_t size() const { return factors.size(); }
};

/// Product-form branch states after N sequential passes:
/// |psi> = a|+>|A> + b|->|B>. Requires a != 0 and b != 0.
BranchVectors branch_vectors(const QubitAmplitudes& sys, const Bath& bath, const PassParams& p_common);

/// ln <A|A>, from the per-spin four-term expression.
double inner_aa(const BranchVectors& bv);
/// ln <B|B>
double inner_bb(const BranchVectors& bv);
/// <A|B>, from the per-spin four-term expression.
LogComplex inner_ab(const BranchVectors& bv);

/// Per-spin factors of the expressions above (not log-accumulated).
double inner_aa_term(const BranchVectors& bv, std::size_t k);
double inner_bb_term(const BranchVectors& bv, std::size_t k);
cplx inner_ab_term(const BranchVectors& bv, std::size_t k);

/// Default bound on max_k f_k / |B Gamma_- / hbar| for the weak-coupling forms.
inline constexpr double kWeakCouplingRatio = 0.1;

/// Throws RegimeError unless every f_k / |zeeman_minus| < max_ratio.
void require_weak_coupling(const Bath& bath, const PassParams& p, double max_ratio = kWeakCouplingRatio);

/// Weak-coupling form prod_k e^{2 i Omega_k tau} [cos 2 f_k tau + i (|alpha|^2 - |beta|^2) sin 2 f_k tau].
LogComplex inner_ab_approx(const Bath& bath, const PassParams& p, double max_ratio = kWeakCouplingRatio);

/// Needle reduced density assembled from branch inner products. The
/// off-diagonal is kept in log form so it survives N ~ 10^3 and beyond.
struct NeedleDensity {
  double rho_pp = 0.0;
  double rho_mm = 0.0;
  LogComplex rho_pm;  // a b* <B|A>

  Eigen::Matrix2cd matrix() const;
  double trace() const { return rho_pp + rho_mm; }
  /// Validated density matrix; throws ParameterError when the product-form
  /// branches are not normalized to within the DensityMatrix tolerances.
  DensityMatrix density() const;
};

NeedleDensity reduced_density_needle(const QubitAmplitudes& sys, const BranchVectors& bv);

/// |a|^2 <A|A> + |b|^2 <B|B>, the squared norm of the product-form state.
double branch_state_norm2(const QubitAmplitudes& sys, const BranchVectors& bv);

/// Integrated dipolar coupling over one straight pass:
/// (2 mu g1 g2 / (hbar v d^2)) / sqrt(1 + d^2 / L^2).
double integrated_coupling(const PhysicalScenario& s);

/// Dipolar coupling frequency mu g1 g2 / (hbar r^3) at separation r.
double dipolar_coupling(const PhysicalScenario& s, double r);

/// PassParams taken from a scenario, with an explicit coupling f.
PassParams pass_params(const PhysicalScenario& s, double f);

}  // namespace decolab::cavity
