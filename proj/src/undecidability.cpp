#include "decolab/undecidability.hpp"

#include <cmath>
#include <string>

namespace decolab::undecidability {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Vector basis(Eigen::Index dim, Eigen::Index idx) {
  Vector v = Vector::Zero(dim);
  v(idx) = 1.0;
  return v;
}

const Matrix& full_projector(const Projector& p, Eigen::Index dim, Matrix& storage) {
  if (p.dim() == dim) return p.entries();
  if (p.dim() > dim || dim % p.dim() != 0) {
    throw ParameterError("projector dimension " + std::to_string(p.dim()) + " does not divide state dimension " +
                         std::to_string(dim));
  }
  storage = Projector::leading(p.entries(), dim).entries();
  return storage;
}

}  // namespace

Projector::Projector(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ParameterError("Projector: matrix must be square and nonempty");
  }
  if (!entries_.allFinite()) throw ParameterError("Projector: non-finite entries");
  if (hermiticity_defect(entries_) > kProjectorTol) throw ParameterError("Projector: not Hermitian");
  if ((entries_ * entries_ - entries_).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw ParameterError("Projector: not idempotent");
  }
}

Projector Projector::onto(const Vector& v) {
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0)) throw ParameterError("Projector::onto: zero vector");
  return Projector(v * v.adjoint() / n2);
}

Projector Projector::leading(const Matrix& p, Eigen::Index total_dim) {
  if (p.rows() == 0 || total_dim % p.rows() != 0) throw ParameterError("Projector::leading: dimension mismatch");
  const Eigen::Index rest = total_dim / p.rows();
  Matrix out = Matrix::Zero(total_dim, total_dim);
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      if (p(r, c) != cplx{0.0, 0.0})
        out.block(r * rest, c * rest, rest, rest).diagonal().setConstant(p(r, c));
  return Projector(std::move(out));
}

std::vector<Projector> pointer_projectors(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 20) throw ParameterError("pointer_projectors: n_qubits must be in [1, 20]");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
  up(0, 0) = 1.0;
  down(1, 1) = 1.0;
  return {Projector::leading(up, dim), Projector::leading(down, dim)};
}

EventRecord::EventRecord(Projector essential, std::vector<Projector> compatible, double probability)
    : essential_(std::move(essential)), compatible_(std::move(compatible)), probability_(probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) throw ParameterError("EventRecord: probability outside [0, 1]");
  for (const auto& p : compatible_) {
    if (!is_compatible(p, essential_)) throw ParameterError("EventRecord: projector incompatible with essential");
  }
}

Vector branch_project(const Vector& state, const Projector& pointer) {
  Matrix storage;
  const Matrix& p = full_projector(pointer, state.size(), storage);
  return p * state;
}

DensityMatrix projection_mixture(const Vector& state, std::span<const Projector> projectors) {
  if (projectors.empty()) throw ParameterError("projection_mixture: empty projector set");
  const Eigen::Index dim = state.size();
  std::vector<Matrix> full;
  full.reserve(projectors.size());
  for (const auto& p : projectors) {
    Matrix storage;
    full.push_back(full_projector(p, dim, storage));
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < full.size(); ++i) {
    sum += full[i];
    for (std::size_t j = i + 1; j < full.size(); ++j) {
      if ((full[i] * full[j]).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw ParameterError("projection_mixture: projectors are not mutually orthogonal");
      }
    }
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw ParameterError("projection_mixture: projectors do not resolve the identity");
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (const auto& p : full) {
    const Vector branch = p * state;
    rho += branch * branch.adjoint();
  }
  return DensityMatrix(std::move(rho));
}

bool is_compatible(const Projector& p, const Projector& essential) {
  if (p.dim() != essential.dim()) throw ParameterError("is_compatible: dimension mismatch");
  return (p.entries() * essential.entries() - essential.entries()).cwiseAbs().maxCoeff() < kProjectorTol;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, const Dephasing& damping) {
  const Eigen::Index dim = rho.dim();
  if (damping.energies.size() != dim) throw ParameterError("apply_dephasing: energy vector size mismatch");
  if (!(damping.theta >= 0.0)) throw ParameterError("apply_dephasing: theta must be >= 0");
  if (!damping.energies.allFinite()) throw ParameterError("apply_dephasing: non-finite energies");
  Matrix out = rho.entries();
  for (Eigen::Index m = 0; m < dim; ++m) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double w = damping.energies(m) - damping.energies(n);
      if (w == 0.0) continue;
      out(m, n) *= std::exp(-w * w * damping.theta);
    }
  }
  return DensityMatrix(std::move(out));
}

Eigen::VectorXd pointer_energies(std::size_t n_qubits, double omega) {
  if (n_qubits == 0 || n_qubits > 20) throw ParameterError("pointer_energies: n_qubits must be in [1, 20]");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::VectorXd e(dim);
  for (Eigen::Index i = 0; i < dim; ++i) e(i) = (i < dim / 2 ? 0.5 : -0.5) * omega;
  return e;
}

Undecidability undecidability_margin(const Vector& state, std::span<const Projector> projectors,
                                     const Dephasing& damping, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("undecidability_margin: epsilon must be > 0");
  if (!is_power_of_two(state.size())) throw ParameterError("undecidability_margin: state size must be a power of two");
  const DensityMatrix pure = DensityMatrix::pure(state);
  const DensityMatrix mixture = projection_mixture(state, projectors);
  Undecidability out;
  out.margin = trace_distance(apply_dephasing(pure, damping), apply_dephasing(mixture, damping));
  out.event = out.margin < epsilon;
  return out;
}

Vector three_spin_event_state(cplx c1, cplx c2) {
  if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > 1e-12) {
    throw ParameterError("three_spin_event_state: |c1|^2 + |c2|^2 must be 1");
  }
  const double r = 1.0 / std::sqrt(2.0);
  // bit 0 = |+>, first spin most significant
  Vector v = Vector::Zero(8);
  v(0b001) = c1 * r;
  v(0b010) = c1 * r;
  v(0b100) = c2;
  return v;
}

Projector three_spin_essential() { return Projector::onto(basis(8, 0b001) + basis(8, 0b010)); }

Projector opposite_pair_projector() {
  const Projector pair = Projector::onto(basis(4, 0b01) + basis(4, 0b10));
  Matrix out = Matrix::Zero(8, 8);
  out.block(0, 0, 4, 4) = pair.entries();
  out.block(4, 4, 4, 4) = pair.entries();
  return Projector(std::move(out));
}

}  // namespace decolab::undecidability
