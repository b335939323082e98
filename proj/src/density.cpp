#include "decolab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace decolab {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

struct Layout {
  std::vector<Eigen::Index> kept_offsets;
  std::vector<Eigen::Index> traced_offsets;
};

// Offsets of every kept (resp. traced) multi-index into the full index.
Layout layout_for(Eigen::Index full_dim, std::span<const std::size_t> keep,
                  std::span<const std::size_t> dims) {
  const std::size_t nf = dims.size();
  Eigen::Index prod = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw ParameterError("partial_trace: zero factor dimension");
    prod *= static_cast<Eigen::Index>(d);
  }
  if (prod != full_dim) {
    throw ParameterError("partial_trace: product of dims " + std::to_string(prod) +
                         " does not match matrix dimension " + std::to_string(full_dim));
  }
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) throw ParameterError("partial_trace: keep index out of range");
    if (kept[k]) throw ParameterError("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  std::vector<Eigen::Index> stride(nf, 1);
  for (std::size_t j = nf; j-- > 1;) stride[j - 1] = stride[j] * static_cast<Eigen::Index>(dims[j]);

  auto offsets = [&](bool want_kept) {
    std::vector<Eigen::Index> out{0};
    for (std::size_t j = 0; j < nf; ++j) {
      if (kept[j] != want_kept) continue;
      std::vector<Eigen::Index> next;
      next.reserve(out.size() * dims[j]);
      for (Eigen::Index base : out) {
        for (std::size_t i = 0; i < dims[j]; ++i) {
          next.push_back(base + static_cast<Eigen::Index>(i) * stride[j]);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  return {offsets(true), offsets(false)};
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw ParameterError("DensityMatrix: not square");
  if (!is_power_of_two(entries_.rows())) {
    throw ParameterError("DensityMatrix: dimension must be a power of two");
  }
  if (!entries_.allFinite()) throw ParameterError("DensityMatrix: non-finite entries");
  if (hermiticity_defect(entries_) > kHermitianTol) {
    throw ParameterError("DensityMatrix: not Hermitian");
  }
  const cplx tr = entries_.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > kTraceTol) {
    throw ParameterError("DensityMatrix: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  if (hermitian_eigenvalues(entries_).minCoeff() < -kPsdTol) {
    throw ParameterError("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  // Symmetrize so roundoff-level anti-Hermitian parts do not leak in.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool is_density_matrix(const Matrix& m) {
  if (m.rows() != m.cols() || !is_power_of_two(m.rows()) || !m.allFinite()) return false;
  if (hermiticity_defect(m) > kHermitianTol) return false;
  if (std::abs(m.trace() - cplx{1.0, 0.0}) > kTraceTol) return false;
  return hermitian_eigenvalues(m).minCoeff() >= -kPsdTol;
}

Matrix partial_trace_raw(const Matrix& rho, std::span<const std::size_t> keep,
                         std::span<const std::size_t> dims) {
  if (rho.rows() != rho.cols()) throw ParameterError("partial_trace: not square");
  const Layout lay = layout_for(rho.rows(), keep, dims);
  const auto nk = static_cast<Eigen::Index>(lay.kept_offsets.size());
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index r = 0; r < nk; ++r) {
    for (Eigen::Index c = 0; c < nk; ++c) {
      cplx acc{0.0, 0.0};
      for (Eigen::Index t : lay.traced_offsets) {
        acc += rho(lay.kept_offsets[r] + t, lay.kept_offsets[c] + t);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
  // Tracing out every factor leaves the 1x1 scalar trace.
  return DensityMatrix(partial_trace_raw(rho.entries(), keep, dims));
}

double trace_norm_hermitian(const Matrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw ParameterError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm_hermitian(rho1.entries() - rho2.entries());
}

}  // namespace decolab
