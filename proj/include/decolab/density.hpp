#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "decolab/types.hpp"

namespace decolab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances used when validating density matrices and projectors.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix of power-of-two size.
class DensityMatrix {
 public:
  /// Validates the matrix; throws ParameterError on any violated invariant.
  explicit DensityMatrix(Matrix entries);

  /// |psi><psi| for a normalized state vector.
  static DensityMatrix pure(const Vector& psi);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  Matrix entries_;
};

/// Largest |M - M^dagger| entry.
double hermiticity_defect(const Matrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// True when `m` satisfies every DensityMatrix invariant.
bool is_density_matrix(const Matrix& m);

/// Reduced matrix on the factors listed in `keep` (ascending order kept).
///
/// `dims` lists factor dimensions with the first factor most significant in
/// the row index, matching Kronecker-product ordering.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

/// Same contraction on a raw matrix; no validation of the input or result.
Matrix partial_trace_raw(const Matrix& rho, std::span<const std::size_t> keep,
                         std::span<const std::size_t> dims);

/// 1/2 sum |eigenvalues(rho1 - rho2)|.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Trace norm of an arbitrary Hermitian matrix (sum of |eigenvalues|).
double trace_norm_hermitian(const Matrix& m);

}  // namespace decolab
