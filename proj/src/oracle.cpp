#include "decolab/oracle.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace decolab::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

void check_capacity(std::size_t n_env) {
  if (n_env > kMaxEnv) {
    throw CapacityError("dense oracle supports at most " + std::to_string(kMaxEnv) + " environment spins, got " +
                        std::to_string(n_env));
  }
}

void check_bath(const DenseState& st, const Bath& bath) {
  if (bath.size() != st.n_env()) {
    throw ParameterError("bath size " + std::to_string(bath.size()) + " does not match state with " +
                         std::to_string(st.n_env()) + " environment spins");
  }
}

// Bit position of environment spin k (0-based) in an (n_env + 1)-qubit index.
int env_bit(std::size_t n_env, std::size_t k) { return static_cast<int>(n_env - 1 - k); }

}  // namespace

DenseState::DenseState(std::size_t n_env, Vector amplitudes) : n_env_(n_env), amps_(std::move(amplitudes)) {
  check_capacity(n_env);
  if (amps_.size() != (Eigen::Index{2} << n_env)) throw ParameterError("DenseState: amplitude count != 2^(n_env+1)");
  if (!amps_.allFinite()) throw ParameterError("DenseState: non-finite amplitude");
  if (std::abs(amps_.norm() - 1.0) > 1e-10) throw ParameterError("DenseState: state is not normalized");
}

DenseState dense_from_product(const QubitAmplitudes& sys, const Bath& bath) {
  check_capacity(bath.size());
  Vector v(2);
  v << sys.a(), sys.b();
  for (const BathSpin& s : bath) {
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * s.alpha();
      next(2 * i + 1) = v(i) * s.beta();
    }
    v = std::move(next);
  }
  return {bath.size(), std::move(v)};
}

DenseState dense_evolve_zurek(const DenseState& st, const Bath& bath, double t) {
  check_bath(st, bath);
  const std::size_t n = st.n_env();
  Vector out = st.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double s0 = ((i >> n) & 1) ? -1.0 : 1.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = ((i >> env_bit(n, k)) & 1) ? -1.0 : 1.0;
      sum += bath[k].coupling() * s0 * sk;
    }
    out(i) *= expi(t * sum);
  }
  return {n, std::move(out)};
}

Eigen::Matrix4cd pass_propagator(const cavity::PassParams& p) {
  const double f = p.f(), tau = p.tau();
  const double zp = p.zeeman_plus(), zm = p.zeeman_minus();
  const double om = p.omega();
  const double c = std::cos(om * tau);
  const double so = om == 0.0 ? tau : std::sin(om * tau) / om;
  // Central block: -f I + M with M = [[zm, 2f], [2f, -zm]], M^2 = om^2 I.
  const cplx ph = expi(f * tau);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = expi(-(f + zp) * tau);
  u(3, 3) = expi(-(f - zp) * tau);
  u(1, 1) = ph * (c - kI * zm * so);
  u(2, 2) = ph * (c + kI * zm * so);
  u(1, 2) = ph * (-kI * 2.0 * f * so);
  u(2, 1) = u(1, 2);
  return u;
}

DenseState apply_pair(const DenseState& st, std::size_t k, const Eigen::Matrix4cd& u) {
  const std::size_t n = st.n_env();
  if (k >= n) throw ParameterError("apply_pair: spin index out of range");
  const Eigen::Index needle_mask = Eigen::Index{1} << n;
  const Eigen::Index spin_mask = Eigen::Index{1} << env_bit(n, k);
  Vector out = st.amplitudes();
  const Vector& in = st.amplitudes();
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    if (i & (needle_mask | spin_mask)) continue;
    const std::array<Eigen::Index, 4> idx{i, i | spin_mask, i | needle_mask, i | needle_mask | spin_mask};
    for (int r = 0; r < 4; ++r) {
      cplx acc{0.0, 0.0};
      for (int c = 0; c < 4; ++c) acc += u(r, c) * in(idx[c]);
      out(idx[r]) = acc;
    }
  }
  return {n, std::move(out)};
}

DenseState dense_evolve_cavity(const DenseState& st, const Bath& bath, const cavity::PassParams& p_common) {
  check_bath(st, bath);
  DenseState cur = st;
  for (std::size_t k = 0; k < bath.size(); ++k) {
    cur = apply_pair(cur, k, pass_propagator(p_common.with_coupling(bath[k].coupling())));
  }
  return cur;
}

double dense_m_expect(const DenseState& st) {
  const Vector& v = st.amplitudes();
  const Eigen::Index mask = v.size() - 1;
  cplx acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::conj(v(i ^ mask)) * v(i);
  return acc.real();
}

Eigen::Matrix2cd needle_reduced(const DenseState& st) {
  const Vector& v = st.amplitudes();
  const Eigen::Index half = v.size() / 2;
  const auto up = v.head(half);
  const auto down = v.tail(half);
  Eigen::Matrix2cd r;
  r(0, 0) = up.squaredNorm();
  r(1, 1) = down.squaredNorm();
  r(0, 1) = down.dot(up);  // sum up_i conj(down_i)
  r(1, 0) = std::conj(r(0, 1));
  return r;
}

DensityMatrix needle_reduced_via_partial_trace(const DenseState& st) {
  std::vector<std::size_t> dims(st.n_env() + 1, 2);
  const std::array<std::size_t, 1> keep{0};
  return partial_trace(DensityMatrix::pure(st.amplitudes()), keep, dims);
}

Vector assemble_branch_state(const cavity::BranchVectors& bv) {
  check_capacity(bv.size());
  Vector A(1), B(1);
  A(0) = 1.0;
  B(0) = 1.0;
  for (const auto& k : bv.factors) {
    Vector nA(A.size() * 2), nB(B.size() * 2);
    for (Eigen::Index i = 0; i < A.size(); ++i) {
      nA(2 * i) = A(i) * k.a_plus;
      nA(2 * i + 1) = A(i) * k.a_minus;
      nB(2 * i) = B(i) * k.b_plus;
      nB(2 * i + 1) = B(i) * k.b_minus;
    }
    A = std::move(nA);
    B = std::move(nB);
  }
  Vector out(A.size() * 2);
  out.head(A.size()) = bv.a * A;
  out.tail(B.size()) = bv.b * B;
  return out;
}

}  // namespace decolab::oracle
