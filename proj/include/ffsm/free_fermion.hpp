#ifndef FFSM_FREE_FERMION_HPP
#define FFSM_FREE_FERMION_HPP

#include "ffsm/random.hpp"
#include "ffsm/tensor_core.hpp"

namespace ffsm {

/// Free-fermion weights A = [[a, b], [c, d]] with ad - bc = 1.
struct Sl2cPoint {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx det() const { return a * d - b * c; }
  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd M;
    M << a, b, c, d;
    return M;
  }
  static Sl2cPoint from_matrix(const Eigen::Matrix2cd& M) { return {M(0, 0), M(0, 1), M(1, 0), M(1, 1)}; }
  /// Inverse assuming unit determinant.
  Sl2cPoint inverse() const {
    const cplx D = det();
    return {d / D, -b / D, -c / D, a / D};
  }
  /// sigma3 A sigma3.
  Sl2cPoint sigma3_conjugate() const { return {a, -b, -c, d}; }
  Sl2cPoint operator*(const Sl2cPoint& o) const { return from_matrix(matrix() * o.matrix()); }

  static Sl2cPoint identity() { return {}; }
};

/// The XX curve a = d = cos u, b = c = i sin u.
inline Sl2cPoint xx_point(cplx u) { return {std::cos(u), I_unit * std::sin(u), I_unit * std::sin(u), std::cos(u)}; }
inline Sl2cPoint xx_point_derivative(cplx u) {
  return {-std::sin(u), I_unit * std::cos(u), I_unit * std::cos(u), -std::sin(u)};
}

inline void require_unimodular(const Sl2cPoint& A, const char* what, double tol = 1e-9) {
  if (std::abs(A.det() - 1.0) > tol) throw domain_error(std::string(what) + ": ad - bc != 1");
}

/// a, b, c with moduli in [0.5, 2] and uniform phases, d = (1 + bc)/a.
inline Sl2cPoint random_sl2c(Rng& rng) {
  for (;;) {
    const cplx a = rng.polar(), b = rng.polar(), c = rng.polar();
    if (std::abs(a) < 0.1) continue;
    return {a, b, c, (1.0 + b * c) / a};
  }
}

namespace detail {
inline void require_single_pair(const FockSpace& space, int j, int k, int layer) {
  if (j == k) throw domain_error("R-matrix: j == k");
  space.mode_index(j, layer);
  space.mode_index(k, layer);
}
}  // namespace detail

/// Part of R^f without the hopping terms, linear in (a, b, c, d).
inline CMatrix r_f_diagonal(const FockSpace& space, int j, int k, const Sl2cPoint& A, int layer = 0) {
  const CMatrix nj = space.n(j, layer), nk = space.n(k, layer), mj = space.m(j, layer), mk = space.m(k, layer);
  return -A.a * nj * nk - I_unit * A.b * nj * mk - I_unit * A.c * mj * nk + A.d * mj * mk;
}

/// R^f_jk(A) = -a n_j n_k - i b n_j m_k - i c m_j n_k + d m_j m_k + c^dag_j c_k + c^dag_k c_j.
inline CMatrix r_f(const FockSpace& space, int j, int k, const Sl2cPoint& A, int layer = 0) {
  detail::require_single_pair(space, j, k, layer);
  require_unimodular(A, "r_f");
  const CMatrix cj = space.c(j, layer), ck = space.c(k, layer);
  return r_f_diagonal(space, j, k, A, layer) + cj.adjoint() * ck + ck.adjoint() * cj;
}

/// R^0_jk = R^f_jk(A_k A_j^-1).
inline CMatrix r0(const FockSpace& space, int j, int k, const Sl2cPoint& Aj, const Sl2cPoint& Ak, int layer = 0) {
  return r_f(space, j, k, Ak * Aj.inverse(), layer);
}

/// R^1_jk = R^f_jk(A_k sigma3 A_j^-1 sigma3)(n_k - m_k).
inline CMatrix r1(const FockSpace& space, int j, int k, const Sl2cPoint& Aj, const Sl2cPoint& Ak, int layer = 0) {
  const CMatrix R = r_f(space, j, k, Ak * Aj.inverse().sigma3_conjugate(), layer);
  return R * (space.n(k, layer) - space.m(k, layer));
}

/// Light-cone operators R^+ (sign > 0) and R^- (sign < 0).
inline CMatrix r_pm(const FockSpace& space, int j, int k, const Sl2cPoint& Aj, const Sl2cPoint& Ak, int sign,
                    int layer = 0) {
  detail::require_single_pair(space, j, k, layer);
  require_unimodular(Aj, "r_pm");
  require_unimodular(Ak, "r_pm");
  const CMatrix nj = space.n(j, layer), nk = space.n(k, layer), mj = space.m(j, layer), mk = space.m(k, layer);
  const CMatrix cj = space.c(j, layer), ck = space.c(k, layer);
  if (sign > 0)
    return (Ak.a * nj + I_unit * Ak.c * mj) * (-Aj.d * nk + I_unit * Aj.b * mk) + cj.adjoint() * ck;
  return (Ak.b * nj + I_unit * Ak.d * mj) * (Aj.c * nk - I_unit * Aj.a * mk) + ck.adjoint() * cj;
}

/// Residual of R12(A) R13(C A) R23(C) = R23(C) R13(C A) R12(A) on three sites.
inline double check_ybe_f(const Sl2cPoint& A, const Sl2cPoint& C) {
  const FockSpace S(3);
  const Sl2cPoint B = C * A;
  const CMatrix R12 = r_f(S, 0, 1, A), R13 = r_f(S, 0, 2, B), R23 = r_f(S, 1, 2, C);
  return frobenius_residual(R12 * R13 * R23, R23 * R13 * R12);
}

/// Same check with B supplied; B must equal C A.
inline double check_ybe_f(const Sl2cPoint& A, const Sl2cPoint& B, const Sl2cPoint& C) {
  const Eigen::Matrix2cd diff = B.matrix() - (C * A).matrix();
  if (diff.norm() > 1e-9 * std::max(1.0, B.matrix().norm())) throw domain_error("check_ybe_f: B != C A");
  return check_ybe_f(A, C);
}

/// R^f_jk(A) R^f_kj(A^-1) = ad I on two sites.
inline double check_inversion(const Sl2cPoint& A) {
  const FockSpace S(2);
  return frobenius_residual(r_f(S, 0, 1, A) * r_f(S, 1, 0, A.inverse()), A.a * A.d * S.identity());
}

/// P_23 R0_12(A1, A2) P_23 = R0_13(A1, A2) on three sites.
inline double check_r0_conjugation(const Sl2cPoint& A1, const Sl2cPoint& A2) {
  const FockSpace S(3);
  const CMatrix P = graded_permutation(S, 1, 2);
  return frobenius_residual(P * r0(S, 0, 1, A1, A2) * P, r0(S, 0, 2, A1, A2));
}

/// R+ + R- = R0 and R+ - R- = R1.
inline double check_light_cone_basis(const Sl2cPoint& Aj, const Sl2cPoint& Ak) {
  const FockSpace S(2);
  const CMatrix Rp = r_pm(S, 0, 1, Aj, Ak, 1), Rm = r_pm(S, 0, 1, Aj, Ak, -1);
  return std::max(frobenius_residual(Rp + Rm, r0(S, 0, 1, Aj, Ak)), frobenius_residual(Rp - Rm, r1(S, 0, 1, Aj, Ak)));
}

/// R0_12 R0_13 R0_23 = R0_23 R0_13 R0_12 with points attached to sites.
inline double check_ybe_r0(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  const FockSpace S(3);
  const CMatrix R12 = r0(S, 0, 1, A1, A2), R13 = r0(S, 0, 2, A1, A3), R23 = r0(S, 1, 2, A2, A3);
  return frobenius_residual(R12 * R13 * R23, R23 * R13 * R12);
}

/// Monodromy R_{aN} ... R_{a1} on the XX curve with the auxiliary space at site 0
/// and physical sites 1..N.
inline CMatrix xx_monodromy(cplx u, int N) {
  const FockSpace S(N + 1);
  CMatrix out = S.identity();
  for (int j = N; j >= 1; --j) out = out * r_f(S, 0, j, xx_point(u));
  return out;
}

/// tau(u) = str_a(R_{aN}(u) ... R_{a1}(u)) on the N physical sites.
inline CMatrix transfer_matrix(cplx u, int N) {
  if (N < 2) throw domain_error("transfer_matrix: N < 2");
  return supertrace_aux(xx_monodromy(u, N), FockSpace(N + 1), 0);
}

/// d tau / du, differentiating each factor analytically (the hopping part is u-independent).
inline CMatrix transfer_matrix_derivative(cplx u, int N) {
  if (N < 2) throw domain_error("transfer_matrix_derivative: N < 2");
  const FockSpace S(N + 1);
  std::vector<CMatrix> Rs, dRs;
  for (int j = N; j >= 1; --j) {
    Rs.push_back(r_f(S, 0, j, xx_point(u)));
    dRs.push_back(r_f_diagonal(S, 0, j, xx_point_derivative(u)));
  }
  CMatrix total = CMatrix::Zero(S.dim(), S.dim());
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    CMatrix term = S.identity();
    for (std::size_t q = 0; q < Rs.size(); ++q) term = term * (q == i ? dRs[q] : Rs[q]);
    total += term;
  }
  return supertrace_aux(total, S, 0);
}

/// H = tau(0)^-1 tau'(0) on the XX curve.
inline CMatrix hamiltonian_from_transfer(int N) {
  const CMatrix t0 = transfer_matrix(0.0, N);
  Eigen::FullPivLU<CMatrix> lu(t0);
  if (!lu.isInvertible()) throw domain_error("hamiltonian_from_transfer: tau(u0) singular");
  return lu.solve(transfer_matrix_derivative(0.0, N));
}

/// [tau(u1), tau(u2)] and [H, tau(u1)], normalized.
inline double check_transfer_commutation(cplx u1, cplx u2, int N) {
  const CMatrix t1 = transfer_matrix(u1, N), t2 = transfer_matrix(u2, N);
  const CMatrix H = hamiltonian_from_transfer(N);
  return std::max(commutator(t1, t2).norm() / (t1.norm() * t2.norm()), commutator(H, t1).norm() / (H.norm() * t1.norm()));
}

/// Periodic hopping sum_i (c^dag_i c_{i+1} + c^dag_{i+1} c_i) on N sites of one layer
/// (for N = 2 the bond is counted twice, as in the periodic sum).
inline CMatrix xx_hamiltonian(const FockSpace& space, int layer = 0) {
  const int N = space.n_sites();
  CMatrix H = CMatrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < N; ++i) {
    const int j = (i + 1) % N;
    const CMatrix ci = space.c(i, layer), cj = space.c(j, layer);
    H += ci.adjoint() * cj + cj.adjoint() * ci;
  }
  return H;
}

}  // namespace ffsm

#endif  // FFSM_FREE_FERMION_HPP
