#ifndef FFSM_SSW_HPP
#define FFSM_SSW_HPP

#include "ffsm/quantum_affine.hpp"

#include <array>

namespace ffsm {

/// Global couplings of the two-layer model.
struct Globals {
  cplx theta{1.0}, xi{1.0};
  void validate() const {
    if (theta * xi == 0.0) throw domain_error("Globals: theta * xi = 0");
  }
};

/// Free-fermion point together with its gluing parameter.
struct GluingPoint {
  Sl2cPoint A;
  cplx v{1.0};
};

/// i Theta^2 v/(ad) - i Xi^2/(bc v) - 1.
inline cplx gluing_defect(const GluingPoint& p, const Globals& g) {
  const Sl2cPoint& A = p.A;
  return I_unit * g.theta * g.theta * p.v / (A.a * A.d) - I_unit * g.xi * g.xi / (A.b * A.c * p.v) - 1.0;
}

/// Roots of (i Theta^2/ad) v^2 - v - i Xi^2/(bc) = 0, larger modulus first.
inline std::array<cplx, 2> solve_gluing(const Sl2cPoint& A, const Globals& g) {
  g.validate();
  if (A.a * A.d == 0.0 || A.b * A.c == 0.0) throw domain_error("solve_gluing: ad = 0 or bc = 0");
  const cplx qa = I_unit * g.theta * g.theta / (A.a * A.d);
  const cplx qc = -I_unit * g.xi * g.xi / (A.b * A.c);
  const cplx disc = std::sqrt(1.0 - 4.0 * qa * qc);
  // Stable pair: the root away from cancellation first, the other from Vieta.
  const cplx big = (std::abs(1.0 + disc) >= std::abs(1.0 - disc)) ? (1.0 + disc) / (2.0 * qa) : (1.0 - disc) / (2.0 * qa);
  if (big == 0.0) throw domain_error("solve_gluing: degenerate quadratic");
  const cplx other = qc / (qa * big);
  std::array<cplx, 2> r{big, other};
  if (std::abs(r[1]) > std::abs(r[0])) std::swap(r[0], r[1]);
  return r;
}

inline GluingPoint glue(const Sl2cPoint& A, const Globals& g, int root = 0) {
  return {A, solve_gluing(A, g)[std::size_t(root)]};
}

/// Coefficients gamma_{ab} of R = sum gamma_{ab} R^a_up R^b_down.
struct SswCoefficients {
  cplx pp, mm, pm, mp;
};

inline SswCoefficients ssw_coefficients(const GluingPoint& pj, const GluingPoint& pk) {
  const Sl2cPoint &Aj = pj.A, &Ak = pk.A;
  const cplx den = (Ak.b * Ak.c / (Ak.a * Ak.d)) * pk.v + pj.v;
  if (std::abs(den) < 1e-300) throw domain_error("ssw_r: vanishing denominator");
  const cplx pref = (pk.v + (Aj.b * Aj.c / (Aj.a * Aj.d)) * pj.v) / den;
  return {pref * Aj.a * Ak.b / (Aj.b * Ak.a), pref * Aj.d * Ak.c / (Aj.c * Ak.d), 1.0, 1.0};
}

inline CMatrix ssw_from_coefficients(const FockSpace& space, int j, int k, const Sl2cPoint& Aj, const Sl2cPoint& Ak,
                                     const SswCoefficients& g) {
  if (space.n_layers() != 2) throw domain_error("ssw_r: needs a two-layer space");
  const CMatrix Rpu = r_pm(space, j, k, Aj, Ak, 1, 0), Rmu = r_pm(space, j, k, Aj, Ak, -1, 0);
  const CMatrix Rpd = r_pm(space, j, k, Aj, Ak, 1, 1), Rmd = r_pm(space, j, k, Aj, Ak, -1, 1);
  return g.pp * Rpu * Rpd + g.mm * Rmu * Rmd + g.pm * Rpu * Rmd + g.mp * Rmu * Rpd;
}

/// Two-layer R-matrix on sites (j, k), both layers built from the same A_j, A_k.
inline CMatrix ssw_r(const FockSpace& space, int j, int k, const GluingPoint& pj, const GluingPoint& pk) {
  return ssw_from_coefficients(space, j, k, pj.A, pk.A, ssw_coefficients(pj, pk));
}

/// Normalization and the coefficients of the form
/// N (R0 R0 + alpha (R0 R1 + R1 R0) + beta R1 R1) reproducing ssw_r.
struct AlphaBeta {
  cplx norm, alpha, beta;
};

inline AlphaBeta ssw_alpha_beta(const GluingPoint& pj, const GluingPoint& pk) {
  const SswCoefficients g = ssw_coefficients(pj, pk);
  // gamma_pp = N(1 + 2a + b), gamma_mm = N(1 - 2a + b), gamma_pm = N(1 - b)
  const cplx s = g.pp + g.mm;  // 2N(1 + b)
  const cplx N = (s + 2.0 * g.pm) / 4.0;
  const cplx b = 1.0 - g.pm / N;
  const cplx a = (g.pp - g.mm) / (4.0 * N);
  return {N, a, b};
}

inline CMatrix ssw_r_alpha_beta(const FockSpace& space, int j, int k, const Sl2cPoint& Aj, const Sl2cPoint& Ak,
                                const AlphaBeta& ab) {
  const CMatrix R0u = r0(space, j, k, Aj, Ak, 0), R0d = r0(space, j, k, Aj, Ak, 1);
  const CMatrix R1u = r1(space, j, k, Aj, Ak, 0), R1d = r1(space, j, k, Aj, Ak, 1);
  return ab.norm * (R0u * R0d + ab.alpha * (R0u * R1d + R1u * R0d) + ab.beta * R1u * R1d);
}

inline void require_glued(const GluingPoint& p, const Globals& g, const char* what, double tol = 1e-9) {
  if (std::abs(gluing_defect(p, g)) > tol) throw domain_error(std::string(what) + ": gluing condition violated");
}

inline double check_ybe_ssw(const GluingPoint& p1, const GluingPoint& p2, const GluingPoint& p3, const Globals& g) {
  for (const auto* p : {&p1, &p2, &p3}) require_glued(*p, g, "check_ybe_ssw");
  const FockSpace S(3, 2);
  const CMatrix R12 = ssw_r(S, 0, 1, p1, p2), R13 = ssw_r(S, 0, 2, p1, p3), R23 = ssw_r(S, 1, 2, p2, p3);
  return frobenius_residual(R12 * R13 * R23, R23 * R13 * R12);
}

/// YBE residual ignoring the gluing condition (used as a negative control).
inline double ybe_residual_unchecked(const GluingPoint& p1, const GluingPoint& p2, const GluingPoint& p3) {
  const FockSpace S(3, 2);
  const CMatrix R12 = ssw_r(S, 0, 1, p1, p2), R13 = ssw_r(S, 0, 2, p1, p3), R23 = ssw_r(S, 1, 2, p2, p3);
  return frobenius_residual(R12 * R13 * R23, R23 * R13 * R12);
}

inline double check_layer_exchange(const GluingPoint& p1, const GluingPoint& p2) {
  const FockSpace S(2, 2);
  const CMatrix X = layer_exchange(S);
  const CMatrix R = ssw_r(S, 0, 1, p1, p2);
  return frobenius_residual(X * R * X.inverse(), R);
}

/// Hubbard curve: a = d = cos u, b = c = -i sin u, sinh 2h = (U/4) sin 2u.
struct HubbardPoint {
  cplx u{0.0};
  cplx U{1.0};

  cplx h() const { return std::asinh(U / 4.0 * std::sin(2.0 * u)) / 2.0; }
  Sl2cPoint A() const { return {std::cos(u), -I_unit * std::sin(u), -I_unit * std::sin(u), std::cos(u)}; }
  cplx v() const { return std::exp(2.0 * h()) / std::tan(u); }
  GluingPoint gluing() const { return {A(), v()}; }
};

/// Theta^2 = -Xi^2 = -i/U.
inline Globals hubbard_globals(cplx U) { return {std::sqrt(-I_unit / U), std::sqrt(I_unit / U)}; }

/// Hubbard R-matrix with the (R+R+ + R-R-) coefficient written as
/// (e^{2h_k} - e^{2h_j} tan u_j tan u_k)/(e^{2h_j} - e^{2h_k} tan u_j tan u_k), regular at u = 0.
inline CMatrix hubbard_r(const FockSpace& space, int j, int k, const HubbardPoint& pj, const HubbardPoint& pk) {
  const cplx ej = std::exp(2.0 * pj.h()), ek = std::exp(2.0 * pk.h());
  const cplx tt = std::tan(pj.u) * std::tan(pk.u);
  const cplx coef = (ek - ej * tt) / (ej - ek * tt);
  return ssw_from_coefficients(space, j, k, pj.A(), pk.A(), {coef, coef, 1.0, 1.0});
}

/// Central difference with one Richardson step.
template <typename F>
CMatrix richardson_derivative(F&& f, double h = 1e-5) {
  if (h < 1e-12) throw domain_error("richardson_derivative: step underflow");
  auto D = [&](double s) { return CMatrix((f(s) - f(-s)) / (2.0 * s)); };
  return (4.0 * D(h / 2.0) - D(h)) / 3.0;
}

/// Hopping between sites j and k summed over both layers.
inline CMatrix two_layer_hopping(const FockSpace& space, int j, int k) {
  CMatrix H = CMatrix::Zero(space.dim(), space.dim());
  for (int l = 0; l < 2; ++l) {
    const CMatrix cj = space.c(j, l), ck = space.c(k, l);
    H += sparse_product(cj.adjoint(), ck) + sparse_product(ck.adjoint(), cj);
  }
  return H;
}

/// (m_up - n_up)(m_down - n_down) on one site.
inline CMatrix hubbard_interaction(const FockSpace& space, int s) {
  return sparse_product(space.parity(s, 0), space.parity(s, 1));
}

/// Periodic chain -sum hop_{i,i+1} + (U/4) sum int_i.
inline CMatrix hubbard_chain(const FockSpace& space, cplx U) {
  const int N = space.n_sites();
  CMatrix H = CMatrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < N; ++i) H += -two_layer_hopping(space, i, (i + 1) % N) + U / 4.0 * hubbard_interaction(space, i);
  return H;
}

/// Logarithmic derivative d/du P Rcheck(u, 0) at u = 0 on two sites.
inline CMatrix hubbard_density_numeric(cplx U, double step = 1e-5) {
  const FockSpace S(2, 2);
  const CMatrix P = graded_permutation_all_layers(S, 0, 1);
  auto f = [&](double u) { return CMatrix(P * hubbard_r(S, 0, 1, HubbardPoint{u, U}, HubbardPoint{0.0, U})); };
  return richardson_derivative(f, step);
}

struct HubbardCheck {
  double fit_residual = 0.0;   ///< distance of the numeric density from span{hop, int_1, int_2, 1}
  double ratio_error = 0.0;    ///< |bond interaction/hopping coefficient ratio - U/4|
  double chain_residual = 0.0; ///< chain sum of the numeric density vs the periodic Hubbard chain
  cplx normalization{0.0};     ///< density = normalization * (Hubbard bond) + constant
};

/// Fermionic translation by one site (two layers).
inline CMatrix translation(const FockSpace& space) {
  CMatrix T = space.identity();
  for (int i = 0; i + 1 < space.n_sites(); ++i) T = sparse_product(T, graded_permutation_all_layers(space, i, i + 1));
  return T;
}

inline HubbardCheck hubbard_hamiltonian_check(cplx U, int N) {
  if (N < 2 || N % 2 != 0) throw domain_error("hubbard_hamiltonian_check: N must be even and >= 2");
  if (N > 4) throw domain_error("hubbard_hamiltonian_check: N > 4 exceeds the dense-storage limit");
  const FockSpace S2(2, 2);
  const CMatrix H = hubbard_density_numeric(U);
  std::array<CMatrix, 4> basis{two_layer_hopping(S2, 0, 1), hubbard_interaction(S2, 0), hubbard_interaction(S2, 1),
                               S2.identity()};
  CMatrix M(256, 4);
  for (int b = 0; b < 4; ++b) M.col(b) = basis[std::size_t(b)].reshaped();
  const CVector coef = M.colPivHouseholderQr().solve(CVector(H.reshaped()));
  HubbardCheck out;
  out.fit_residual = (M * coef - CVector(H.reshaped())).norm() / std::max(1.0, H.norm());
  const cplx hop = coef(0);
  out.normalization = -hop;
  // The density at (u, 0) carries the whole bond interaction on one site; around the
  // ring every site receives it once.
  out.ratio_error = std::abs((coef(1) + coef(2)) / (-hop) - U / 4.0);
  // Chain: translate the embedded two-site density around the ring.
  const FockSpace SN(N, 2);
  const CMatrix local = kron(H - coef(3) * S2.identity(), CMatrix::Identity(SN.dim() / 16, SN.dim() / 16));
  const CMatrix T = translation(SN);
  const CMatrix Tinv = T.adjoint();
  CMatrix chain = CMatrix::Zero(SN.dim(), SN.dim());
  CMatrix term = local;
  for (int i = 0; i < N; ++i) {
    chain += term;
    term = sparse_product(sparse_product(Tinv, term), T);
  }
  const CMatrix reference = out.normalization * hubbard_chain(SN, U);
  out.chain_residual = frobenius_residual(chain, reference);
  return out;
}

/// (G^-1 Delta'(J) G) R = R (G^-1 Delta(J) G) for J in {e0, f0, k0, h0} on each layer,
/// with representation data from params_from_sl2c at the shared z. The relative
/// sign of phi between the two sites is a branch choice; the better one is reported.
inline double check_quantum_invariance(const GluingPoint& p1, const GluingPoint& p2, cplx z) {
  const FockSpace S(2, 2);
  const CMatrix R = ssw_r(S, 0, 1, p1, p2);
  QgParams q1 = params_from_sl2c(p1.A, z), q2 = params_from_sl2c(p2.A, z);
  CMatrix G = S.identity();
  for (int l = 0; l < 2; ++l) G = G * identification_gauge(S, 0, q1, l) * identification_gauge(S, 1, q2, l);
  const CMatrix Ginv = G.inverse();
  double best = std::numeric_limits<double>::infinity();
  for (int sign : {1, -1}) {
    q2.phi_sign = sign;
    double worst = 0.0;
    for (int l = 0; l < 2; ++l) {
      const QgGenerators g1 = rep_generators(S, 0, q1, l), g2 = rep_generators(S, 1, q2, l);
      for (auto name : qg_subalgebra_names) {
        const CMatrix lhs = Ginv * coproduct(name, g1, g2, true) * G * R;
        const CMatrix rhs = R * Ginv * coproduct(name, g1, g2) * G;
        worst = std::max(worst, frobenius_residual(lhs, rhs));
      }
    }
    best = std::min(best, worst);
  }
  return best;
}

/// A glued pair whose free-fermion points come from representation data at a common z.
inline std::array<GluingPoint, 2> random_glued_pair_qg(Rng& rng, cplx z, const Globals& g) {
  std::array<GluingPoint, 2> out;
  for (auto& p : out) p = glue(sl2c_from_params(random_qg_params(rng, z)), g);
  return out;
}

}  // namespace ffsm

#endif  // FFSM_SSW_HPP
