#ifndef FFSM_SUPERALGEBRA_HPP
#define FFSM_SUPERALGEBRA_HPP

#include "ffsm/ssw.hpp"

#include <Eigen/Eigenvalues>

namespace ffsm {

/// Parameters (a, b, c, d) of the odd generators, ad - bc = 1.
using OddParams = Sl2cPoint;

struct CentralCharges {
  cplx C, P, K;
  /// C^2 - P K - 1/4.
  cplx shortening_defect() const { return C * C - P * K - 0.25; }
};

/// C = (ad + bc)/2, P = ab, K = cd.
inline CentralCharges central_charges(const OddParams& d) { return {(d.a * d.d + d.b * d.c) / 2.0, d.a * d.b, d.c * d.d}; }

/// su(2|2) generators on one two-layer site. Indices are 0-based: L[al][be] = L^{al+1}_{be+1},
/// R[a][b], Q[al][a] = Q^{al+1}_{a+1}, S[a][al] = S^{a+1}_{al+1}.
struct SuperGenerators {
  using Block = std::array<std::array<CMatrix, 2>, 2>;
  Block L, R, Q, S;
  CMatrix B;

  /// Generator by name ("L12", "Q21", ..., "B"), digits 1-based as printed.
  const CMatrix& get(std::string_view name) const {
    if (name == "B") return B;
    if (name.size() != 3 || name[1] < '1' || name[1] > '2' || name[2] < '1' || name[2] > '2')
      throw domain_error("SuperGenerators: unknown generator '" + std::string(name) + "'");
    const std::size_t i = std::size_t(name[1] - '1'), j = std::size_t(name[2] - '1');
    switch (name[0]) {
      case 'L': return L[i][j];
      case 'R': return R[i][j];
      case 'Q': return Q[i][j];
      case 'S': return S[i][j];
      default: throw domain_error("SuperGenerators: unknown generator '" + std::string(name) + "'");
    }
  }
};

inline constexpr std::array<std::string_view, 8> even_generator_names{"L11", "L12", "L21", "L22",
                                                                       "R11", "R12", "R21", "R22"};
inline constexpr std::array<std::string_view, 8> odd_generator_names{"Q11", "Q12", "Q21", "Q22",
                                                                      "S11", "S12", "S21", "S22"};

inline SuperGenerators super_generators(const OddParams& D, const FockSpace& space, int site) {
  if (space.n_layers() != 2) throw domain_error("super_generators: needs a two-layer space");
  const CMatrix nu = space.n(site, 0), nd = space.n(site, 1), mu = space.m(site, 0), md = space.m(site, 1);
  const CMatrix cu = space.c(site, 0), cd = space.c(site, 1);
  const CMatrix cuh = cu.adjoint(), cdh = cd.adjoint();
  const CMatrix I = space.identity();
  const cplx a = D.a, b = D.b, c = D.c, d = D.d;
  SuperGenerators g;
  g.R[0][0] = 0.5 * (I - nu - nd);
  g.R[1][1] = -g.R[0][0];
  g.R[0][1] = cd * cu;
  g.R[1][0] = cuh * cdh;
  g.L[0][0] = 0.5 * (nu - nd);
  g.L[1][1] = -g.L[0][0];
  g.L[0][1] = cuh * cd;
  g.L[1][0] = cdh * cu;
  g.Q[0][0] = (a * md + b * nd) * cuh;
  g.Q[1][0] = (a * mu + b * nu) * cdh;
  g.Q[0][1] = -(b * mu + a * nu) * cd;
  g.Q[1][1] = (b * md + a * nd) * cu;
  g.S[0][0] = (d * md + c * nd) * cu;
  g.S[1][0] = -(c * mu + d * nu) * cdh;
  g.S[0][1] = (d * mu + c * nu) * cd;
  g.S[1][1] = (c * md + d * nd) * cuh;
  g.B = nu * nd + mu * md;
  return g;
}

/// Sum of the site generators J_1(D_1) + J_2(D_2).
inline CMatrix two_site_generator(const SuperGenerators& g1, const SuperGenerators& g2, std::string_view name) {
  return g1.get(name) + g2.get(name);
}

/// Worst residual of every defining (anti)commutator on one site.
inline double check_super_algebra(const OddParams& D) {
  const FockSpace S(1, 2);
  const SuperGenerators g = super_generators(D, S, 0);
  const CentralCharges z = central_charges(D);
  const CMatrix I = S.identity();
  auto dl = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  auto eps = [](int i, int j) { return i == j ? 0.0 : (i == 0 ? 1.0 : -1.0); };
  double worst = 0.0;
  auto upd = [&](const CMatrix& X) { worst = std::max(worst, X.norm()); };
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int ga = 0; ga < 2; ++ga)
        for (int de = 0; de < 2; ++de) {
          upd(commutator(g.L[al][be], g.L[ga][de]) - (dl(ga, be) * g.L[al][de] - dl(al, de) * g.L[ga][be]));
          upd(commutator(g.R[al][be], g.R[ga][de]) - (dl(ga, be) * g.R[al][de] - dl(al, de) * g.R[ga][be]));
          upd(commutator(g.L[al][be], g.Q[ga][de]) - (dl(ga, be) * g.Q[al][de] - 0.5 * dl(al, be) * g.Q[ga][de]));
          upd(commutator(g.L[al][be], g.S[de][ga]) - (-dl(ga, al) * g.S[de][be] + 0.5 * dl(al, be) * g.S[de][ga]));
          upd(commutator(g.R[al][be], g.S[ga][de]) - (dl(ga, be) * g.S[al][de] - 0.5 * dl(al, be) * g.S[ga][de]));
          upd(commutator(g.R[al][be], g.Q[de][ga]) - (-dl(ga, al) * g.Q[de][be] + 0.5 * dl(al, be) * g.Q[de][ga]));
          upd(anticommutator(g.Q[al][be], g.Q[ga][de]) - eps(al, ga) * eps(be, de) * z.P * I);
          upd(anticommutator(g.S[be][al], g.S[de][ga]) - eps(be, de) * eps(al, ga) * z.K * I);
          upd(anticommutator(g.Q[al][be], g.S[de][ga]) -
              (dl(de, be) * g.L[al][ga] + dl(al, ga) * g.R[de][be] + dl(de, be) * dl(al, ga) * z.C * I));
        }
  return worst;
}

/// e^{i phi B} J(D) e^{-i phi B} against J(D E), E = diag(e^{-i phi}, e^{i phi}), over the odd generators.
inline double check_outer_automorphism(const OddParams& D, double phi) {
  const FockSpace S(1, 2);
  const SuperGenerators g = super_generators(D, S, 0);
  const OddParams DE{D.a * std::exp(-I_unit * phi), D.b * std::exp(I_unit * phi), D.c * std::exp(-I_unit * phi),
                     D.d * std::exp(I_unit * phi)};
  const SuperGenerators h = super_generators(DE, S, 0);
  CMatrix U = CMatrix::Zero(S.dim(), S.dim()), Ui = U;
  for (Eigen::Index i = 0; i < S.dim(); ++i) {
    U(i, i) = std::exp(I_unit * phi * g.B(i, i));
    Ui(i, i) = 1.0 / U(i, i);
  }
  double worst = 0.0;
  for (auto name : odd_generator_names) worst = std::max(worst, frobenius_residual(U * g.get(name) * Ui, h.get(name)));
  return worst;
}

/// |ab - cd|; zero on the symmetric locus.
inline double symmetry_defect(const Sl2cPoint& A) { return std::abs(A.a * A.b - A.c * A.d); }

inline void require_symmetric(const Sl2cPoint& A, const char* what, double tol = 1e-9) {
  if (symmetry_defect(A) > tol * std::max(1.0, std::abs(A.a * A.b))) throw domain_error(std::string(what) + ": ab != cd");
}

/// a, c random, d = a/(a^2 - c^2), b = c/(a^2 - c^2): unimodular with ab = cd.
inline Sl2cPoint random_symmetric_sl2c(Rng& rng) {
  for (;;) {
    const cplx a = rng.polar(), c = rng.polar();
    const cplx w = a * a - c * c;
    if (std::abs(w) < 0.1) continue;
    return {a, c / w, c, a / w};
  }
}

struct GaugeOps {
  CMatrix U, V;
  cplx t;
};

/// V = (m - i n)(m - i n) on one site.
inline CMatrix gauge_v(const FockSpace& space, int site) {
  return (space.m(site, 0) - I_unit * space.n(site, 0)) * (space.m(site, 1) - I_unit * space.n(site, 1));
}

/// U = m m + t(m n + n m) + (c/b) n n, V = (m - i n)(m - i n) on one site.
inline GaugeOps gauge_uv(const FockSpace& space, int site, const Sl2cPoint& A, cplx t) {
  if (t == 0.0) throw domain_error("gauge_uv: t = 0");
  if (A.b == 0.0 || A.c == 0.0) throw domain_error("gauge_uv: b = 0 or c = 0");
  const CMatrix mu = space.m(site, 0), md = space.m(site, 1), nu = space.n(site, 0), nd = space.n(site, 1);
  return {mu * md + t * (mu * nd + nu * md) + (A.c / A.b) * nu * nd, gauge_v(space, site), t};
}

/// Diagonal inverse.
inline CMatrix diagonal_inverse(const CMatrix& D) {
  CMatrix out = CMatrix::Zero(D.rows(), D.cols());
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    if (D(i, i) == 0.0) throw domain_error("diagonal_inverse: singular");
    out(i, i) = 1.0 / D(i, i);
  }
  return out;
}

/// Rcheck_{jk} = V^-1 P_{jk} U_j^-1 U_k^-1 R_{jk} U_j U_k V with V on v_site.
inline CMatrix r_check(const FockSpace& space, int j, int k, const GluingPoint& pj, const GluingPoint& pk, cplx tj,
                       cplx tk, int v_site) {
  require_symmetric(pj.A, "r_check");
  require_symmetric(pk.A, "r_check");
  const CMatrix R = ssw_r(space, j, k, pj, pk);
  const CMatrix U = gauge_uv(space, j, pj.A, tj).U * gauge_uv(space, k, pk.A, tk).U;
  const CMatrix V = gauge_v(space, v_site);
  const CMatrix Rp = graded_permutation_all_layers(space, j, k) * diagonal_inverse(U) * R * U;
  return diagonal_inverse(V) * Rp * V;
}

/// Two-site Rcheck with V on the second site.
inline CMatrix r_check(const GluingPoint& p1, const GluingPoint& p2, cplx t1, cplx t2) {
  return r_check(FockSpace(2, 2), 0, 1, p1, p2, t1, t2, 1);
}

/// Rcheck on the neighbouring sites (j, j+1) of a chain; V sits on the odd site of the pair.
inline CMatrix r_check_chain(const FockSpace& space, int j, const GluingPoint& pj, const GluingPoint& pk, cplx tj,
                             cplx tk) {
  return r_check(space, j, j + 1, pj, pk, tj, tk, (j % 2) ? j : j + 1);
}

/// Rcheck12(2,3) Rcheck23(1,3) Rcheck12(1,2) = Rcheck23(1,2) Rcheck12(1,3) Rcheck23(2,3) on three sites,
/// each point carrying its own gauge parameter.
inline double check_braided_ybe(const std::array<GluingPoint, 3>& p, const std::array<cplx, 3>& t) {
  const FockSpace S(3, 2);
  auto X = [&](int j, int a, int b) {
    return r_check_chain(S, j, p[std::size_t(a)], p[std::size_t(b)], t[std::size_t(a)], t[std::size_t(b)]);
  };
  return frobenius_residual(X(0, 1, 2) * X(1, 0, 2) * X(0, 0, 1), X(1, 0, 1) * X(0, 0, 2) * X(1, 1, 2));
}

/// max over even generators of |[Rcheck, J_1 + J_2]| relative to |Rcheck|.
inline double check_bosonic_invariance(const CMatrix& Rc) {
  const FockSpace S(2, 2);
  const SuperGenerators g1 = super_generators(OddParams{}, S, 0), g2 = super_generators(OddParams{}, S, 1);
  double worst = 0.0;
  for (auto name : even_generator_names)
    worst = std::max(worst, commutator(Rc, two_site_generator(g1, g2, name)).norm() / std::max(1.0, Rc.norm()));
  return worst;
}

/// [R, L_1 + L_2] for the ungauged R; holds without the symmetry condition.
inline double check_l_invariance(const GluingPoint& p1, const GluingPoint& p2) {
  const FockSpace S(2, 2);
  const CMatrix R = ssw_r(S, 0, 1, p1, p2);
  const SuperGenerators g1 = super_generators(OddParams{}, S, 0), g2 = super_generators(OddParams{}, S, 1);
  double worst = 0.0;
  for (auto name : {"L11", "L12", "L21", "L22", "R11", "R22"})
    worst = std::max(worst, commutator(R, two_site_generator(g1, g2, name)).norm() / std::max(1.0, R.norm()));
  return worst;
}

/// {R, (b1/c1) R12_1 - (b2/c2) R12_2} and {R, (c1/b1) R21_1 - (c2/b2) R21_2}, normalized.
inline double check_anticommutator_relations(const GluingPoint& p1, const GluingPoint& p2) {
  const FockSpace S(2, 2);
  const CMatrix R = ssw_r(S, 0, 1, p1, p2);
  const SuperGenerators g1 = super_generators(OddParams{}, S, 0), g2 = super_generators(OddParams{}, S, 1);
  const Sl2cPoint &A1 = p1.A, &A2 = p2.A;
  const CMatrix X = (A1.b / A1.c) * g1.R[0][1] - (A2.b / A2.c) * g2.R[0][1];
  const CMatrix Y = (A1.c / A1.b) * g1.R[1][0] - (A2.c / A2.b) * g2.R[1][0];
  return std::max(anticommutator(R, X).norm() / (R.norm() * X.norm()),
                  anticommutator(R, Y).norm() / (R.norm() * Y.norm()));
}

/// The 2x2 matrices (B, C) of one glued point; both unimodular on the gluing curve.
inline std::pair<OddParams, OddParams> bc_matrices(const GluingPoint& p, const Globals& g, cplx t) {
  require_glued(p, g, "bc_matrices");
  const Sl2cPoint& A = p.A;
  if (t == 0.0 || A.a == 0.0 || A.b == 0.0 || A.c == 0.0 || A.d == 0.0 || p.v == 0.0)
    throw domain_error("bc_matrices: vanishing entry");
  const cplx pre = std::sqrt(g.theta * g.xi) * std::exp(-I_unit * pi / 4.0);
  const OddParams B{pre * g.theta / g.xi * A.c / (A.a * A.d) * p.v / t, pre * g.xi / g.theta * t / (A.c * p.v),
                    -pre / (A.b * t), -pre * t / A.c};
  const OddParams C{A.c / A.a, 0.0, 0.0, A.a / A.c};
  return {B, C};
}

/// D_1 = C_2 B_1, D_2 = B_2, D_2' = C_1 B_2, D_1' = B_1.
struct OddAssignment {
  OddParams d1, d2, d1p, d2p;
};

inline OddAssignment odd_assignment(const GluingPoint& p1, const GluingPoint& p2, const Globals& g, cplx t1, cplx t2) {
  const auto [B1, C1] = bc_matrices(p1, g, t1);
  const auto [B2, C2] = bc_matrices(p2, g, t2);
  return {C2 * B1, B2, B1, C1 * B2};
}

/// Rcheck [J_1(D_1) + J_2(D_2)] = [J_1(D_2') + J_2(D_1')] Rcheck over the odd generators.
inline double check_odd_invariance(const CMatrix& Rc, const OddAssignment& d) {
  const FockSpace S(2, 2);
  const SuperGenerators g1 = super_generators(d.d1, S, 0), g2 = super_generators(d.d2, S, 1);
  const SuperGenerators h1 = super_generators(d.d2p, S, 0), h2 = super_generators(d.d1p, S, 1);
  double worst = 0.0;
  for (auto name : odd_generator_names)
    worst = std::max(worst, frobenius_residual(Rc * two_site_generator(g1, g2, name), two_site_generator(h1, h2, name) * Rc));
  return worst;
}

inline double check_fermionic_invariance(const GluingPoint& p1, const GluingPoint& p2, const Globals& g, cplx t1,
                                         cplx t2) {
  for (const auto* p : {&p1, &p2}) {
    require_glued(*p, g, "check_fermionic_invariance");
    require_symmetric(p->A, "check_fermionic_invariance");
  }
  return check_odd_invariance(r_check(p1, p2, t1, t2), odd_assignment(p1, p2, g, t1, t2));
}

struct ChargeFlow {
  std::array<CentralCharges, 2> before, after;
  double flow_residual = 0.0;        ///< C' = C, P' = K(P1+P2)/(K1+K2), K' = P(K1+K2)/(P1+P2)
  double shortening_residual = 0.0;  ///< max |C^2 - PK - 1/4| before and after
  double c1_formula_residual = 0.0;  ///< C_1 = i Theta^2 v_1/(a_1 d_1) - 1/2
};

inline ChargeFlow central_charge_flow(const GluingPoint& p1, const GluingPoint& p2, const Globals& g, cplx t1 = 1.0,
                                      cplx t2 = 1.0) {
  const OddAssignment d = odd_assignment(p1, p2, g, t1, t2);
  ChargeFlow f;
  f.before = {central_charges(d.d1), central_charges(d.d2)};
  f.after = {central_charges(d.d1p), central_charges(d.d2p)};
  const cplx Ps = f.before[0].P + f.before[1].P, Ks = f.before[0].K + f.before[1].K;
  if (std::abs(Ps) < 1e-300 || std::abs(Ks) < 1e-300) throw domain_error("central_charge_flow: P1 + P2 = 0 or K1 + K2 = 0");
  for (int i = 0; i < 2; ++i) {
    const CentralCharges &b = f.before[std::size_t(i)], &a = f.after[std::size_t(i)];
    f.flow_residual = std::max({f.flow_residual, std::abs(a.C - b.C), std::abs(a.P - b.K * Ps / Ks),
                                std::abs(a.K - b.P * Ks / Ps)});
    f.shortening_residual =
        std::max({f.shortening_residual, std::abs(b.shortening_defect()), std::abs(a.shortening_defect())});
  }
  f.c1_formula_residual =
      std::abs(f.before[0].C - (I_unit * g.theta * g.theta * p1.v / (p1.A.a * p1.A.d) - 0.5));
  return f;
}

struct DerivedSmatrix {
  CMatrix X;             ///< normalized nullspace vector as a 16x16 matrix
  Eigen::VectorXd sigma; ///< singular values of the constraint matrix, ascending
  int nullity = 0;       ///< count of sigma below 1e-8 sigma_max
};

/// Solves X [J_1(D_1) + J_2(D_2)] = [J_1(D_2') + J_2(D_1')] X for every generator except B
/// (X commutes with the even ones). The constraint matrix M stacks
/// kron(G^T, I) - kron(I, H) per generator; its right singular vectors come from the
/// eigenvectors of M^H M, and each singular value is recomputed as |M v| so the
/// small end keeps full accuracy.
inline DerivedSmatrix derive_smatrix_from_symmetry(const OddParams& d1, const OddParams& d2, const OddParams& d1p,
                                                   const OddParams& d2p) {
  const FockSpace S(2, 2);
  const SuperGenerators g1 = super_generators(d1, S, 0), g2 = super_generators(d2, S, 1);
  const SuperGenerators h1 = super_generators(d2p, S, 0), h2 = super_generators(d1p, S, 1);
  const Eigen::Index n = S.dim(), nn = n * n;
  const CMatrix I = S.identity();
  std::vector<CMatrix> blocks;
  CMatrix gram = CMatrix::Zero(nn, nn);
  auto add = [&](std::string_view name, bool even) {
    const CMatrix G = two_site_generator(g1, g2, name);
    const CMatrix H = even ? G : two_site_generator(h1, h2, name);
    CMatrix block = kron(G.transpose(), I) - kron(I, H);
    gram += block.adjoint() * block;
    blocks.push_back(std::move(block));
  };
  for (auto name : even_generator_names) add(name, true);
  for (auto name : odd_generator_names) add(name, false);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  if (es.info() != Eigen::Success) throw domain_error("derive_smatrix_from_symmetry: eigensolver failed");
  const CMatrix& W = es.eigenvectors();
  DerivedSmatrix out;
  out.sigma.resize(nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    if (i < 4) {
      double s2 = 0.0;
      for (const auto& b : blocks) s2 += (b * W.col(i)).squaredNorm();
      out.sigma(i) = std::sqrt(s2);
    } else {
      out.sigma(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
  }
  const double smax = out.sigma.maxCoeff();
  for (Eigen::Index i = 0; i < nn; ++i) out.nullity += out.sigma(i) < 1e-8 * smax ? 1 : 0;
  out.X = W.col(0).reshaped(n, n);
  return out;
}

/// Staggered pairing operator sum_s (-1)^s R21_s and its normalized commutator with
/// the periodic Hubbard chain; vanishes for even N.
inline double eta_pairing_residual(int N, cplx U) {
  const FockSpace S(N, 2);
  CMatrix eta = CMatrix::Zero(S.dim(), S.dim());
  for (int s = 0; s < N; ++s) eta += (s % 2 ? -1.0 : 1.0) * sparse_product(S.cdag(s, 0), S.cdag(s, 1));
  const CMatrix H = hubbard_chain(S, U);
  return (sparse_product(H, eta) - sparse_product(eta, H)).norm() / (H.norm() * eta.norm());
}

/// Glued symmetric point: ab = cd and a gluing root.
inline GluingPoint random_glued_symmetric(Rng& rng, const Globals& g) { return glue(random_symmetric_sl2c(rng), g); }

}  // namespace ffsm

#endif  // FFSM_SUPERALGEBRA_HPP
