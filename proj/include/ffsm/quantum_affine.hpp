#ifndef FFSM_QUANTUM_AFFINE_HPP
#define FFSM_QUANTUM_AFFINE_HPP

#include "ffsm/free_fermion.hpp"

#include <array>
#include <string_view>

namespace ffsm {

/// Two-dimensional representation data at q = i. lambda = i^{-1-mu},
/// phi = phi_sign * sqrt((lambda - 1/lambda)/(2i)) with the principal root.
struct QgParams {
  cplx x{1.0}, y{1.0}, mu{0.0}, z{1.0};
  int phi_sign = 1;
  /// Sign of sqrt(lambda/(lambda - 1/lambda)) used by the free-fermion dictionary.
  int s_branch = 1;

  cplx lambda() const { return std::exp(I_unit * (pi / 2.0) * (-1.0 - mu)); }
  cplx phi() const {
    const cplx l = lambda();
    return double(phi_sign) * std::sqrt((l - 1.0 / l) / (2.0 * I_unit));
  }
  void validate() const {
    const cplx l = lambda();
    if (std::abs(l - 1.0) < 1e-9 || std::abs(l + 1.0) < 1e-9) throw domain_error("QgParams: lambda = +-1");
    if (x == 0.0 || y == 0.0 || z == 0.0) throw domain_error("QgParams: x, y, z must be nonzero");
  }
};

inline constexpr std::array<std::string_view, 10> qg_generator_names{"k0", "k1", "e0", "f0", "e1",
                                                                     "f1", "h0", "h1", "F",  "Z"};
/// Generators of the finite-type subalgebra used by the two-layer symmetry.
inline constexpr std::array<std::string_view, 4> qg_subalgebra_names{"e0", "f0", "k0", "h0"};

struct QgGenerators {
  CMatrix k0, k1, e0, f0, e1, f1, h0, h1, F, Z;
  cplx lambda, phi, z;

  const CMatrix& get(std::string_view name) const {
    if (name == "k0") return k0;
    if (name == "k1") return k1;
    if (name == "e0") return e0;
    if (name == "f0") return f0;
    if (name == "e1") return e1;
    if (name == "f1") return f1;
    if (name == "h0") return h0;
    if (name == "h1") return h1;
    if (name == "F") return F;
    if (name == "Z") return Z;
    throw domain_error("unknown quantum-group generator '" + std::string(name) + "'");
  }
};

/// k0 = (n-m)/lambda, e0 = -phi c^dag/x, f0 = phi x c, h0 = mu - m + n,
/// k1 = lambda (n-m), e1 = phi c/y, f1 = -phi y c^dag, h1 = -mu + m - n, F = m - n, Z = z.
inline QgGenerators rep_generators(const FockSpace& space, int site, const QgParams& p, int layer = 0) {
  p.validate();
  const cplx lam = p.lambda(), phi = p.phi();
  const CMatrix n = space.n(site, layer), m = space.m(site, layer), c = space.c(site, layer);
  const CMatrix cd = c.adjoint(), Id = space.identity();
  QgGenerators g;
  g.k0 = (n - m) / lam;
  g.e0 = -phi / p.x * cd;
  g.f0 = phi * p.x * c;
  g.h0 = p.mu * Id - m + n;
  g.k1 = lam * (n - m);
  g.e1 = phi / p.y * c;
  g.f1 = -phi * p.y * cd;
  g.h1 = -p.mu * Id + m - n;
  g.F = m - n;
  g.Z = p.z * Id;
  g.lambda = lam;
  g.phi = phi;
  g.z = p.z;
  return g;
}

inline QgGenerators rep_generators(const QgParams& p) { return rep_generators(FockSpace(1), 0, p); }

/// Worst residual of the defining relations on one representation.
inline double check_algebra_relations(const QgParams& p) {
  const QgGenerators g = rep_generators(p);
  const std::array<const CMatrix*, 2> k{&g.k0, &g.k1}, e{&g.e0, &g.e1}, f{&g.f0, &g.f1}, h{&g.h0, &g.h1};
  const double A[2][2] = {{2.0, -2.0}, {-2.0, 2.0}};
  double worst = 0.0;
  const CMatrix Id = identity(2);
  for (int r = 0; r < 2; ++r) {
    CMatrix qh = CMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) qh(i, i) = std::exp(I_unit * (pi / 2.0) * (*h[r])(i, i));
    worst = std::max(worst, (qh - *k[r]).norm());
    for (int s = 0; s < 2; ++s) {
      const CMatrix ef = commutator(*e[r], *f[s]);
      const CMatrix expect = (r == s) ? CMatrix((*k[r] - k[r]->inverse()) / (2.0 * I_unit)) : CMatrix::Zero(2, 2);
      worst = std::max(worst, (ef - expect).norm());
      worst = std::max(worst, (*k[r] * *e[s] + *e[s] * *k[r]).norm());
      worst = std::max(worst, (*k[r] * *f[s] + *f[s] * *k[r]).norm());
      worst = std::max(worst, (commutator(*h[r], *e[s]) - A[r][s] * *e[s]).norm());
      worst = std::max(worst, (commutator(*h[r], *f[s]) + A[r][s] * *f[s]).norm());
      worst = std::max(worst, commutator(*h[r], *h[s]).norm());
      worst = std::max(worst, commutator(*k[r], *h[s]).norm());
    }
  }
  worst = std::max(worst, (g.k0 * g.k1 - Id).norm());
  worst = std::max(worst, (g.k0 * g.k0 - Id / (g.lambda * g.lambda)).norm());
  worst = std::max(worst, (g.k1 * g.k1 - Id * (g.lambda * g.lambda)).norm());
  worst = std::max(worst, (g.e0 * g.e0).norm() + (g.f0 * g.f0).norm() + (g.e1 * g.e1).norm() + (g.f1 * g.f1).norm());
  return worst;
}

/// Coproduct of a generator on a two-site tensor product. g1 and g2 must be
/// embedded in the same space (sites 1 and 2); odd generators of the second
/// factor carry their Jordan-Wigner string automatically.
/// Forward:  e0 -> z e0 + k0 F (x) e0,  f0 -> f0 (x) k0^-1 / z + F (x) f0,
///           e1 -> e1 + z k1 F (x) e1,  f1 -> f1 (x) k1^-1 + F (x) f1 / z.
/// Opposite: the same with the tensor factors exchanged.
inline CMatrix coproduct(std::string_view name, const QgGenerators& g1, const QgGenerators& g2,
                         bool opposite = false) {
  if (g1.z != g2.z) throw domain_error("coproduct: sites carry different z");
  const cplx z = g1.z;
  const QgGenerators& a = g1;
  const QgGenerators& b = g2;
  if (name == "k0") return a.k0 * b.k0;
  if (name == "k1") return a.k1 * b.k1;
  if (name == "h0") return a.h0 + b.h0;
  if (name == "h1") return a.h1 + b.h1;
  if (name == "F") return a.F * b.F;
  if (name == "Z") return z * z * CMatrix::Identity(a.Z.rows(), a.Z.cols());
  if (!opposite) {
    if (name == "e0") return z * a.e0 + a.k0 * a.F * b.e0;
    if (name == "f0") return a.f0 * b.k0.inverse() / z + a.F * b.f0;
    if (name == "e1") return a.e1 + z * a.k1 * a.F * b.e1;
    if (name == "f1") return a.f1 * b.k1.inverse() + a.F * b.f1 / z;
  } else {
    if (name == "e0") return z * b.e0 + a.e0 * b.k0 * b.F;
    if (name == "f0") return b.f0 * a.k0.inverse() / z + a.f0 * b.F;
    if (name == "e1") return b.e1 + z * a.e1 * b.k1 * b.F;
    if (name == "f1") return b.f1 * a.k1.inverse() + a.f1 * b.F / z;
  }
  throw domain_error("coproduct: unknown generator '" + std::string(name) + "'");
}

/// The intertwiner r0 on sites (j, k) of one layer, normalized with
/// sqrt((lambda1 - 1/lambda1)(lambda2 - 1/lambda2)) := 2 i phi1 phi2.
inline CMatrix intertwiner_r0(const FockSpace& space, int j, int k, const QgParams& p1, const QgParams& p2,
                              int layer = 0) {
  if (p1.z != p2.z) throw domain_error("intertwiner_r0: sites carry different z");
  p1.validate();
  p2.validate();
  const cplx l1 = p1.lambda(), l2 = p2.lambda(), z = p1.z;
  const cplx X1 = p1.x * p1.y, X2 = p2.x * p2.y;
  const cplx sq = 2.0 * I_unit * p1.phi() * p2.phi();
  const CMatrix nj = space.n(j, layer), nk = space.n(k, layer), mj = space.m(j, layer), mk = space.m(k, layer);
  const CMatrix cj = space.c(j, layer), ck = space.c(k, layer);
  return (X1 * l1 * l2 - X2) * nj * nk + (X2 * l1 - X1 * l2) / z * nj * mk + z * (X2 * l2 - X1 * l1) * mj * nk +
         (X1 - X2 * l1 * l2) * mj * mk -
         sq * (p1.x * p2.y * l2 * ck.adjoint() * cj + p2.x * p1.y * l1 * cj.adjoint() * ck);
}

inline CMatrix intertwiner_r0(const QgParams& p1, const QgParams& p2) {
  return intertwiner_r0(FockSpace(2), 0, 1, p1, p2);
}

/// max over generators of res(Delta'(J) r0, r0 Delta(J)).
inline double check_intertwiner(const QgParams& p1, const QgParams& p2) {
  const FockSpace S(2);
  const QgGenerators g1 = rep_generators(S, 0, p1), g2 = rep_generators(S, 1, p2);
  const CMatrix r = intertwiner_r0(S, 0, 1, p1, p2);
  double worst = 0.0;
  for (auto name : qg_generator_names)
    worst = std::max(worst, frobenius_residual(coproduct(name, g1, g2, true) * r, r * coproduct(name, g1, g2)));
  return worst;
}

/// Singular values (descending) of the stacked linear map M -> Delta'(J) M - M Delta(J).
template <std::size_t N>
Eigen::VectorXd intertwiner_constraint_singular_values(const QgParams& p1, const QgParams& p2,
                                                       const std::array<std::string_view, N>& names) {
  const FockSpace S(2);
  const QgGenerators g1 = rep_generators(S, 0, p1), g2 = rep_generators(S, 1, p2);
  const CMatrix I4 = identity(4);
  CMatrix stack(Eigen::Index(16 * N), 16);
  Eigen::Index row = 0;
  for (auto name : names) {
    const CMatrix Dp = coproduct(name, g1, g2, true), D = coproduct(name, g1, g2);
    stack.middleRows(row, 16) = kron(I4, Dp) - kron(CMatrix(D.transpose()), I4);
    row += 16;
  }
  Eigen::JacobiSVD<CMatrix> svd(stack);
  return svd.singularValues();
}

/// Dimension of the intertwiner space, counting singular values below rel_tol * sigma_max.
template <std::size_t N>
int intertwiner_space_dimension(const QgParams& p1, const QgParams& p2, const std::array<std::string_view, N>& names,
                                double rel_tol = 1e-8) {
  const Eigen::VectorXd s = intertwiner_constraint_singular_values(p1, p2, names);
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) <= rel_tol * s(0)) ++dim;
  return dim;
}

/// Free-fermion point of a representation: with w = lambda - 1/lambda, r = sqrt(xy),
/// s = sqrt(lambda/w), s' = s/lambda:  a = s/r, b = r s'/(i z), c = i z s'/r, d = r s.
inline Sl2cPoint sl2c_from_params(const QgParams& p) {
  p.validate();
  const cplx lam = p.lambda(), w = lam - 1.0 / lam;
  const cplx r = std::sqrt(p.x * p.y);
  const cplx s = double(p.s_branch) * std::sqrt(lam / w);
  const cplx sp = s / lam;
  return {s / r, r * sp / (I_unit * p.z), I_unit * p.z * sp / r, r * s};
}

/// Inverse dictionary with x = y. The returned parameters reproduce A exactly
/// through sl2c_from_params (s_branch absorbs the sign of the square root).
inline QgParams params_from_sl2c(const Sl2cPoint& A, cplx z, double tol = 1e-9) {
  require_unimodular(A, "params_from_sl2c");
  if (A.a == 0.0 || A.b == 0.0 || A.c == 0.0 || A.d == 0.0) throw domain_error("params_from_sl2c: zero entry");
  const cplx z2 = -A.c * A.d / (A.a * A.b);
  if (std::abs(z * z - z2) > tol * std::max(1.0, std::abs(z2)))
    throw domain_error("params_from_sl2c: z^2 != -cd/(ab)");
  const cplx r = std::sqrt(A.d / A.a);
  const cplx s = A.a * r;
  const cplx sp = I_unit * z * A.b / r;
  const cplx lam = s / sp;
  QgParams p;
  p.x = r;
  p.y = r;
  p.z = z;
  p.mu = -1.0 - std::log(lam) / (I_unit * pi / 2.0);
  const cplx w = lam - 1.0 / lam;
  p.s_branch = std::abs(std::sqrt(lam / w) - s) <= std::abs(std::sqrt(lam / w) + s) ? 1 : -1;
  return p;
}

/// r0_12 r0_13 r0_23 = r0_23 r0_13 r0_12 on three sites.
inline double check_ybe_intertwiner(const QgParams& p1, const QgParams& p2, const QgParams& p3) {
  const FockSpace S(3);
  const CMatrix r12 = intertwiner_r0(S, 0, 1, p1, p2), r13 = intertwiner_r0(S, 0, 2, p1, p3),
                r23 = intertwiner_r0(S, 1, 2, p2, p3);
  return frobenius_residual(r12 * r13 * r23, r23 * r13 * r12);
}

/// Flipping the sign of phi equals conjugation by k0 on that site, and the
/// intertwiner is conjugated by the site parity.
inline double check_phi_flip(const QgParams& p1, const QgParams& p2) {
  QgParams q1 = p1;
  q1.phi_sign = -p1.phi_sign;
  const QgGenerators g = rep_generators(p1), h = rep_generators(q1);
  const CMatrix ki = g.k0.inverse();
  double worst = 0.0;
  for (auto name : {"e0", "f0", "e1", "f1", "k0", "h0"})
    worst = std::max(worst, frobenius_residual(g.k0 * g.get(name) * ki, h.get(name)));
  const FockSpace S(2);
  const CMatrix K = S.parity(0);
  return std::max(worst, frobenius_residual(K * intertwiner_r0(S, 0, 1, p1, p2) * K, intertwiner_r0(S, 0, 1, q1, p2)));
}

/// Random representation data with lambda away from +-1 and pairs away from mu1 + mu2 in 2Z.
inline QgParams random_qg_params(Rng& rng, cplx z) {
  for (;;) {
    QgParams p;
    p.x = rng.polar();
    p.y = rng.polar();
    p.mu = cplx(rng.normal(), 0.5 * rng.normal());
    p.z = z;
    const cplx l = p.lambda();
    if (std::abs(l - 1.0) > 0.05 && std::abs(l + 1.0) > 0.05) return p;
  }
}

inline bool generic_pair(const QgParams& p1, const QgParams& p2, double margin = 0.05) {
  const cplx s = p1.mu + p2.mu;
  const double nearest = 2.0 * std::round(s.real() / 2.0);
  return std::abs(s - nearest) > margin;
}

/// G = m + sqrt(y lambda / x) n on one mode.
inline CMatrix identification_gauge(const FockSpace& space, int site, const QgParams& p, int layer = 0) {
  return space.m(site, layer) + std::sqrt(p.y * p.lambda() / p.x) * space.n(site, layer);
}

/// res(R0(A1, A2), +- norm G1^-1 G2^-1 r0 G1 G2) with the better sign, where
/// norm = -1/sqrt(w1 w2 x1 y1 x2 y2 lambda1 lambda2) and A_i = sl2c_from_params(p_i).
inline double check_identification_r0(const QgParams& p1, const QgParams& p2) {
  const FockSpace S(2);
  const Sl2cPoint A1 = sl2c_from_params(p1), A2 = sl2c_from_params(p2);
  const cplx l1 = p1.lambda(), l2 = p2.lambda();
  const cplx norm = -1.0 / std::sqrt((l1 - 1.0 / l1) * (l2 - 1.0 / l2) * p1.x * p1.y * p2.x * p2.y * l1 * l2);
  if (norm == 0.0 || !std::isfinite(std::abs(norm))) throw domain_error("check_identification_r0: bad normalization");
  const CMatrix G = identification_gauge(S, 0, p1) * identification_gauge(S, 1, p2);
  const CMatrix rhs = norm * G.inverse() * intertwiner_r0(S, 0, 1, p1, p2) * G;
  return residual_up_to_sign(r0(S, 0, 1, A1, A2), rhs);
}

/// Identification residual minimized over the sign of phi at site 1.
inline double check_identification_r0_any_branch(QgParams p1, const QgParams& p2) {
  const double first = check_identification_r0(p1, p2);
  p1.phi_sign = -p1.phi_sign;
  return std::min(first, check_identification_r0(p1, p2));
}

/// Conjugating r0 by g_i = n_i + y_i m_i and rescaling x_i -> x_i y_i, y_i -> 1
/// reproduces the intertwiner form.
inline double check_y_removal(const QgParams& p1, const QgParams& p2) {
  const FockSpace S(2);
  const CMatrix g = (S.n(0) + p1.y * S.m(0)) * (S.n(1) + p2.y * S.m(1));
  const CMatrix lhs = g * intertwiner_r0(S, 0, 1, p1, p2) * g.inverse();
  QgParams q1 = p1, q2 = p2;
  q1.x = p1.x * p1.y;
  q1.y = 1.0;
  q2.x = p2.x * p2.y;
  q2.y = 1.0;
  return frobenius_residual(lhs, intertwiner_r0(S, 0, 1, q1, q2));
}

}  // namespace ffsm

#endif  // FFSM_QUANTUM_AFFINE_HPP
