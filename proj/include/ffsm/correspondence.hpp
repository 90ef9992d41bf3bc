#ifndef FFSM_CORRESPONDENCE_HPP
#define FFSM_CORRESPONDENCE_HPP

#include "ffsm/superalgebra.hpp"

namespace ffsm {

/// String-theory kinematics of one excitation.
struct AdsPoint {
  cplx x_plus{2.0}, x_minus{1.0}, eta{1.0}, g{1.0};

  /// x+ + 1/x+ - x- - 1/x- - i/g.
  cplx mass_shell_defect() const { return x_plus + 1.0 / x_plus - x_minus - 1.0 / x_minus - I_unit / g; }
  /// e^{ip} = x+/x-.
  cplx exp_ip() const { return x_plus / x_minus; }
};

inline void require_mass_shell(const AdsPoint& q, const char* what, double tol = 1e-9) {
  if (std::abs(q.mass_shell_defect()) > tol * std::max(1.0, std::abs(q.x_plus)))
    throw domain_error(std::string(what) + ": mass shell violated");
  if (std::abs(q.x_plus - q.x_minus) < 1e-12) throw domain_error(std::string(what) + ": x+ = x-");
}

/// Roots of x + 1/x = kappa, larger modulus first.
inline std::array<cplx, 2> mass_shell_roots(cplx x_minus, cplx g) {
  const cplx kap = x_minus + 1.0 / x_minus + I_unit / g;
  const cplx disc = std::sqrt(kap * kap - 4.0);
  std::array<cplx, 2> r{(kap + disc) / 2.0, (kap - disc) / 2.0};
  if (std::abs(r[1]) > std::abs(r[0])) std::swap(r[0], r[1]);
  return r;
}

/// x- = 1.5 * polar, eta polar, x+ the larger mass-shell root.
inline AdsPoint sample_ads(Rng& rng, cplx g) {
  for (;;) {
    AdsPoint q;
    q.x_minus = 1.5 * rng.polar();
    q.eta = rng.polar();
    q.g = g;
    q.x_plus = mass_shell_roots(q.x_minus, g)[0];
    if (std::abs(q.x_plus - q.x_minus) > 1e-3) return q;
  }
}

inline std::array<AdsPoint, 2> sample_ads_pair(Rng& rng) {
  const cplx g = rng.polar();
  for (;;) {
    std::array<AdsPoint, 2> out{sample_ads(rng, g), sample_ads(rng, g)};
    const AdsPoint &q1 = out[0], &q2 = out[1];
    if (std::abs(q1.x_minus - q2.x_plus) > 1e-3 && std::abs(q1.x_plus * q2.x_plus - q1.x_minus * q2.x_minus) > 1e-3 &&
        std::abs(q1.x_minus + q2.x_plus) > 1e-3)
      return out;
  }
}

/// Free-fermion data of one site together with its gauge parameter.
struct FfData {
  GluingPoint point;
  Globals globals;
  cplx t;
};

/// x+ = (Theta/Xi)(bc/ad) v, x- = (Theta/Xi) v, eta = e^{-i pi/4}(Theta/Xi) c v/(t a d), g = Theta Xi.
inline AdsPoint ads_from_ff(const GluingPoint& p, const Globals& gl, cplx t) {
  require_glued(p, gl, "ads_from_ff");
  require_symmetric(p.A, "ads_from_ff");
  const Sl2cPoint& A = p.A;
  const cplx r = gl.theta / gl.xi;
  return {r * A.b * A.c / (A.a * A.d) * p.v, r * p.v, std::exp(-I_unit * pi / 4.0) * r * A.c * p.v / (t * A.a * A.d),
          gl.theta * gl.xi};
}

/// e^{ip/2} = c/a of the free-fermion point.
inline cplx exp_half_p(const Sl2cPoint& A) { return A.c / A.a; }

/// Inverse map with Theta = Xi = sqrt(g), t = sqrt(x+/eta). sqrt(i eta x) is taken
/// as e^{i pi/4} sqrt(eta) sqrt(x).
inline FfData ff_from_ads(const AdsPoint& q) {
  require_mass_shell(q, "ff_from_ads");
  const cplx se = std::exp(I_unit * pi / 4.0) * std::sqrt(q.eta);
  const cplx sp = std::sqrt(q.x_plus), sm = std::sqrt(q.x_minus);
  const cplx den = q.x_minus - q.x_plus;
  const Sl2cPoint A{se * sm / den, sp / se, se * sp / den, sm / se};
  const cplx sg = std::sqrt(q.g);
  return {{A, q.x_minus}, {sg, sg}, sp / std::sqrt(q.eta)};
}

/// Odd-generator matrices in string variables; the second point enters through e^{ip_2/2}.
inline std::pair<OddParams, OddParams> d_matrices_ads(const AdsPoint& q1, const AdsPoint& q2) {
  require_mass_shell(q1, "d_matrices_ads");
  require_mass_shell(q2, "d_matrices_ads");
  const cplx sg = std::sqrt(q1.g);
  auto block = [&](const AdsPoint& q, cplx e) {
    return OddParams{sg * e * q.eta, sg * e * I_unit / q.eta * (q.x_plus / q.x_minus - 1.0), -sg * q.eta / (e * q.x_plus),
                     sg * q.x_plus / (I_unit * q.eta * e) * (1.0 - q.x_minus / q.x_plus)};
  };
  return {block(q1, std::sqrt(q2.x_plus) / std::sqrt(q2.x_minus)), block(q2, 1.0)};
}

namespace detail {
inline CMatrix r_pm_ads(const FockSpace& S, const AdsPoint& q1, const AdsPoint& q2, int layer, int sign) {
  const CMatrix n0 = S.n(0, layer), m0 = S.m(0, layer), n1 = S.n(1, layer), m1 = S.m(1, layer);
  const CMatrix c0 = S.c(0, layer), c1 = S.c(1, layer);
  const cplx s1p = std::sqrt(q1.x_plus), s1m = std::sqrt(q1.x_minus), s2p = std::sqrt(q2.x_plus),
             s2m = std::sqrt(q2.x_minus);
  const cplx e1 = std::sqrt(q1.eta), e2 = std::sqrt(q2.eta);
  if (sign > 0)
    return -e2 / e1 / (q2.x_minus - q2.x_plus) * (s2m * n0 + I_unit * s2p * m0) * (s1m * n1 - I_unit * s1p * m1) +
           c0.adjoint() * c1;
  return e1 / e2 / (q1.x_minus - q1.x_plus) * (s2p * n0 + I_unit * s2m * m0) * (s1p * n1 - I_unit * s1m * m1) +
         c1.adjoint() * c0;
}

/// U in string variables; the doubly occupied entry is i eta/(x- - x+).
inline CMatrix u_ads(const FockSpace& S, int site, const AdsPoint& q) {
  const CMatrix mu = S.m(site, 0), md = S.m(site, 1), nu = S.n(site, 0), nd = S.n(site, 1);
  return mu * md + std::sqrt(q.x_plus) / std::sqrt(q.eta) * (mu * nd + nu * md) +
         I_unit * q.eta / (q.x_minus - q.x_plus) * nu * nd;
}
}  // namespace detail

/// Light-cone operator of one layer in string variables (sign > 0: R+, sign < 0: R-).
inline CMatrix r_pm_ads(const AdsPoint& q1, const AdsPoint& q2, int layer, int sign) {
  return detail::r_pm_ads(FockSpace(2, 2), q1, q2, layer, sign);
}

/// Two-layer Rcheck written in string variables, rescaled by
/// (x1- - x1+)(x2- - x2+)/(x1+ x2+ - x1- x2-).
inline CMatrix rcheck_ads(const AdsPoint& q1, const AdsPoint& q2) {
  require_mass_shell(q1, "rcheck_ads");
  require_mass_shell(q2, "rcheck_ads");
  const cplx den = q1.x_minus - q2.x_plus, den2 = q1.x_plus * q2.x_plus - q1.x_minus * q2.x_minus;
  if (std::abs(den) < 1e-12 || std::abs(den2) < 1e-12) throw domain_error("rcheck_ads: kinematic pole");
  const FockSpace S(2, 2);
  const cplx ep1 = std::sqrt(q1.x_plus) / std::sqrt(q1.x_minus), ep2 = std::sqrt(q2.x_plus) / std::sqrt(q2.x_minus);
  const cplx s1 = ep1 - 1.0 / ep1, s2 = ep2 - 1.0 / ep2;
  auto Rp = [&](int l) { return detail::r_pm_ads(S, q1, q2, l, 1); };
  auto Rm = [&](int l) { return detail::r_pm_ads(S, q1, q2, l, -1); };
  const CMatrix inner =
      (q2.x_minus + q1.x_plus) / den *
          (q2.x_plus * q1.eta / (q1.x_plus * q2.eta) * s2 / s1 * Rp(0) * Rp(1) +
           q1.x_minus * q2.eta / (q2.x_minus * q1.eta) * s1 / s2 * Rm(0) * Rm(1)) +
      (q2.x_plus + q1.x_minus) / den * (Rp(0) * Rm(1) + Rm(0) * Rp(1));
  const CMatrix U = detail::u_ads(S, 0, q1) * detail::u_ads(S, 1, q2);
  const CMatrix V = gauge_v(S, 1);
  const cplx scale = (q1.x_minus - q1.x_plus) * (q2.x_minus - q2.x_plus) / den2;
  return scale * diagonal_inverse(V) * graded_permutation_all_layers(S, 0, 1) * diagonal_inverse(U) * inner * U * V;
}

/// Scalar relating the string-variable form to r_check on the mapped free-fermion data:
/// rcheck_ads = s * r_check with s = (x1- - x1+)(x2- - x2+)(x1- + x2+) / ((x1+ x2+ - x1- x2-)(x1- - x2+)).
inline cplx rcheck_ads_scalar(const AdsPoint& q1, const AdsPoint& q2) {
  return (q1.x_minus - q1.x_plus) * (q2.x_minus - q2.x_plus) * (q1.x_minus + q2.x_plus) /
         ((q1.x_plus * q2.x_plus - q1.x_minus * q2.x_minus) * (q1.x_minus - q2.x_plus));
}

struct AdsEquality {
  double up_to_scalar = 0.0;  ///< residual of rcheck_ads against the best multiple of r_check
  double with_scalar = 0.0;   ///< residual against rcheck_ads_scalar * r_check
};

inline AdsEquality check_ads_equality(const AdsPoint& q1, const AdsPoint& q2) {
  const FfData f1 = ff_from_ads(q1), f2 = ff_from_ads(q2);
  const CMatrix Rc = r_check(f1.point, f2.point, f1.t, f2.t);
  const CMatrix Ra = rcheck_ads(q1, q2);
  return {residual_up_to_scalar(Ra, Rc), frobenius_residual(Ra, rcheck_ads_scalar(q1, q2) * Rc)};
}

/// Worst residual of the dictionary: ad - bc = 1, ab = cd, gluing, the round trip and e^{ip} = x+/x-.
inline double check_ads_dictionary(const AdsPoint& q) {
  const FfData f = ff_from_ads(q);
  const Sl2cPoint& A = f.point.A;
  const AdsPoint back = ads_from_ff(f.point, f.globals, f.t);
  const cplx eh = exp_half_p(A);
  return std::max({std::abs(A.det() - 1.0), symmetry_defect(A), std::abs(gluing_defect(f.point, f.globals)),
                   std::abs(back.x_plus - q.x_plus), std::abs(back.x_minus - q.x_minus), std::abs(back.eta - q.eta),
                   std::abs(back.g - q.g), std::abs(eh * eh - q.exp_ip()), std::abs(back.mass_shell_defect())});
}

/// D-matrices in string variables against C_2 B_1, B_2 (and the primed ones via the index swap).
inline double check_d_matrices_ads(const AdsPoint& q1, const AdsPoint& q2) {
  const FfData f1 = ff_from_ads(q1), f2 = ff_from_ads(q2);
  const OddAssignment d = odd_assignment(f1.point, f2.point, f1.globals, f1.t, f2.t);
  const auto [a1, a2] = d_matrices_ads(q1, q2);
  const auto [b1, b2] = d_matrices_ads(q2, q1);
  auto res = [](const OddParams& x, const OddParams& y) {
    return frobenius_residual(CMatrix(x.matrix()), CMatrix(y.matrix()));
  };
  return std::max({res(a1, d.d1), res(a2, d.d2), res(b1, d.d2p), res(b2, d.d1p), std::abs(a1.det() - 1.0),
                   std::abs(a2.det() - 1.0)});
}

/// One site of the bridge between the quantum-affine and su(2|2) generators: x = y, z = i,
/// with the diagonal operators T = G_up G_down U, X, Y.
struct BridgeSite {
  QgParams params;
  GluingPoint point;
  cplx t;
  QgGenerators up, down;
  CMatrix T, X, Y;
};

inline BridgeSite bridge_site(const FockSpace& S, int site, const QgParams& p, const Globals& g, cplx t) {
  if (std::abs(p.z - I_unit) > 1e-12) throw domain_error("bridge: z must be i");
  if (p.x != p.y) throw domain_error("bridge: needs x = y");
  BridgeSite b;
  b.params = p;
  b.point = glue(sl2c_from_params(p), g);
  b.t = t;
  b.up = rep_generators(S, site, p, 0);
  b.down = rep_generators(S, site, p, 1);
  const cplx lam = p.lambda(), x = p.x, sl = std::sqrt(lam);
  const CMatrix mu = S.m(site, 0), md = S.m(site, 1), nu = S.n(site, 0), nd = S.n(site, 1);
  const CMatrix G = (mu + sl * nu) * (md + sl * nd);
  b.T = G * gauge_uv(S, site, b.point.A, t).U;
  const cplx th2xi2 = g.theta * g.theta * g.xi * g.xi, mid = g.xi * g.xi * lam / b.point.v;
  b.X = th2xi2 / (x * x) * mu * md + mid * (mu * nd + nu * md) + x * x * nu * nd;
  b.Y = 1.0 / (x * x) * mu * md + mid * (mu * nd + nu * md) + th2xi2 * x * x * nu * nd;
  return b;
}

namespace detail {
inline std::array<std::pair<std::string_view, CMatrix>, 8> bridge_single_rhs(const BridgeSite& b, const Globals& g) {
  const cplx s = std::sqrt(2.0 * g.theta * g.xi), q = std::sqrt(2.0 / (g.theta * g.xi));
  const CMatrix Ti = diagonal_inverse(b.T), Xi = diagonal_inverse(b.X), Yi = diagonal_inverse(b.Y);
  const QgGenerators &u = b.up, &d = b.down;
  return {{{"S11", s * Ti * u.f0 * b.T},
           {"S21", -s * Ti * d.e0 * diagonal_inverse(d.k0) * b.T},
           {"S12", s * Ti * d.f0 * b.T},
           {"S22", s * Ti * u.e0 * diagonal_inverse(u.k0) * b.T},
           {"Q11", q * Ti * Xi * u.f1 * b.X * b.T},
           {"Q12", q * Ti * Yi * d.e1 * diagonal_inverse(d.k1) * b.Y * b.T},
           {"Q21", q * Ti * Xi * d.f1 * b.X * b.T},
           {"Q22", -q * Ti * Yi * u.e1 * diagonal_inverse(u.k1) * b.Y * b.T}}};
}
}  // namespace detail

/// The phi sign for which the single-site S11 identity holds with a + sign.
inline int bridge_phi_sign(QgParams p, const Globals& g, cplx t) {
  const FockSpace S(1, 2);
  double res[2];
  for (int i = 0; i < 2; ++i) {
    p.phi_sign = i == 0 ? 1 : -1;
    const BridgeSite b = bridge_site(S, 0, p, g, t);
    const auto [B, C] = bc_matrices(b.point, g, t);
    res[i] = frobenius_residual(super_generators(B, S, 0).S[0][0], detail::bridge_single_rhs(b, g)[0].second);
  }
  return res[0] <= res[1] ? 1 : -1;
}

/// Max residual of the 8 single-site identities with the phi sign fixed by S11.
inline double bridge_single_site(QgParams p, const Globals& g, cplx t) {
  p.phi_sign = bridge_phi_sign(p, g, t);
  const FockSpace S(1, 2);
  const BridgeSite b = bridge_site(S, 0, p, g, t);
  const auto [B, C] = bc_matrices(b.point, g, t);
  const SuperGenerators J = super_generators(B, S, 0);
  double worst = 0.0;
  for (const auto& [name, rhs] : detail::bridge_single_rhs(b, g)) worst = std::max(worst, frobenius_residual(J.get(name), rhs));
  return worst;
}

/// Max residual of the 8 two-site identities J_1(D_1) + J_2(D_2) = coproduct expressions
/// conjugated by T = t_1 t_2 V_2, X = x_1 x_2, Y = y_1 y_2.
inline double bridge_coproduct(QgParams p1, QgParams p2, const Globals& g, cplx t1, cplx t2) {
  p1.phi_sign = bridge_phi_sign(p1, g, t1);
  p2.phi_sign = bridge_phi_sign(p2, g, t2);
  const FockSpace S(2, 2);
  const BridgeSite b1 = bridge_site(S, 0, p1, g, t1), b2 = bridge_site(S, 1, p2, g, t2);
  const OddAssignment d = odd_assignment(b1.point, b2.point, g, t1, t2);
  const SuperGenerators G1 = super_generators(d.d1, S, 0), G2 = super_generators(d.d2, S, 1);
  const CMatrix T = b1.T * b2.T * gauge_v(S, 1);
  const CMatrix X = b1.X * b2.X, Y = b1.Y * b2.Y;
  const CMatrix Ti = diagonal_inverse(T), Xi = diagonal_inverse(X), Yi = diagonal_inverse(Y);
  const cplx s = std::sqrt(2.0 * g.theta * g.xi), q = std::sqrt(2.0 / (g.theta * g.xi));
  auto D = [&](int l, std::string_view name) {
    return l == 0 ? coproduct(name, b1.up, b2.up) : coproduct(name, b1.down, b2.down);
  };
  auto F = [&](int l) { return D(l, "F"); };
  const std::array<std::pair<std::string_view, CMatrix>, 8> rhs{{
      {"S11", -I_unit * s * Ti * D(0, "f0") * F(0) * T},
      {"S12", -I_unit * s * Ti * D(1, "f0") * F(1) * T},
      {"S21", I_unit * s * Ti * D(1, "e0") * D(1, "k0").inverse() * F(1) * T},
      {"S22", -I_unit * s * Ti * D(0, "e0") * D(0, "k0").inverse() * F(0) * T},
      {"Q11", q * Ti * Xi * D(0, "f1") * F(0) * X * T},
      {"Q21", q * Ti * Xi * D(1, "f1") * F(1) * X * T},
      {"Q12", -q * Ti * Yi * D(1, "e1") * D(1, "k1").inverse() * F(1) * Y * T},
      {"Q22", q * Ti * Yi * D(0, "e1") * D(0, "k1").inverse() * F(0) * Y * T},
  }};
  double worst = 0.0;
  for (const auto& [name, r] : rhs) worst = std::max(worst, frobenius_residual(two_site_generator(G1, G2, name), r));
  return worst;
}

/// Representation data for the bridge: x = y polar, mu generic, z = i.
inline QgParams random_bridge_params(Rng& rng) {
  QgParams p = random_qg_params(rng, I_unit);
  p.y = p.x;
  return p;
}

}  // namespace ffsm

#endif  // FFSM_CORRESPONDENCE_HPP
