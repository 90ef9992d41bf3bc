#ifndef FFSM_DOUBLE_FF_HPP
#define FFSM_DOUBLE_FF_HPP

#include "ffsm/correspondence.hpp"

#include <map>

namespace ffsm {

using SixVertexR = Eigen::Matrix4cd;

/// [[-a, 0, 0, 0], [0, -ib, 1, 0], [0, 1, -ic, 0], [0, 0, 0, -d]].
inline SixVertexR six_vertex(const Sl2cPoint& A) {
  SixVertexR R = SixVertexR::Zero();
  R(0, 0) = -A.a;
  R(1, 1) = -I_unit * A.b;
  R(1, 2) = 1.0;
  R(2, 1) = 1.0;
  R(2, 2) = -I_unit * A.c;
  R(3, 3) = -A.d;
  return R;
}

/// R^0(A1, A2) = R(A2 A1^-1), R^1(A1, A2) = R(A2 sigma3 A1^-1 sigma3)(1 (x) sigma3).
inline SixVertexR matrix_r01(const Sl2cPoint& A1, const Sl2cPoint& A2, int which) {
  require_unimodular(A1, "matrix_r01");
  require_unimodular(A2, "matrix_r01");
  if (which == 0) return six_vertex(A2 * A1.inverse());
  if (which != 1) throw domain_error("matrix_r01: which must be 0 or 1");
  const Eigen::Vector4cd s(1.0, -1.0, 1.0, -1.0);
  return six_vertex(A2 * A1.inverse().sigma3_conjugate()) * s.asDiagonal();
}

/// R11 R'44 + R44 R'11 + R22 R'33 + R33 R'22 - R23 R'32 - R32 R'23.
template <typename DA, typename DB>
cplx bilinear(const Eigen::MatrixBase<DA>& X, const Eigen::MatrixBase<DB>& Y) {
  if (X.rows() != 4 || X.cols() != 4 || Y.rows() != 4 || Y.cols() != 4) throw domain_error("bilinear: needs 4x4");
  return X(0, 0) * Y(3, 3) + X(3, 3) * Y(0, 0) + X(1, 1) * Y(2, 2) + X(2, 2) * Y(1, 1) - X(1, 2) * Y(2, 1) -
         X(2, 1) * Y(1, 2);
}

/// max |(R^r, R^s)| over r, s.
inline double check_bilinear_identities(const Sl2cPoint& A1, const Sl2cPoint& A2) {
  double worst = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) worst = std::max(worst, std::abs(bilinear(matrix_r01(A1, A2, r), matrix_r01(A1, A2, s))));
  return worst;
}

/// The oscillator r0/r1 against the matrix form: K J R J = R^r with J the reversal
/// (occupied <-> empty) and K = diag(1, 1, 1, -1).
inline double check_jordan_wigner(const Sl2cPoint& A1, const Sl2cPoint& A2) {
  const FockSpace S(2);
  const CMatrix J = CMatrix::Identity(4, 4).colwise().reverse();
  CMatrix K = CMatrix::Identity(4, 4);
  K(3, 3) = -1.0;
  const CMatrix m0 = K * J * r0(S, 0, 1, A1, A2) * J, m1 = K * J * r1(S, 0, 1, A1, A2) * J;
  return std::max(frobenius_residual(m0, CMatrix(matrix_r01(A1, A2, 0))),
                  frobenius_residual(m1, CMatrix(matrix_r01(A1, A2, 1))));
}

using DoubleFfCoefficients = std::array<std::array<cplx, 2>, 2>;

/// sum c_rs R^r(A1, A2) (x) R^s(A3, A4).
inline CMatrix build_general(const DoubleFfCoefficients& c, const Sl2cPoint& A1, const Sl2cPoint& A2,
                             const Sl2cPoint& A3, const Sl2cPoint& A4) {
  CMatrix M = CMatrix::Zero(16, 16);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      M += c[std::size_t(r)][std::size_t(s)] * kron(matrix_r01(A1, A2, r), matrix_r01(A3, A4, s));
  return M;
}

/// Positions (row, col) of the 6-vertex support.
inline constexpr std::array<std::pair<int, int>, 6> six_vertex_support{{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}}};

/// Offending entry outside the 36-entry support, if any.
inline std::optional<std::pair<int, int>> support_violation(const CMatrix& M, double tol = 1e-12) {
  if (M.rows() != 16 || M.cols() != 16) throw domain_error("support_violation: needs 16x16");
  auto allowed = [](int r, int c) {
    for (auto [a, b] : six_vertex_support)
      if (a == r && b == c) return true;
    return false;
  };
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!(allowed(i / 4, j / 4) && allowed(i % 4, j % 4)) && std::abs(M(i, j)) > tol * scale)
        return std::pair<int, int>{i, j};
  return std::nullopt;
}

/// Max over blocks of |(B, B)|/2 relative to max(1, max|M|^2), where B fixes the indices of one tensor factor:
/// R^{i1}_{j1} R^{i4}_{j4} + R^{i2}_{j2} R^{i3}_{j3} - R^{i2}_{j3} R^{i3}_{j2} and the mirrored family.
inline double check_double_ff(const CMatrix& M) {
  if (const auto bad = support_violation(M))
    throw domain_error("check_double_ff: entry (" + std::to_string(bad->first) + "," + std::to_string(bad->second) +
                       ") outside the support");
  double worst = 0.0;
  Eigen::Matrix4cd B1, B2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          B1(k, l) = M(4 * i + k, 4 * j + l);
          B2(k, l) = M(4 * k + i, 4 * l + j);
        }
      worst = std::max({worst, std::abs(bilinear(B1, B1)) / 2.0, std::abs(bilinear(B2, B2)) / 2.0});
    }
  const double scale = std::max(1.0, M.cwiseAbs2().maxCoeff());
  return worst / scale;
}

/// Coefficients c_rs placing the two-layer R-matrix in the R^r (x) R^s basis:
/// with gamma++ = p, gamma-- = q: c00 = (p+q+2)/4, c01 = c10 = (p-q)/4, c11 = (p+q-2)/4.
inline DoubleFfCoefficients double_ff_coefficients(const GluingPoint& p1, const GluingPoint& p2) {
  const SswCoefficients g = ssw_coefficients(p1, p2);
  const cplx p = g.pp, q = g.mm;
  return {{{(p + q + 2.0) / 4.0, (p - q) / 4.0}, {(p - q) / 4.0, (p + q - 2.0) / 4.0}}};
}

inline CMatrix ssw_matrix_form(const GluingPoint& p1, const GluingPoint& p2) {
  return build_general(double_ff_coefficients(p1, p2), p1.A, p2.A, p1.A, p2.A);
}

namespace detail {
/// Occupation of qubit q (0 = first factor) in a 16-dim matrix-form index; matrix index 0 is occupied.
inline int matrix_occupation(int i, int q) { return 1 - ((i >> (3 - q)) & 1); }

inline CMatrix reversal16() { return CMatrix::Identity(16, 16).colwise().reverse(); }

/// Exchange of the two 4-dim factors.
inline CMatrix factor_swap() {
  CMatrix P = CMatrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) P(4 * j + i, 4 * i + j) = 1.0;
  return P;
}

/// Reorders (1 up, 2 up, 1 down, 2 down) into (1 up, 1 down, 2 up, 2 down).
inline CMatrix pbar() {
  CMatrix SW = CMatrix::Zero(4, 4);
  SW(0, 0) = SW(1, 2) = SW(2, 1) = SW(3, 3) = 1.0;
  return kron(kron(CMatrix::Identity(2, 2), SW), CMatrix::Identity(2, 2));
}
}  // namespace detail

/// Graded S-matrix from the matrix form: S = W V^-1 P U^-1 Pbar M Pbar U V W^-1,
/// with U, V the site gauges carried to the matrix basis and W = (-1)^{n_1up n_2down}.
inline CMatrix conjugate_to_graded(const CMatrix& M, const AdsPoint& q1, const AdsPoint& q2) {
  if (M.rows() != 16 || M.cols() != 16) throw domain_error("conjugate_to_graded: needs 16x16");
  const FfData f1 = ff_from_ads(q1), f2 = ff_from_ads(q2);
  const FockSpace S(2, 2);
  const CMatrix J = detail::reversal16();
  const CMatrix U = J * gauge_uv(S, 0, f1.point.A, f1.t).U * gauge_uv(S, 1, f2.point.A, f2.t).U * J;
  const CMatrix V = J * gauge_v(S, 1) * J;
  CMatrix W = CMatrix::Zero(16, 16);
  for (int i = 0; i < 16; ++i)
    W(i, i) = (detail::matrix_occupation(i, 0) * detail::matrix_occupation(i, 3)) ? -1.0 : 1.0;
  const CMatrix Pb = detail::pbar();
  return W * diagonal_inverse(V) * detail::factor_swap() * diagonal_inverse(U) * Pb * M * Pb * U * V * W;
}

/// The full matrix-form route at two mass-shell points.
inline CMatrix graded_smatrix(const AdsPoint& q1, const AdsPoint& q2) {
  const FfData f1 = ff_from_ads(q1), f2 = ff_from_ads(q2);
  return conjugate_to_graded(ssw_matrix_form(f1.point, f2.point), q1, q2);
}

/// Named coefficients of a graded S-matrix in the basis phi1 = 0, psi1 = 1, psi2 = 2, phi2 = 3.
struct StringCoefficients {
  cplx A, B, C, D, E, F, G, H, K, L;
  std::map<char, cplx> as_map() const {
    return {{'A', A}, {'B', B}, {'C', C}, {'D', D}, {'E', E}, {'F', F}, {'G', G}, {'H', H}, {'K', K}, {'L', L}};
  }
};

struct Extraction {
  StringCoefficients coef;
  double consistency = 0.0;  ///< spread between redundant entries carrying the same coefficient
};

/// Entry map (out pair, in pair) -> coefficient, with S[4X+Y, 4X'+Y']:
/// A = (ph1 ph1|ph1 ph1), A+B = 2(ph1 ph2|ph1 ph2), A-B = 2(ph2 ph1|ph1 ph2), C = 2(ps1 ps2|ph1 ph2),
/// D = (ps1 ps1|ps1 ps1), D+E = 2(ps1 ps2|ps1 ps2), F = 2(ph1 ph2|ps1 ps2), G = (ps1 ph1|ph1 ps1),
/// H = (ph1 ps1|ph1 ps1), K = (ps1 ph1|ps1 ph1), L = (ph1 ps1|ps1 ph1). Redundant checks:
/// (ph2 ph2|ph2 ph2) = A, (ps2 ps1|ph1 ph2) = -C/2, (ps2 ps1|ps1 ps2) = (D-E)/2.
inline Extraction extract_coefficients(const CMatrix& S) {
  if (S.rows() != 16 || S.cols() != 16) throw domain_error("extract_coefficients: needs 16x16");
  constexpr int ph1 = 0, ps1 = 1, ps2 = 2, ph2 = 3;
  auto g = [&](int o1, int o2, int i1, int i2) { return S(4 * o1 + o2, 4 * i1 + i2); };
  Extraction e;
  StringCoefficients& c = e.coef;
  c.A = g(ph1, ph1, ph1, ph1);
  const cplx ApB = 2.0 * g(ph1, ph2, ph1, ph2), AmB = 2.0 * g(ph2, ph1, ph1, ph2);
  c.B = (ApB - AmB) / 2.0;
  c.C = 2.0 * g(ps1, ps2, ph1, ph2);
  c.D = g(ps1, ps1, ps1, ps1);
  c.E = 2.0 * g(ps1, ps2, ps1, ps2) - c.D;
  c.F = 2.0 * g(ph1, ph2, ps1, ps2);
  c.G = g(ps1, ph1, ph1, ps1);
  c.H = g(ph1, ps1, ph1, ps1);
  c.K = g(ps1, ph1, ps1, ph1);
  c.L = g(ph1, ps1, ps1, ph1);
  e.consistency = std::max({std::abs(ApB + AmB - 2.0 * c.A), std::abs(g(ph2, ph2, ph2, ph2) - c.A),
                            std::abs(g(ps2, ps1, ph1, ph2) + c.C / 2.0),
                            std::abs(g(ps2, ps1, ps1, ps2) - (c.D - c.E) / 2.0)});
  return e;
}

/// Residuals of AD = HK - GL, BE - CF = HK - GL, AE + BD = 2(HK + GL), each divided by max|coef|^2.
inline std::array<double, 3> quadratic_relations(const StringCoefficients& c) {
  double sc = 0.0;
  for (const auto& [k, v] : c.as_map()) sc = std::max(sc, std::abs(v));
  sc *= sc;
  if (sc == 0.0) throw domain_error("quadratic_relations: all coefficients vanish");
  const cplx hk = c.H * c.K, gl = c.G * c.L;
  return {std::abs(c.A * c.D - (hk - gl)) / sc, std::abs(c.B * c.E - c.C * c.F - (hk - gl)) / sc,
          std::abs(c.A * c.E + c.B * c.D - 2.0 * (hk + gl)) / sc};
}

/// Quadratics of a graded S-matrix; throws when the redundant entries disagree.
inline std::array<double, 3> check_quadratic_relations(const CMatrix& S, double consistency_tol = 1e-9) {
  const Extraction e = extract_coefficients(S);
  double scale = 0.0;
  for (const auto& [k, v] : e.coef.as_map()) scale = std::max(scale, std::abs(v));
  if (e.consistency > consistency_tol * std::max(1.0, scale))
    throw domain_error("check_quadratic_relations: extraction ambiguity (basis mismatch)");
  return quadratic_relations(e.coef);
}

/// Closed-form coefficients in x-variables, normalized to D = -1; valid on the mass shell.
inline StringCoefficients string_coefficients(const AdsPoint& q1, const AdsPoint& q2) {
  const cplx a1 = q1.x_plus, b1 = q1.x_minus, a2 = q2.x_plus, b2 = q2.x_minus;
  StringCoefficients c;
  const cplx den = b2 - a1;
  c.A = (a2 - b1) / den;
  c.B = c.A * (1.0 - 2.0 * (1.0 - 1.0 / (b2 * a1)) / (1.0 - 1.0 / (a2 * a1)) * (b2 - b1) / (a2 - b1));
  c.C = 2.0 / (a1 * a2) / (1.0 - 1.0 / (a1 * a2)) * (b2 - b1) / den;
  c.D = -1.0;
  c.E = -(1.0 - 2.0 * (1.0 - 1.0 / (a2 * b1)) / (1.0 - 1.0 / (b2 * b1)) * (a2 - a1) / den);
  c.F = -2.0 / (b1 * b2) / (1.0 - 1.0 / (b1 * b2)) * (a1 - b1) * (a2 - b2) * (a2 - a1) / den;
  c.G = (a2 - a1) / den;
  c.H = (a2 - b2) / den;
  c.K = (a1 - b1) / den;
  c.L = (b2 - b1) / den;
  return c;
}

/// Scale-free ratios (GL, CF, HK, BE)/(AD).
inline std::array<cplx, 4> invariant_ratios(const StringCoefficients& c) {
  const cplx ad = c.A * c.D;
  return {c.G * c.L / ad, c.C * c.F / ad, c.H * c.K / ad, c.B * c.E / ad};
}

/// Ratios of the string-variable Rcheck (in the basis 00, up, down, updown per site) against the closed form.
inline double check_invariant_ratios(const AdsPoint& q1, const AdsPoint& q2) {
  const CMatrix Rc = rcheck_ads(q1, q2);
  CMatrix Q = CMatrix::Zero(4, 4);
  const int order[4] = {0, 2, 1, 3};
  for (int i = 0; i < 4; ++i) Q(i, order[i]) = 1.0;
  const CMatrix QQ = kron(Q, Q);
  const auto lhs = invariant_ratios(extract_coefficients(QQ * Rc * QQ.transpose()).coef);
  const auto rhs = invariant_ratios(string_coefficients(q1, q2));
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(rhs[i])));
  return worst;
}

}  // namespace ffsm

#endif  // FFSM_DOUBLE_FF_HPP
