#ifndef FFSM_TZA_HPP
#define FFSM_TZA_HPP

#include "ffsm/free_fermion.hpp"

#include <array>

namespace ffsm {

/// Labels: + -> 0, - -> 1.
inline constexpr int tza_label(int alpha, int beta, int gamma) { return 4 * alpha + 2 * beta + gamma; }

/// Structure tensor S^{alpha beta gamma}_{alpha' beta' gamma'} of the relation
///   R^a_23 R^b_13 R^c_12 = sum S^{abc}_{a'b'c'} R^c'_12 R^b'_13 R^a'_23,
/// stored as coef[8 * upper + lower].
struct TzaTensor {
  std::array<cplx, 64> coef{};
  std::array<Sl2cPoint, 3> points{};

  cplx& at(int upper, int lower) { return coef[std::size_t(8 * upper + lower)]; }
  cplx at(int upper, int lower) const { return coef[std::size_t(8 * upper + lower)]; }

  CMatrix table() const {
    CMatrix T(8, 8);
    for (int u = 0; u < 8; ++u)
      for (int l = 0; l < 8; ++l) T(u, l) = at(u, l);
    return T;
  }
};

/// Coefficients T^{(i)}_{alpha beta gamma} of sum T R^a_12 R^b_13 R^c_23 = 0.
struct DependenceTensor {
  std::array<std::array<cplx, 8>, 2> coef{};
  cplx at(int i, int label) const { return coef[std::size_t(i)][std::size_t(label)]; }
};

inline void require_tza_admissible(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3,
                                   double margin = 1e-3) {
  const std::array<cplx, 3> ad{A1.a * A1.d, A2.a * A2.d, A3.a * A3.d};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(ad[std::size_t(i)] - ad[std::size_t(j)]) <= margin)
        throw domain_error("tza: pole condition violated for pair (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
}

/// F^{jk}_i = (a_i d_i - a_j d_j) / (a_i d_i - a_k d_k).
inline cplx tza_F(const Sl2cPoint& Ai, const Sl2cPoint& Aj, const Sl2cPoint& Ak) {
  return (Ai.a * Ai.d - Aj.a * Aj.d) / (Ai.a * Ai.d - Ak.a * Ak.d);
}

inline TzaTensor s_coeffs(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  require_tza_admissible(A1, A2, A3);
  TzaTensor T;
  T.points = {A1, A2, A3};
  const int pmp = tza_label(0, 1, 0), mpm = tza_label(1, 0, 1);
  for (int u = 0; u < 8; ++u)
    if (u != pmp && u != mpm) T.at(u, u) = 1.0;
  const cplx f1 = tza_F(A1, A2, A3), f3 = tza_F(A3, A2, A1);
  const cplx w_ppm = f1 * A3.b * A3.d / (A2.b * A2.d);
  const cplx w_mmp = -f1 * A3.a * A3.c / (A2.a * A2.c);
  const cplx w_pmm = -f3 * A1.b * A1.d / (A2.b * A2.d);
  const cplx w_mpp = f3 * A1.a * A1.c / (A2.a * A2.c);
  for (int sg : {1, -1}) {
    const int u = sg > 0 ? pmp : mpm;
    T.at(u, sg > 0 ? mpm : pmp) = 1.0;
    T.at(u, tza_label(0, 0, 1)) = double(sg) * w_ppm;
    T.at(u, tza_label(1, 1, 0)) = double(sg) * w_mmp;
    T.at(u, tza_label(0, 1, 1)) = double(sg) * w_pmm;
    T.at(u, tza_label(1, 0, 0)) = double(sg) * w_mpp;
  }
  return T;
}

/// R^{sign}_{jk} with sign label 0 -> +, 1 -> -.
inline CMatrix tza_factor(const FockSpace& S, int j, int k, const std::array<Sl2cPoint, 4>& A, int label) {
  return r_pm(S, j, k, A[std::size_t(j)], A[std::size_t(k)], label == 0 ? 1 : -1);
}

/// Worst residual over the 8 upper labels, each normalized by the left-hand side.
inline double check_tza(const TzaTensor& T) {
  const FockSpace S(3);
  const std::array<Sl2cPoint, 4> A{T.points[0], T.points[1], T.points[2], Sl2cPoint{}};
  std::array<std::array<CMatrix, 2>, 3> R;  // pairs 12, 13, 23
  const int pj[3] = {0, 0, 1}, pk[3] = {1, 2, 2};
  for (int p = 0; p < 3; ++p)
    for (int s = 0; s < 2; ++s) R[std::size_t(p)][std::size_t(s)] = tza_factor(S, pj[p], pk[p], A, s);
  std::array<CMatrix, 8> reversed;
  for (int l = 0; l < 8; ++l) {
    const int a = (l >> 2) & 1, b = (l >> 1) & 1, c = l & 1;
    reversed[std::size_t(l)] = R[0][std::size_t(c)] * R[1][std::size_t(b)] * R[2][std::size_t(a)];
  }
  double worst = 0.0;
  for (int u = 0; u < 8; ++u) {
    const int a = (u >> 2) & 1, b = (u >> 1) & 1, c = u & 1;
    const CMatrix lhs = R[2][std::size_t(a)] * R[1][std::size_t(b)] * R[0][std::size_t(c)];
    CMatrix rhs = CMatrix::Zero(S.dim(), S.dim());
    for (int l = 0; l < 8; ++l)
      if (T.at(u, l) != 0.0) rhs += T.at(u, l) * reversed[std::size_t(l)];
    worst = std::max(worst, frobenius_residual(lhs, rhs));
  }
  return worst;
}

inline double check_tza(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  return check_tza(s_coeffs(A1, A2, A3));
}

/// T^{(1)}: +++ = a1 b3/(b1 a3), --+ = b1 c2/(a1 d2), +-- = d2 a3/(c2 b3), +-+ = 1,
/// negated labels inverted; T^{(2)} from a <-> c, b <-> d.
inline DependenceTensor t_coeffs(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  DependenceTensor T;
  auto fill = [&](int i, const Sl2cPoint& P1, const Sl2cPoint& P2, const Sl2cPoint& P3) {
    auto& t = T.coef[std::size_t(i)];
    const cplx ppp = P1.a * P3.b / (P1.b * P3.a);
    const cplx mmp = P1.b * P2.c / (P1.a * P2.d);
    const cplx pmm = P2.d * P3.a / (P2.c * P3.b);
    const cplx pmp = 1.0;
    for (auto [label, value] : {std::pair{tza_label(0, 0, 0), ppp}, std::pair{tza_label(1, 1, 0), mmp},
                                std::pair{tza_label(0, 1, 1), pmm}, std::pair{tza_label(0, 1, 0), pmp}}) {
      if (value == 0.0 || !std::isfinite(std::abs(value))) throw domain_error("t_coeffs: vanishing denominator");
      t[std::size_t(label)] = value;
      t[std::size_t(7 - label)] = 1.0 / value;
    }
  };
  auto swap_ac_bd = [](const Sl2cPoint& P) { return Sl2cPoint{P.c, P.d, P.a, P.b}; };
  fill(0, A1, A2, A3);
  fill(1, swap_ac_bd(A1), swap_ac_bd(A2), swap_ac_bd(A3));
  return T;
}

/// Products R^a_12 R^b_13 R^c_23 for the 8 labels (a, b, c).
inline std::array<CMatrix, 8> forward_products(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  const FockSpace S(3);
  const std::array<Sl2cPoint, 4> A{A1, A2, A3, Sl2cPoint{}};
  std::array<CMatrix, 8> out;
  for (int l = 0; l < 8; ++l) {
    const int a = (l >> 2) & 1, b = (l >> 1) & 1, c = l & 1;
    out[std::size_t(l)] = tza_factor(S, 0, 1, A, a) * tza_factor(S, 0, 2, A, b) * tza_factor(S, 1, 2, A, c);
  }
  return out;
}

/// Residuals of the two dependence relations, normalized by the largest product norm.
inline std::array<double, 2> check_dependence(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  const DependenceTensor T = t_coeffs(A1, A2, A3);
  const auto P = forward_products(A1, A2, A3);
  std::array<double, 2> out{};
  for (int i = 0; i < 2; ++i) {
    CMatrix sum = CMatrix::Zero(8, 8);
    double scale = 1.0;
    for (int l = 0; l < 8; ++l) {
      sum += T.at(i, l) * P[std::size_t(l)];
      scale = std::max(scale, std::abs(T.at(i, l)) * P[std::size_t(l)].norm());
    }
    out[std::size_t(i)] = sum.norm() / scale;
  }
  return out;
}

/// Singular values (descending) of the 64 x 8 matrix of column-major flattened products.
inline Eigen::VectorXd product_span_singular_values(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3) {
  const auto P = forward_products(A1, A2, A3);
  CMatrix V(64, 8);
  for (int l = 0; l < 8; ++l) V.col(l) = P[std::size_t(l)].reshaped();
  Eigen::JacobiSVD<CMatrix> svd(V);
  return svd.singularValues();
}

inline int product_span_rank(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3, double rel_tol = 1e-7) {
  const Eigen::VectorXd s = product_span_singular_values(A1, A2, A3);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

/// S' = S + sum_i c^{abc}_{(i)} T^{(i)}_{c'b'a'}; c[i][upper] holds the 16 parameters.
inline TzaTensor gauge_transform_s(const TzaTensor& S, const std::array<std::array<cplx, 8>, 2>& c) {
  const DependenceTensor T = t_coeffs(S.points[0], S.points[1], S.points[2]);
  TzaTensor out = S;
  for (int i = 0; i < 2; ++i)
    for (int u = 0; u < 8; ++u) {
      const cplx ci = c[std::size_t(i)][std::size_t(u)];
      if (ci == 0.0) continue;
      for (int l = 0; l < 8; ++l) {
        const int a = (l >> 2) & 1, b = (l >> 1) & 1, g = l & 1;
        out.at(u, l) += ci * T.at(i, tza_label(g, b, a));
      }
    }
  return out;
}

struct SixProductResult {
  double relation = 0.0;  ///< the coefficient difference contracted with the reversed products
  double first_route = 0.0;  ///< first ordering reproduces the original product
  double second_route = 0.0;  ///< second ordering reproduces the original product
};

/// Both reorderings of R^a_34 R^b_24 R^c_14 R^d_23 R^e_13 R^f_12 into
/// R^f''_12 R^e''_13 R^d''_23 R^c''_14 R^b''_24 R^a''_34, over all 64 labels.
inline SixProductResult check_six_product(const Sl2cPoint& A1, const Sl2cPoint& A2, const Sl2cPoint& A3,
                                          const Sl2cPoint& A4) {
  const TzaTensor S123 = s_coeffs(A1, A2, A3), S124 = s_coeffs(A1, A2, A4), S134 = s_coeffs(A1, A3, A4),
                  S234 = s_coeffs(A2, A3, A4);
  const FockSpace S(4);
  const std::array<Sl2cPoint, 4> A{A1, A2, A3, A4};
  // factor[pair][label] for pairs 12, 13, 23, 14, 24, 34
  const int pj[6] = {0, 0, 1, 0, 1, 2}, pk[6] = {1, 2, 2, 3, 3, 3};
  std::array<std::array<CMatrix, 2>, 6> R;
  for (int p = 0; p < 6; ++p)
    for (int s = 0; s < 2; ++s) R[std::size_t(p)][std::size_t(s)] = tza_factor(S, pj[p], pk[p], A, s);
  auto bit = [](int word, int pos) { return (word >> (5 - pos)) & 1; };  // word = (a,b,c,d,e,f)
  auto word = [](int a, int b, int c, int d, int e, int f) { return (a << 5) | (b << 4) | (c << 3) | (d << 2) | (e << 1) | f; };
  auto L = [](int x, int y, int z) { return tza_label(x, y, z); };
  std::array<CMatrix, 64> reversed, original;
  for (int w = 0; w < 64; ++w) {
    const int a = bit(w, 0), b = bit(w, 1), c = bit(w, 2), d = bit(w, 3), e = bit(w, 4), f = bit(w, 5);
    reversed[std::size_t(w)] = R[0][std::size_t(f)] * R[1][std::size_t(e)] * R[2][std::size_t(d)] *
                               R[3][std::size_t(c)] * R[4][std::size_t(b)] * R[5][std::size_t(a)];
    original[std::size_t(w)] = R[5][std::size_t(a)] * R[4][std::size_t(b)] * R[3][std::size_t(c)] *
                               R[2][std::size_t(d)] * R[1][std::size_t(e)] * R[0][std::size_t(f)];
  }
  SixProductResult res;
  for (int w = 0; w < 64; ++w) {
    const int a = bit(w, 0), b = bit(w, 1), c = bit(w, 2), d = bit(w, 3), e = bit(w, 4), f = bit(w, 5);
    std::array<cplx, 64> c1{}, c2{};
    for (int p1 = 0; p1 < 8; ++p1) {
      const int d1 = (p1 >> 2) & 1, e1 = (p1 >> 1) & 1, f1 = p1 & 1;
      const cplx s1 = S123.at(L(d, e, f), p1);
      if (s1 == 0.0) continue;
      for (int p2 = 0; p2 < 8; ++p2) {
        const int b1 = (p2 >> 2) & 1, c1_ = (p2 >> 1) & 1, f2 = p2 & 1;
        const cplx s2 = S124.at(L(b, c, f1), p2);
        if (s2 == 0.0) continue;
        for (int p3 = 0; p3 < 8; ++p3) {
          const int a1 = (p3 >> 2) & 1, c2_ = (p3 >> 1) & 1, e2 = p3 & 1;
          const cplx s3 = S134.at(L(a, c1_, e1), p3);
          if (s3 == 0.0) continue;
          for (int p4 = 0; p4 < 8; ++p4) {
            const int a2 = (p4 >> 2) & 1, b2 = (p4 >> 1) & 1, d2 = p4 & 1;
            const cplx s4 = S234.at(L(a1, b1, d1), p4);
            if (s4 == 0.0) continue;
            c1[std::size_t(word(a2, b2, c2_, d2, e2, f2))] += s1 * s2 * s3 * s4;
          }
        }
      }
    }
    for (int p1 = 0; p1 < 8; ++p1) {
      const int a1 = (p1 >> 2) & 1, b1 = (p1 >> 1) & 1, d1 = p1 & 1;
      const cplx s1 = S234.at(L(a, b, d), p1);
      if (s1 == 0.0) continue;
      for (int p2 = 0; p2 < 8; ++p2) {
        const int a2 = (p2 >> 2) & 1, c1_ = (p2 >> 1) & 1, e1 = p2 & 1;
        const cplx s2 = S134.at(L(a1, c, e), p2);
        if (s2 == 0.0) continue;
        for (int p3 = 0; p3 < 8; ++p3) {
          const int b2 = (p3 >> 2) & 1, c2_ = (p3 >> 1) & 1, f1 = p3 & 1;
          const cplx s3 = S124.at(L(b1, c1_, f), p3);
          if (s3 == 0.0) continue;
          for (int p4 = 0; p4 < 8; ++p4) {
            const int d2 = (p4 >> 2) & 1, e2 = (p4 >> 1) & 1, f2 = p4 & 1;
            const cplx s4 = S123.at(L(d1, e1, f1), p4);
            if (s4 == 0.0) continue;
            c2[std::size_t(word(a2, b2, c2_, d2, e2, f2))] += s1 * s2 * s3 * s4;
          }
        }
      }
    }
    CMatrix diff = CMatrix::Zero(S.dim(), S.dim()), first = diff, second = diff;
    for (int o = 0; o < 64; ++o) {
      diff += (c1[std::size_t(o)] - c2[std::size_t(o)]) * reversed[std::size_t(o)];
      first += c1[std::size_t(o)] * reversed[std::size_t(o)];
      second += c2[std::size_t(o)] * reversed[std::size_t(o)];
    }
    const double scale = std::max(1.0, original[std::size_t(w)].norm());
    res.relation = std::max(res.relation, diff.norm() / scale);
    res.first_route = std::max(res.first_route, frobenius_residual(first, original[std::size_t(w)]));
    res.second_route = std::max(res.second_route, frobenius_residual(second, original[std::size_t(w)]));
  }
  return res;
}

/// Triple on the XX curve.
inline std::array<Sl2cPoint, 3> xx_triple(cplx u1, cplx u2, cplx u3) { return {xx_point(u1), xx_point(u2), xx_point(u3)}; }

}  // namespace ffsm

#endif  // FFSM_TZA_HPP
