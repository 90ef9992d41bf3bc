#include "ffsm/ssw.hpp"
#include "test_util.hpp"

using namespace ffsm;
using ffsm::testing::max_over_seeds;

namespace {

Globals random_globals(Rng& rng) { return {rng.polar(), rng.polar()}; }

double weak_coupling_residual(double U) {
  const FockSpace S(2, 2);
  const HubbardPoint a{0.3, U}, b{-0.45, U};
  return residual_up_to_scalar(hubbard_r(S, 0, 1, a, b), r0(S, 0, 1, a.A(), b.A(), 0) * r0(S, 0, 1, a.A(), b.A(), 1));
}

}  // namespace

TEST(Gluing, BothRootsSolveTheCondition) {
  const double r = max_over_seeds(1, 50, [](Rng& rng) {
    const Globals g = random_globals(rng);
    const Sl2cPoint A = random_sl2c(rng);
    const auto v = solve_gluing(A, g);
    EXPECT_GE(std::abs(v[0]), std::abs(v[1]));
    return std::max(std::abs(gluing_defect({A, v[0]}, g)), std::abs(gluing_defect({A, v[1]}, g)));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Gluing, DegenerateInputsRejected) {
  EXPECT_THROW(solve_gluing(Sl2cPoint::identity(), Globals{}), domain_error);
  EXPECT_THROW(solve_gluing(xx_point(0.3), Globals{0.0, 1.0}), domain_error);
}

TEST(Ssw, YangBaxterAtGluedTriples) {
  const double r = max_over_seeds(2, 50, [](Rng& rng) {
    const Globals g = random_globals(rng);
    std::array<GluingPoint, 3> p;
    for (auto& q : p) q = glue(random_sl2c(rng), g, int(rng.uniform() < 0.5));
    return check_ybe_ssw(p[0], p[1], p[2], g);
  });
  EXPECT_LT(r, 1e-9);
}

TEST(Ssw, UngluedTriplesFail) {
  Rng rng(3);
  const Globals g = random_globals(rng);
  std::array<GluingPoint, 3> p;
  for (auto& q : p) q = {random_sl2c(rng), rng.polar()};
  EXPECT_GT(ybe_residual_unchecked(p[0], p[1], p[2]), 1e-3);
  EXPECT_THROW(check_ybe_ssw(p[0], p[1], p[2], g), domain_error);
}

TEST(Ssw, LayerExchangeSymmetry) {
  const double r = max_over_seeds(4, 25, [](Rng& rng) {
    const Globals g = random_globals(rng);
    return check_layer_exchange(glue(random_sl2c(rng), g), glue(random_sl2c(rng), g));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Ssw, AlphaBetaForm) {
  const double r = max_over_seeds(5, 25, [](Rng& rng) {
    const Globals g = random_globals(rng);
    const GluingPoint p1 = glue(random_sl2c(rng), g), p2 = glue(random_sl2c(rng), g);
    const FockSpace S(2, 2);
    return frobenius_residual(ssw_r_alpha_beta(S, 0, 1, p1.A, p2.A, ssw_alpha_beta(p1, p2)), ssw_r(S, 0, 1, p1, p2));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Ssw, RegularAtEqualPoints) {
  Rng rng(6);
  const Globals g = random_globals(rng);
  const GluingPoint p = glue(random_sl2c(rng), g);
  const FockSpace S(2, 2);
  EXPECT_LT(residual_up_to_scalar(ssw_r(S, 0, 1, p, p), graded_permutation_all_layers(S, 0, 1)), 1e-12);
}

TEST(Ssw, ResidualQuantumGroupInvariance) {
  const double r = max_over_seeds(7, 25, [](Rng& rng) {
    const Globals g = random_globals(rng);
    const cplx z = rng.polar();
    const auto p = random_glued_pair_qg(rng, z, g);
    return check_quantum_invariance(p[0], p[1], z);
  });
  EXPECT_LT(r, 1e-10);
}

TEST(Hubbard, GluingFormulaAndRootSelection) {
  const double r = max_over_seeds(8, 50, [](Rng& rng) {
    const double U = rng.uniform(0.2, 5.0);
    const HubbardPoint p{cplx(rng.uniform(-0.7, 0.7), rng.uniform(-0.2, 0.2)), U};
    const auto roots = solve_gluing(p.A(), hubbard_globals(U));
    const double sel = std::min(std::abs(roots[0] - p.v()), std::abs(roots[1] - p.v())) / std::abs(p.v());
    return std::max({std::abs(std::sinh(2.0 * p.h()) - U / 4.0 * std::sin(2.0 * p.u)),
                     std::abs(gluing_defect(p.gluing(), hubbard_globals(U))), sel});
  });
  EXPECT_LT(r, 1e-10);
}

TEST(Hubbard, RegularFormMatchesGeneralSolution) {
  const double r = max_over_seeds(9, 25, [](Rng& rng) {
    const double U = rng.uniform(0.2, 5.0);
    const HubbardPoint a{rng.uniform(0.1, 0.7), U}, b{rng.uniform(-0.7, -0.1), U};
    const FockSpace S(2, 2);
    return frobenius_residual(hubbard_r(S, 0, 1, a, b), ssw_r(S, 0, 1, a.gluing(), b.gluing()));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Hubbard, DensityIsHoppingPlusInteraction) {
  for (double U : {0.5, 1.3, 4.0}) {
    const HubbardCheck c = hubbard_hamiltonian_check(U, 2);
    EXPECT_LT(c.fit_residual, 1e-5) << U;
    EXPECT_LT(c.ratio_error, 1e-5) << U;
    EXPECT_LT(c.chain_residual, 1e-5) << U;
    EXPECT_NEAR(std::abs(c.normalization), 1.0, 1e-6) << U;
  }
}

TEST(Hubbard, ChainOfFourSites) {
  const HubbardCheck c = hubbard_hamiltonian_check(2.2, 4);
  EXPECT_LT(c.chain_residual, 1e-5);
}

TEST(Hubbard, ChainLengthValidated) {
  EXPECT_THROW(hubbard_hamiltonian_check(1.0, 3), domain_error);
  EXPECT_THROW(hubbard_hamiltonian_check(1.0, 6), domain_error);
}

TEST(Hubbard, RegularAtZero) {
  const FockSpace S(2, 2);
  const HubbardPoint z{0.0, 1.7};
  EXPECT_LT(residual_up_to_scalar(hubbard_r(S, 0, 1, z, z), graded_permutation_all_layers(S, 0, 1)), 1e-14);
}

TEST(Hubbard, WeakCouplingDegenerationIsLinear) {
  const double r2 = weak_coupling_residual(1e-2), r3 = weak_coupling_residual(1e-3), r4 = weak_coupling_residual(1e-4);
  EXPECT_NEAR(std::log10(r2 / r3), 1.0, 0.05);
  EXPECT_NEAR(std::log10(r3 / r4), 1.0, 0.05);
}

TEST(Hubbard, ChainCommutesWithTranslation) {
  const FockSpace S(4, 2);
  const CMatrix T = translation(S), H = hubbard_chain(S, 1.9);
  EXPECT_LT((sparse_product(T, H) - sparse_product(H, T)).norm() / H.norm(), 1e-13);
}

TEST(Richardson, ExactForCubic) {
  auto f = [](double s) { return CMatrix(CMatrix::Constant(1, 1, cplx(1.0 + 2.0 * s + s * s * s))); };
  EXPECT_NEAR(richardson_derivative(f, 1e-2)(0, 0).real(), 2.0, 1e-12);
  EXPECT_THROW(richardson_derivative(f, 1e-13), domain_error);
}
