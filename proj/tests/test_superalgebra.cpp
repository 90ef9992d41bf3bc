#include "ffsm/superalgebra.hpp"
#include "test_util.hpp"

using namespace ffsm;
using ffsm::testing::max_over_seeds;

namespace {

Globals random_globals(Rng& rng) { return {rng.polar(), rng.polar()}; }

struct Config {
  Globals g;
  GluingPoint p1, p2;
  cplx t1, t2;
};

Config random_config(Rng& rng) {
  Config c;
  c.g = random_globals(rng);
  c.p1 = random_glued_symmetric(rng, c.g);
  c.p2 = random_glued_symmetric(rng, c.g);
  c.t1 = rng.polar();
  c.t2 = rng.polar();
  return c;
}

}  // namespace

TEST(SuperAlgebra, RelationsAtUnimodularPoints) {
  const double r = max_over_seeds(1, 25, [](Rng& rng) { return check_super_algebra(random_sl2c(rng)); });
  EXPECT_LT(r, 1e-12);
}

TEST(SuperAlgebra, NonUnimodularPointFails) {
  Rng rng(2);
  Sl2cPoint D = random_sl2c(rng);
  D.d += 0.1;
  EXPECT_GT(check_super_algebra(D), 1e-3);
}

TEST(SuperAlgebra, ShorteningCondition) {
  const double r = max_over_seeds(3, 25, [](Rng& rng) { return std::abs(central_charges(random_sl2c(rng)).shortening_defect()); });
  EXPECT_LT(r, 1e-13);
}

TEST(SuperAlgebra, OuterAutomorphism) {
  const double r = max_over_seeds(4, 25, [](Rng& rng) {
    return check_outer_automorphism(random_sl2c(rng), rng.uniform(0.0, 2.0 * pi));
  });
  EXPECT_LT(r, 1e-13);
}

TEST(SuperAlgebra, SymmetricSamplerIsOnTheLocus) {
  const double r = max_over_seeds(5, 50, [](Rng& rng) {
    const Sl2cPoint A = random_symmetric_sl2c(rng);
    return std::max(symmetry_defect(A), std::abs(A.det() - 1.0));
  });
  EXPECT_LT(r, 1e-13);
  EXPECT_THROW(require_symmetric(Sl2cPoint{1.0, 2.0, 0.5, 2.0}, "test"), domain_error);
}

TEST(SymmetryCondition, AnticommutatorsHoldExactlyOnTheLocus) {
  const double on = max_over_seeds(6, 25, [](Rng& rng) {
    const Config c = random_config(rng);
    return check_anticommutator_relations(c.p1, c.p2);
  });
  EXPECT_LT(on, 1e-9);
  Rng rng(7);
  const Globals g = random_globals(rng);
  EXPECT_GT(check_anticommutator_relations(glue(random_sl2c(rng), g), glue(random_sl2c(rng), g)), 1e-3);
}

TEST(SymmetryCondition, LInvarianceNeedsNoSymmetry) {
  const double r = max_over_seeds(8, 25, [](Rng& rng) {
    const Globals g = random_globals(rng);
    return check_l_invariance(glue(random_sl2c(rng), g), glue(random_sl2c(rng), g));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Invariance, Bosonic) {
  const double r = max_over_seeds(9, 50, [](Rng& rng) {
    const Config c = random_config(rng);
    return check_bosonic_invariance(r_check(c.p1, c.p2, c.t1, c.t2));
  });
  EXPECT_LT(r, 1e-9);
}

TEST(Invariance, FermionicForTwoGaugeDraws) {
  const double r = max_over_seeds(10, 50, [](Rng& rng) {
    const Config c = random_config(rng);
    const cplx s1 = rng.polar(), s2 = rng.polar();
    return std::max(check_fermionic_invariance(c.p1, c.p2, c.g, c.t1, c.t2),
                    check_fermionic_invariance(c.p1, c.p2, c.g, s1, s2));
  });
  EXPECT_LT(r, 1e-9);
}

TEST(Invariance, WrongOddAssignmentFails) {
  Rng rng(11);
  const Config c = random_config(rng);
  OddAssignment d = odd_assignment(c.p1, c.p2, c.g, c.t1, c.t2);
  std::swap(d.d1p, d.d2p);
  EXPECT_GT(check_odd_invariance(r_check(c.p1, c.p2, c.t1, c.t2), d), 1e-3);
}

TEST(Invariance, BcMatricesAreUnimodular) {
  const double r = max_over_seeds(12, 25, [](Rng& rng) {
    const Config c = random_config(rng);
    const auto [B, C] = bc_matrices(c.p1, c.g, c.t1);
    return std::max(std::abs(B.det() - 1.0), std::abs(C.det() - 1.0));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(Invariance, BraidedYangBaxter) {
  const double r = max_over_seeds(13, 10, [](Rng& rng) {
    const Globals g = random_globals(rng);
    const std::array<GluingPoint, 3> p{random_glued_symmetric(rng, g), random_glued_symmetric(rng, g),
                                       random_glued_symmetric(rng, g)};
    return check_braided_ybe(p, {rng.polar(), rng.polar(), rng.polar()});
  });
  EXPECT_LT(r, 1e-9);
}

TEST(ChargeFlow, CoproductFlowAndShortening) {
  for (int i = 0; i < 25; ++i) {
    Rng rng(Rng::derive(14, std::uint64_t(i)));
    const Config c = random_config(rng);
    const ChargeFlow f = central_charge_flow(c.p1, c.p2, c.g, c.t1, c.t2);
    EXPECT_LT(f.flow_residual, 1e-10) << i;
    EXPECT_LT(f.shortening_residual, 1e-10) << i;
    EXPECT_LT(f.c1_formula_residual, 1e-10) << i;
  }
}

TEST(DerivedSmatrix, UniqueAndEqualToRcheck) {
  for (int i = 0; i < 5; ++i) {
    Rng rng(Rng::derive(15, std::uint64_t(i)));
    const Config c = random_config(rng);
    const OddAssignment d = odd_assignment(c.p1, c.p2, c.g, c.t1, c.t2);
    const DerivedSmatrix r = derive_smatrix_from_symmetry(d.d1, d.d2, d.d1p, d.d2p);
    EXPECT_EQ(r.nullity, 1) << i;
    EXPECT_LT(residual_up_to_scalar(r.X, r_check(c.p1, c.p2, c.t1, c.t2)), 1e-9) << i;
  }
}

TEST(DerivedSmatrix, UnrelatedChargesHaveNoSolution) {
  Rng rng(16);
  const DerivedSmatrix r = derive_smatrix_from_symmetry(random_symmetric_sl2c(rng), random_symmetric_sl2c(rng),
                                                        random_symmetric_sl2c(rng), random_symmetric_sl2c(rng));
  EXPECT_EQ(r.nullity, 0);
}

TEST(EtaPairing, CommutesWithEvenPeriodicChains) {
  EXPECT_LT(eta_pairing_residual(2, 1.3), 1e-14);
  EXPECT_LT(eta_pairing_residual(4, 1.3), 1e-14);
  EXPECT_GT(eta_pairing_residual(3, 1.3), 1e-3);
}
