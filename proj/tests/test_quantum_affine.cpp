#include "ffsm/quantum_affine.hpp"
#include "test_util.hpp"

using namespace ffsm;
using ffsm::testing::max_over_seeds;

namespace {

std::array<QgParams, 2> generic_pair_at(Rng& rng, cplx z) {
  for (;;) {
    const QgParams p1 = random_qg_params(rng, z), p2 = random_qg_params(rng, z);
    if (generic_pair(p1, p2)) return {p1, p2};
  }
}

double intertwining_residual(const CMatrix& r, const QgParams& p1, const QgParams& p2) {
  const FockSpace S(2);
  const QgGenerators g1 = rep_generators(S, 0, p1), g2 = rep_generators(S, 1, p2);
  double worst = 0.0;
  for (auto name : qg_generator_names)
    worst = std::max(worst, frobenius_residual(coproduct(name, g1, g2, true) * r, r * coproduct(name, g1, g2)));
  return worst;
}

}  // namespace

TEST(QuantumAffine, DefiningRelations) {
  const double r = max_over_seeds(1, 25, [](Rng& rng) { return check_algebra_relations(random_qg_params(rng, rng.polar())); });
  EXPECT_LT(r, 1e-12);
}

TEST(QuantumAffine, LambdaIsInverseOfK1Eigenvalue) {
  Rng rng(2);
  const QgParams p = random_qg_params(rng, 1.0);
  const QgGenerators g = rep_generators(p);
  EXPECT_LT((g.k0 * g.k1 - identity(2)).norm(), 1e-14);
  EXPECT_LT(std::abs(g.phi * g.phi - (g.lambda - 1.0 / g.lambda) / (2.0 * I_unit)), 1e-14);
}

TEST(QuantumAffine, ValidateRejectsDegenerateLambda) {
  QgParams p;
  p.mu = 1.0;  // lambda = -1
  EXPECT_THROW(p.validate(), domain_error);
  p.mu = 0.3;
  p.x = 0.0;
  EXPECT_THROW(p.validate(), domain_error);
}

TEST(QuantumAffine, IntertwinerCommutesCoproducts) {
  const double r = max_over_seeds(3, 25, [](Rng& rng) {
    const auto p = generic_pair_at(rng, rng.polar());
    return check_intertwiner(p[0], p[1]);
  });
  EXPECT_LT(r, 1e-10);
}

TEST(QuantumAffine, WrongIntertwinerFails) {
  Rng rng(4);
  const auto p = generic_pair_at(rng, rng.polar());
  EXPECT_GT(intertwining_residual(intertwiner_r0(p[1], p[0]), p[0], p[1]), 1e-3);
  EXPECT_GT(intertwining_residual(identity(4), p[0], p[1]), 1e-3);
}

TEST(QuantumAffine, IntertwinerSpaceDimensions) {
  for (int i = 0; i < 25; ++i) {
    Rng rng(Rng::derive(5, std::uint64_t(i)));
    const auto p = generic_pair_at(rng, rng.polar());
    EXPECT_EQ(intertwiner_space_dimension(p[0], p[1], qg_generator_names), 1) << i;
    EXPECT_EQ(intertwiner_space_dimension(p[0], p[1], qg_subalgebra_names), 2) << i;
  }
}

TEST(QuantumAffine, MismatchedCentralElementRejected) {
  Rng rng(6);
  const QgParams p1 = random_qg_params(rng, 1.0), p2 = random_qg_params(rng, 2.0);
  EXPECT_THROW(intertwiner_r0(p1, p2), domain_error);
}

TEST(QuantumAffine, IdentificationWithR0UpToSign) {
  const double r = max_over_seeds(7, 25, [](Rng& rng) {
    const auto p = generic_pair_at(rng, rng.polar());
    return check_identification_r0_any_branch(p[0], p[1]);
  });
  EXPECT_LT(r, 1e-10);
}

TEST(QuantumAffine, YRemovalGauge) {
  const double r = max_over_seeds(8, 25, [](Rng& rng) {
    const auto p = generic_pair_at(rng, rng.polar());
    return check_y_removal(p[0], p[1]);
  });
  EXPECT_LT(r, 1e-12);
}

TEST(QuantumAffine, IntertwinerSolvesYangBaxter) {
  const double r = max_over_seeds(9, 25, [](Rng& rng) {
    const cplx z = rng.polar();
    return check_ybe_intertwiner(random_qg_params(rng, z), random_qg_params(rng, z), random_qg_params(rng, z));
  });
  EXPECT_LT(r, 1e-10);
}

TEST(QuantumAffine, PhiSignFlipIsInnerAutomorphism) {
  const double r = max_over_seeds(10, 25, [](Rng& rng) {
    const cplx z = rng.polar();
    return check_phi_flip(random_qg_params(rng, z), random_qg_params(rng, z));
  });
  EXPECT_LT(r, 1e-12);
}

TEST(QuantumAffine, DictionaryRoundTrip) {
  const double r = max_over_seeds(11, 25, [](Rng& rng) {
    const cplx z = rng.polar();
    const Sl2cPoint A = sl2c_from_params(random_qg_params(rng, z));
    const Sl2cPoint back = sl2c_from_params(params_from_sl2c(A, z));
    return std::max(std::abs(A.det() - 1.0), CMatrix(A.matrix() - back.matrix()).norm());
  });
  EXPECT_LT(r, 1e-12);
}

TEST(QuantumAffine, InverseDictionaryChecksCentralElement) {
  Rng rng(12);
  const Sl2cPoint A = sl2c_from_params(random_qg_params(rng, 1.0));
  EXPECT_THROW(params_from_sl2c(A, 3.0), domain_error);
}
