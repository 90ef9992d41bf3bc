#include "ffsm/tensor_core.hpp"
#include "test_util.hpp"

using namespace ffsm;
using ffsm::testing::max_over_seeds;

TEST(FockSpace, CanonicalAnticommutationOneLayer) {
  for (int n = 1; n <= 4; ++n) EXPECT_LT(check_car(FockSpace(n)), 1e-14) << n;
}

TEST(FockSpace, CanonicalAnticommutationTwoLayers) {
  EXPECT_LT(check_car(FockSpace(2, 2)), 1e-14);
  EXPECT_LT(check_car(FockSpace(3, 2)), 1e-14);
}

TEST(FockSpace, NumberOperatorsAndParity) {
  const FockSpace S(2, 2);
  for (auto [s, l] : S.mode_order()) {
    const CMatrix c = S.c(s, l);
    EXPECT_LT((c.adjoint() * c - S.n(s, l)).norm(), 1e-15);
    EXPECT_LT((c * c.adjoint() - S.m(s, l)).norm(), 1e-15);
    EXPECT_LT((S.parity(s, l) * S.parity(s, l) - S.identity()).norm(), 1e-15);
    EXPECT_LT(anticommutator(S.parity(s, l), c).norm(), 1e-15);
  }
}

TEST(FockSpace, ModeOrderIsSiteMajorUpFirst) {
  const FockSpace S(2, 2);
  EXPECT_EQ(S.mode_index(0, 0), 0);
  EXPECT_EQ(S.mode_index(0, 1), 1);
  EXPECT_EQ(S.mode_index(1, 0), 2);
  EXPECT_EQ(S.mode_index(1, 1), 3);
  EXPECT_THROW(S.mode_index(2, 0), domain_error);
  EXPECT_THROW(FockSpace(8, 2), domain_error);
}

TEST(GradedPermutation, TwoSitesMatchesHandWritten) {
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(1, 2) = 1.0;
  expect(2, 1) = 1.0;
  expect(3, 3) = -1.0;
  EXPECT_LT((graded_permutation(FockSpace(2), 0, 1) - expect).norm(), 1e-15);
}

TEST(GradedPermutation, InvolutionAndModeExchange) {
  const FockSpace S(3);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      const CMatrix P = graded_permutation(S, j, k);
      EXPECT_LT((P * P - S.identity()).norm(), 1e-14);
      EXPECT_LT((P * S.c(j) * P - S.c(k)).norm(), 1e-14);
    }
  EXPECT_THROW(graded_permutation(S, 1, 1), domain_error);
}

TEST(GradedPermutation, LayerExchangeSwapsLayers) {
  const FockSpace S(2, 2);
  const CMatrix X = layer_exchange(S);
  EXPECT_LT((X * X - S.identity()).norm(), 1e-14);
  for (int s = 0; s < 2; ++s) EXPECT_LT((X * S.c(s, 0) * X - S.c(s, 1)).norm(), 1e-14);
}

TEST(GradedPermutation, AllLayersSwapsSites) {
  const FockSpace S(2, 2);
  const CMatrix P = graded_permutation_all_layers(S, 0, 1);
  for (int l = 0; l < 2; ++l) EXPECT_LT((P * S.c(0, l) * P.inverse() - S.c(1, l)).norm(), 1e-14);
}

TEST(Supertrace, IdentityGivesZeroAndParityGivesDimension) {
  const FockSpace S(3);
  EXPECT_LT(supertrace_aux(S.identity(), S, 0).norm(), 1e-15);
  const CMatrix st = supertrace_aux(S.parity(0), S, 0);
  EXPECT_LT((st - 2.0 * identity(4)).norm(), 1e-15);
}

TEST(Supertrace, FactorizedOperator) {
  Rng rng(3);
  const CMatrix a = rng.matrix(2, 2), r = rng.matrix(4, 4);
  const CMatrix M = kron(a, r);
  const cplx sa = a(0, 0) - a(1, 1);
  EXPECT_LT((supertrace_aux(M, FockSpace(3), 0) - sa * r).norm(), 1e-13);
}

TEST(Kron, MixedProductProperty) {
  const double r = max_over_seeds(11, 20, [](Rng& rng) {
    const CMatrix A = rng.matrix(2, 2), B = rng.matrix(3, 3), C = rng.matrix(2, 2), D = rng.matrix(3, 3);
    return frobenius_residual(kron(A, B) * kron(C, D), kron(CMatrix(A * C), CMatrix(B * D)));
  });
  EXPECT_LT(r, 1e-14);
}

TEST(Dump, RoundTripIsExact) {
  Rng rng(5);
  const CMatrix M = rng.matrix(4, 3);
  EXPECT_EQ((parse_dump(dump_string(M)) - M).norm(), 0.0);
  EXPECT_EQ(dump_string(M), dump_string(M));
  EXPECT_THROW(parse_dump("1,0 2\n"), domain_error);
  EXPECT_THROW(parse_dump("1,0 2,0\n3,0\n"), domain_error);
}

TEST(Residuals, ScalarAndSign) {
  Rng rng(9);
  const CMatrix A = rng.matrix(4, 4);
  const cplx s(0.3, -1.7);
  EXPECT_LT(residual_up_to_scalar(CMatrix(s * A), A), 1e-15);
  const auto fit = equal_up_to_scalar(CMatrix(s * A), A, 1e-12);
  ASSERT_TRUE(fit.has_value());
  EXPECT_LT(std::abs(*fit - s), 1e-14);
  EXPECT_FALSE(equal_up_to_scalar(rng.matrix(4, 4), A, 1e-6).has_value());
  EXPECT_LT(residual_up_to_sign(CMatrix(-A), A), 1e-15);
  EXPECT_THROW(frobenius_residual(A, identity(3)), domain_error);
}

TEST(SparseProduct, AgreesWithDense) {
  Rng rng(13);
  const FockSpace S(3, 2);
  const CMatrix A = S.c(1, 0).adjoint() * S.c(2, 1), B = rng.matrix(S.dim(), S.dim());
  EXPECT_LT((sparse_product(A, B) - A * B).norm(), 1e-12);
}
