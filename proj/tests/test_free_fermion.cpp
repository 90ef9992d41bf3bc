#include "ffsm/free_fermion.hpp"
#include "test_util.hpp"

using namespace ffsm;
using ffsm::testing::max_over_seeds;

TEST(Sl2c, RandomPointsAreUnimodular) {
  const double r = max_over_seeds(1, 100, [](Rng& rng) { return std::abs(random_sl2c(rng).det() - 1.0); });
  EXPECT_LT(r, 1e-14);
}

TEST(Sl2c, InverseAndProduct) {
  Rng rng(2);
  const Sl2cPoint A = random_sl2c(rng);
  EXPECT_LT(((A * A.inverse()).matrix() - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
  EXPECT_LT(std::abs(xx_point(0.37).det() - 1.0), 1e-15);
}

TEST(RMatrix, RegularAtIdentity) {
  const FockSpace S(2);
  EXPECT_LT((r_f(S, 0, 1, Sl2cPoint::identity()) - graded_permutation(S, 0, 1)).norm(), 1e-15);
}

TEST(RMatrix, RejectsNonUnimodularAndCoincidentSites) {
  const FockSpace S(2);
  EXPECT_THROW(r_f(S, 0, 1, Sl2cPoint{1.0, 1.0, 1.0, 1.0}), domain_error);
  EXPECT_THROW(r_f(S, 0, 0, Sl2cPoint::identity()), domain_error);
  EXPECT_THROW(r_f(S, 0, 2, Sl2cPoint::identity()), domain_error);
}

TEST(RMatrix, YangBaxterWithCompositePoint) {
  const double r = max_over_seeds(10, 100, [](Rng& rng) {
    const Sl2cPoint A = random_sl2c(rng), C = random_sl2c(rng);
    return check_ybe_f(A, C * A, C);
  });
  EXPECT_LT(r, 1e-10);
}

TEST(RMatrix, YangBaxterRejectsInconsistentMiddlePoint) {
  Rng rng(4);
  const Sl2cPoint A = random_sl2c(rng), C = random_sl2c(rng);
  EXPECT_THROW(check_ybe_f(A, A, C), domain_error);
}

TEST(RMatrix, InversionRelation) {
  const double r = max_over_seeds(20, 100, [](Rng& rng) { return check_inversion(random_sl2c(rng)); });
  EXPECT_LT(r, 1e-11);
}

TEST(RMatrix, R0UnderPermutationConjugation) {
  const double r = max_over_seeds(
      30, 25, [](Rng& rng) { return check_r0_conjugation(random_sl2c(rng), random_sl2c(rng)); });
  EXPECT_LT(r, 1e-12);
}

TEST(RMatrix, R0SatisfiesYangBaxter) {
  const double r = max_over_seeds(
      40, 25, [](Rng& rng) { return check_ybe_r0(random_sl2c(rng), random_sl2c(rng), random_sl2c(rng)); });
  EXPECT_LT(r, 1e-10);
}

TEST(RMatrix, LightConeBasis) {
  const double r = max_over_seeds(
      50, 25, [](Rng& rng) { return check_light_cone_basis(random_sl2c(rng), random_sl2c(rng)); });
  EXPECT_LT(r, 1e-12);
}

TEST(RMatrix, R0AtEqualPointsIsPermutation) {
  Rng rng(6);
  const Sl2cPoint A = random_sl2c(rng);
  const FockSpace S(2);
  EXPECT_LT(frobenius_residual(r0(S, 0, 1, A, A), graded_permutation(S, 0, 1)), 1e-13);
}

TEST(TransferMatrix, CommutingFamily) {
  const double r = max_over_seeds(60, 5, [](Rng& rng) {
    const cplx u1(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)), u2(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3));
    return check_transfer_commutation(u1, u2, 4);
  });
  EXPECT_LT(r, 1e-12);
}

TEST(TransferMatrix, HamiltonianIsPeriodicHopping) {
  for (int N : {3, 4, 5}) EXPECT_LT(frobenius_residual(hamiltonian_from_transfer(N), xx_hamiltonian(FockSpace(N))), 1e-12) << N;
}

TEST(TransferMatrix, DerivativeMatchesCentralDifference) {
  const cplx u(0.31, 0.05);
  const double h = 1e-5;
  const CMatrix fd = (transfer_matrix(u + h, 3) - transfer_matrix(u - h, 3)) / (2 * h);
  EXPECT_LT(frobenius_residual(fd, transfer_matrix_derivative(u, 3)), 1e-8);
}

TEST(TransferMatrix, RejectsShortChain) { EXPECT_THROW(transfer_matrix(0.1, 1), domain_error); }
