#include <gtest/gtest.h>

#include "mtt/commutant.hpp"
#include "mtt/error.hpp"
#include "mtt/gallery.hpp"

using namespace mtt;

TEST(Commutant, GeneratorDimensions) {
  Tolerances tol;
  EXPECT_EQ(hermitian_commutant(asm_generator(3), tol).dim_real, 2);
  for (int d : {4, 5, 6}) {
    EXPECT_EQ(hermitian_commutant(asm_generator(d), tol).dim_real, 1) << "d = " << d;
    EXPECT_TRUE(is_irreducible(asm_generator(d), tol));
  }
}

TEST(Commutant, ElementsAreHermitianAndCommute) {
  const Matrix t = asm_generator(3);
  const CommutantBasis c = hermitian_commutant(t, Tolerances{});
  for (const Matrix& q : c.elements) {
    EXPECT_LT((q - q.adjoint()).norm(), 1e-12);
    EXPECT_LT((q * t - t * q).norm(), 1e-10);
  }
}

TEST(Commutant, PrintedMatrixCommutesExactly) {
  const Matrix t = asm_generator(3);
  const Matrix q = printed_commuting_matrix();
  EXPECT_EQ((q * t - t * q).norm(), 0.0);
  EXPECT_LT((q - q.adjoint()).norm(), 1e-15);
}

TEST(Commutant, RandomSmallAsmsAreReducible) {
  Tolerances tol;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(hermitian_commutant(random_asm(2, seed), tol).dim_real, 4);
    EXPECT_EQ(hermitian_commutant(random_asm(3, seed), tol).dim_real, 2);
    EXPECT_EQ(hermitian_commutant(random_asm(4, seed), tol).dim_real, 1);
  }
}

TEST(Commutant, ScalarAndNormal) {
  Tolerances tol;
  EXPECT_EQ(hermitian_commutant(Matrix::Identity(3, 3) * 2.0, tol).dim_real, 9);
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = cplx(0, 1);
  EXPECT_EQ(hermitian_commutant(d, tol).dim_real, 3);
  EXPECT_FALSE(is_irreducible(d, tol));
  EXPECT_TRUE(is_irreducible(halmos(), tol));
}

TEST(Split, IrreducibleGivesNothing) {
  EXPECT_FALSE(split_once(george(), Tolerances{}));
}

TEST(Split, ScrambledDirectSum) {
  Tolerances tol;
  const Matrix t = scramble(direct_sum(halmos(), george()), 4);
  const auto s = split_once(t, tol);
  ASSERT_TRUE(s);
  EXPECT_LT(unitarity_defect(s->w), 1e-12);
  EXPECT_EQ(s->t1.rows() + s->t2.rows(), 6);
  EXPECT_LT((s->w.adjoint() * t * s->w - direct_sum(s->t1, s->t2)).norm(), 1e-9 * t.norm());
}

TEST(Decompose, RecoversBlockSizes) {
  Tolerances tol;
  const Matrix t = scramble(direct_sum({halmos(), asm_generator(4), george()}), 5);
  const IrreducibleDecomposition d = decompose_irreducibles(t, tol);
  std::vector<Eigen::Index> sizes;
  for (const auto& b : d.blocks) {
    sizes.push_back(b.rows());
    EXPECT_TRUE(is_irreducible(b, tol));
  }
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<Eigen::Index>{3, 3, 8}));
  EXPECT_LT((d.w.adjoint() * t * d.w - direct_sum(d.blocks)).norm(), 1e-9 * t.norm());
}

TEST(Decompose, ScalarSplitsIntoOnes) {
  const IrreducibleDecomposition d = decompose_irreducibles(Matrix::Identity(4, 4) * cplx(1, 1), Tolerances{});
  EXPECT_EQ(d.blocks.size(), 4u);
}
