#include <gtest/gtest.h>

#include "mtt/antilinear.hpp"
#include "mtt/error.hpp"
#include "mtt/gallery.hpp"

using namespace mtt;

TEST(Conjugation, CanonicalIsEntrywiseConjugation) {
  const Conjugation c = Conjugation::canonical(2);
  Vector x(2);
  x << cplx(0, 1), 1.0;
  const Vector y = c.apply(x);
  EXPECT_EQ(y(0), cplx(0, -1));
  EXPECT_EQ(y(1), cplx(1.0));
}

TEST(Conjugation, RejectsNonSymmetricOrNonUnitary) {
  EXPECT_THROW(Conjugation(omega(1)), Error);
  EXPECT_THROW(Conjugation(Matrix::Identity(2, 2) * 2.0), Error);
  EXPECT_NO_THROW(Conjugation(reversal(3)));
}

TEST(Conjugation, IsInvolutive) {
  const Conjugation c = random_conjugation(5, 3);
  Rng rng = make_rng(9);
  const Vector x = random_gaussian(5, 1, rng).col(0);
  EXPECT_LT((c.apply(c.apply(x)) - x).norm(), 1e-12);
}

TEST(Anticonjugation, CanonicalSquaresToMinusIdentity) {
  const Anticonjugation k = Anticonjugation::canonical(1);
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  const Vector ke = k.apply(e1);
  EXPECT_EQ(ke(0), cplx(0.0));
  EXPECT_EQ(ke(1), cplx(-1.0));
  EXPECT_LT((k.apply(ke) + e1).norm(), 1e-15);
}

TEST(Anticonjugation, RejectsOddOrSymmetric) {
  EXPECT_THROW(Anticonjugation(Matrix::Identity(3, 3)), Error);
  EXPECT_THROW(Anticonjugation(Matrix::Identity(2, 2)), Error);
  EXPECT_NO_THROW(random_anticonjugation(6, 1));
}

TEST(Bases, FixedBasisIsFixedAndUnitary) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Conjugation c = random_conjugation(4, seed);
    const Matrix q = fixed_basis(c);
    EXPECT_LT(unitarity_defect(q), 1e-12);
    EXPECT_LT((c.apply_columns(q) - q).norm(), 1e-12);
  }
}

TEST(Bases, AntiBasisPairsColumns) {
  const Anticonjugation k = random_anticonjugation(6, 4);
  const Matrix q = canonical_anti_basis(k);
  EXPECT_LT(unitarity_defect(q), 1e-12);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT((k.apply(q.col(i)) - q.col(i + 3)).norm(), 1e-12);
    EXPECT_LT((k.apply(q.col(i + 3)) + q.col(i)).norm(), 1e-12);
  }
}

TEST(Realize, SymmetricMatrixUnderJIsUnchanged) {
  const Matrix s = random_csm(4, 2);
  const CsmRealization r = realize_csm(s, Conjugation::canonical(4), Tolerances{});
  EXPECT_LT((r.q - Matrix::Identity(4, 4)).norm(), 1e-15);
  EXPECT_LT((r.s - s).norm(), 1e-14);
}

TEST(Realize, RandomConjugation) {
  Rng rng = make_rng(11);
  const Matrix w = random_unitary(5, rng);
  const Conjugation c(w * w.transpose());
  const Matrix s = random_csm(5, 6);
  const Matrix t = w * s * w.adjoint();
  const CsmRealization r = realize_csm(t, c, Tolerances{});
  EXPECT_LT((r.s - r.s.transpose()).norm(), 1e-12);
  EXPECT_LT((r.q.adjoint() * t * r.q - r.s).norm(), 1e-11);
  EXPECT_LT(unitarity_defect(r.q), 1e-12);
}

TEST(Realize, CsmRejectsWrongConjugation) {
  try {
    realize_csm(halmos(), Conjugation::canonical(3), Tolerances{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCSymmetricWithRespectToC);
  }
}

// Under K = ΩJ the basis with K e_i = e_{i+d} is (e₁, e₂, −e₃, −e₄).
TEST(Realize, OmegaBasisFlipsSecondHalf) {
  const Matrix m = asm_generator(2);
  const AsmRealization r = realize_asm(m, Anticonjugation::canonical(2), Tolerances{});
  Matrix want = Matrix::Identity(4, 4);
  want(2, 2) = want(3, 3) = -1.0;
  EXPECT_LT((r.q - want).norm(), 1e-15);
  EXPECT_LT((r.shape.assemble() - r.q.adjoint() * m * r.q).norm(), 1e-14);
}

TEST(Realize, RandomAnticonjugation) {
  Rng rng = make_rng(12);
  const Matrix w = random_unitary(6, rng);
  const Anticonjugation k(w * omega(3) * w.transpose());
  const Matrix t = w * random_asm(3, 5) * w.adjoint();
  const AsmRealization r = realize_asm(t, k, Tolerances{});
  const Matrix m = r.shape.assemble();
  EXPECT_TRUE(satisfies_asm_identity(m, 1e-12));
  EXPECT_LT((r.q.adjoint() * t * r.q - m).norm(), 1e-11);
}

TEST(AsmShape, RoundTripAndRejection) {
  const Matrix m = random_asm(3, 1);
  EXPECT_TRUE(satisfies_asm_identity(m, 1e-14));
  const AsmShape s = AsmShape::from_matrix(m, 1e-12);
  EXPECT_EQ(s.d, 3);
  EXPECT_LT((s.assemble() - m).norm(), 1e-14);
  EXPECT_LT((s.b + s.b.transpose()).norm(), 1e-15);
  EXPECT_THROW(AsmShape::from_matrix(halmos(), 1e-6), Error);
  EXPECT_THROW(AsmShape::from_matrix(random_csm(4, 1), 1e-6), Error);
  EXPECT_FALSE(satisfies_asm_identity(random_csm(4, 1), 1e-6));
}

TEST(Restrict, ConjugationToInvariantSubspace) {
  const Conjugation c = random_conjugation(4, 8);
  const Matrix q = fixed_basis(c);
  const Conjugation r = c.restrict_to(q.leftCols(2));
  EXPECT_EQ(r.dim(), 2);
  EXPECT_LT((r.factor() - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(Restrict, AnticonjugationToInvariantSubspace) {
  const Anticonjugation k = random_anticonjugation(6, 2);
  const Matrix q = canonical_anti_basis(k);
  Matrix frame(6, 2);
  frame.col(0) = q.col(0);
  frame.col(1) = q.col(3);
  const Anticonjugation r = k.restrict_to(frame);
  // K e₁ = e₂ in these coordinates, so the factor is −Ω.
  EXPECT_LT((r.factor() + omega(1)).norm(), 1e-12);
}
