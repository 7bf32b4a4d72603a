#include <gtest/gtest.h>

#include "mtt/error.hpp"
#include "mtt/gallery.hpp"
#include "mtt/intertwiner.hpp"

using namespace mtt;

TEST(Certificate, ResidualAndSymmetry) {
  const Matrix t = toeplitz_random(5, 3);
  EXPECT_LT(certificate_residual(t, reversal(5)), 1e-15);
  EXPECT_EQ(certificate_residual(Matrix::Zero(2, 2), Matrix::Identity(2, 2)), 0.0);
  EXPECT_EQ(symmetry_class(reversal(4), 1e-12), SymmetryClass::symmetric);
  EXPECT_EQ(symmetry_class(omega(2), 1e-12), SymmetryClass::skew);
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_EQ(symmetry_class(m, 1e-12), SymmetryClass::neither);
  EXPECT_EQ(scalar_alpha(reversal(3), 1e-12), 1);
  EXPECT_EQ(scalar_alpha(omega(2), 1e-12), -1);
  Matrix rot(2, 2);
  const double c = std::sqrt(0.5);
  rot << c, -c, c, c;
  EXPECT_FALSE(scalar_alpha(rot, 1e-12));
}

TEST(Kernels, SylvesterKernelDimensions) {
  Tolerances tol;
  // Commutant of diag(1, 1, 2) is 5-dimensional.
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  EXPECT_EQ(sylvester_kernel(d, d, tol).size(), 5u);
  // A nilpotent Jordan block and its transpose: kernel of dimension n.
  Matrix j = Matrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) j(i, i + 1) = 1.0;
  EXPECT_EQ(sylvester_kernel(j, j.transpose(), tol).size(), 4u);
  // Disjoint spectra give the zero kernel.
  EXPECT_TRUE(sylvester_kernel(d, d + Matrix::Identity(3, 3) * 5.0, tol).empty());
}

TEST(Kernels, StarKernelIsSmaller) {
  Tolerances tol;
  Matrix j = Matrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) j(i, i + 1) = 1.0;
  const KernelBasis k = star_intertwiner_kernel(j, j.transpose(), tol);
  ASSERT_EQ(k.basis.size(), 1u);
  // The only solutions are multiples of the reversal.
  const Matrix x = k.basis[0];
  EXPECT_LT((x / x(0, 3) - reversal(4)).norm(), 1e-10);
}

TEST(Kernels, StarKernelOfScalarIsEverything) {
  const Matrix t = Matrix::Identity(3, 3) * cplx(2, -1);
  EXPECT_EQ(star_intertwiner_kernel(t, t, Tolerances{}).basis.size(), 9u);
}

TEST(FindUnitary, RecoversUnitaryAndRejectsRankOne) {
  Tolerances tol;
  const auto fit = find_unitary_in_span({reversal(3) / std::sqrt(3.0)}, tol);
  ASSERT_TRUE(fit);
  EXPECT_LT((fit->u / fit->u(0, 2) - reversal(3)).norm(), 1e-10);
  Matrix e = Matrix::Zero(2, 2);
  e(0, 0) = 1.0;
  EXPECT_FALSE(find_unitary_in_span({e}, tol));
  EXPECT_THROW(find_unitary_in_span({}, tol), Error);
}

TEST(IsUet, HalmosAndGeorgeAreNot) {
  for (const Matrix& t : {halmos(), george()}) {
    const Decision d = is_uet(t, Tolerances{});
    EXPECT_EQ(d.verdict, Verdict::no);
    EXPECT_FALSE(d.certificate);
    EXPECT_NE(d.evidence.find("xx*x**"), std::string::npos) << d.evidence;
  }
}

TEST(IsUet, ToeplitzAndScrambledToeplitz) {
  Tolerances tol;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix t = scramble(toeplitz_random(5, seed), seed + 7);
    const Decision d = is_uet(t, tol);
    ASSERT_EQ(d.verdict, Verdict::yes) << d.evidence;
    EXPECT_LE(d.certificate->residual, tol.eps_residual);
    EXPECT_LE(certificate_residual(t, d.certificate->u), tol.eps_residual);
  }
}

TEST(IsUet, SpechtRejectsLargerNonUet) {
  const Matrix t = scramble(direct_sum(halmos(), halmos()), 3);
  const Decision d = is_uet(t, Tolerances{});
  EXPECT_EQ(d.verdict, Verdict::no);
  EXPECT_NE(d.evidence.find("violating trace word"), std::string::npos);
}

TEST(IsUecsm, TwoByTwoAlwaysYes) {
  Tolerances tol;
  Rng rng = make_rng(5);
  for (int i = 0; i < 20; ++i) {
    const Matrix t = random_gaussian(2, 2, rng);
    const Decision d = is_uecsm(t, tol);
    ASSERT_EQ(d.verdict, Verdict::yes);
    EXPECT_EQ(d.certificate->symmetry, SymmetryClass::symmetric);
    EXPECT_EQ(d.certificate->kind, CertificateKind::uecsm);
  }
}

TEST(IsUecsm, OneByOne) {
  Matrix t(1, 1);
  t << cplx(3, 4);
  EXPECT_EQ(is_uecsm(t, Tolerances{}).verdict, Verdict::yes);
  EXPECT_EQ(is_ueasm(t, Tolerances{}).verdict, Verdict::no);
}

TEST(IsUeasm, GeneratorHasSkewWitnessButNoSymmetricOne) {
  Tolerances tol;
  const Matrix t = scramble(asm_generator(4), 2);
  const Decision a = is_ueasm(t, tol);
  ASSERT_EQ(a.verdict, Verdict::yes) << a.evidence;
  EXPECT_EQ(a.certificate->symmetry, SymmetryClass::skew);
  EXPECT_EQ(a.certificate->alpha, -1);
  EXPECT_EQ(is_uecsm(t, tol).verdict, Verdict::no);
}

TEST(IsUeasm, OddDimensionIsNo) {
  const Decision d = is_ueasm(toeplitz_random(3, 1), Tolerances{});
  EXPECT_EQ(d.verdict, Verdict::no);
}

TEST(IsUet, RejectsMalformedInput) {
  EXPECT_THROW(is_uet(Matrix(2, 3), Tolerances{}), Error);
  Matrix t = Matrix::Identity(2, 2);
  t(0, 1) = cplx(INFINITY, 0);
  EXPECT_THROW(is_uet(t, Tolerances{}), Error);
}

TEST(Classify, AlphaDichotomy) {
  Tolerances tol;
  const Matrix s = toeplitz_random(4, 9);
  const Decision ds = is_uet(s, tol);
  ASSERT_EQ(ds.verdict, Verdict::yes);
  EXPECT_EQ(classify_irreducible_uet(s, *ds.certificate, tol), IrreducibleClass::uecsm);

  const Matrix a = asm_generator(5);
  const Decision da = is_uet(a, tol);
  ASSERT_EQ(da.verdict, Verdict::yes);
  EXPECT_EQ(classify_irreducible_uet(a, *da.certificate, tol), IrreducibleClass::ueasm);

  const UetCertificate bad = make_certificate(a, direct_sum(omega(1), reversal(8)), CertificateKind::uet, tol);
  try {
    classify_irreducible_uet(a, bad, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotScalar);
  }
}

TEST(IsUecsm, OneDimensionalSliceDecidesExactly) {
  // Symmetric intertwiners of S ⊕ A (A an irreducible ASM) are multiples of
  // I ⊕ 0, which is not unitary.
  const Matrix t = scramble(direct_sum(random_csm(3, 2), asm_generator(4)), 5);
  const Decision d = is_uecsm(t, Tolerances{});
  EXPECT_EQ(d.verdict, Verdict::no) << d.evidence;
  EXPECT_NE(d.evidence.find("one-dimensional"), std::string::npos);
}
