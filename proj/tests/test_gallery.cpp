#include <gtest/gtest.h>

#include "mtt/error.hpp"
#include "mtt/gallery.hpp"

using namespace mtt;

TEST(Gallery, NamedMatrices) {
  const Matrix h = halmos();
  EXPECT_EQ(h(0, 1), cplx(1.0));
  EXPECT_EQ(h(1, 2), cplx(2.0));
  EXPECT_EQ(h.norm(), std::sqrt(5.0));
  const Matrix g = george();
  EXPECT_EQ(g(1, 0), cplx(4.0));
  EXPECT_EQ(g(2, 2), cplx(5.0));
  EXPECT_EQ(g.trace(), cplx(9.0));
}

TEST(Gallery, AsmGeneratorEntries) {
  const Matrix t = asm_generator(3);
  EXPECT_EQ(t(2, 2), cplx(3.0));
  EXPECT_EQ(t(5, 5), cplx(3.0));
  EXPECT_EQ(t(0, 4), cplx(1.0));
  EXPECT_EQ(t(1, 3), cplx(-1.0));
  EXPECT_EQ(t(0, 3), cplx(0.0));
  EXPECT_EQ(t.bottomLeftCorner(3, 3).norm(), 0.0);
}

TEST(Gallery, AsmIdentityIsExact) {
  for (int d : {3, 4, 5, 6}) {
    const Matrix t = asm_generator(d);
    const Matrix o = omega(d);
    EXPECT_EQ((t + o * t.transpose() * o).norm(), 0.0) << "d = " << d;
  }
  const Matrix r = random_asm(4, 3);
  EXPECT_LT((r + omega(4) * r.transpose() * omega(4)).norm(), 1e-14);
}

TEST(Gallery, ToeplitzReversalWitness) {
  const Matrix t = toeplitz_random(6, 2);
  EXPECT_EQ((reversal(6) * t.transpose() * reversal(6) - t).norm(), 0.0);
  EXPECT_EQ(t(0, 0), t(5, 5));
  EXPECT_EQ(t(1, 0), t(5, 4));
}

TEST(Gallery, SeededKindsAreDeterministic) {
  EXPECT_EQ(random_csm(4, 9), random_csm(4, 9));
  EXPECT_NE(random_csm(4, 9), random_csm(4, 10));
  EXPECT_EQ(random_unitary_matrix(3, 1), random_unitary_matrix(3, 1));
  EXPECT_EQ(random_conjugation(4, 2).factor(), random_conjugation(4, 2).factor());
  EXPECT_EQ(scramble(halmos(), 5), scramble(halmos(), 5));
  const Matrix s = random_csm(5, 1);
  EXPECT_EQ(s, s.transpose());
}

TEST(Gallery, ParseKinds) {
  EXPECT_EQ(parse_generator_kind("random-csm"), GeneratorKind::random_csm);
  EXPECT_EQ(parse_generator_kind("random_asm"), GeneratorKind::random_asm);
  EXPECT_EQ(parse_generator_kind("asm"), GeneratorKind::asm_irreducible);
  EXPECT_EQ(parse_generator_kind("toeplitz"), GeneratorKind::toeplitz_random);
  EXPECT_EQ(to_string(GeneratorKind::direct_sum), "direct_sum");
  try {
    parse_generator_kind("hermite");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSpec);
  }
}

TEST(Gallery, GenerateFromSpec) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::asm_irreducible;
  spec.d = 4;
  EXPECT_EQ(generate_matrix(spec), asm_generator(4));
  spec.d = 3;
  EXPECT_THROW(generate(spec), Error);

  GeneratorSpec sum;
  sum.kind = GeneratorKind::direct_sum;
  sum.operands = {GeneratorSpec{GeneratorKind::halmos, 0, 0, 0, {}},
                  GeneratorSpec{GeneratorKind::random_csm, 0, 2, 7, {}}};
  const Matrix m = generate_matrix(sum);
  EXPECT_EQ(m, direct_sum(halmos(), random_csm(2, 7)));

  GeneratorSpec scr = sum;
  scr.kind = GeneratorKind::scrambled;
  scr.seed = 11;
  EXPECT_EQ(generate_matrix(scr), scramble(m, 11));
  scr.operands.clear();
  EXPECT_THROW(generate(scr), Error);
}

TEST(Gallery, AntilinearKinds) {
  GeneratorSpec spec{GeneratorKind::random_anticonjugation, 0, 4, 1, {}};
  const Generated g = generate(spec);
  ASSERT_TRUE(std::holds_alternative<Anticonjugation>(g));
  const Matrix s = std::get<Anticonjugation>(g).factor();
  EXPECT_LT((s + s.transpose()).norm(), 1e-14);
  spec.n = 3;
  EXPECT_THROW(generate(spec), Error);
  GeneratorSpec bad{GeneratorKind::random_asm, 0, 5, 1, {}};
  EXPECT_THROW(generate(bad), Error);
}

TEST(Gallery, RegressionVectors) {
  const auto v = regression_vectors();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].expected_uet, "yes");
  ASSERT_TRUE(v[0].commuting);
  EXPECT_EQ((*v[0].commuting * v[0].t - v[0].t * *v[0].commuting).norm(), 0.0);
}
