#include "mtt/gallery.hpp"

#include "mtt/error.hpp"

#include <algorithm>
#include <array>

namespace mtt {

namespace {

constexpr std::array<std::pair<GeneratorKind, const char*>, 11> kNames{{
    {GeneratorKind::halmos, "halmos"},
    {GeneratorKind::george, "george"},
    {GeneratorKind::asm_irreducible, "asm_irreducible"},
    {GeneratorKind::random_csm, "random_csm"},
    {GeneratorKind::random_asm, "random_asm"},
    {GeneratorKind::random_unitary, "random_unitary"},
    {GeneratorKind::random_conjugation, "random_conjugation"},
    {GeneratorKind::random_anticonjugation, "random_anticonjugation"},
    {GeneratorKind::toeplitz_random, "toeplitz_random"},
    {GeneratorKind::direct_sum, "direct_sum"},
    {GeneratorKind::scrambled, "scrambled"},
}};

// Stream ids keep the draws of different generators independent even when
// they share a seed.
enum Stream : std::uint64_t {
  kCsm = 1,
  kAsm,
  kUnitary,
  kConjugation,
  kAnticonjugation,
  kToeplitz,
  kScramble,
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidSpec, what);
}

}  // namespace

std::string to_string(GeneratorKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "halmos";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "asm") return GeneratorKind::asm_irreducible;
  if (key == "toeplitz") return GeneratorKind::toeplitz_random;
  for (const auto& [kind, n] : kNames)
    if (key == n) return kind;
  throw Error(ErrorKind::InvalidSpec, "unknown generator kind '" + name + "'");
}

Matrix halmos() {
  Matrix t(3, 3);
  t << 0, 1, 0, 0, 0, 2, 0, 0, 0;
  return t;
}

Matrix george() {
  Matrix t(3, 3);
  t << 1, 0, 0, 4, 3, 0, 0, 2, 5;
  return t;
}

Matrix asm_generator(int d) {
  require(d >= 1, "asm generator needs d >= 1");
  Matrix t = Matrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    t(i, i) = i + 1;
    t(d + i, d + i) = i + 1;
    for (int j = 0; j < d; ++j)
      if (i != j) t(i, d + j) = i < j ? 1.0 : -1.0;
  }
  return t;
}

Matrix random_csm(int n, std::uint64_t seed) {
  require(n >= 1, "random_csm needs n >= 1");
  Rng rng = make_rng(seed, kCsm);
  const Matrix g = random_gaussian(n, n, rng);
  return (g + g.transpose()) / 2.0;
}

Matrix random_asm(int d, std::uint64_t seed) {
  require(d >= 1, "random_asm needs d >= 1");
  Rng rng = make_rng(seed, kAsm);
  AsmShape s;
  s.d = d;
  s.a = random_gaussian(d, d, rng);
  const Matrix b = random_gaussian(d, d, rng);
  const Matrix c = random_gaussian(d, d, rng);
  s.b = b - b.transpose();
  s.dd = c - c.transpose();
  return s.assemble();
}

Matrix random_unitary_matrix(int n, std::uint64_t seed) {
  require(n >= 1, "random_unitary needs n >= 1");
  Rng rng = make_rng(seed, kUnitary);
  return random_unitary(n, rng);
}

Conjugation random_conjugation(int n, std::uint64_t seed) {
  require(n >= 1, "random_conjugation needs n >= 1");
  Rng rng = make_rng(seed, kConjugation);
  const Matrix w = random_unitary(n, rng);
  const Matrix u = w * w.transpose();
  return Conjugation((u + u.transpose()) / 2.0);
}

Anticonjugation random_anticonjugation(int n, std::uint64_t seed) {
  require(n >= 2 && n % 2 == 0, "random_anticonjugation needs an even n");
  Rng rng = make_rng(seed, kAnticonjugation);
  const Matrix w = random_unitary(n, rng);
  const Matrix s = w * omega(n / 2) * w.transpose();
  return Anticonjugation((s - s.transpose()) / 2.0);
}

Matrix toeplitz_random(int n, std::uint64_t seed) {
  require(n >= 1, "toeplitz_random needs n >= 1");
  Rng rng = make_rng(seed, kToeplitz);
  const Matrix c = random_gaussian(2 * n - 1, 1, rng);  // c(k + n − 1) is the k-th diagonal
  Matrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = c(i - j + n - 1, 0);
  return t;
}

Matrix scramble(const Matrix& t, std::uint64_t seed) {
  Rng rng = make_rng(seed, kScramble);
  const Matrix w = random_unitary(static_cast<int>(t.rows()), rng);
  return w * t * w.adjoint();
}

Generated generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::halmos: return halmos();
    case GeneratorKind::george: return george();
    case GeneratorKind::asm_irreducible:
      require(spec.d >= 4, "asm_irreducible needs d >= 4");
      return asm_generator(spec.d);
    case GeneratorKind::random_csm: return random_csm(spec.n, spec.seed);
    case GeneratorKind::random_asm: {
      if (spec.n != 0) require(spec.n % 2 == 0, "random_asm needs an even output size");
      return random_asm(spec.n != 0 ? spec.n / 2 : spec.d, spec.seed);
    }
    case GeneratorKind::random_unitary: return random_unitary_matrix(spec.n, spec.seed);
    case GeneratorKind::random_conjugation: return random_conjugation(spec.n, spec.seed);
    case GeneratorKind::random_anticonjugation: return random_anticonjugation(spec.n, spec.seed);
    case GeneratorKind::toeplitz_random: return toeplitz_random(spec.n, spec.seed);
    case GeneratorKind::direct_sum:
    case GeneratorKind::scrambled: {
      require(!spec.operands.empty(), to_string(spec.kind) + " needs at least one operand");
      std::vector<Matrix> parts;
      for (const auto& op : spec.operands) parts.push_back(generate_matrix(op));
      const Matrix sum = direct_sum(parts);
      if (spec.kind == GeneratorKind::direct_sum) return sum;
      return scramble(sum, spec.seed);
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown generator kind");
}

Matrix generate_matrix(const GeneratorSpec& spec) {
  const Generated g = generate(spec);
  if (const auto* m = std::get_if<Matrix>(&g)) return *m;
  if (const auto* c = std::get_if<Conjugation>(&g)) return c->factor();
  return std::get<Anticonjugation>(g).factor();
}

Matrix printed_commuting_matrix() {
  Matrix q(6, 6);
  q << -1, 1, 0.5, 1, 0, 0,  //
      1, 0.5, 1, 0, 1, 0,    //
      0.5, 1, -1, 0, 0, 1,   //
      1, 0, 0, 1, -1, -0.5,  //
      0, 1, 0, -1, -0.5, -1, //
      0, 0, 1, -0.5, -1, 1;
  return q;
}

std::vector<RegressionVector> regression_vectors() {
  return {
      {"asm_generator_d3", asm_generator(3), "yes", printed_commuting_matrix()},
      {"halmos", halmos(), "no", std::nullopt},
      {"george", george(), "no", std::nullopt},
  };
}

}  // namespace mtt
