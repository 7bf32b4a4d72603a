#pragma once

// Named matrices and seeded random instances of each structural class.

#include "mtt/antilinear.hpp"
#include "mtt/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mtt {

enum class GeneratorKind {
  halmos,
  george,
  asm_irreducible,
  random_csm,
  random_asm,
  random_unitary,
  random_conjugation,
  random_anticonjugation,
  toeplitz_random,
  direct_sum,
  scrambled,
};

std::string to_string(GeneratorKind k);
/// Accepts the snake_case names and their dashed forms ("random-csm"); "asm"
/// is an alias for asm_irreducible. Throws InvalidSpec.
GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::halmos;
  int d = 0;  // asm_irreducible, random_asm (half size)
  int n = 0;  // sizes of the random kinds
  std::uint64_t seed = 0;
  std::vector<GeneratorSpec> operands;  // direct_sum, scrambled
};

using Generated = std::variant<Matrix, Conjugation, Anticonjugation>;

/// Pure function of the spec. Throws InvalidSpec.
Generated generate(const GeneratorSpec& spec);
/// generate() for the kinds that yield a matrix; conjugations come back as
/// their unitary factor.
Matrix generate_matrix(const GeneratorSpec& spec);

Matrix halmos();
Matrix george();
/// [[A, B], [0, A]] with A = diag(1, …, d) and B skew, +1 above the diagonal.
/// The 2d×2d result is irreducible for d ≥ 4; any d ≥ 1 is accepted here.
Matrix asm_generator(int d);
Matrix random_csm(int n, std::uint64_t seed);
/// 2d×2d antiskewsymmetric matrix from seeded Gaussian blocks.
Matrix random_asm(int d, std::uint64_t seed);
Matrix random_unitary_matrix(int n, std::uint64_t seed);
Conjugation random_conjugation(int n, std::uint64_t seed);
Anticonjugation random_anticonjugation(int n, std::uint64_t seed);
Matrix toeplitz_random(int n, std::uint64_t seed);
/// W·t·W* for a seeded Haar unitary W.
Matrix scramble(const Matrix& t, std::uint64_t seed);

/// The 6×6 matrix printed for the d = 3 generator, which commutes with it.
Matrix printed_commuting_matrix();

struct RegressionVector {
  std::string name;
  Matrix t;
  /// Expected is_uet verdict ("yes" or "no").
  std::string expected_uet;
  /// Non-scalar matrix commuting with t, when the pair is a commutation check.
  std::optional<Matrix> commuting;
};

std::vector<RegressionVector> regression_vectors();

}  // namespace mtt
