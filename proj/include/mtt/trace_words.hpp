#pragma once

// Unitary invariants built from traces of words in X and X*.
//
// A word is serialized over the alphabet {'x', '*'}: "x" is X and "*" is X*,
// read left to right, so "*xx**x" is X*·X·X·X*·X*·X.

#include "mtt/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mtt {

enum class DimClass { two, three, general };

struct TraceProfile {
  DimClass dim_class = DimClass::general;
  std::vector<cplx> values;
  std::vector<std::string> word_set;
};

/// tr of the word evaluated at x. Throws InvalidArgument on a bad letter.
cplx trace_word(const Matrix& x, const std::string& word);

/// (tr X, tr X², tr X*X). Throws WrongDimension unless x is 2×2.
TraceProfile profile_2x2(const Matrix& x);

/// The seven Sibirskii traces. Throws WrongDimension unless x is 3×3.
TraceProfile profile_3x3(const Matrix& x);

/// Both sides of the 3×3 complex-symmetry criterion:
/// tr X*X²X*²X and tr XX*²X²X*.
std::pair<cplx, cplx> uecsm_trace_sides(const Matrix& x);

/// 3×3 UECSM (equivalently UET) test; the sides must agree within
/// eps_residual·(1 + ‖x‖_F⁶).
bool uecsm_test_3x3(const Matrix& x, const Tolerances& tol);

struct SpechtResult {
  bool equal_so_far = true;
  std::optional<std::string> first_violating_word;
  std::uint64_t words_checked = 0;
};

inline constexpr std::uint64_t kDefaultWordCap = std::uint64_t{1} << 20;

/// Compares tr w(a, a*) with tr w(b, b*) over all words up to max_len,
/// ordered by length and then lexicographically with 'x' < '*'. A mismatch
/// proves a ≇ b. Throws WrongDimension, InvalidArgument (max_len < 1) or
/// BudgetTooLarge when 2^{max_len+1} exceeds word_cap.
SpechtResult specht_bounded(const Matrix& a, const Matrix& b, int max_len, const Tolerances& tol,
                            std::uint64_t word_cap = kDefaultWordCap);

/// Budget used when none is requested: 6 for 3×3, otherwise 8.
int default_word_budget(Eigen::Index n);

/// The exact Pearcy length bound 2n².
int pearcy_budget(Eigen::Index n);

}  // namespace mtt
