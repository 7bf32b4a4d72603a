#pragma once

// Hermitian commutant, irreducibility (in the unitary sense) and orthogonal
// splitting into irreducible direct summands.

#include "mtt/linalg.hpp"

#include <optional>
#include <vector>

namespace mtt {

struct CommutantBasis {
  int dim_real = 0;
  /// Hermitian, orthonormal in the real Frobenius inner product.
  std::vector<Matrix> elements;
  /// Rank-decision margins of the underlying real kernel.
  double smallest_kept_ratio = 1.0;
  double largest_dropped_ratio = 0.0;
};

/// Real basis of {Q = Q* : QT = TQ}.
CommutantBasis hermitian_commutant(const Matrix& t, const Tolerances& tol);

bool is_irreducible(const Matrix& t, const Tolerances& tol);

struct Split {
  Subspace p;  // reducing subspace, p.frame() are the first columns of w
  Matrix t1;
  Matrix t2;
  Matrix w;  // unitary, w*·t·w = t1 ⊕ t2
};

/// Splits t along a spectral subspace of a non-scalar commutant element.
/// Returns nullopt when t is irreducible; throws SplitResidualTooLarge if
/// no candidate yields a clean block diagonal.
std::optional<Split> split_once(const Matrix& t, const Tolerances& tol);

struct IrreducibleDecomposition {
  Matrix w;
  std::vector<Matrix> blocks;  // w*·t·w = ⊕ blocks, each irreducible
};

IrreducibleDecomposition decompose_irreducibles(const Matrix& t, const Tolerances& tol);

}  // namespace mtt
