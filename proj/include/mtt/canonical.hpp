#pragma once

// Canonical decomposition of a UET matrix into irreducible complex symmetric
// summands (type I), irreducible antiskewsymmetric summands (type II) and
// pairs A ⊕ Aᵗ with A neither UECSM nor UEASM (type III).

#include "mtt/antilinear.hpp"
#include "mtt/intertwiner.hpp"
#include "mtt/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtt {

struct ConjugatePair {
  cplx lambda;  // Im λ > 0; the partner cluster sits at conj(λ)
  int size = 0;
};

/// Clustered spectrum of V = U·Ū. Rows of `w` are eigenvectors of V, ordered
/// as the +1 block, the −1 block, then for each pair the λ block followed by
/// the conj(λ) block, so that w·V·w* = D.
struct SpectralBlockStructure {
  int plus_dim = 0;
  int minus_dim = 0;
  std::vector<ConjugatePair> pairs;
  Matrix w;

  /// Offset of the λ block of pair i (its conj(λ) block follows it).
  int pair_offset(std::size_t i) const;
};

/// Throws SpectrumNotConjugateSymmetric when the clustered spectrum violates
/// the structure every U·Ū must have (even −1 multiplicity, matched conjugate
/// pairs of equal size, unit determinant).
SpectralBlockStructure spectral_structure(const Matrix& u, const Tolerances& tol);

struct PairBlock {
  Matrix x;  // unitary, the (conj(λ), λ) block of Q
  cplx lambda;
};

struct StructuredQ {
  Matrix q_plus;   // symmetric unitary
  Matrix q_minus;  // skew-symmetric unitary
  std::vector<PairBlock> x_blocks;
};

/// Q = W·U·Wᵗ. Throws QStructureViolated if Q has mass off the block
/// pattern or a (λ, conj(λ)) block differs from λ·Xᵗ.
StructuredQ structure_q(const Matrix& u, const SpectralBlockStructure& s, const Tolerances& tol);

struct ExtractedBlocks {
  std::optional<Matrix> t_plus;   // t_plus = Q₊ t_plusᵗ Q₊*
  std::optional<Matrix> t_minus;  // t_minus = Q₋ t_minusᵗ Q₋*
  Matrix plus_frame;              // orthonormal columns, t_plus = frame*·t·frame
  Matrix minus_frame;
  std::vector<Matrix> a_blocks;
  /// For pair i, columns in which t reads a_blocks[i] ⊕ a_blocks[i]ᵗ.
  std::vector<Matrix> pair_frames;
};

/// Throws BlockLeakage if W·t·W* is not block diagonal along the spectral
/// blocks, or if a conj(λ) block is not X·Aᵗ·X*.
ExtractedBlocks extract_blocks(const Matrix& t, const SpectralBlockStructure& s, const StructuredQ& q,
                               const Tolerances& tol);

enum class SummandKind { I, II, III };
std::string to_string(SummandKind k);

struct Summand {
  SummandKind kind = SummandKind::I;
  Matrix matrix;
  /// Type I: symmetric witness I. Type II: skew witness Ω. Type III:
  /// symmetric witness [[0, I], [I, 0]].
  UetCertificate certificate;
  std::optional<AsmShape> asm_shape;  // type II
  std::optional<Matrix> factor;       // type III
  bool provisional = false;           // type III whose factor's UET status was undetermined
  std::string evidence;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// basis*·t·basis = ⊕ summand matrices, in summand order.
struct Refinement {
  std::vector<Summand> summands;
  Matrix basis;
};

Refinement refine_csm_block(const Matrix& t, const Conjugation& c, const Tolerances& tol);
Refinement refine_asm_block(const Matrix& t, const Anticonjugation& k, const Tolerances& tol);
/// Refinement of a ⊕ aᵗ; the basis is in the coordinates of that 2d×2d matrix.
Refinement refine_aat_block(const Matrix& a, const Tolerances& tol);

struct CanonicalDecomposition {
  Matrix global_w;
  std::vector<Summand> summands;
  std::vector<std::string> warnings;
};

/// Runs is_uet and the block pipeline. Throws NotUET, Undetermined, or the
/// structural error of the last failed attempt. Summands come out ordered
/// type I, II, III, then by size, then lexicographically by entries.
CanonicalDecomposition decompose_canonical(const Matrix& t, const Tolerances& tol);

/// Same, starting from a known UET certificate.
CanonicalDecomposition decompose_canonical(const Matrix& t, const UetCertificate& cert, const Tolerances& tol);

/// Checks unitarity of global_w, the reconstruction, summand sizes and leaf
/// irreducibility. Throws InvariantViolated.
void validate_decomposition(const Matrix& t, const CanonicalDecomposition& d, const Tolerances& tol);

/// Symmetric realization of t assembled from a decomposition without type II
/// summands: the conjugation gw·(⊕ I or [[0, I], [I, 0]])·gwᵗ fed to
/// realize_csm.
CsmRealization global_symmetric_realization(const Matrix& t, const CanonicalDecomposition& d, const Tolerances& tol);

}  // namespace mtt
