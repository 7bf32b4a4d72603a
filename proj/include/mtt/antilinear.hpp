#pragma once

// Conjugations C = UJ (U symmetric unitary) and anticonjugations K = SJ
// (S skew-symmetric unitary), where J is entrywise complex conjugation.
// Both are stored by their unitary factor.

#include "mtt/linalg.hpp"

namespace mtt {

class Conjugation {
public:
  /// Throws InvalidArgument unless `u` is unitary and symmetric within `tol`.
  explicit Conjugation(Matrix u, double tol = 1e-8);

  /// J on ℂⁿ.
  static Conjugation canonical(int n);

  int dim() const { return static_cast<int>(u_.rows()); }
  const Matrix& factor() const { return u_; }

  /// u·conj(x); applied columnwise to matrices.
  Vector apply(const Vector& x) const;
  Matrix apply_columns(const Matrix& x) const;

  /// The matrix of C·m*·C, i.e. u·mᵗ·u*.
  Matrix sandwich_adjoint(const Matrix& m) const;

  /// Factor of the conjugation restricted to the C-invariant subspace
  /// spanned by the orthonormal columns of `frame`, in that frame's
  /// coordinates: frame*·u·conj(frame).
  Conjugation restrict_to(const Matrix& frame, double tol = 1e-6) const;

private:
  Matrix u_;
};

class Anticonjugation {
public:
  /// Throws InvalidArgument unless `s` is unitary, skew-symmetric and of
  /// even size (no anticonjugation exists in odd dimension).
  explicit Anticonjugation(Matrix s, double tol = 1e-8);

  /// K = ΩJ on ℂ^{2d}.
  static Anticonjugation canonical(int d);

  int dim() const { return static_cast<int>(s_.rows()); }
  const Matrix& factor() const { return s_; }

  Vector apply(const Vector& x) const;
  Matrix apply_columns(const Matrix& x) const;

  /// The matrix of −K·m*·K, i.e. s·mᵗ·s*.
  Matrix sandwich_adjoint(const Matrix& m) const;

  Anticonjugation restrict_to(const Matrix& frame, double tol = 1e-6) const;

private:
  Matrix s_;
};

/// A 2d×2d antiskewsymmetric matrix [[a, b], [dd, aᵗ]] with b, dd skew.
struct AsmShape {
  int d = 0;
  Matrix a;
  Matrix b;
  Matrix dd;

  Matrix assemble() const;

  /// Reads the blocks off `m` and projects them onto the exact ASM pattern.
  /// Throws InvalidArgument if `m` deviates from the pattern by more than
  /// tol·‖m‖_F.
  static AsmShape from_matrix(const Matrix& m, double tol);
};

/// True iff m = −Ω·mᵗ·Ω within tol·‖m‖_F (m must have even size).
bool satisfies_asm_identity(const Matrix& m, double tol);

/// Unitary whose columns are fixed by C.
Matrix fixed_basis(const Conjugation& c);

/// Unitary with columns e₁…e_{2d} such that K e_i = e_{i+d}, K e_{i+d} = −e_i.
Matrix canonical_anti_basis(const Anticonjugation& k);

struct CsmRealization {
  Matrix s;  // complex symmetric, s = q*·t·q
  Matrix q;  // unitary
};

/// For t = C t* C, returns a C-fixed orthonormal basis q in which t is
/// complex symmetric. Throws NotCSymmetricWithRespectToC.
CsmRealization realize_csm(const Matrix& t, const Conjugation& c, const Tolerances& tol);

struct AsmRealization {
  AsmShape shape;
  Matrix q;  // q*·t·q = shape.assemble()
};

/// For t = −K t* K, returns the canonical anticonjugation basis in which t
/// is antiskewsymmetric. Throws NotAntiSymmetricWithRespectToK.
AsmRealization realize_asm(const Matrix& t, const Anticonjugation& k, const Tolerances& tol);

}  // namespace mtt
