#pragma once

// Constructive deciders for T ≅ Tᵗ (UET), unitary equivalence to a complex
// symmetric matrix (UECSM) and to an antiskewsymmetric matrix (UEASM).

#include "mtt/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtt {

enum class SymmetryClass { symmetric, skew, neither };
enum class Verdict { yes, no, undetermined };
enum class CertificateKind { uet, uecsm, ueasm };

std::string to_string(SymmetryClass c);
std::string to_string(Verdict v);
std::string to_string(CertificateKind k);

/// Witness U with T = U·Tᵗ·U*.
struct UetCertificate {
  CertificateKind kind = CertificateKind::uet;
  Matrix u;
  /// ‖T·U − U·Tᵗ‖_F / (‖T‖_F·‖U‖_F), zero for T = 0.
  double residual = 0.0;
  SymmetryClass symmetry = SymmetryClass::neither;
  /// Scalar value of U·Ū when it is ±I.
  std::optional<int> alpha;
  std::string evidence;
};

struct Decision {
  Verdict verdict = Verdict::undetermined;
  std::optional<UetCertificate> certificate;
  std::string evidence;
  std::vector<std::string> warnings;
};

double certificate_residual(const Matrix& t, const Matrix& u);
/// symmetric iff ‖U − Uᵗ‖_F ≤ tol, skew iff ‖U + Uᵗ‖_F ≤ tol.
SymmetryClass symmetry_class(const Matrix& u, double tol);
/// ±1 when U·Ū = ±I within tol·√n, otherwise empty.
std::optional<int> scalar_alpha(const Matrix& u, double tol);

/// Builds a certificate for (t, u), filling residual, symmetry and alpha.
UetCertificate make_certificate(const Matrix& t, const Matrix& u, CertificateKind kind, const Tolerances& tol,
                                std::string evidence = {});

struct KernelBasis {
  std::vector<Matrix> basis;  // Frobenius-orthonormal
  bool borderline = false;
  double smallest_kept_ratio = 1.0;
  double largest_dropped_ratio = 0.0;
};

/// Frobenius-orthonormal basis of {X : aX = Xb}.
std::vector<Matrix> sylvester_kernel(const Matrix& a, const Matrix& b, const Tolerances& tol);

/// Frobenius-orthonormal basis of {X : aX = Xb and a*X = Xb*}. Every
/// unitary solution of aX = Xb lies in this subspace, and when one exists
/// the polar factor of a generic element is such a unitary.
KernelBasis star_intertwiner_kernel(const Matrix& a, const Matrix& b, const Tolerances& tol);

struct UnitaryFit {
  Matrix u;
  double residual = 0.0;  // distance (per √n) from u to the span
};

/// Alternating projection between span(basis) and the unitary group from
/// tol.restarts seeded starts, each for at most tol.max_iter steps.
std::optional<UnitaryFit> find_unitary_in_span(const std::vector<Matrix>& basis, const Tolerances& tol);

Decision is_uet(const Matrix& t, const Tolerances& tol);
Decision is_uecsm(const Matrix& t, const Tolerances& tol);
Decision is_ueasm(const Matrix& t, const Tolerances& tol);

/// Same, with an explicit trace-word length budget (0 picks the default).
Decision is_uet(const Matrix& t, const Tolerances& tol, int word_budget);
Decision is_uecsm(const Matrix& t, const Tolerances& tol, int word_budget);
Decision is_ueasm(const Matrix& t, const Tolerances& tol, int word_budget);

enum class IrreducibleClass { uecsm, ueasm };

/// α-dichotomy for an irreducible UET matrix: U·Ū = αI with α = ±1.
/// Throws NotScalar or OddDimensionSkew.
IrreducibleClass classify_irreducible_uet(const Matrix& t, const UetCertificate& cert, const Tolerances& tol);

}  // namespace mtt
