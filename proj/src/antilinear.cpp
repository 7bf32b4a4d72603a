#include "mtt/antilinear.hpp"

#include "mtt/error.hpp"

#include <Eigen/QR>

#include <cmath>

namespace mtt {

namespace {

Matrix sym_part(const Matrix& m) { return (m + m.transpose()) / 2.0; }
Matrix skew_part(const Matrix& m) { return (m - m.transpose()) / 2.0; }

// Orthonormal complement, inside span(frame), of the directions whose
// coordinates (w.r.t. frame) are the columns of `coords`.
Matrix deflate(const Matrix& frame, const Matrix& coords) {
  const Eigen::Index m = frame.cols();
  Eigen::HouseholderQR<Matrix> qr(coords);
  const Matrix q = qr.householderQ() * Matrix::Identity(m, m);
  return frame * q.rightCols(m - coords.cols());
}

}  // namespace

// ---- Conjugation ---------------------------------------------------------

Conjugation::Conjugation(Matrix u, double tol) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::InvalidArgument, "conjugation factor must be square");
  if (!all_finite(u)) throw Error(ErrorKind::InvalidArgument, "conjugation factor has non-finite entries");
  if (unitarity_defect(u) > tol) throw Error(ErrorKind::InvalidArgument, "conjugation factor is not unitary");
  if ((u - u.transpose()).norm() > tol)
    throw Error(ErrorKind::InvalidArgument, "conjugation factor is not symmetric");
  u_ = sym_part(u);
}

Conjugation Conjugation::canonical(int n) { return Conjugation(Matrix::Identity(n, n)); }

Vector Conjugation::apply(const Vector& x) const {
  if (x.size() != u_.rows()) throw Error(ErrorKind::DimensionMismatch, "conjugation applied to wrong size");
  return u_ * x.conjugate();
}

Matrix Conjugation::apply_columns(const Matrix& x) const {
  if (x.rows() != u_.rows()) throw Error(ErrorKind::DimensionMismatch, "conjugation applied to wrong size");
  return u_ * x.conjugate();
}

Matrix Conjugation::sandwich_adjoint(const Matrix& m) const { return u_ * m.transpose() * u_.adjoint(); }

Conjugation Conjugation::restrict_to(const Matrix& frame, double tol) const {
  const Matrix r = frame.adjoint() * u_ * frame.conjugate();
  if (unitarity_defect(r) > tol || (r - r.transpose()).norm() > tol)
    throw Error(ErrorKind::InvalidArgument, "subspace is not invariant under the conjugation");
  return Conjugation(sym_part(polar_unitary(sym_part(r))), tol);
}

// ---- Anticonjugation -----------------------------------------------------

Anticonjugation::Anticonjugation(Matrix s, double tol) {
  if (s.rows() != s.cols()) throw Error(ErrorKind::InvalidArgument, "anticonjugation factor must be square");
  if (s.rows() % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "no anticonjugation exists in odd dimension");
  if (!all_finite(s)) throw Error(ErrorKind::InvalidArgument, "anticonjugation factor has non-finite entries");
  if (unitarity_defect(s) > tol) throw Error(ErrorKind::InvalidArgument, "anticonjugation factor is not unitary");
  if ((s + s.transpose()).norm() > tol)
    throw Error(ErrorKind::InvalidArgument, "anticonjugation factor is not skew-symmetric");
  s_ = skew_part(s);
}

Anticonjugation Anticonjugation::canonical(int d) { return Anticonjugation(omega(d)); }

Vector Anticonjugation::apply(const Vector& x) const {
  if (x.size() != s_.rows()) throw Error(ErrorKind::DimensionMismatch, "anticonjugation applied to wrong size");
  return s_ * x.conjugate();
}

Matrix Anticonjugation::apply_columns(const Matrix& x) const {
  if (x.rows() != s_.rows()) throw Error(ErrorKind::DimensionMismatch, "anticonjugation applied to wrong size");
  return s_ * x.conjugate();
}

Matrix Anticonjugation::sandwich_adjoint(const Matrix& m) const { return s_ * m.transpose() * s_.adjoint(); }

Anticonjugation Anticonjugation::restrict_to(const Matrix& frame, double tol) const {
  const Matrix r = frame.adjoint() * s_ * frame.conjugate();
  if (unitarity_defect(r) > tol || (r + r.transpose()).norm() > tol)
    throw Error(ErrorKind::InvalidArgument, "subspace is not invariant under the anticonjugation");
  return Anticonjugation(skew_part(polar_unitary(skew_part(r))), tol);
}

// ---- ASM shape -----------------------------------------------------------

Matrix AsmShape::assemble() const {
  Matrix m(2 * d, 2 * d);
  m.topLeftCorner(d, d) = a;
  m.topRightCorner(d, d) = b;
  m.bottomLeftCorner(d, d) = dd;
  m.bottomRightCorner(d, d) = a.transpose();
  return m;
}

AsmShape AsmShape::from_matrix(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "ASM must be square of even size");
  const int d = static_cast<int>(m.rows() / 2);
  const Matrix a1 = m.topLeftCorner(d, d);
  const Matrix b1 = m.topRightCorner(d, d);
  const Matrix d1 = m.bottomLeftCorner(d, d);
  const Matrix a2 = m.bottomRightCorner(d, d);
  const double defect = std::sqrt((a1 - a2.transpose()).squaredNorm() + (b1 + b1.transpose()).squaredNorm() +
                                  (d1 + d1.transpose()).squaredNorm());
  if (defect > tol * std::max(m.norm(), 1e-300) && defect > 0)
    throw Error(ErrorKind::InvalidArgument, "matrix is not antiskewsymmetric");
  return AsmShape{d, (a1 + a2.transpose()) / 2.0, skew_part(b1), skew_part(d1)};
}

bool satisfies_asm_identity(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  const Matrix o = omega(static_cast<int>(m.rows() / 2));
  return (m + o * m.transpose() * o).norm() <= tol * std::max(m.norm(), 1e-300);
}

// ---- bases ---------------------------------------------------------------

Matrix fixed_basis(const Conjugation& c) {
  const int n = c.dim();
  Matrix q(n, n);
  Matrix remaining = Matrix::Identity(n, n);  // frame of a C-invariant subspace
  for (int k = 0; k < n; ++k) {
    const Vector v = remaining.col(0);
    const Vector cv = c.apply(v);
    Vector w = v + cv;
    if (w.norm() <= 0.5) w = kI * (v - cv);
    w.normalize();
    q.col(k) = w;
    if (k + 1 < n) remaining = deflate(remaining, remaining.adjoint() * w);
  }
  return q;
}

Matrix canonical_anti_basis(const Anticonjugation& k) {
  const int n = k.dim();
  const int d = n / 2;
  Matrix q(n, n);
  Matrix remaining = Matrix::Identity(n, n);  // frame of a K-invariant subspace
  for (int i = 0; i < d; ++i) {
    const Vector e = remaining.col(0);
    const Vector ke = k.apply(e);
    q.col(i) = e;
    q.col(i + d) = ke;
    if (i + 1 < d) {
      Matrix coords(remaining.cols(), 2);
      coords.col(0) = remaining.adjoint() * e;
      coords.col(1) = remaining.adjoint() * ke;
      remaining = deflate(remaining, coords);
    }
  }
  return q;
}

// ---- realizations --------------------------------------------------------

CsmRealization realize_csm(const Matrix& t, const Conjugation& c, const Tolerances& tol) {
  if (t.rows() != t.cols() || t.rows() != c.dim())
    throw Error(ErrorKind::DimensionMismatch, "realize_csm: sizes differ");
  const double scale = t.norm();
  const double defect = (t - c.sandwich_adjoint(t)).norm();
  if (defect > tol.eps_residual * scale)
    throw Error(ErrorKind::NotCSymmetricWithRespectToC, "‖t − C t* C‖_F = " + std::to_string(defect));
  Matrix q = fixed_basis(c);
  const Matrix s = q.adjoint() * t * q;
  if ((s - s.transpose()).norm() > tol.eps_residual * std::max(scale, 1e-300) && scale > 0)
    throw Error(ErrorKind::NotCSymmetricWithRespectToC, "realized matrix is not symmetric");
  return {sym_part(s), std::move(q)};
}

AsmRealization realize_asm(const Matrix& t, const Anticonjugation& k, const Tolerances& tol) {
  if (t.rows() != t.cols() || t.rows() != k.dim())
    throw Error(ErrorKind::DimensionMismatch, "realize_asm: sizes differ");
  const double scale = t.norm();
  const double defect = (t - k.sandwich_adjoint(t)).norm();
  if (defect > tol.eps_residual * scale)
    throw Error(ErrorKind::NotAntiSymmetricWithRespectToK, "‖t + K t* K‖_F = " + std::to_string(defect));
  Matrix q = canonical_anti_basis(k);
  const Matrix m = q.adjoint() * t * q;
  try {
    return {AsmShape::from_matrix(m, tol.eps_residual), std::move(q)};
  } catch (const Error&) {
    throw Error(ErrorKind::NotAntiSymmetricWithRespectToK, "realized matrix is not antiskewsymmetric");
  }
}

}  // namespace mtt
