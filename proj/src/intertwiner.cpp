#include "mtt/intertwiner.hpp"

#include "mtt/error.hpp"
#include "mtt/trace_words.hpp"

#include <cmath>
#include <sstream>

namespace mtt {

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::symmetric: return "symmetric";
    case SymmetryClass::skew: return "skew";
    case SymmetryClass::neither: return "neither";
  }
  return "neither";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::uet: return "uet";
    case CertificateKind::uecsm: return "uecsm";
    case CertificateKind::ueasm: return "ueasm";
  }
  return "uet";
}

double certificate_residual(const Matrix& t, const Matrix& u) {
  if (t.rows() != u.rows() || u.rows() != u.cols()) return INFINITY;
  const double scale = t.norm() * u.norm();
  const double diff = (t * u - u * t.transpose()).norm();
  if (scale == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return diff / scale;
}

SymmetryClass symmetry_class(const Matrix& u, double tol) {
  if ((u - u.transpose()).norm() <= tol) return SymmetryClass::symmetric;
  if ((u + u.transpose()).norm() <= tol) return SymmetryClass::skew;
  return SymmetryClass::neither;
}

std::optional<int> scalar_alpha(const Matrix& u, double tol) {
  const Eigen::Index n = u.rows();
  const Matrix v = u * u.conjugate();
  const double bound = tol * std::sqrt(static_cast<double>(n));
  const Matrix id = Matrix::Identity(n, n);
  if ((v - id).norm() <= bound) return 1;
  if ((v + id).norm() <= bound) return -1;
  return std::nullopt;
}

UetCertificate make_certificate(const Matrix& t, const Matrix& u, CertificateKind kind, const Tolerances& tol,
                                std::string evidence) {
  UetCertificate c;
  c.kind = kind;
  c.u = u;
  c.residual = certificate_residual(t, u);
  c.symmetry = symmetry_class(u, tol.eps_residual);
  c.alpha = scalar_alpha(u, tol.eps_residual);
  c.evidence = std::move(evidence);
  return c;
}

// ---- kernels -------------------------------------------------------------

namespace {

// Column-major lift of X ↦ aX − Xb.
void fill_sylvester_lift(const Matrix& a, const Matrix& b, Matrix& lift, Eigen::Index row_offset) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index row = row_offset + i + n * j;
      for (Eigen::Index k = 0; k < n; ++k) lift(row, k + n * j) += a(i, k);
      for (Eigen::Index l = 0; l < n; ++l) lift(row, i + n * l) -= b(l, j);
    }
}

std::vector<Matrix> unflatten(const Subspace& kernel, Eigen::Index n) {
  std::vector<Matrix> out;
  out.reserve(kernel.dim());
  for (Eigen::Index c = 0; c < kernel.dim(); ++c) out.emplace_back(kernel.frame().col(c).reshaped(n, n));
  return out;
}

void require_pair(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "intertwiner kernels need square matrices of the same size");
}

}  // namespace

std::vector<Matrix> sylvester_kernel(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  require_pair(a, b);
  const Eigen::Index n = a.rows();
  Matrix lift = Matrix::Zero(n * n, n * n);
  fill_sylvester_lift(a, b, lift, 0);
  return unflatten(null_space(lift, tol.eps_rank, a.norm() + b.norm()), n);
}

KernelBasis star_intertwiner_kernel(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  require_pair(a, b);
  const Eigen::Index n = a.rows();
  Matrix lift = Matrix::Zero(2 * n * n, n * n);
  fill_sylvester_lift(a, b, lift, 0);
  fill_sylvester_lift(a.adjoint(), b.adjoint(), lift, n * n);
  const KernelResult r = null_space_report(lift, tol.eps_rank, a.norm() + b.norm());
  KernelBasis out;
  out.basis = unflatten(r.kernel, n);
  out.borderline = r.largest > 0 && r.borderline(tol.eps_rank);
  out.smallest_kept_ratio = r.smallest_kept_ratio;
  out.largest_dropped_ratio = r.largest_dropped_ratio;
  return out;
}

// ---- unitary search ------------------------------------------------------

std::optional<UnitaryFit> find_unitary_in_span(const std::vector<Matrix>& basis, const Tolerances& tol) {
  tol.validate();
  if (basis.empty()) throw Error(ErrorKind::InvalidArgument, "find_unitary_in_span needs a nonempty basis");
  const Eigen::Index n = basis.front().rows();
  for (const auto& b : basis)
    if (b.rows() != n || b.cols() != n) throw Error(ErrorKind::DimensionMismatch, "basis elements differ in size");
  const double root_n = std::sqrt(static_cast<double>(n));

  auto project = [&](const Matrix& y) {
    Matrix p = Matrix::Zero(n, n);
    for (const auto& b : basis) p += frob_inner(y, b) * b;
    return p;
  };

  Rng rng = make_rng(tol.seed, 0x51a7);
  for (int restart = 0; restart < tol.restarts; ++restart) {
    const Matrix coeffs = random_gaussian(static_cast<Eigen::Index>(basis.size()), 1, rng);
    Matrix x = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < basis.size(); ++k) x += coeffs(static_cast<Eigen::Index>(k), 0) * basis[k];
    if (x.norm() == 0.0) continue;
    x *= root_n / x.norm();

    double previous = INFINITY;
    int stalled = 0;
    for (int it = 0; it < tol.max_iter; ++it) {
      const Matrix y = polar_unitary(x);
      const Matrix p = project(y);
      const double dist = (y - p).norm() / root_n;
      if (dist <= tol.eps_residual) {
        // Polish while the distance keeps halving; downstream eigenvalue
        // clustering is sharper for witnesses closer to the span.
        UnitaryFit best{y, dist};
        Matrix next = p;
        for (int extra = 0; extra < 50 && best.residual > 1e-15; ++extra) {
          const Matrix y2 = polar_unitary(next);
          const Matrix p2 = project(y2);
          const double d2 = (y2 - p2).norm() / root_n;
          if (d2 > best.residual / 2) {
            if (d2 < best.residual) best = {y2, d2};
            break;
          }
          best = {y2, d2};
          next = p2;
        }
        return best;
      }
      // Give up on a start once progress has flattened out.
      stalled = dist > previous * (1.0 - 1e-3) ? stalled + 1 : 0;
      if (stalled >= 20) break;
      previous = dist;
      x = p;
    }
  }
  return std::nullopt;
}

// ---- deciders ------------------------------------------------------------

namespace {

void require_matrix(const Matrix& t) {
  if (t.rows() != t.cols() || t.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "expected a square matrix");
  if (!all_finite(t)) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
}

std::string format_cplx(cplx z) {
  std::ostringstream os;
  os.precision(10);
  if (z.imag() == 0.0)
    os << z.real();
  else
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string kernel_warning(const KernelBasis& k, const char* what) {
  std::ostringstream os;
  os.precision(3);
  os << "borderline rank decision in " << what << ": smallest kept σ/σmax = " << k.smallest_kept_ratio
     << ", largest dropped σ/σmax = " << k.largest_dropped_ratio;
  return os.str();
}

struct UetOutcome {
  Decision decision;
  std::optional<KernelBasis> kernel;
};

UetOutcome decide_uet(const Matrix& t, const Tolerances& tol, int word_budget) {
  tol.validate();
  require_matrix(t);
  const Eigen::Index n = t.rows();
  UetOutcome out;
  Decision& d = out.decision;
  std::ostringstream ev;

  if (n == 3) {
    if (!uecsm_test_3x3(t, tol)) {
      const auto [lhs, rhs] = uecsm_trace_sides(t);
      const auto words = specht_bounded(t, t.transpose(), 6, tol);
      d.verdict = Verdict::no;
      ev << "3x3 trace criterion fails: tr X*X^2X*^2X = " << format_cplx(lhs)
         << " but tr XX*^2X^2X* = " << format_cplx(rhs);
      if (words.first_violating_word) ev << "; violating trace word '" << *words.first_violating_word << "'";
      d.evidence = ev.str();
      return out;
    }
    ev << "3x3 trace criterion holds; ";
  } else if (n == 2) {
    ev << "2x2 matrices are always UECSM; ";
  } else if (n > 3) {
    const int budget = word_budget > 0 ? word_budget : default_word_budget(n);
    const auto words = specht_bounded(t, t.transpose(), budget, tol);
    if (!words.equal_so_far) {
      d.verdict = Verdict::no;
      ev << "violating trace word '" << *words.first_violating_word << "' (T vs T^t)";
      d.evidence = ev.str();
      return out;
    }
    ev << "no violating trace word up to length " << budget << "; ";
  }

  out.kernel = star_intertwiner_kernel(t, t.transpose(), tol);
  const KernelBasis& kernel = *out.kernel;
  if (kernel.borderline) d.warnings.push_back(kernel_warning(kernel, "intertwiner kernel of (T, T^t)"));
  if (kernel.basis.empty()) {
    d.verdict = Verdict::no;
    ev << "intertwiner kernel of (T, T^t) is trivial";
    d.evidence = ev.str();
    return out;
  }
  ev << "intertwiner kernel dimension " << kernel.basis.size() << "; ";
  if (auto fit = find_unitary_in_span(kernel.basis, tol)) {
    auto cert = make_certificate(t, fit->u, CertificateKind::uet, tol, "unitary found in intertwiner kernel");
    if (cert.residual <= tol.eps_residual) {
      d.verdict = Verdict::yes;
      ev << "unitary witness with residual " << cert.residual;
      d.certificate = std::move(cert);
      d.evidence = ev.str();
      return out;
    }
  }
  d.verdict = Verdict::undetermined;
  ev << "no unitary found in the kernel";
  d.evidence = ev.str();
  return out;
}

Matrix sym_part(const Matrix& m) { return (m + m.transpose()) / 2.0; }
Matrix skew_part(const Matrix& m) { return (m - m.transpose()) / 2.0; }

// Searches the (skew-)symmetric slice of the intertwiner kernel.
Decision decide_sliced(const Matrix& t, const Tolerances& tol, int word_budget, bool skew) {
  const char* label = skew ? "skew-symmetric" : "symmetric";
  const CertificateKind kind = skew ? CertificateKind::ueasm : CertificateKind::uecsm;
  const Eigen::Index n = t.rows();

  if (n == 1 && !skew) {
    Decision d;
    d.verdict = Verdict::yes;
    d.certificate = make_certificate(t, Matrix::Identity(1, 1), kind, tol, "1x1 matrices are symmetric");
    d.evidence = "1x1 matrices are symmetric";
    return d;
  }

  auto uet = decide_uet(t, tol, word_budget);
  Decision d;
  d.warnings = uet.decision.warnings;
  if (uet.decision.verdict == Verdict::no) {
    d.verdict = Verdict::no;
    d.evidence = "not UET: " + uet.decision.evidence;
    return d;
  }
  if (!uet.kernel) uet.kernel = star_intertwiner_kernel(t, t.transpose(), tol);

  std::vector<Matrix> projected;
  projected.reserve(uet.kernel->basis.size());
  for (const auto& b : uet.kernel->basis) projected.push_back(skew ? skew_part(b) : sym_part(b));
  const auto slice = orthonormalize(projected, tol.eps_rank, 1.0);
  if (slice.empty()) {
    d.verdict = Verdict::no;
    d.evidence = std::string(label) + " slice of the intertwiner kernel is trivial";
    return d;
  }
  if (slice.size() == 1) {
    // Every candidate is a multiple of the single generator B, so a witness
    // exists iff n·B*B = I.
    const Matrix& b = slice.front();
    const double defect = (static_cast<double>(n) * b.adjoint() * b - Matrix::Identity(n, n)).norm();
    if (defect > tol.eps_residual * std::sqrt(static_cast<double>(n)) * 1e3) {
      d.verdict = Verdict::no;
      std::ostringstream os;
      os.precision(3);
      os << label << " slice of the intertwiner kernel is one-dimensional and its generator is not a multiple of a "
         << "unitary (‖n·B*B − I‖_F = " << defect << ")";
      d.evidence = os.str();
      return d;
    }
  }
  if (auto fit = find_unitary_in_span(slice, tol)) {
    const Matrix u = skew ? skew_part(fit->u) : sym_part(fit->u);
    auto cert = make_certificate(t, u, kind, tol, std::string(label) + " unitary found in intertwiner kernel");
    const SymmetryClass want = skew ? SymmetryClass::skew : SymmetryClass::symmetric;
    if (cert.residual <= tol.eps_residual && cert.symmetry == want && is_unitary(u, tol.eps_residual)) {
      d.verdict = Verdict::yes;
      d.evidence = std::string(label) + " witness in a kernel slice of dimension " + std::to_string(slice.size());
      d.certificate = std::move(cert);
      return d;
    }
  }
  d.verdict = Verdict::undetermined;
  d.evidence = std::string("no ") + label + " unitary found in a kernel slice of dimension " +
               std::to_string(slice.size());
  return d;
}

}  // namespace

Decision is_uet(const Matrix& t, const Tolerances& tol) { return decide_uet(t, tol, 0).decision; }

Decision is_uet(const Matrix& t, const Tolerances& tol, int word_budget) {
  return decide_uet(t, tol, word_budget).decision;
}

Decision is_uecsm(const Matrix& t, const Tolerances& tol, int word_budget) {
  tol.validate();
  require_matrix(t);
  return decide_sliced(t, tol, word_budget, false);
}

Decision is_ueasm(const Matrix& t, const Tolerances& tol, int word_budget) {
  tol.validate();
  require_matrix(t);
  if (t.rows() % 2 != 0) {
    Decision d;
    d.verdict = Verdict::no;
    d.evidence = "odd dimension admits no skew-symmetric unitary";
    return d;
  }
  return decide_sliced(t, tol, word_budget, true);
}

Decision is_uecsm(const Matrix& t, const Tolerances& tol) { return is_uecsm(t, tol, 0); }
Decision is_ueasm(const Matrix& t, const Tolerances& tol) { return is_ueasm(t, tol, 0); }

IrreducibleClass classify_irreducible_uet(const Matrix& t, const UetCertificate& cert, const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  if (cert.u.rows() != n || cert.u.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "certificate size differs from the matrix");
  const Matrix v = cert.u * cert.u.conjugate();
  const cplx alpha = v.trace() / static_cast<double>(n);
  const double bound = tol.eps_residual * std::sqrt(static_cast<double>(n));
  if ((v - alpha * Matrix::Identity(n, n)).norm() > bound)
    throw Error(ErrorKind::NotScalar, "U·conj(U) is not a multiple of the identity");
  if (std::abs(alpha - 1.0) <= bound) return IrreducibleClass::uecsm;
  if (std::abs(alpha + 1.0) <= bound) {
    if (n % 2 != 0) throw Error(ErrorKind::OddDimensionSkew, "alpha = -1 in odd dimension");
    return IrreducibleClass::ueasm;
  }
  throw Error(ErrorKind::NotScalar, "U·conj(U) = alpha·I with alpha^2 != 1");
}

}  // namespace mtt
