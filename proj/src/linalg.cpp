#include "mtt/linalg.hpp"

#include "mtt/error.hpp"

#include <Eigen/SVD>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace mtt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotCSymmetricWithRespectToC: return "NotCSymmetricWithRespectToC";
    case ErrorKind::NotAntiSymmetricWithRespectToK: return "NotAntiSymmetricWithRespectToK";
    case ErrorKind::BudgetTooLarge: return "BudgetTooLarge";
    case ErrorKind::NotScalar: return "NotScalar";
    case ErrorKind::OddDimensionSkew: return "OddDimensionSkew";
    case ErrorKind::SplitResidualTooLarge: return "SplitResidualTooLarge";
    case ErrorKind::SpectrumNotConjugateSymmetric: return "SpectrumNotConjugateSymmetric";
    case ErrorKind::QStructureViolated: return "QStructureViolated";
    case ErrorKind::BlockLeakage: return "BlockLeakage";
    case ErrorKind::RefinementStalled: return "RefinementStalled";
    case ErrorKind::NotUET: return "NotUET";
    case ErrorKind::Undetermined: return "Undetermined";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(eps_rank > 0) || !(eps_residual > 0) || !(eps_cluster > 0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  if (max_iter < 1 || restarts < 1)
    throw Error(ErrorKind::InvalidArgument, "max_iter and restarts must be at least 1");
}

double frob(const Matrix& m) { return m.norm(); }

double relative_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

bool is_unitary(const Matrix& m, double tol) { return unitarity_defect(m) <= tol; }

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) { return direct_sum(std::vector<Matrix>{a, b}); }

Matrix omega(int d) {
  Matrix o = Matrix::Zero(2 * d, 2 * d);
  o.topRightCorner(d, d).setIdentity();
  o.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return o;
}

Matrix reversal(int n) {
  Matrix r = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) r(i, n - 1 - i) = 1.0;
  return r;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

Matrix random_unitary(int n, Rng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    const cplx phase = mag > 0 ? r(k, k) / mag : cplx(1.0);
    q.col(k) *= phase;
  }
  return q;
}

NormalEigen eig_normal(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "eig_normal needs a square matrix");
  const double scale = m.norm();
  const double defect = (m * m.adjoint() - m.adjoint() * m).norm();
  if (defect > tol.eps_residual * scale * scale)
    throw Error(ErrorKind::NotNormal, "commutator norm " + std::to_string(defect));
  if (m.rows() == 0) return {Vector(0), Matrix(0, 0)};

  // For a normal matrix the Schur form is diagonal, and the Schur vectors stay
  // orthonormal inside repeated eigenvalues.
  Eigen::ComplexSchur<Matrix> schur;
  schur.setMaxIterations(static_cast<Eigen::Index>(tol.max_iter) * m.rows());
  schur.compute(m);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "complex Schur iteration");

  NormalEigen out{schur.matrixT().diagonal(), schur.matrixU()};
  const Matrix rebuilt = out.vectors * out.values.asDiagonal() * out.vectors.adjoint();
  if ((rebuilt - m).norm() > tol.eps_residual * std::max(scale, 1.0))
    throw Error(ErrorKind::NoConvergence, "spectral reconstruction residual too large");
  return out;
}

Svd svd(const Matrix& m) {
  if (m.size() == 0)
    return {Matrix::Identity(m.rows(), m.rows()), RealVector(0), Matrix::Identity(m.cols(), m.cols())};
  if (std::min(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<Matrix> j(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {j.matrixU(), j.singularValues(), j.matrixV()};
  }
  Eigen::BDCSVD<Matrix> b(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (b.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "SVD");
  return {b.matrixU(), b.singularValues(), b.matrixV()};
}

Matrix polar_unitary(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "polar_unitary needs a square matrix");
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<Matrix> j(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return j.matrixU() * j.matrixV().adjoint();
}

Matrix polar_isometry(const Matrix& m) {
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<Matrix> j(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return j.matrixU() * j.matrixV().adjoint();
}

// ---- subspaces -----------------------------------------------------------

Subspace::Subspace(Eigen::Index ambient_dim) : frame_(Matrix::Zero(ambient_dim, 0)) {}

Subspace::Subspace(Matrix frame, double orth_tol) : frame_(std::move(frame)) {
  const Matrix gram = frame_.adjoint() * frame_;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > orth_tol)
    throw Error(ErrorKind::InvalidArgument, "subspace frame is not orthonormal");
}

Subspace Subspace::complement() const {
  const Eigen::Index n = ambient_dim();
  if (dim() == 0) return Subspace(Matrix::Identity(n, n), 1e-12);
  Eigen::HouseholderQR<Matrix> qr(frame_);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return Subspace(q.rightCols(n - dim()), 1e-10);
}

bool KernelResult::borderline(double eps_rank) const {
  const bool kept_close = smallest_kept_ratio < eps_rank * 1e3;
  const bool dropped_close = largest_dropped_ratio > eps_rank * 1e-3;
  return kept_close || dropped_close;
}

namespace {

template <typename Mat>
struct KernelSplit {
  Mat v_kernel;
  double largest = 0.0;
  double kept = 1.0;
  double dropped = 0.0;
};

template <typename Mat, typename RealVec>
KernelSplit<Mat> split_kernel(const Mat& v, const RealVec& s, Eigen::Index cols, double eps_rank,
                              double reference) {
  KernelSplit<Mat> out;
  out.largest = std::max(s.size() > 0 ? s(0) : 0.0, reference);
  const double cutoff = eps_rank * out.largest;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (out.largest > 0 && s(k) > cutoff) {
      ++rank;
      out.kept = s(k) / out.largest;
    } else if (out.largest > 0) {
      out.dropped = std::max(out.dropped, s(k) / out.largest);
    }
  }
  out.v_kernel = v.rightCols(cols - rank);
  return out;
}

}  // namespace

KernelResult null_space_report(const Matrix& map, double eps_rank, double reference) {
  const Eigen::Index q = map.cols();
  if (q == 0) return {Subspace(0)};
  Matrix v;
  RealVector s;
  if (map.rows() == 0) {
    return {Subspace(Matrix::Identity(q, q), 1e-12)};
  }
  if (std::min(map.rows(), q) <= 64) {
    Eigen::JacobiSVD<Matrix> j(map, Eigen::ComputeFullV);
    v = j.matrixV();
    s = j.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> b(map, Eigen::ComputeFullV);
    if (b.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "kernel SVD");
    v = b.matrixV();
    s = b.singularValues();
  }
  auto split = split_kernel(v, s, q, eps_rank, reference);
  KernelResult out{Subspace(std::move(split.v_kernel), 1e-8)};
  out.largest = split.largest;
  out.smallest_kept_ratio = split.kept;
  out.largest_dropped_ratio = split.dropped;
  return out;
}

Subspace null_space(const Matrix& map, double eps_rank, double reference) {
  return null_space_report(map, eps_rank, reference).kernel;
}

RealMatrix real_null_space(const RealMatrix& map, double eps_rank, double* smallest_kept_ratio,
                           double* largest_dropped_ratio, double reference) {
  const Eigen::Index q = map.cols();
  RealMatrix v;
  RealVector s;
  if (std::min(map.rows(), q) <= 64) {
    Eigen::JacobiSVD<RealMatrix> j(map, Eigen::ComputeFullV);
    v = j.matrixV();
    s = j.singularValues();
  } else {
    Eigen::BDCSVD<RealMatrix> b(map, Eigen::ComputeFullV);
    if (b.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "real kernel SVD");
    v = b.matrixV();
    s = b.singularValues();
  }
  auto split = split_kernel(v, s, q, eps_rank, reference);
  if (smallest_kept_ratio) *smallest_kept_ratio = split.kept;
  if (largest_dropped_ratio) *largest_dropped_ratio = split.dropped;
  return split.v_kernel;
}

Subspace column_span(const Matrix& columns, double eps_rank) {
  const Eigen::Index n = columns.rows();
  if (columns.cols() == 0) return Subspace(n);
  Eigen::JacobiSVD<Matrix> j(columns, Eigen::ComputeThinU);
  const RealVector& s = j.singularValues();
  const double cutoff = eps_rank * (s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff && s(rank) > 0) ++rank;
  return Subspace(j.matrixU().leftCols(rank), 1e-8);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double eps_cluster) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "subspace_intersect ambient dimensions differ");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  const Matrix cross = a.frame().adjoint() * b.frame();
  Eigen::JacobiSVD<Matrix> j(cross, Eigen::ComputeFullU);
  const RealVector& s = j.singularValues();
  Eigen::Index k = 0;
  while (k < s.size() && s(k) >= 1.0 - eps_cluster) ++k;
  if (k == 0) return Subspace(a.ambient_dim());
  return Subspace(a.frame() * j.matrixU().leftCols(k), 1e-8);
}

std::vector<Matrix> orthonormalize(const std::vector<Matrix>& mats, double eps_rank, double reference) {
  if (mats.empty()) return {};
  const Eigen::Index rows = mats.front().rows();
  const Eigen::Index cols = mats.front().cols();
  Matrix stack(rows * cols, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != rows || mats[k].cols() != cols)
      throw Error(ErrorKind::DimensionMismatch, "orthonormalize: shapes differ");
    stack.col(static_cast<Eigen::Index>(k)) = mats[k].reshaped();
  }
  Matrix u;
  RealVector s;
  if (stack.cols() <= 64) {
    Eigen::JacobiSVD<Matrix> j(stack, Eigen::ComputeThinU);
    u = j.matrixU();
    s = j.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> b(stack, Eigen::ComputeThinU);
    u = b.matrixU();
    s = b.singularValues();
  }
  const double ref = reference > 0 ? reference : (s.size() ? s(0) : 0.0);
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= eps_rank * ref || s(k) == 0.0) break;
    out.emplace_back(u.col(k).reshaped(rows, cols));
  }
  return out;
}

cplx frob_inner(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.conjugate()).sum(); }

}  // namespace mtt
