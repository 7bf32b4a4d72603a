#pragma once

// Dense complex linear algebra shared by every module: matrix aliases, the
// tolerance bundle, normal eigendecomposition, SVD, polar factor, kernels and
// subspace intersection.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace mtt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr cplx kI{0.0, 1.0};

/// Every numerical threshold used anywhere in the library.
struct Tolerances {
  double eps_rank = 1e-9;       // singular-value cutoff, relative to the largest
  double eps_residual = 1e-6;   // certificate acceptance, Frobenius-relative
  double eps_cluster = 1e-7;    // eigenvalue grouping
  int max_iter = 500;
  int restarts = 32;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless all epsilons are positive and the
  /// iteration counts are at least one.
  void validate() const;
};

// ---- small helpers -------------------------------------------------------

double frob(const Matrix& m);
/// ‖a − b‖_F / max(‖b‖_F, tiny); used for "relative residual" checks.
double relative_diff(const Matrix& a, const Matrix& b);
/// ‖m*m − I‖_F.
double unitarity_defect(const Matrix& m);
bool is_unitary(const Matrix& m, double tol);
bool all_finite(const Matrix& m);
Matrix direct_sum(const std::vector<Matrix>& blocks);
Matrix direct_sum(const Matrix& a, const Matrix& b);
/// Ω = [[0, I], [−I, 0]] of size 2d.
Matrix omega(int d);
Matrix reversal(int n);
/// Complex standard Gaussian entries (real and imaginary parts N(0, 1/2)).
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Haar unitary: QR of a complex Gaussian with the R diagonal made positive.
Matrix random_unitary(int n, Rng& rng);
/// Deterministic per-purpose generator derived from a master seed.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// ---- factorizations ------------------------------------------------------

struct NormalEigen {
  Vector values;
  Matrix vectors;  // unitary; m = vectors · diag(values) · vectors*
};

/// Spectral decomposition of a normal matrix. Throws NotNormal if
/// ‖mm* − m*m‖_F > eps_residual·‖m‖_F², NoConvergence if the Schur
/// iteration fails.
NormalEigen eig_normal(const Matrix& m, const Tolerances& tol);

struct Svd {
  Matrix u;
  RealVector s;  // descending
  Matrix w;      // m = u · diag(s) · w*
};

Svd svd(const Matrix& m);

/// Nearest unitary in Frobenius norm, computed as U·W* from the SVD.
Matrix polar_unitary(const Matrix& m);

/// Isometric polar factor of a tall p×k matrix (thin U·W*).
Matrix polar_isometry(const Matrix& m);

// ---- subspaces -----------------------------------------------------------

class Subspace {
public:
  /// Zero subspace of the given ambient dimension.
  explicit Subspace(Eigen::Index ambient_dim);
  /// Wraps an orthonormal frame; throws InvalidArgument if frame*·frame is
  /// not the identity within `orth_tol`.
  Subspace(Matrix frame, double orth_tol);

  Eigen::Index ambient_dim() const { return frame_.rows(); }
  Eigen::Index dim() const { return frame_.cols(); }
  const Matrix& frame() const { return frame_; }

  /// Orthonormal frame for the orthogonal complement.
  Subspace complement() const;

private:
  Matrix frame_;
};

/// Numerical kernel of a (possibly rectangular) map. Singular values at or
/// below eps_rank·max(σ_max, reference) count as zero; a positive reference
/// keeps maps that are zero up to round-off from looking full rank.
struct KernelResult {
  Subspace kernel;
  /// max(σ_max, reference); zero for the zero map without a reference.
  double largest = 0.0;
  /// Smallest singular value kept as nonzero, relative to σ_max (1 if none).
  double smallest_kept_ratio = 1.0;
  /// Largest singular value treated as zero, relative to σ_max (0 if none).
  double largest_dropped_ratio = 0.0;

  /// True if either side of the cutoff sits within three decades of it.
  bool borderline(double eps_rank) const;
};

KernelResult null_space_report(const Matrix& map, double eps_rank, double reference = 0.0);
Subspace null_space(const Matrix& map, double eps_rank, double reference = 0.0);

/// Real kernel of a real matrix, columns orthonormal.
RealMatrix real_null_space(const RealMatrix& map, double eps_rank, double* smallest_kept_ratio = nullptr,
                           double* largest_dropped_ratio = nullptr, double reference = 0.0);

/// Orthonormal basis of the column span (relative rank cutoff).
Subspace column_span(const Matrix& columns, double eps_rank);

/// a ∩ b via principal angles: directions whose cosine is ≥ 1 − eps_cluster.
Subspace subspace_intersect(const Subspace& a, const Subspace& b, double eps_cluster);

/// Frobenius-orthonormal basis for span{mats}. Singular values of the stacked
/// vectorizations below eps_rank·reference are dropped; reference defaults to
/// the largest singular value when not positive.
std::vector<Matrix> orthonormalize(const std::vector<Matrix>& mats, double eps_rank, double reference = 0.0);

/// Frobenius inner product ⟨a, b⟩ = tr(b*·a).
cplx frob_inner(const Matrix& a, const Matrix& b);

}  // namespace mtt
