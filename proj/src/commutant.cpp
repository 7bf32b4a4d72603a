#include "mtt/commutant.hpp"

#include "mtt/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtt {

namespace {

// Real-orthonormal parametrization of the n×n Hermitian matrices: diagonal
// units, then (E_ij + E_ji)/√2 and i(E_ij − E_ji)/√2 for i < j.
struct HermitianUnit {
  int i;
  int j;
  cplx upper;  // entry (i, j); entry (j, i) is its conjugate
};

std::vector<HermitianUnit> hermitian_units(int n) {
  std::vector<HermitianUnit> units;
  units.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) units.push_back({i, i, 1.0});
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      units.push_back({i, j, cplx(r, 0.0)});
      units.push_back({i, j, cplx(0.0, r)});
    }
  return units;
}

Matrix unit_matrix(int n, const HermitianUnit& u) {
  Matrix e = Matrix::Zero(n, n);
  e(u.i, u.j) = u.upper;
  e(u.j, u.i) = std::conj(u.upper);
  return e;
}

// E·T − T·E for the sparse unit E, in O(n) work.
Matrix unit_commutator(const Matrix& t, const HermitianUnit& u) {
  const Eigen::Index n = t.rows();
  Matrix c = Matrix::Zero(n, n);
  const cplx a = u.upper;
  if (u.i == u.j) {
    c.row(u.i) += a * t.row(u.i);
    c.col(u.i) -= a * t.col(u.i);
    return c;
  }
  const cplx b = std::conj(a);
  // E = a·e_i e_jᵀ + b·e_j e_iᵀ
  c.row(u.i) += a * t.row(u.j);
  c.row(u.j) += b * t.row(u.i);
  c.col(u.j) -= a * t.col(u.i);
  c.col(u.i) -= b * t.col(u.j);
  return c;
}

}  // namespace

CommutantBasis hermitian_commutant(const Matrix& t, const Tolerances& tol) {
  if (t.rows() != t.cols()) throw Error(ErrorKind::DimensionMismatch, "hermitian_commutant needs a square matrix");
  const int n = static_cast<int>(t.rows());
  const auto units = hermitian_units(n);
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  RealMatrix lift(2 * nn, nn);
  for (Eigen::Index k = 0; k < nn; ++k) {
    const Matrix c = unit_commutator(t, units[static_cast<std::size_t>(k)]);
    const auto flat = c.reshaped();
    lift.col(k).head(nn) = flat.real();
    lift.col(k).tail(nn) = flat.imag();
  }
  CommutantBasis out;
  const RealMatrix kernel =
      real_null_space(lift, tol.eps_rank, &out.smallest_kept_ratio, &out.largest_dropped_ratio, 2 * t.norm());
  out.dim_real = static_cast<int>(kernel.cols());
  out.elements.reserve(kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Matrix q = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < nn; ++k)
      if (kernel(k, c) != 0.0) q += kernel(k, c) * unit_matrix(n, units[static_cast<std::size_t>(k)]);
    out.elements.push_back(std::move(q));
  }
  return out;
}

bool is_irreducible(const Matrix& t, const Tolerances& tol) { return hermitian_commutant(t, tol).dim_real == 1; }

namespace {

// Eigenvalue groups of a sorted real spectrum: consecutive values closer
// than `gap` share a group. Returned as [begin, end) index pairs.
std::vector<std::pair<int, int>> cluster_sorted(const RealVector& vals, double gap) {
  std::vector<std::pair<int, int>> groups;
  int start = 0;
  for (int k = 1; k <= vals.size(); ++k) {
    if (k == vals.size() || vals(k) - vals(k - 1) > gap) {
      groups.emplace_back(start, k);
      start = k;
    }
  }
  return groups;
}

std::optional<Split> try_split(const Matrix& t, const Matrix& vectors, const std::vector<int>& chosen,
                               const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  const Eigen::Index k = static_cast<Eigen::Index>(chosen.size());
  if (k == 0 || k == n) return std::nullopt;
  Matrix w(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index c = 0; c < k; ++c) {
    w.col(c) = vectors.col(chosen[static_cast<std::size_t>(c)]);
    used[static_cast<std::size_t>(chosen[static_cast<std::size_t>(c)])] = true;
  }
  Eigen::Index at = k;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!used[static_cast<std::size_t>(c)]) w.col(at++) = vectors.col(c);
  const Matrix m = w.adjoint() * t * w;
  const double leak = std::hypot(m.topRightCorner(k, n - k).norm(), m.bottomLeftCorner(n - k, k).norm());
  if (leak > tol.eps_residual * std::max(t.norm(), 1e-300) && leak > 0) return std::nullopt;
  return Split{Subspace(w.leftCols(k), 1e-8), m.topLeftCorner(k, k), m.bottomRightCorner(n - k, n - k), w};
}

}  // namespace

std::optional<Split> split_once(const Matrix& t, const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  if (n <= 1) return std::nullopt;
  const CommutantBasis basis = hermitian_commutant(t, tol);
  if (basis.dim_real <= 1) return std::nullopt;

  // Candidates ordered by distance from the scalar matrices.
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    const Matrix& q = basis.elements[k];
    const cplx mean = q.trace() / static_cast<double>(n);
    const double dist = (q - mean * Matrix::Identity(n, n)).norm();
    order.emplace_back(dist, k);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  for (const auto& [dist, idx] : order) {
    if (dist < 1e-6) break;
    const Matrix& q = basis.elements[idx];
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    if (es.info() != Eigen::Success) continue;
    const RealVector& vals = es.eigenvalues();
    const auto groups = cluster_sorted(vals, tol.eps_cluster);
    if (groups.size() < 2) continue;
    const double mean = vals.mean();

    // Cluster farthest from the mean eigenvalue first, then the largest gap.
    std::vector<std::vector<int>> attempts;
    {
      std::size_t best = 0;
      double best_dist = -1.0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto [b, e] = groups[g];
        const double c = vals.segment(b, e - b).mean();
        if (std::abs(c - mean) > best_dist) {
          best_dist = std::abs(c - mean);
          best = g;
        }
      }
      std::vector<int> idxs(static_cast<std::size_t>(groups[best].second - groups[best].first));
      std::iota(idxs.begin(), idxs.end(), groups[best].first);
      attempts.push_back(std::move(idxs));
    }
    {
      int cut = 1;
      double widest = -1.0;
      for (int k = 1; k < vals.size(); ++k)
        if (vals(k) - vals(k - 1) > widest) {
          widest = vals(k) - vals(k - 1);
          cut = k;
        }
      std::vector<int> idxs(static_cast<std::size_t>(cut));
      std::iota(idxs.begin(), idxs.end(), 0);
      attempts.push_back(std::move(idxs));
    }
    for (const auto& chosen : attempts)
      if (auto s = try_split(t, es.eigenvectors(), chosen, tol)) return s;
  }
  throw Error(ErrorKind::SplitResidualTooLarge,
              "commutant of dimension " + std::to_string(basis.dim_real) + " gave no clean spectral split");
}

IrreducibleDecomposition decompose_irreducibles(const Matrix& t, const Tolerances& tol) {
  auto split = split_once(t, tol);
  if (!split) return {Matrix::Identity(t.rows(), t.rows()), {t}};
  const auto left = decompose_irreducibles(split->t1, tol);
  const auto right = decompose_irreducibles(split->t2, tol);
  IrreducibleDecomposition out;
  out.w = split->w * direct_sum(left.w, right.w);
  out.blocks = left.blocks;
  out.blocks.insert(out.blocks.end(), right.blocks.begin(), right.blocks.end());
  return out;
}

}  // namespace mtt
