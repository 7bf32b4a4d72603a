#include "mtt/canonical.hpp"

#include "mtt/commutant.hpp"
#include "mtt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mtt {

std::string to_string(SummandKind k) {
  switch (k) {
    case SummandKind::I: return "I";
    case SummandKind::II: return "II";
    case SummandKind::III: return "III";
  }
  return "I";
}

namespace {

Matrix sym_part(const Matrix& m) { return (m + m.transpose()) / 2.0; }
Matrix skew_part(const Matrix& m) { return (m - m.transpose()) / 2.0; }

Matrix clean_symmetric_unitary(const Matrix& m) { return sym_part(polar_unitary(sym_part(m))); }
Matrix clean_skew_unitary(const Matrix& m) { return skew_part(polar_unitary(skew_part(m))); }

Matrix swap_matrix(Eigen::Index d) {
  Matrix s = Matrix::Zero(2 * d, 2 * d);
  s.topRightCorner(d, d).setIdentity();
  s.bottomLeftCorner(d, d).setIdentity();
  return s;
}

double scale_of(const Matrix& t) { return std::max(t.norm(), 1e-300); }

// Union-find grouping of eigenvalues closer than `gap`.
std::vector<std::vector<int>> cluster_points(const Vector& vals, double gap) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(vals(i) - vals(j)) <= gap) parent[static_cast<std::size_t>(find(i))] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  return groups;
}

cplx center_of(const Vector& vals, const std::vector<int>& idx) {
  cplx c = 0.0;
  for (int i : idx) c += vals(i);
  return c / static_cast<double>(idx.size());
}

}  // namespace

int SpectralBlockStructure::pair_offset(std::size_t i) const {
  int off = plus_dim + minus_dim;
  for (std::size_t k = 0; k < i; ++k) off += 2 * pairs[k].size;
  return off;
}

SpectralBlockStructure spectral_structure(const Matrix& u, const Tolerances& tol) {
  tol.validate();
  if (u.rows() != u.cols()) throw Error(ErrorKind::DimensionMismatch, "spectral_structure needs a square matrix");
  if (!is_unitary(u, tol.eps_residual)) throw Error(ErrorKind::InvalidArgument, "spectral_structure needs a unitary");
  const Eigen::Index n = u.rows();
  const Matrix v = u * u.conjugate();
  const NormalEigen eig = eig_normal(v, tol);
  const auto groups = cluster_points(eig.values, tol.eps_cluster);
  const double gap = tol.eps_cluster;

  std::vector<int> plus, minus;
  std::vector<std::size_t> upper, lower;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const cplx c = center_of(eig.values, groups[g]);
    if (std::abs(c - 1.0) <= gap)
      plus.insert(plus.end(), groups[g].begin(), groups[g].end());
    else if (std::abs(c + 1.0) <= gap)
      minus.insert(minus.end(), groups[g].begin(), groups[g].end());
    else if (c.imag() > 0)
      upper.push_back(g);
    else
      lower.push_back(g);
  }
  if (minus.size() % 2 != 0)
    throw Error(ErrorKind::SpectrumNotConjugateSymmetric,
                "eigenvalue -1 of U·conj(U) has odd multiplicity " + std::to_string(minus.size()));
  if (upper.size() != lower.size())
    throw Error(ErrorKind::SpectrumNotConjugateSymmetric, "unpaired non-real eigenvalues of U·conj(U)");

  std::sort(upper.begin(), upper.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(center_of(eig.values, groups[a])) < std::arg(center_of(eig.values, groups[b]));
  });

  SpectralBlockStructure s;
  s.plus_dim = static_cast<int>(plus.size());
  s.minus_dim = static_cast<int>(minus.size());
  std::vector<int> order = plus;
  order.insert(order.end(), minus.begin(), minus.end());
  std::vector<bool> used(lower.size(), false);
  for (std::size_t g : upper) {
    const cplx c = center_of(eig.values, groups[g]);
    std::size_t best = lower.size();
    double best_dist = INFINITY;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      if (used[k]) continue;
      const double dist = std::abs(center_of(eig.values, groups[lower[k]]) - std::conj(c));
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (best == lower.size() || best_dist > 10 * gap || groups[lower[best]].size() != groups[g].size())
      throw Error(ErrorKind::SpectrumNotConjugateSymmetric,
                  "eigenvalue cluster of U·conj(U) has no conjugate partner of equal size");
    used[best] = true;
    s.pairs.push_back({c, static_cast<int>(groups[g].size())});
    order.insert(order.end(), groups[g].begin(), groups[g].end());
    order.insert(order.end(), groups[lower[best]].begin(), groups[lower[best]].end());
  }

  cplx det = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) det *= eig.values(i);
  if (std::abs(det - 1.0) > tol.eps_residual)
    throw Error(ErrorKind::SpectrumNotConjugateSymmetric, "det U·conj(U) differs from 1");

  Matrix p(n, n);
  for (Eigen::Index c = 0; c < n; ++c) p.col(c) = eig.vectors.col(order[static_cast<std::size_t>(c)]);
  s.w = p.adjoint();
  return s;
}

namespace {

struct Range {
  Eigen::Index begin;
  Eigen::Index size;
};

// Diagonal blocks of D in order: +1, −1, then λ and conj(λ) for each pair.
std::vector<Range> block_ranges(const SpectralBlockStructure& s) {
  std::vector<Range> r;
  r.push_back({0, s.plus_dim});
  r.push_back({s.plus_dim, s.minus_dim});
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const Eigen::Index off = s.pair_offset(i);
    r.push_back({off, s.pairs[i].size});
    r.push_back({off + s.pairs[i].size, s.pairs[i].size});
  }
  return r;
}

Matrix block_of(const Matrix& m, Range rows, Range cols) {
  return m.block(rows.begin, cols.begin, rows.size, cols.size);
}

}  // namespace

StructuredQ structure_q(const Matrix& u, const SpectralBlockStructure& s, const Tolerances& tol) {
  const Eigen::Index n = u.rows();
  if (s.w.rows() != n) throw Error(ErrorKind::DimensionMismatch, "structure does not match the unitary");
  const Matrix q = s.w * u * s.w.transpose();
  const auto ranges = block_ranges(s);

  // Zero out the allowed blocks; what is left must vanish.
  Matrix off = q;
  auto clear = [&](Range a, Range b) { off.block(a.begin, b.begin, a.size, b.size).setZero(); };
  clear(ranges[0], ranges[0]);
  clear(ranges[1], ranges[1]);
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    clear(ranges[2 + 2 * i], ranges[3 + 2 * i]);
    clear(ranges[3 + 2 * i], ranges[2 + 2 * i]);
  }
  const double bound = tol.eps_residual * std::sqrt(static_cast<double>(n));
  if (off.norm() > bound) {
    std::ostringstream os;
    os << "Q = W·U·Wᵗ has off-pattern mass " << off.norm();
    throw Error(ErrorKind::QStructureViolated, os.str());
  }

  StructuredQ out;
  out.q_plus = clean_symmetric_unitary(block_of(q, ranges[0], ranges[0]));
  out.q_minus = clean_skew_unitary(block_of(q, ranges[1], ranges[1]));
  if ((out.q_plus - block_of(q, ranges[0], ranges[0])).norm() > bound)
    throw Error(ErrorKind::QStructureViolated, "Q₊ is not a symmetric unitary");
  if ((out.q_minus - block_of(q, ranges[1], ranges[1])).norm() > bound)
    throw Error(ErrorKind::QStructureViolated, "Q₋ is not a skew-symmetric unitary");
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const Range lam = ranges[2 + 2 * i];
    const Range bar = ranges[3 + 2 * i];
    const Matrix x = block_of(q, bar, lam);
    const Matrix y = block_of(q, lam, bar);
    const cplx lambda = s.pairs[i].lambda;
    if ((y - lambda * x.transpose()).norm() > bound)
      throw Error(ErrorKind::QStructureViolated, "off-diagonal pair blocks of Q are not related by λ·Xᵗ");
    const Matrix xu = polar_unitary(x);
    if ((xu - x).norm() > bound) throw Error(ErrorKind::QStructureViolated, "pair block of Q is not unitary");
    out.x_blocks.push_back({xu, lambda});
  }
  return out;
}

ExtractedBlocks extract_blocks(const Matrix& t, const SpectralBlockStructure& s, const StructuredQ& q,
                               const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n || s.w.rows() != n) throw Error(ErrorKind::DimensionMismatch, "extract_blocks: sizes differ");
  const Matrix p = s.w.adjoint();
  const Matrix tp = s.w * t * p;
  const auto ranges = block_ranges(s);

  Matrix off = tp;
  for (const auto& r : ranges) off.block(r.begin, r.begin, r.size, r.size).setZero();
  const double bound = tol.eps_residual * scale_of(t);
  if (off.norm() > bound) {
    std::ostringstream os;
    os << "W·T·W* leaks " << off.norm() << " outside the spectral blocks";
    throw Error(ErrorKind::BlockLeakage, os.str());
  }

  ExtractedBlocks out;
  out.plus_frame = p.middleCols(ranges[0].begin, ranges[0].size);
  out.minus_frame = p.middleCols(ranges[1].begin, ranges[1].size);
  if (ranges[0].size > 0) out.t_plus = block_of(tp, ranges[0], ranges[0]);
  if (ranges[1].size > 0) out.t_minus = block_of(tp, ranges[1], ranges[1]);
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const Range lam = ranges[2 + 2 * i];
    const Range bar = ranges[3 + 2 * i];
    const Matrix a = block_of(tp, lam, lam);
    const Matrix& x = q.x_blocks[i].x;
    if ((block_of(tp, bar, bar) - x * a.transpose() * x.adjoint()).norm() > bound)
      throw Error(ErrorKind::BlockLeakage, "conj(λ) block is not X·Aᵗ·X*");
    Matrix frame(n, 2 * lam.size);
    frame << p.middleCols(lam.begin, lam.size), p.middleCols(bar.begin, bar.size) * x;
    out.a_blocks.push_back(a);
    out.pair_frames.push_back(std::move(frame));
  }
  return out;
}

// ---- refinement ----------------------------------------------------------

namespace {

// Frame of one irreducible reducing subspace, found by repeatedly splitting
// and keeping the smaller side.
Matrix minimal_reducing_frame(const Matrix& t, const Tolerances& tol) {
  Matrix frame = Matrix::Identity(t.rows(), t.rows());
  Matrix cur = t;
  while (auto split = split_once(cur, tol)) {
    const Eigen::Index k = split->t1.rows();
    const Eigen::Index rest = cur.rows() - k;
    if (k <= rest) {
      frame = (frame * split->w.leftCols(k)).eval();
      cur = split->t1;
    } else {
      frame = (frame * split->w.rightCols(rest)).eval();
      cur = split->t2;
    }
  }
  return frame;
}

Refinement concat(Refinement a, const Matrix& a_frame, const Refinement& b, const Matrix& b_frame) {
  Refinement out;
  out.summands = std::move(a.summands);
  out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
  out.basis.resize(a_frame.rows(), a.basis.cols() + b.basis.cols());
  out.basis << a_frame * a.basis, b_frame * b.basis;
  return out;
}

Summand csm_leaf(const Matrix& s, std::string evidence, const Tolerances& tol) {
  Summand leaf;
  leaf.kind = SummandKind::I;
  leaf.matrix = s;
  leaf.certificate =
      make_certificate(s, Matrix::Identity(s.rows(), s.rows()), CertificateKind::uecsm, tol, "symmetric matrix");
  leaf.evidence = std::move(evidence);
  return leaf;
}

Summand asm_leaf(const AsmShape& shape, std::string evidence, const Tolerances& tol) {
  Summand leaf;
  leaf.kind = SummandKind::II;
  leaf.matrix = shape.assemble();
  leaf.certificate =
      make_certificate(leaf.matrix, omega(shape.d), CertificateKind::ueasm, tol, "antiskewsymmetric matrix");
  leaf.asm_shape = shape;
  leaf.evidence = std::move(evidence);
  return leaf;
}

Refinement leaf_of(const Matrix& t, const Conjugation& c, const Tolerances& tol) {
  auto r = realize_csm(t, c, tol);
  return {{csm_leaf(r.s, "irreducible, realized in a C-fixed orthonormal basis", tol)}, r.q};
}

Refinement leaf_of(const Matrix& t, const Anticonjugation& k, const Tolerances& tol) {
  auto r = realize_asm(t, k, tol);
  return {{asm_leaf(r.shape, "irreducible, realized in a canonical K-basis", tol)}, r.q};
}

template <class Antilinear>
Refinement refine_antilinear(const Matrix& t, const Antilinear& c, const Tolerances& tol, ErrorKind precondition) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n || c.dim() != n) throw Error(ErrorKind::DimensionMismatch, "refinement: sizes differ");
  if ((t - c.sandwich_adjoint(t)).norm() > tol.eps_residual * scale_of(t))
    throw Error(precondition, "block is not compatible with its antilinear operator");

  const Matrix f = minimal_reducing_frame(t, tol);
  const Eigen::Index k = f.cols();
  if (k == n) return leaf_of(t, c, tol);

  const Subspace m(f, 1e-8);
  const Subspace cm(c.apply_columns(f), 1e-8);
  const Subspace both = subspace_intersect(m, cm, tol.eps_cluster);

  if (both.dim() == k) {
    // The irreducible piece is invariant under the antilinear operator.
    Refinement leaf = leaf_of(f.adjoint() * t * f, c.restrict_to(f), tol);
    const Matrix g = m.complement().frame();
    const Refinement rest = refine_antilinear(Matrix(g.adjoint() * t * g), c.restrict_to(g), tol, precondition);
    return concat(std::move(leaf), f, rest, g);
  }
  if (both.dim() != 0)
    throw Error(ErrorKind::RefinementStalled, "irreducible subspace meets its antilinear image partially");

  // M and CM are disjoint: t reads A ⊕ Aᵗ on M + CM.
  const Matrix cf = c.apply_columns(f);
  const Matrix z = polar_isometry(cf - f * (f.adjoint() * cf));
  Matrix b(n, 2 * k);
  b << f, z;
  const Matrix a = f.adjoint() * t * f;
  if ((b.adjoint() * t * b - direct_sum(a, a.transpose())).norm() > tol.eps_residual * scale_of(t))
    throw Error(ErrorKind::RefinementStalled, "span of M and its antilinear image does not carry A ⊕ Aᵗ");
  Refinement pair = refine_aat_block(a, tol);
  if (2 * k == n) {
    pair.basis = (b * pair.basis).eval();
    return pair;
  }
  const Matrix g = Subspace(b, 1e-8).complement().frame();
  const Refinement rest = refine_antilinear(Matrix(g.adjoint() * t * g), c.restrict_to(g), tol, precondition);
  return concat(std::move(pair), b, rest, g);
}

}  // namespace

Refinement refine_csm_block(const Matrix& t, const Conjugation& c, const Tolerances& tol) {
  return refine_antilinear(t, c, tol, ErrorKind::NotCSymmetricWithRespectToC);
}

Refinement refine_asm_block(const Matrix& t, const Anticonjugation& k, const Tolerances& tol) {
  return refine_antilinear(t, k, tol, ErrorKind::NotAntiSymmetricWithRespectToK);
}

Refinement refine_aat_block(const Matrix& a, const Tolerances& tol) {
  const Eigen::Index d = a.rows();
  if (a.cols() != d) throw Error(ErrorKind::DimensionMismatch, "refine_aat_block needs a square matrix");
  const IrreducibleDecomposition dec = decompose_irreducibles(a, tol);

  Refinement out;
  std::vector<Matrix> cols;
  Eigen::Index off = 0;
  for (const Matrix& ai : dec.blocks) {
    const Eigen::Index k = ai.rows();
    const Matrix wi = dec.w.middleCols(off, k);
    off += k;
    Matrix top = Matrix::Zero(2 * d, k);
    Matrix bottom = Matrix::Zero(2 * d, k);
    top.topRows(d) = wi;
    bottom.bottomRows(d) = wi.conjugate();

    const Decision uet = is_uet(ai, tol);
    if (uet.verdict == Verdict::yes) {
      const UetCertificate& cert = *uet.certificate;
      if (classify_irreducible_uet(ai, cert, tol) == IrreducibleClass::uecsm) {
        const auto r = realize_csm(ai, Conjugation(clean_symmetric_unitary(cert.u), 1e-6), tol);
        out.summands.push_back(csm_leaf(r.s, "factor of A ⊕ Aᵗ, irreducible and UECSM", tol));
        out.summands.push_back(csm_leaf(r.s, "transposed factor of A ⊕ Aᵗ, irreducible and UECSM", tol));
        cols.push_back(top * r.q);
        cols.push_back(bottom * r.q.conjugate());
      } else {
        const auto r = realize_asm(ai, Anticonjugation(clean_skew_unitary(cert.u), 1e-6), tol);
        const AsmShape transposed = AsmShape::from_matrix(r.shape.assemble().transpose(), tol.eps_residual);
        out.summands.push_back(asm_leaf(r.shape, "factor of A ⊕ Aᵗ, irreducible and UEASM", tol));
        out.summands.push_back(asm_leaf(transposed, "transposed factor of A ⊕ Aᵗ, irreducible and UEASM", tol));
        cols.push_back(top * r.q);
        cols.push_back(bottom * r.q.conjugate());
      }
      continue;
    }

    Summand s;
    s.kind = SummandKind::III;
    s.matrix = direct_sum(ai, ai.transpose());
    s.factor = ai;
    s.certificate = make_certificate(s.matrix, swap_matrix(k), CertificateKind::uecsm, tol,
                                     "A ⊕ Aᵗ is symmetric under the block swap");
    s.provisional = uet.verdict == Verdict::undetermined;
    s.evidence = s.provisional ? "provisional: UET status of the factor is undetermined (" + uet.evidence + ")"
                               : "factor is not UET: " + uet.evidence;
    out.summands.push_back(std::move(s));
    Matrix both(2 * d, 2 * k);
    both << top, bottom;
    cols.push_back(std::move(both));
  }
  out.basis.resize(2 * d, 2 * d);
  Eigen::Index at = 0;
  for (const auto& c : cols) {
    out.basis.middleCols(at, c.cols()) = c;
    at += c.cols();
  }
  return out;
}

// ---- pipeline ------------------------------------------------------------

namespace {

struct Piece {
  Summand summand;
  Matrix frame;
};

void append_pieces(std::vector<Piece>& pieces, const Refinement& r, const Matrix& frame) {
  const Matrix basis = frame * r.basis;
  Eigen::Index at = 0;
  for (const auto& s : r.summands) {
    pieces.push_back({s, basis.middleCols(at, s.size())});
    at += s.size();
  }
}

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const cplx x = a(i, j), y = b(i, j);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
  return false;
}

bool piece_less(const Piece& a, const Piece& b) {
  if (a.summand.kind != b.summand.kind) return a.summand.kind < b.summand.kind;
  if (a.summand.size() != b.summand.size()) return a.summand.size() < b.summand.size();
  return lex_less(a.summand.matrix, b.summand.matrix);
}

CanonicalDecomposition run_pipeline(const Matrix& t, const Matrix& u, const Tolerances& tol) {
  const SpectralBlockStructure s = spectral_structure(u, tol);
  const StructuredQ q = structure_q(u, s, tol);
  const ExtractedBlocks blocks = extract_blocks(t, s, q, tol);

  std::vector<Piece> pieces;
  if (blocks.t_plus)
    append_pieces(pieces, refine_csm_block(*blocks.t_plus, Conjugation(q.q_plus, 1e-6), tol), blocks.plus_frame);
  if (blocks.t_minus)
    append_pieces(pieces, refine_asm_block(*blocks.t_minus, Anticonjugation(q.q_minus, 1e-6), tol),
                  blocks.minus_frame);
  for (std::size_t i = 0; i < blocks.a_blocks.size(); ++i)
    append_pieces(pieces, refine_aat_block(blocks.a_blocks[i], tol), blocks.pair_frames[i]);

  std::stable_sort(pieces.begin(), pieces.end(), piece_less);
  CanonicalDecomposition out;
  out.global_w.resize(t.rows(), t.rows());
  Eigen::Index at = 0;
  for (auto& p : pieces) {
    out.global_w.middleCols(at, p.frame.cols()) = p.frame;
    at += p.frame.cols();
    if (p.summand.provisional) out.warnings.push_back("provisional type III summand: " + p.summand.evidence);
    out.summands.push_back(std::move(p.summand));
  }
  validate_decomposition(t, out, tol);
  return out;
}

bool retryable(ErrorKind k) {
  switch (k) {
    case ErrorKind::QStructureViolated:
    case ErrorKind::BlockLeakage:
    case ErrorKind::SpectrumNotConjugateSymmetric:
    case ErrorKind::RefinementStalled:
    case ErrorKind::SplitResidualTooLarge:
    case ErrorKind::NotScalar:
    case ErrorKind::NotCSymmetricWithRespectToC:
    case ErrorKind::NotAntiSymmetricWithRespectToK:
    case ErrorKind::InvariantViolated:
      return true;
    default:
      return false;
  }
}

// Tightens eps_cluster by 10× up to three times on structural failures.
CanonicalDecomposition pipeline_with_retries(const Matrix& t, const Matrix& u, const Tolerances& tol) {
  Tolerances local = tol;
  std::optional<Error> last;
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      return run_pipeline(t, u, local);
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      last = e;
    }
    local.eps_cluster /= 10.0;
  }
  throw *last;
}

}  // namespace

CanonicalDecomposition decompose_canonical(const Matrix& t, const UetCertificate& cert, const Tolerances& tol) {
  tol.validate();
  if (cert.u.rows() != t.rows()) throw Error(ErrorKind::DimensionMismatch, "certificate size differs from matrix");
  if (certificate_residual(t, cert.u) > tol.eps_residual || !is_unitary(cert.u, tol.eps_residual))
    throw Error(ErrorKind::InvalidArgument, "certificate does not witness T ≅ Tᵗ");
  return pipeline_with_retries(t, cert.u, tol);
}

CanonicalDecomposition decompose_canonical(const Matrix& t, const Tolerances& tol) {
  tol.validate();
  std::optional<Error> last;
  // A failed pipeline is retried from fresh witnesses: a different unitary
  // moves the spectrum of U·conj(U) away from unlucky coincidences.
  for (std::uint64_t extra = 0; extra < 3; ++extra) {
    Tolerances local = tol;
    local.seed = tol.seed + extra;
    const Decision d = is_uet(t, local);
    if (d.verdict == Verdict::no) throw Error(ErrorKind::NotUET, d.evidence);
    if (d.verdict == Verdict::undetermined) throw Error(ErrorKind::Undetermined, d.evidence);
    try {
      auto out = pipeline_with_retries(t, d.certificate->u, tol);
      out.warnings.insert(out.warnings.begin(), d.warnings.begin(), d.warnings.end());
      return out;
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      last = e;
    }
  }
  throw *last;
}

void validate_decomposition(const Matrix& t, const CanonicalDecomposition& d, const Tolerances& tol) {
  const Eigen::Index n = t.rows();
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvariantViolated, what); };
  if (d.global_w.rows() != n || d.global_w.cols() != n) fail("global_w has the wrong size");
  if (!is_unitary(d.global_w, tol.eps_residual)) fail("global_w is not unitary");
  std::vector<Matrix> mats;
  Eigen::Index total = 0;
  for (const auto& s : d.summands) {
    mats.push_back(s.matrix);
    total += s.size();
    switch (s.kind) {
      case SummandKind::I:
        if ((s.matrix - s.matrix.transpose()).norm() > tol.eps_residual * scale_of(s.matrix))
          fail("type I summand is not symmetric");
        if (!is_irreducible(s.matrix, tol)) fail("type I summand is reducible");
        break;
      case SummandKind::II:
        if (s.size() < 8 || s.size() % 2 != 0) fail("type II summand of size " + std::to_string(s.size()));
        if (!satisfies_asm_identity(s.matrix, tol.eps_residual)) fail("type II summand is not antiskewsymmetric");
        if (!is_irreducible(s.matrix, tol)) fail("type II summand is reducible");
        break;
      case SummandKind::III:
        if (s.size() < 6 || s.size() % 2 != 0) fail("type III summand of size " + std::to_string(s.size()));
        if (!s.factor || s.factor->rows() * 2 != s.size()) fail("type III summand without a matching factor");
        if (!is_irreducible(*s.factor, tol)) fail("type III factor is reducible");
        break;
    }
  }
  if (total != n) fail("summand sizes do not add up to the matrix size");
  const Matrix recon = d.global_w.adjoint() * t * d.global_w;
  if ((recon - direct_sum(mats)).norm() > tol.eps_residual * scale_of(t)) fail("reconstruction residual too large");
}

CsmRealization global_symmetric_realization(const Matrix& t, const CanonicalDecomposition& d,
                                            const Tolerances& tol) {
  std::vector<Matrix> witnesses;
  for (const auto& s : d.summands) {
    if (s.kind == SummandKind::II)
      throw Error(ErrorKind::InvalidArgument, "decomposition has a type II summand; no symmetric realization");
    witnesses.push_back(s.kind == SummandKind::I ? Matrix::Identity(s.size(), s.size()) : swap_matrix(s.size() / 2));
  }
  const Matrix u = clean_symmetric_unitary(d.global_w * direct_sum(witnesses) * d.global_w.transpose());
  return realize_csm(t, Conjugation(u, 1e-6), tol);
}

}  // namespace mtt
