#include "mtt/trace_words.hpp"

#include "mtt/error.hpp"

#include <cmath>

namespace mtt {

cplx trace_word(const Matrix& x, const std::string& word) {
  const Eigen::Index n = x.rows();
  Matrix p = Matrix::Identity(n, n);
  const Matrix xs = x.adjoint();
  for (char c : word) {
    if (c == 'x')
      p = p * x;
    else if (c == '*')
      p = p * xs;
    else
      throw Error(ErrorKind::InvalidArgument, std::string("bad word letter '") + c + "'");
  }
  return p.trace();
}

namespace {

TraceProfile profile_of(const Matrix& x, DimClass cls, std::vector<std::string> words) {
  TraceProfile p{cls, {}, std::move(words)};
  p.values.reserve(p.word_set.size());
  for (const auto& w : p.word_set) p.values.push_back(trace_word(x, w));
  return p;
}

void require_size(const Matrix& x, Eigen::Index n) {
  if (x.rows() != n || x.cols() != n)
    throw Error(ErrorKind::WrongDimension, "expected a " + std::to_string(n) + "×" + std::to_string(n) + " matrix");
}

}  // namespace

TraceProfile profile_2x2(const Matrix& x) {
  require_size(x, 2);
  return profile_of(x, DimClass::two, {"x", "xx", "*x"});
}

TraceProfile profile_3x3(const Matrix& x) {
  require_size(x, 3);
  return profile_of(x, DimClass::three, {"x", "xx", "xxx", "*x", "*xx", "**xx", "*xx**x"});
}

std::pair<cplx, cplx> uecsm_trace_sides(const Matrix& x) {
  return {trace_word(x, "*xx**x"), trace_word(x, "x**xx*")};
}

bool uecsm_test_3x3(const Matrix& x, const Tolerances& tol) {
  require_size(x, 3);
  const auto [lhs, rhs] = uecsm_trace_sides(x);
  return std::abs(lhs - rhs) <= tol.eps_residual * (1.0 + std::pow(x.norm(), 6));
}

int default_word_budget(Eigen::Index n) { return n == 3 ? 6 : 8; }

int pearcy_budget(Eigen::Index n) { return static_cast<int>(2 * n * n); }

namespace {

struct WordSearch {
  const Matrix* letters_a[2];
  const Matrix* letters_b[2];
  double tol_base;
  double scale;
  std::string word;
  std::uint64_t checked = 0;

  // Depth-first over words of exactly `len` letters, in lexicographic
  // order; the prefix products are carried down the recursion.
  bool search(const Matrix& pa, const Matrix& pb, int len) {
    const int depth = static_cast<int>(word.size());
    for (int letter = 0; letter < 2; ++letter) {
      word.push_back(letter == 0 ? 'x' : '*');
      if (depth + 1 == len) {
        // tr(P·L) without forming the product.
        const cplx ta = pa.cwiseProduct(letters_a[letter]->transpose()).sum();
        const cplx tb = pb.cwiseProduct(letters_b[letter]->transpose()).sum();
        ++checked;
        const double bound = tol_base * std::max(1.0, std::pow(scale, len));
        if (std::abs(ta - tb) > bound) return true;
      } else {
        const Matrix na = pa * *letters_a[letter];
        const Matrix nb = pb * *letters_b[letter];
        if (search(na, nb, len)) return true;
      }
      word.pop_back();
    }
    return false;
  }
};

}  // namespace

SpechtResult specht_bounded(const Matrix& a, const Matrix& b, int max_len, const Tolerances& tol,
                            std::uint64_t word_cap) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorKind::WrongDimension, "specht_bounded needs two square matrices of the same size");
  if (max_len < 1) throw Error(ErrorKind::InvalidArgument, "max_len must be at least 1");
  if (max_len >= 63 || (std::uint64_t{1} << (max_len + 1)) > word_cap)
    throw Error(ErrorKind::BudgetTooLarge, "2^(max_len+1) exceeds the word cap");

  const Matrix as = a.adjoint();
  const Matrix bs = b.adjoint();
  WordSearch ws{{&a, &as}, {&b, &bs}, tol.eps_residual, std::max(a.norm(), b.norm()), {}, 0};
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  SpechtResult out;
  for (int len = 1; len <= max_len; ++len) {
    ws.word.clear();
    if (ws.search(id, id, len)) {
      out.equal_so_far = false;
      out.first_violating_word = ws.word;
      break;
    }
  }
  out.words_checked = ws.checked;
  return out;
}

}  // namespace mtt
