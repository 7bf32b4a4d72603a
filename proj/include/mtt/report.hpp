#pragma once

// Analysis report behind `mtt analyze`, and search-free certificate checks
// behind `mtt verify`.

#include "mtt/canonical.hpp"
#include "mtt/error.hpp"
#include "mtt/intertwiner.hpp"
#include "mtt/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtt {

struct AnalyzeOptions {
  bool decompose = false;
  int word_budget = 0;  // 0 picks the default per size
};

struct AnalysisReport {
  std::string input_digest;  // SHA-256 of the canonical matrix JSON
  Eigen::Index n = 0;
  Decision uet;
  Decision uecsm;
  Decision ueasm;
  bool irreducible = false;
  int commutant_dim = 0;
  bool decompose_requested = false;
  std::optional<CanonicalDecomposition> decomposition;
  std::optional<ErrorKind> decomposition_error;
  std::string decomposition_message;
  Tolerances tolerances_used;
  std::vector<std::string> warnings;

  /// 0 ok, 2 not UET with a decomposition requested, 3 undetermined or a
  /// decomposition that failed for numerical reasons.
  int exit_code() const;
};

std::string sha256_hex(const std::string& bytes);

AnalysisReport analyze(const Matrix& t, const Tolerances& tol, const AnalyzeOptions& opts);

/// Deterministic: no timings or addresses, so identical inputs give
/// byte-identical output.
Json report_to_json(const AnalysisReport& r);
std::string report_to_text(const AnalysisReport& r);

struct VerifyResult {
  bool ok = true;
  double residual = 0.0;
  std::vector<std::string> violations;
};

/// Recomputes the residual, unitarity and the claimed symmetry and alpha by
/// direct multiplication. Performs no search.
VerifyResult verify_certificate(const Matrix& t, const UetCertificate& cert, const Tolerances& tol);

}  // namespace mtt
