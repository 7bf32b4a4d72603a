#include "mtt/report.hpp"

#include "mtt/commutant.hpp"
#include "mtt/error.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace mtt {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvariantViolated, "SHA-256 computation failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

int AnalysisReport::exit_code() const {
  if (decompose_requested && uet.verdict == Verdict::no) return 2;
  if (uet.verdict == Verdict::undetermined) return 3;
  if (decompose_requested && decomposition_error) return *decomposition_error == ErrorKind::NotUET ? 2 : 3;
  return 0;
}

AnalysisReport analyze(const Matrix& t, const Tolerances& tol, const AnalyzeOptions& opts) {
  tol.validate();
  AnalysisReport r;
  r.input_digest = sha256_hex(matrix_to_json(t).dump());
  r.n = t.rows();
  r.tolerances_used = tol;
  r.decompose_requested = opts.decompose;
  r.uet = is_uet(t, tol, opts.word_budget);
  r.uecsm = is_uecsm(t, tol, opts.word_budget);
  r.ueasm = is_ueasm(t, tol, opts.word_budget);
  const CommutantBasis comm = hermitian_commutant(t, tol);
  r.commutant_dim = comm.dim_real;
  r.irreducible = comm.dim_real == 1;

  auto add = [&](const std::vector<std::string>& w) { r.warnings.insert(r.warnings.end(), w.begin(), w.end()); };
  add(r.uet.warnings);
  add(r.uecsm.warnings);
  add(r.ueasm.warnings);
  const double ratio_kept = comm.smallest_kept_ratio;
  const double ratio_dropped = comm.largest_dropped_ratio;
  if ((ratio_dropped > 0 && ratio_dropped > tol.eps_rank * 1e-3) || ratio_kept < tol.eps_rank * 1e3) {
    std::ostringstream os;
    os.precision(3);
    os << "borderline rank decision in the hermitian commutant: smallest kept σ/σmax = " << ratio_kept
       << ", largest dropped σ/σmax = " << ratio_dropped;
    r.warnings.push_back(os.str());
  }

  if (opts.decompose) {
    if (r.uet.verdict == Verdict::no) {
      r.decomposition_error = ErrorKind::NotUET;
      r.decomposition_message = r.uet.evidence;
    } else if (r.uet.verdict == Verdict::undetermined) {
      r.decomposition_error = ErrorKind::Undetermined;
      r.decomposition_message = r.uet.evidence;
    } else {
      try {
        r.decomposition = decompose_canonical(t, *r.uet.certificate, tol);
        add(r.decomposition->warnings);
      } catch (const Error& e) {
        r.decomposition_error = e.kind();
        r.decomposition_message = e.what();
      }
    }
  }
  return r;
}

namespace {

Json decision_to_json(const Decision& d) {
  Json out;
  out["verdict"] = to_string(d.verdict);
  out["evidence"] = d.evidence;
  out["certificate"] = d.certificate ? certificate_to_json(*d.certificate) : Json(nullptr);
  return out;
}

Json tolerances_to_json(const Tolerances& t) {
  Json out;
  out["eps_rank"] = t.eps_rank;
  out["eps_residual"] = t.eps_residual;
  out["eps_cluster"] = t.eps_cluster;
  out["max_iter"] = t.max_iter;
  out["restarts"] = t.restarts;
  out["seed"] = t.seed;
  return out;
}

}  // namespace

Json report_to_json(const AnalysisReport& r) {
  Json out;
  out["input_digest"] = r.input_digest;
  out["n"] = r.n;
  out["decisions"] = Json{{"uet", decision_to_json(r.uet)},
                          {"uecsm", decision_to_json(r.uecsm)},
                          {"ueasm", decision_to_json(r.ueasm)}};
  out["irreducible"] = r.irreducible;
  out["commutant_dim"] = r.commutant_dim;
  if (r.decomposition)
    out["decomposition"] = decomposition_to_json(*r.decomposition);
  else if (r.decompose_requested)
    out["decomposition"] = Json{{"error", std::string(to_string(*r.decomposition_error))},
                                {"message", r.decomposition_message}};
  else
    out["decomposition"] = nullptr;
  out["tolerances_used"] = tolerances_to_json(r.tolerances_used);
  out["warnings"] = r.warnings;
  return out;
}

std::string report_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "matrix: " << r.n << "x" << r.n << "  sha256 " << r.input_digest << "\n";
  auto line = [&](const char* name, const Decision& d) {
    os << name << ": " << to_string(d.verdict);
    if (d.certificate) os << " (witness residual " << d.certificate->residual << ")";
    os << "\n    " << d.evidence << "\n";
  };
  line("uet  ", r.uet);
  line("uecsm", r.uecsm);
  line("ueasm", r.ueasm);
  os << "irreducible: " << (r.irreducible ? "yes" : "no") << " (hermitian commutant dimension " << r.commutant_dim
     << ")\n";
  if (r.decomposition) {
    os << "decomposition:";
    for (const auto& s : r.decomposition->summands)
      os << " " << to_string(s.kind) << "(" << s.size() << ")" << (s.provisional ? "?" : "");
    os << "\n";
  } else if (r.decompose_requested) {
    os << "decomposition failed: " << to_string(*r.decomposition_error) << ": " << r.decomposition_message << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

VerifyResult verify_certificate(const Matrix& t, const UetCertificate& cert, const Tolerances& tol) {
  VerifyResult v;
  auto violate = [&](const std::string& what) {
    v.ok = false;
    v.violations.push_back(what);
  };
  if (t.rows() != t.cols() || cert.u.rows() != t.rows() || cert.u.cols() != t.cols()) {
    violate("witness size does not match the matrix");
    v.residual = INFINITY;
    return v;
  }
  v.residual = certificate_residual(t, cert.u);
  std::ostringstream os;
  os.precision(6);
  if (!(v.residual <= tol.eps_residual)) {
    os << "residual ‖TU − UTᵗ‖_F/(‖T‖_F‖U‖_F) = " << v.residual << " exceeds " << tol.eps_residual;
    violate(os.str());
  }
  const double defect = unitarity_defect(cert.u);
  if (!(defect <= tol.eps_residual)) {
    os.str("");
    os << "unitarity defect ‖U*U − I‖_F = " << defect << " exceeds " << tol.eps_residual;
    violate(os.str());
  }
  const SymmetryClass sym = symmetry_class(cert.u, tol.eps_residual);
  if (cert.kind == CertificateKind::uecsm && sym != SymmetryClass::symmetric)
    violate("uecsm certificate needs a symmetric witness, ‖U − Uᵗ‖_F = " +
            std::to_string((cert.u - cert.u.transpose()).norm()));
  if (cert.kind == CertificateKind::ueasm && sym != SymmetryClass::skew)
    violate("ueasm certificate needs a skew-symmetric witness, ‖U + Uᵗ‖_F = " +
            std::to_string((cert.u + cert.u.transpose()).norm()));
  if (cert.alpha && scalar_alpha(cert.u, tol.eps_residual) != cert.alpha)
    violate("claimed alpha = " + std::to_string(*cert.alpha) + " but U·conj(U) is not that multiple of I");
  return v;
}

}  // namespace mtt
