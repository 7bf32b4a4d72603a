#include "mtt/json_io.hpp"

#include "mtt/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mtt {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double finite_number(const Json& v, const char* where) {
  if (!v.is_number()) parse_error(std::string(where) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_error(std::string(where) + ": non-finite number");
  return x;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  Json out;
  out["n"] = m.rows();
  out["entries"] = std::move(rows);
  return out;
}

Matrix matrix_from_json(const Json& j) {
  const Json& n_field = field(j, "n");
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) parse_error("'n' must be a positive integer");
  const auto n = static_cast<Eigen::Index>(n_field.get<long long>());
  const Json& rows = field(j, "entries");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
    parse_error("'entries' must hold exactly n rows");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      parse_error("row " + std::to_string(i) + " does not have n entries (matrix must be square)");
    for (Eigen::Index k = 0; k < n; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2)
        parse_error("entry (" + std::to_string(i) + ", " + std::to_string(k) + ") must be [re, im]");
      m(i, k) = cplx(finite_number(e[0], "entry"), finite_number(e[1], "entry"));
    }
  }
  return m;
}

Json antilinear_to_json(const std::variant<Conjugation, Anticonjugation>& op) {
  Json out;
  if (const auto* c = std::get_if<Conjugation>(&op)) {
    out["kind"] = "conjugation";
    out["factor"] = matrix_to_json(c->factor());
  } else {
    out["kind"] = "anticonjugation";
    out["factor"] = matrix_to_json(std::get<Anticonjugation>(op).factor());
  }
  return out;
}

std::variant<Conjugation, Anticonjugation> antilinear_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  const Matrix factor = matrix_from_json(field(j, "factor"));
  try {
    if (kind == "conjugation") return Conjugation(factor, 1e-6);
    if (kind == "anticonjugation") return Anticonjugation(factor, 1e-6);
  } catch (const Error& e) {
    parse_error(e.what());
  }
  parse_error("'kind' must be \"conjugation\" or \"anticonjugation\"");
}

Json certificate_to_json(const UetCertificate& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  out["witness"] = matrix_to_json(c.u);
  out["residual"] = c.residual;
  out["symmetry"] = to_string(c.symmetry);
  out["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
  out["evidence"] = c.evidence;
  return out;
}

UetCertificate certificate_from_json(const Json& j) {
  UetCertificate c;
  const Json& kind = field(j, "kind");
  if (kind == "uet")
    c.kind = CertificateKind::uet;
  else if (kind == "uecsm")
    c.kind = CertificateKind::uecsm;
  else if (kind == "ueasm")
    c.kind = CertificateKind::ueasm;
  else
    parse_error("certificate 'kind' must be uet, uecsm or ueasm");
  c.u = matrix_from_json(field(j, "witness"));
  if (auto it = j.find("alpha"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || (it->get<int>() != 1 && it->get<int>() != -1))
      parse_error("'alpha' must be 1, -1 or null");
    c.alpha = it->get<int>();
  }
  if (auto it = j.find("residual"); it != j.end()) c.residual = finite_number(*it, "residual");
  if (auto it = j.find("evidence"); it != j.end() && it->is_string()) c.evidence = it->get<std::string>();
  return c;
}

Json summand_to_json(const Summand& s) {
  Json out;
  out["kind"] = to_string(s.kind);
  out["size"] = s.size();
  out["matrix"] = matrix_to_json(s.matrix);
  out["certificate"] = certificate_to_json(s.certificate);
  if (s.factor) out["factor"] = matrix_to_json(*s.factor);
  if (s.kind == SummandKind::III) out["provisional"] = s.provisional;
  out["evidence"] = s.evidence;
  return out;
}

Json decomposition_to_json(const CanonicalDecomposition& d) {
  Json out;
  out["global_w"] = matrix_to_json(d.global_w);
  Json summands = Json::array();
  for (const auto& s : d.summands) summands.push_back(summand_to_json(s));
  out["summands"] = std::move(summands);
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace mtt
