#pragma once

// JSON forms of matrices, (anti)conjugations, certificates and
// decompositions. Parsers throw Error(ErrorKind::Parse).

#include "mtt/antilinear.hpp"
#include "mtt/canonical.hpp"
#include "mtt/intertwiner.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace mtt {

using Json = nlohmann::ordered_json;

/// {"n": n, "entries": [[[re, im], ...], ...]}, row-major.
Json matrix_to_json(const Matrix& m);
/// Rejects non-square payloads, a mismatched "n", malformed entries and
/// non-finite numbers.
Matrix matrix_from_json(const Json& j);

/// {"kind": "conjugation" | "anticonjugation", "factor": <matrix>}.
Json antilinear_to_json(const std::variant<Conjugation, Anticonjugation>& op);
std::variant<Conjugation, Anticonjugation> antilinear_from_json(const Json& j);

/// {"kind", "witness", "residual", "alpha", "evidence"}, plus "symmetry".
Json certificate_to_json(const UetCertificate& c);
/// Reads kind, witness and the optional alpha; residual and symmetry are
/// recomputed by whoever checks the certificate.
UetCertificate certificate_from_json(const Json& j);

Json summand_to_json(const Summand& s);
/// {"global_w", "summands": [{"kind", "size", "matrix", "certificate", ...}]}.
Json decomposition_to_json(const CanonicalDecomposition& d);

Json parse_json_text(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace mtt
