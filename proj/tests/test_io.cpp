#include <gtest/gtest.h>

#include "mtt/error.hpp"
#include "mtt/gallery.hpp"
#include "mtt/json_io.hpp"
#include "mtt/report.hpp"

using namespace mtt;

namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    matrix_from_json(parse_json_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolated;
}

}  // namespace

TEST(Json, MatrixRoundTripIsExact) {
  const Matrix m = scramble(george(), 3);
  const std::string text = matrix_to_json(m).dump();
  EXPECT_EQ(matrix_from_json(parse_json_text(text)), m);
}

TEST(Json, MatrixLayout) {
  Matrix m(1, 1);
  m << cplx(1.5, -2);
  EXPECT_EQ(matrix_to_json(m).dump(), R"({"n":1,"entries":[[[1.5,-2.0]]]})");
}

TEST(Json, RejectsMalformedMatrices) {
  EXPECT_EQ(parse_kind(R"({"n":2,"entries":[[[1,0],[0,0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":2,"entries":[[[1,0],[0,0]],[[1,0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"entries":[[[1e999,0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"entries":[[[1,0,0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"entries":[[["1",0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"entries":[[[1,0]]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":0,"entries":[]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"entries":)"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind("[1, 2]"), ErrorKind::Parse);
}

TEST(Json, Antilinear) {
  const Conjugation c = random_conjugation(3, 1);
  const auto back = antilinear_from_json(antilinear_to_json(c));
  ASSERT_TRUE(std::holds_alternative<Conjugation>(back));
  EXPECT_EQ(std::get<Conjugation>(back).factor(), c.factor());
  Json bad = antilinear_to_json(Anticonjugation::canonical(1));
  bad["kind"] = "conjugation";
  EXPECT_THROW(antilinear_from_json(bad), Error);
}

TEST(Json, CertificateRoundTrip) {
  Tolerances tol;
  const Matrix t = toeplitz_random(4, 1);
  const UetCertificate c = make_certificate(t, reversal(4), CertificateKind::uecsm, tol, "reversal");
  const Json j = certificate_to_json(c);
  EXPECT_EQ(j["kind"], "uecsm");
  EXPECT_EQ(j["symmetry"], "symmetric");
  EXPECT_EQ(j["alpha"], 1);
  const UetCertificate back = certificate_from_json(j);
  EXPECT_EQ(back.kind, CertificateKind::uecsm);
  EXPECT_EQ(back.u, c.u);
  EXPECT_EQ(back.alpha, 1);
  Json bad = j;
  bad["alpha"] = 2;
  EXPECT_THROW(certificate_from_json(bad), Error);
  bad = j;
  bad["kind"] = "uex";
  EXPECT_THROW(certificate_from_json(bad), Error);
}

TEST(Verify, AcceptsGenuineAndRejectsForged) {
  Tolerances tol;
  const Matrix t = toeplitz_random(5, 4);
  UetCertificate c = make_certificate(t, reversal(5), CertificateKind::uecsm, tol);
  EXPECT_TRUE(verify_certificate(t, c, tol).ok);

  UetCertificate forged = c;
  forged.u = Matrix::Identity(5, 5);
  const VerifyResult v = verify_certificate(t, forged, tol);
  EXPECT_FALSE(v.ok);
  EXPECT_GT(v.residual, tol.eps_residual);

  forged = c;
  forged.kind = CertificateKind::ueasm;
  EXPECT_FALSE(verify_certificate(t, forged, tol).ok);

  forged = c;
  forged.alpha = -1;
  EXPECT_FALSE(verify_certificate(t, forged, tol).ok);

  forged = c;
  forged.u = reversal(5) * 2.0;
  const VerifyResult scaled = verify_certificate(t, forged, tol);
  EXPECT_FALSE(scaled.ok);
  EXPECT_LT(scaled.residual, 1e-12);  // only unitarity fails

  forged.u = Matrix::Identity(3, 3);
  EXPECT_FALSE(verify_certificate(t, forged, tol).ok);
}

TEST(Digest, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, DeterministicAndExitCodes) {
  Tolerances tol;
  AnalyzeOptions opts;
  opts.decompose = true;
  const Matrix t = scramble(toeplitz_random(4, 2), 1);
  const std::string a = report_to_json(analyze(t, tol, opts)).dump();
  const std::string b = report_to_json(analyze(t, tol, opts)).dump();
  EXPECT_EQ(a, b);
  const AnalysisReport r = analyze(t, tol, opts);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.uet.verdict, Verdict::yes);
  ASSERT_TRUE(r.decomposition);
  EXPECT_EQ(r.input_digest, sha256_hex(matrix_to_json(t).dump()));

  const AnalysisReport h = analyze(halmos(), tol, opts);
  EXPECT_EQ(h.exit_code(), 2);
  EXPECT_EQ(h.decomposition_error, ErrorKind::NotUET);
  EXPECT_TRUE(h.irreducible);
  opts.decompose = false;
  EXPECT_EQ(analyze(halmos(), tol, opts).exit_code(), 0);
}

TEST(Report, TextMentionsVerdicts) {
  const std::string text = report_to_text(analyze(halmos(), Tolerances{}, AnalyzeOptions{}));
  EXPECT_NE(text.find("uet  : no"), std::string::npos) << text;
  EXPECT_NE(text.find("irreducible: yes"), std::string::npos);
}
