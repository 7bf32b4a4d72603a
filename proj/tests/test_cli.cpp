#include <gtest/gtest.h>

#include "mtt/gallery.hpp"
#include "mtt/intertwiner.hpp"
#include "mtt/json_io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mtt;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mtt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  CliRun run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(MTT_CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    return r;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsDeterministic) {
  const CliRun a = run("generate random-csm --n 4 --seed 7");
  const CliRun b = run("generate random-csm --n 4 --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(matrix_from_json(parse_json_text(a.out)), random_csm(4, 7));
}

TEST_F(Cli, GenerateComposite) {
  const CliRun r = run("generate scrambled --seed 3 --operand halmos --operand random-csm,n=2,seed=5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(matrix_from_json(parse_json_text(r.out)), scramble(direct_sum(halmos(), random_csm(2, 5)), 3));
  EXPECT_EQ(run("generate direct-sum --operand random-csm,q=1").code, 1);
  EXPECT_EQ(run("generate hermite").code, 1);
}

TEST_F(Cli, AnalyzeHalmos) {
  ASSERT_EQ(run("generate halmos").code, 0);
  fs::copy_file(path("stdout.txt"), path("h.json"));
  const CliRun plain = run("analyze " + path("h.json") + " --json");
  EXPECT_EQ(plain.code, 0);
  const Json j = parse_json_text(plain.out);
  EXPECT_EQ(j["decisions"]["uet"]["verdict"], "no");
  EXPECT_EQ(j["irreducible"], true);
  EXPECT_EQ(run("analyze " + path("h.json") + " --decompose").code, 2);
}

TEST_F(Cli, AnalyzeWritesCertificatesThatVerify) {
  write("t.json", matrix_to_json(scramble(toeplitz_random(4, 1), 2)).dump());
  const CliRun r = run("analyze " + path("t.json") + " --decompose --cert-dir " + path("certs"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(path("certs/decomposition.json")));
  EXPECT_EQ(run("verify " + path("t.json") + " " + path("certs/uet.json")).code, 0);
  EXPECT_EQ(run("verify " + path("t.json") + " " + path("certs/uecsm.json")).code, 0);
}

TEST_F(Cli, VerifyReversalAndForgery) {
  const Matrix t = toeplitz_random(5, 3);
  write("t.json", matrix_to_json(t).dump());
  Tolerances tol;
  write("good.json", certificate_to_json(make_certificate(t, reversal(5), CertificateKind::uecsm, tol)).dump());
  const CliRun ok = run("verify " + path("t.json") + " " + path("good.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("accepted"), std::string::npos);

  write("forged.json",
        certificate_to_json(make_certificate(t, Matrix::Identity(5, 5), CertificateKind::uet, tol)).dump());
  const CliRun bad = run("verify " + path("t.json") + " " + path("forged.json"));
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.out.find("violated: residual"), std::string::npos);
}

TEST_F(Cli, ParseErrorsExitOne) {
  write("bad.json", R"({"n":2,"entries":[[[1,0],[0,0]]]})");
  EXPECT_EQ(run("analyze " + path("bad.json")).code, 1);
  write("garbage.json", "not json");
  EXPECT_EQ(run("analyze " + path("garbage.json")).code, 1);
  EXPECT_EQ(run("analyze " + path("missing.json")).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}
