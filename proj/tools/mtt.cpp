// mtt: analyze, generate and verify transposition-equivalence certificates.
//
// Exit codes: 0 ok, 1 parse or usage error, 2 not UET (with --decompose),
// 3 undetermined, 4 certificate rejected.

#include "mtt/error.hpp"
#include "mtt/gallery.hpp"
#include "mtt/json_io.hpp"
#include "mtt/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace mtt;

constexpr int kExitParse = 1;
constexpr int kExitBadCertificate = 4;

struct ToleranceFlags {
  Tolerances tol;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", tol.eps_residual, "certificate residual tolerance (eps_residual)");
    cmd->add_option("--eps-rank", tol.eps_rank, "relative singular-value cutoff for kernels");
    cmd->add_option("--eps-cluster", tol.eps_cluster, "eigenvalue clustering distance");
    cmd->add_option("--max-iter", tol.max_iter, "iterations per unitary search start");
    cmd->add_option("--restarts", tol.restarts, "starts of the unitary search");
    cmd->add_option("--seed", tol.seed, "seed for the randomized searches");
  }
};

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& path, const ToleranceFlags& flags, const AnalyzeOptions& opts, bool json,
                const std::string& cert_dir) {
  const Matrix t = matrix_from_json(parse_json_text(read_file(path)));
  const AnalysisReport report = analyze(t, flags.tol, opts);
  if (json)
    std::cout << report_to_json(report).dump(2) << "\n";
  else
    std::cout << report_to_text(report);

  if (!cert_dir.empty()) {
    std::filesystem::create_directories(cert_dir);
    const std::pair<const char*, const Decision*> named[] = {
        {"uet", &report.uet}, {"uecsm", &report.uecsm}, {"ueasm", &report.ueasm}};
    for (const auto& [name, d] : named)
      if (d->certificate)
        write_json(std::filesystem::path(cert_dir) / (std::string(name) + ".json"), certificate_to_json(*d->certificate));
    if (report.decomposition)
      write_json(std::filesystem::path(cert_dir) / "decomposition.json", decomposition_to_json(*report.decomposition));
  }
  if (report.decomposition_error)
    std::cerr << "decomposition: " << to_string(*report.decomposition_error) << ": " << report.decomposition_message
              << "\n";
  return report.exit_code();
}

// KIND[,n=N][,d=D][,seed=S]
GeneratorSpec parse_operand(const std::string& text) {
  GeneratorSpec spec;
  std::stringstream ss(text);
  std::string part;
  bool first = true;
  while (std::getline(ss, part, ',')) {
    if (first) {
      spec.kind = parse_generator_kind(part);
      first = false;
      continue;
    }
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidSpec, "operand parameter '" + part + "' lacks '='");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    try {
      if (key == "n")
        spec.n = std::stoi(value);
      else if (key == "d")
        spec.d = std::stoi(value);
      else if (key == "seed")
        spec.seed = std::stoull(value);
      else
        throw Error(ErrorKind::InvalidSpec, "unknown operand parameter '" + key + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidSpec, "bad value in operand parameter '" + part + "'");
    }
  }
  if (first) throw Error(ErrorKind::InvalidSpec, "empty operand");
  return spec;
}

int cmd_generate(const std::string& kind, int d, int n, std::uint64_t seed, const std::vector<std::string>& operands) {
  GeneratorSpec spec;
  spec.kind = parse_generator_kind(kind);
  spec.d = d;
  spec.n = n;
  spec.seed = seed;
  for (const auto& op : operands) spec.operands.push_back(parse_operand(op));
  const Generated g = generate(spec);
  if (const auto* m = std::get_if<Matrix>(&g))
    std::cout << matrix_to_json(*m).dump(2) << "\n";
  else if (const auto* c = std::get_if<Conjugation>(&g))
    std::cout << antilinear_to_json(*c).dump(2) << "\n";
  else
    std::cout << antilinear_to_json(std::get<Anticonjugation>(g)).dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& matrix_path, const std::string& cert_path, const Tolerances& tol) {
  const Matrix t = matrix_from_json(parse_json_text(read_file(matrix_path)));
  const UetCertificate cert = certificate_from_json(parse_json_text(read_file(cert_path)));
  const VerifyResult v = verify_certificate(t, cert, tol);
  if (v.ok) {
    std::cout << "certificate accepted: kind " << to_string(cert.kind) << ", residual " << v.residual << "\n";
    return 0;
  }
  for (const auto& msg : v.violations) std::cout << "violated: " << msg << "\n";
  return kExitBadCertificate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary equivalence of a matrix to its transpose: deciders, certificates, canonical decomposition"};
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "decide UET/UECSM/UEASM and irreducibility of a matrix");
  std::string analyze_path, cert_dir;
  bool json = false;
  AnalyzeOptions opts;
  ToleranceFlags analyze_tol;
  analyze_cmd->add_option("path", analyze_path, "matrix JSON file")->required();
  analyze_cmd->add_flag("--decompose", opts.decompose, "run the canonical type I/II/III decomposition");
  analyze_cmd->add_flag("--json", json, "machine-readable report");
  analyze_cmd->add_option("--budget", opts.word_budget, "maximal trace-word length");
  analyze_cmd->add_option("--cert-dir", cert_dir, "write certificates and the decomposition here");
  analyze_tol.attach(analyze_cmd);

  auto* generate_cmd = app.add_subcommand("generate", "print a gallery matrix as JSON");
  std::string kind;
  int d = 4, n = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> operands;
  generate_cmd->add_option("kind", kind, "halmos, george, asm, random-csm, random-asm, random-unitary, "
                                         "random-conjugation, random-anticonjugation, toeplitz, direct-sum, scrambled")
      ->required();
  generate_cmd->add_option("--d", d, "half size of the ASM generators");
  generate_cmd->add_option("--n", n, "size of the random kinds");
  generate_cmd->add_option("--seed", seed, "generator seed");
  generate_cmd->add_option("--operand", operands, "operand KIND[,n=N][,d=D][,seed=S] for direct-sum/scrambled");

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate by direct multiplication");
  std::string verify_matrix, verify_cert;
  ToleranceFlags verify_tol;
  verify_cmd->add_option("matrix", verify_matrix, "matrix JSON file")->required();
  verify_cmd->add_option("certificate", verify_cert, "certificate JSON file")->required();
  verify_cmd->add_option("--tol", verify_tol.tol.eps_residual, "residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_path, analyze_tol, opts, json, cert_dir);
    if (*generate_cmd) return cmd_generate(kind, d, n, seed, operands);
    if (*verify_cmd) return cmd_verify(verify_matrix, verify_cert, verify_tol.tol);
  } catch (const Error& e) {
    std::cerr << "mtt: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "mtt: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
