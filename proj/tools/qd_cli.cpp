#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qd/commands.hpp"

namespace {

int emit(const qd::commands::Outcome& outcome) {
  if (outcome.report.contains("error")) {
    std::cerr << outcome.report.dump(2) << '\n';
  } else {
    std::cout << outcome.report.dump(2) << '\n';
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parseval quasi-dual frames: optimal Parseval approximation bounds and constructions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qd::commands::kVersion));

  qd::commands::AnalyzeOptions analyze;
  std::string analyze_dual;
  auto* cmd_analyze = app.add_subcommand("analyze", "Frame bounds, spectra, Parseval-dual existence, canonical dual");
  cmd_analyze->add_option("frame", analyze.frame, "Frame file (.json, or .csv for real frames)")->required();
  cmd_analyze->add_option("--dual", analyze_dual, "Parseval frame to evaluate against");
  cmd_analyze->add_option("--norm", analyze.norm, "Norm: op, s1, s2, sinf, kf<k>");

  qd::commands::QuasidualOptions quasi;
  std::string quasi_out;
  auto* cmd_quasi = app.add_subcommand("quasidual", "Construct a Parseval quasi-dual frame");
  cmd_quasi->add_option("frame", quasi.frame, "Frame file")->required();
  cmd_quasi->add_option("--norm", quasi.norm, "Norm: op, s1, s2, sinf, kf<k>");
  cmd_quasi->add_option("--out", quasi_out, "Write the quasi-dual frame here");

  qd::commands::SpectralOptions spec;
  auto* cmd_spectral = app.add_subcommand("spectral", "Evaluate alpha for an infinite-dimensional spectral model");
  cmd_spectral->add_option("model", spec.model, "Spectral model file")->required();

  qd::commands::CertifyOptions cert;
  auto* cmd_certify = app.add_subcommand("certify", "Randomized check that no Parseval frame beats alpha");
  cmd_certify->add_option("frame", cert.frame, "Frame file")->required();
  cmd_certify->add_option("--norm", cert.norm, "Norm: op, s1, s2, sinf, kf<k>");
  cmd_certify->add_option("--samples", cert.samples, "Number of sampled coisometries")->check(CLI::PositiveNumber);
  cmd_certify->add_option("--seed", cert.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qd::commands::Usage;
  }

  auto run = [&]() -> qd::commands::Outcome {
    const qd::Tolerances tol = qd::tolerances_from_env();
    if (*cmd_analyze) {
      if (!analyze_dual.empty()) analyze.dual = analyze_dual;
      return qd::commands::analyze(analyze, tol);
    }
    if (*cmd_quasi) {
      if (!quasi_out.empty()) quasi.out = quasi_out;
      return qd::commands::quasidual(quasi, tol);
    }
    if (*cmd_spectral) return qd::commands::spectral_report(spec, tol);
    return qd::commands::certify(cert, tol);
  };
  return emit(qd::commands::guarded(run));
}
