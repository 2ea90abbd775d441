#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "qd/certify.hpp"
#include "qd/error.hpp"
#include "qd/frame.hpp"
#include "qd/io.hpp"
#include "qd/quasidual.hpp"
#include "qd/spectral.hpp"
#include "qd/tolerances.hpp"
#include "qd/uin.hpp"

// Command implementations behind the `qd` executable. Each returns the JSON
// report and the process exit status; argument parsing lives in tools/.

namespace qd::commands {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { Success = 0, Usage = 1, Parse = 2, Numerical = 3, CertificationViolation = 4 };

struct Outcome {
  json report;
  int exit_code = Success;
};

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidSpec:
    case Errc::InvalidArgument:
    case Errc::InvalidP:
      return Usage;
    case Errc::ParseError:
    case Errc::InvalidModel:
    case Errc::DimensionMismatch:
      return Parse;
    default:
      return Numerical;
  }
}

/// Runs `body`, turning a qd::Error into an error report with the mapped exit status.
inline Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}, exit_code_for(e.code())};
  }
}

namespace detail {

inline json tolerances_json(const Tolerances& tol) {
  return {{"herm", tol.herm}, {"eig", tol.eig},   {"dual", tol.dual},
          {"fp", tol.fp},     {"tie", tol.tie},   {"deflation_tie", tol.deflation_tie},
          {"cert", tol.cert}};
}

inline json vec_json(const RealVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

inline json header(const char* command, const Tolerances& tol) {
  return {{"command", command}, {"version", kVersion}, {"tolerances", tolerances_json(tol)}};
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

}  // namespace detail

struct AnalyzeOptions {
  std::filesystem::path frame;
  std::optional<std::filesystem::path> dual;  ///< optional Parseval frame to evaluate against
  std::string norm = "op";
};

inline Outcome analyze(const AnalyzeOptions& opt, const Tolerances& tol) {
  const UINorm norm = UINorm::parse(opt.norm);
  const Frame F = io::read_frame(opt.frame);
  const FrameBounds fb = frame_bounds(F);
  json r = detail::header("analyze", tol);
  r["input"] = opt.frame.string();
  r["norm"] = norm.to_string();
  r["n"] = F.dim();
  r["m"] = F.size();
  r["excess"] = excess(F);
  r["frame_bounds"] = {{"A", fb.lower}, {"B", fb.upper}};
  r["gramian_spectrum"] = detail::vec_json(gramian_spectrum(F));
  r["frame_operator_spectrum"] = detail::vec_json(frame_operator_spectrum(F));
  r["is_parseval"] = is_parseval(F, tol);
  r["parseval_residual"] = parseval_residual(F);
  r["parseval_dual_exists"] = parseval_dual_exists(F, tol);
  r["alpha"] = alpha(F, norm);
  r["canonical_dual"] = io::synthesis_to_json(canonical_dual(F).synthesis());
  if (opt.dual) {
    const Frame X = io::read_frame(*opt.dual);
    if (X.dim() != F.dim() || X.size() != F.size()) {
      throw Error(Errc::DimensionMismatch, "analyze: dual frame has a different shape");
    }
    const Matrix E = F.synthesis() * X.synthesis().adjoint() - detail::identity(F.dim());
    json against = {{"input", opt.dual->string()},
                    {"worst_case_error", worst_case_error(F, X)},
                    {"error", norm(E)},
                    {"coisometry_residual", parseval_residual(X)},
                    {"is_parseval", is_parseval(X, tol)}};
    against["is_quasidual"] = against["is_parseval"].get<bool>() ? json(is_quasidual(F, X, norm, tol)) : json(false);
    r["against"] = std::move(against);
  }
  return {std::move(r), Success};
}

struct QuasidualOptions {
  std::filesystem::path frame;
  std::string norm = "op";
  std::optional<std::filesystem::path> out;
};

inline Outcome quasidual(const QuasidualOptions& opt, const Tolerances& tol) {
  const UINorm norm = UINorm::parse(opt.norm);
  const Frame F = io::read_frame(opt.frame);
  const QuasiDualResult res = construct(F, norm, tol);
  const Matrix FX = F.synthesis() * res.X.adjoint();
  const Matrix E = FX - detail::identity(F.dim());
  const DeviationReport via_r = optimal_spectrum_via_r(gramian_spectrum(F), F.dim());

  json r = detail::header("quasidual", tol);
  r["input"] = opt.frame.string();
  r["norm"] = norm.to_string();
  r["n"] = F.dim();
  r["m"] = F.size();
  r["d"] = detail::vec_json(res.spectrum.d);
  r["r"] = res.spectrum.r;
  r["alpha"] = res.alpha_value;
  r["error_recomputed"] = norm(E);
  r["worst_case_error"] = op_norm(E);
  r["coisometry_residual"] = op_norm(res.X * res.X.adjoint() - detail::identity(F.dim()));
  r["fxstar_eigenvalues"] = detail::vec_json(hermitian_eigen((FX + FX.adjoint()) / 2.0, tol).values);
  r["fxstar_hermitian_residual"] = op_norm(FX - FX.adjoint());
  r["deviations_via_r"] = {{"branch", std::string(to_string(via_r.branch))},
                           {"values", via_r.values},
                           {"discrepancy", via_r.discrepancy}};
  r["X"] = io::synthesis_to_json(res.X);
  if (opt.out) {
    io::write_frame(*opt.out, res.X);
    r["out"] = opt.out->string();
  }
  return {std::move(r), Success};
}

struct SpectralOptions {
  std::filesystem::path model;
};

inline Outcome spectral_report(const SpectralOptions& opt, const Tolerances& tol) {
  const spectral::SpectralModel model = io::read_model(opt.model);
  const FrameBounds fb = spectral::frame_bounds_model(model);
  const spectral::AlphaReport ar = spectral::alpha_model(model);

  json r = detail::header("spectral", tol);
  r["input"] = opt.model.string();
  r["model"] = io::model_to_json(model);
  r["frame_bounds"] = {{"A", fb.lower}, {"B", fb.upper}};
  r["alpha"] = ar.alpha;
  r["attained"] = std::string(spectral::to_string(ar.attained));
  r["beta"] = ar.beta ? json(*ar.beta) : json(nullptr);
  r["branch"] = ar.branch;
  if (!model.infinite_excess()) {
    r["u_next"] = spectral::u_n(model, *model.excess + 1);
    r["l_next"] = spectral::l_n(model, *model.excess + 1);
  }
  try {
    const spectral::AlphaBounds b = spectral::alpha_bounds(model);
    r["bounds"] = {{"lower", b.lower}, {"upper", b.upper}};
  } catch (const Error& e) {
    if (e.code() != Errc::HypothesisNotMet) throw;
    r["bounds"] = nullptr;
  }
  try {
    r["attainment_conditions"] = spectral::attainment_conditions(model);
  } catch (const Error& e) {
    if (e.code() != Errc::HypothesisNotMet) throw;
    r["attainment_conditions"] = nullptr;
  }
  return {std::move(r), Success};
}

struct CertifyOptions {
  std::filesystem::path frame;
  std::string norm = "op";
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
};

inline Outcome certify(const CertifyOptions& opt, const Tolerances& tol) {
  if (opt.samples < 1) throw Error(Errc::InvalidArgument, "certify: --samples must be >= 1");
  const UINorm norm = UINorm::parse(opt.norm);
  const Frame F = io::read_frame(opt.frame);
  const CertificationReport rep = certify_alpha(F, norm, opt.samples, opt.seed, tol);

  json r = detail::header("certify", tol);
  r["input"] = opt.frame.string();
  r["norm"] = norm.to_string();
  r["samples"] = rep.samples;
  r["evaluations"] = rep.evaluations;
  r["seed"] = rep.seed;
  r["alpha_claimed"] = rep.alpha_claimed;
  r["min_error_sampled"] = rep.min_error_sampled;
  r["violations"] = rep.violations;
  r["passed"] = rep.passed();
  return {std::move(r), rep.passed() ? Success : CertificationViolation};
}

}  // namespace qd::commands
