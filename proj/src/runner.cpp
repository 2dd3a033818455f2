#include "sectionlab/runner.hpp"

#include <chrono>

#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

ErrorInfo error_info(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {err->kind(), err->what()};
  return {"Error", e.what()};
}

int execute(const ExperimentConfig& c, ReportDocument& doc) {
  c.validate();
  const RunOptions opts = c.run_options();
  switch (c.command) {
    case Command::Constants:
      doc.constants = constants_json(c.d, c.k, c.p);
      return kExitOk;
    case Command::Crofton: {
      const ConvexBody body = parse_body_spec(c.body, c.d);
      doc.estimate = crofton_intrinsic(body, c.k, opts);
      return kExitOk;
    }
    case Command::Identity: {
      const ConvexBody body = parse_body_spec(c.body, c.d);
      const auto family = c.family == "linear" ? IdentityFamily::Linear : IdentityFamily::Affine;
      doc.report = identity_check(family, body, c.p, opts, c.eq_tol);
      break;
    }
    case Command::BpCheck: {
      const ConvexBody body = parse_body_spec(c.body, c.d);
      const auto kind = c.kind == "linear" ? BpKind::Linear : BpKind::Affine;
      doc.report = bp_check(kind, body, c.k, c.p, opts, c.eq_tol);
      break;
    }
    case Command::Verify: {
      const ConvexBody body = parse_body_spec(c.body, c.d);
      const MomentParams params(c.d, c.k, c.p);
      const TheoremId id = *parse_theorem(c.theorem);
      doc.report = c.probabilistic ? verify_probabilistic(id, body, params, opts, c.eq_tol)
                                   : verify(id, body, params, opts, c.eq_tol);
      break;
    }
    case Command::Sweep:
      throw ConfigError("sweep is not a single run");
  }
  doc.report->body = c.body;
  return exit_code_for(doc.report->verdict);
}

}  // namespace

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::EqualityWithinTolerance:
    case Verdict::StrictInequality:
      return kExitOk;
    case Verdict::Violation:
      return kExitViolation;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitError;
}

RunResult run(const ExperimentConfig& config) {
  RunResult result;
  result.document.config = config;
  const auto start = std::chrono::steady_clock::now();
  try {
    result.exit_code = execute(config, result.document);
  } catch (const std::exception& e) {
    result.document.report.reset();
    result.document.estimate.reset();
    result.document.error = error_info(e);
    result.exit_code = kExitError;
  }
  if (config.timing) {
    result.document.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

SweepResult sweep(const ExperimentConfig& config) {
  SweepResult out;
  out.csv = csv_header();
  try {
    config.validate();
  } catch (const std::exception& e) {
    ReportDocument doc;
    doc.config = config;
    doc.error = error_info(e);
    out.cells.push_back(std::move(doc));
    out.exit_code = kExitError;
    return out;
  }
  std::uint64_t index = 0;
  for (const auto& body : config.bodies) {
    for (int k : config.ks) {
      for (double p : config.ps) {
        ExperimentConfig cell = config;
        cell.command = Command::Verify;
        cell.body = body;
        cell.k = k;
        cell.p = p;
        cell.seed = mix_seed(config.seed, index++);
        cell.bodies.clear();
        cell.ks.clear();
        cell.ps.clear();
        RunResult r = run(cell);
        if (r.document.report) {
          out.csv += csv_row(*r.document.report, cell.n);
          if (r.exit_code == kExitViolation) out.exit_code = kExitViolation;
        } else {
          const std::string msg = r.document.error ? r.document.error->kind + ": " +
                                                         r.document.error->message
                                                   : "no report";
          out.csv += csv_error_row(cell.theorem, body, cell.d, k, p, cell.n, msg);
        }
        out.cells.push_back(std::move(r.document));
      }
    }
  }
  return out;
}

std::string render(const RunResult& result, OutputFormat format) {
  const ReportDocument& doc = result.document;
  if (format == OutputFormat::Json) return to_json(doc).dump(2) + "\n";
  if (doc.report) return csv_header() + csv_row(*doc.report, doc.config.n);
  if (doc.estimate) {
    const MCEstimate& e = *doc.estimate;
    return "quantity,d,k,n,seed,value,std_error\nintrinsic_volume," + std::to_string(doc.config.d) +
           ',' + std::to_string(doc.config.k) + ',' + std::to_string(e.n) + ',' +
           std::to_string(e.seed) + ',' + format_real(e.mean) + ',' + format_real(e.std_error) +
           '\n';
  }
  if (!doc.constants.is_null()) {
    std::string out = "name,value\n";
    for (const auto& item : doc.constants.items()) {
      const auto& v = item.value();
      out += item.key() + ',' + (v.is_number_float() ? format_real(v.get<double>()) : v.dump()) + '\n';
    }
    return out;
  }
  std::string out = "error,message\n";
  if (doc.error) out += doc.error->kind + ",\"" + doc.error->message + "\"\n";
  return out;
}

std::string render(const SweepResult& result, OutputFormat format) {
  if (format == OutputFormat::Csv) return result.csv;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& doc : result.cells) arr.push_back(to_json(doc));
  return arr.dump(2) + "\n";
}

}  // namespace sectionlab
