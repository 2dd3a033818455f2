#include "sectionlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "sectionlab/errors.hpp"
#include "sectionlab/math_kernel.hpp"

namespace sectionlab {

using nlohmann::json;

namespace {

// Non-finite values travel as strings; JSON has no spelling for them.
json real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError("expected a real number, got " + j.dump(), 0);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const MCEstimate& e) {
  return json{{"mean", real(e.mean)}, {"std_error", real(e.std_error)},
              {"n", e.n},             {"seed", e.seed},
              {"min", real(e.min)},   {"max", real(e.max)},
              {"top_share", real(e.top_share)}, {"exact", e.exact}};
}

MCEstimate estimate_from_json(const json& j) {
  MCEstimate e;
  e.mean = real_from(j.at("mean"));
  e.std_error = real_from(j.at("std_error"));
  e.n = j.at("n").get<std::uint64_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.min = real_from(j.at("min"));
  e.max = real_from(j.at("max"));
  e.top_share = real_from(j.at("top_share"));
  e.exact = j.at("exact").get<bool>();
  return e;
}

json to_json(const Adjudication& a) {
  return json{{"fitted_constant", real(a.fitted_constant)},
              {"fitted_std_error", real(a.fitted_std_error)},
              {"printed_constant", real(a.printed_constant)},
              {"doubled_constant", real(a.doubled_constant)},
              {"printed_z", real(a.printed_z)},
              {"doubled_z", real(a.doubled_z)},
              {"printed_consistent", a.printed_consistent},
              {"doubled_consistent", a.doubled_consistent},
              {"consistent", a.consistent}};
}

Adjudication adjudication_from_json(const json& j) {
  Adjudication a;
  a.fitted_constant = real_from(j.at("fitted_constant"));
  a.fitted_std_error = real_from(j.at("fitted_std_error"));
  a.printed_constant = real_from(j.at("printed_constant"));
  a.doubled_constant = real_from(j.at("doubled_constant"));
  a.printed_z = real_from(j.at("printed_z"));
  a.doubled_z = real_from(j.at("doubled_z"));
  a.printed_consistent = j.at("printed_consistent").get<bool>();
  a.doubled_consistent = j.at("doubled_consistent").get<bool>();
  a.consistent = j.at("consistent").get<std::string>();
  return a;
}

json to_json(const InequalityReport& r) {
  json j{{"theorem", to_string(r.theorem)},
         {"d", r.d},
         {"k", r.k},
         {"p", real(r.p)},
         {"body", r.body},
         {"lhs", to_json(r.lhs)},
         {"rhs", to_json(r.rhs)},
         {"constant", real(r.constant)},
         {"ratio", real(r.ratio)},
         {"ratio_std_error", real(r.ratio_std_error)},
         {"verdict", to_string(r.verdict)},
         {"warnings", r.warnings}};
  if (r.adjudication) j["adjudication"] = to_json(*r.adjudication);
  return j;
}

InequalityReport report_from_json(const json& j) {
  InequalityReport r;
  const auto id = parse_theorem(j.at("theorem").get<std::string>());
  if (!id) throw ParseError("unknown theorem in report", 0);
  r.theorem = *id;
  r.d = j.at("d").get<int>();
  r.k = j.at("k").get<int>();
  r.p = real_from(j.at("p"));
  r.body = j.at("body").get<std::string>();
  r.lhs = estimate_from_json(j.at("lhs"));
  r.rhs = estimate_from_json(j.at("rhs"));
  r.constant = real_from(j.at("constant"));
  r.ratio = real_from(j.at("ratio"));
  r.ratio_std_error = real_from(j.at("ratio_std_error"));
  const auto v = parse_verdict(j.at("verdict").get<std::string>());
  if (!v) throw ParseError("unknown verdict in report", 0);
  r.verdict = *v;
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("adjudication")) r.adjudication = adjudication_from_json(j.at("adjudication"));
  return r;
}

json to_json(const ExperimentConfig& c) {
  json j{{"command", to_string(c.command)},
         {"theorem", c.theorem},
         {"body", c.body},
         {"d", c.d},
         {"k", c.k},
         {"p", real(c.p)},
         {"n", c.n},
         {"n_inner", c.n_inner},
         {"seed", c.seed},
         {"workers", c.workers},
         {"eq_tol", real(c.eq_tol)},
         {"format", to_string(c.format)},
         {"family", c.family},
         {"kind", c.kind},
         {"probabilistic", c.probabilistic},
         {"mc_section_points", c.mc_section_points},
         {"timing", c.timing},
         {"bodies", c.bodies},
         {"ks", c.ks}};
  json ps = json::array();
  for (double p : c.ps) ps.push_back(real(p));
  j["ps"] = ps;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  static const char* const kKeys[] = {"command", "theorem", "body",     "d",
                                      "k",       "p",       "n",        "n_inner",
                                      "seed",    "workers", "eq_tol",   "format",
                                      "family",  "kind",    "probabilistic", "mc_section_points",
                                      "timing",  "bodies",  "ks",       "ps"};
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || item.key() == k;
    if (!known) throw ConfigError("unknown configuration key '" + item.key() + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("command")) {
      const auto cmd = parse_command(j.at("command").get<std::string>());
      if (!cmd) throw ConfigError("unknown command " + j.at("command").dump());
      c.command = *cmd;
    }
    if (j.contains("format")) {
      const auto f = parse_format(j.at("format").get<std::string>());
      if (!f) throw ConfigError("unknown format " + j.at("format").dump());
      c.format = *f;
    }
    read_if(j, "theorem", c.theorem);
    read_if(j, "body", c.body);
    read_if(j, "d", c.d);
    read_if(j, "k", c.k);
    if (j.contains("p")) c.p = real_from(j.at("p"));
    read_if(j, "n", c.n);
    read_if(j, "n_inner", c.n_inner);
    read_if(j, "seed", c.seed);
    read_if(j, "workers", c.workers);
    if (j.contains("eq_tol")) c.eq_tol = real_from(j.at("eq_tol"));
    read_if(j, "family", c.family);
    read_if(j, "kind", c.kind);
    read_if(j, "probabilistic", c.probabilistic);
    read_if(j, "mc_section_points", c.mc_section_points);
    read_if(j, "timing", c.timing);
    read_if(j, "bodies", c.bodies);
    read_if(j, "ks", c.ks);
    if (j.contains("ps")) {
      c.ps.clear();
      for (const auto& p : j.at("ps")) c.ps.push_back(real_from(p));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
  return c;
}

json to_json(const ReportDocument& doc) {
  json j{{"version", doc.version}, {"config", to_json(doc.config)}};
  if (doc.report) j["report"] = to_json(*doc.report);
  if (doc.estimate) j["estimate"] = to_json(*doc.estimate);
  if (!doc.constants.is_null()) j["constants"] = doc.constants;
  if (doc.error) j["error"] = json{{"kind", doc.error->kind}, {"message", doc.error->message}};
  if (doc.wall_seconds) j["wall_seconds"] = *doc.wall_seconds;
  return j;
}

ReportDocument document_from_json(const json& j) {
  ReportDocument doc;
  doc.version = j.at("version").get<std::string>();
  if (doc.version != kReportVersion) {
    throw ParseError("unsupported report version '" + doc.version + "'", 0);
  }
  doc.config = config_from_json(j.at("config"));
  if (j.contains("report")) doc.report = report_from_json(j.at("report"));
  if (j.contains("estimate")) doc.estimate = estimate_from_json(j.at("estimate"));
  if (j.contains("constants")) doc.constants = j.at("constants");
  if (j.contains("error")) {
    doc.error = ErrorInfo{j.at("error").at("kind").get<std::string>(),
                          j.at("error").at("message").get<std::string>()};
  }
  if (j.contains("wall_seconds")) doc.wall_seconds = j.at("wall_seconds").get<double>();
  return doc;
}

json constants_json(int d, int k, double p) {
  const MomentParams params(d, k, p);
  json j{{"d", d},
         {"k", k},
         {"p", real(p)},
         {"kappa_d", kappa(d)},
         {"kappa_k", kappa(k)},
         {"b_d_k", b_coeff(d, k)},
         {"b_dp_k", b_coeff(d + p, k)},
         {"thm1_constant", thm1_constant(params)},
         {"thm2_constant", thm2_constant(params)}};
  j["c_prime_linear"] = thm1_constant(params);
  j["c_prime_affine"] = nullptr;
  if (k < d) {
    j["c_prime_affine"] = affine_probabilistic_constant(params);
    j["crofton_factor"] = crofton_factor(d, k);
    if (p == 0.0) {
      j["busemann_constant"] = busemann_intersection_constant(d, k);
      j["schneider_constant"] = schneider_constant(d, k);
    }
  }
  if (k == d && p >= 1.0) {
    j["busemann_simplex_constant"] = busemann_random_simplex_constant(d, p);
    j["blaschke_groemer_constant"] = blaschke_groemer_constant(d, p);
  }
  if (k == 1 && d >= 2) {
    const AffineIdentityConstants a = affine_identity_constants(d, p);
    j["identity_linear_constant"] = linear_identity_constant(d, p);
    j["identity_affine_printed"] = a.printed;
    j["identity_affine_doubled"] = a.doubled;
  }
  return j;
}

std::string csv_header() {
  return "theorem,body,d,k,p,n,lhs,lhs_se,rhs,rhs_se,ratio,ratio_se,verdict,error\n";
}

std::string csv_row(const InequalityReport& r, std::uint64_t n, const std::string& error) {
  std::string out;
  out += std::string(to_string(r.theorem)) + ',' + csv_field(r.body) + ',' + std::to_string(r.d) +
         ',' + std::to_string(r.k) + ',' + format_real(r.p) + ',' + std::to_string(n) + ',';
  out += format_real(r.lhs.mean) + ',' + format_real(r.lhs.std_error) + ',';
  out += format_real(r.rhs.mean) + ',' + format_real(r.rhs.std_error) + ',';
  out += format_real(r.ratio) + ',' + format_real(r.ratio_std_error) + ',';
  out += std::string(to_string(r.verdict)) + ',' + csv_field(error) + '\n';
  return out;
}

std::string csv_error_row(const std::string& theorem, const std::string& body, int d, int k,
                          double p, std::uint64_t n, const std::string& error) {
  return theorem + ',' + csv_field(body) + ',' + std::to_string(d) + ',' + std::to_string(k) +
         ',' + format_real(p) + ',' + std::to_string(n) + ",,,,,,,," + csv_field(error) + '\n';
}

}  // namespace sectionlab
