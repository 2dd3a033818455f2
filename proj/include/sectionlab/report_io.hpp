#pragma once

// Report documents: JSON is canonical, CSV is a one-row-per-report projection.

#include <json.hpp>
#include <optional>
#include <string>

#include "sectionlab/config.hpp"
#include "sectionlab/estimators.hpp"
#include "sectionlab/mc.hpp"

namespace sectionlab {

inline constexpr const char* kReportVersion = "sectionlab-report/1";

struct ErrorInfo {
  std::string kind;
  std::string message;
};

struct ReportDocument {
  std::string version = kReportVersion;
  ExperimentConfig config;
  std::optional<InequalityReport> report;
  std::optional<MCEstimate> estimate;  // crofton
  nlohmann::json constants;            // constants command; null otherwise
  std::optional<ErrorInfo> error;
  std::optional<double> wall_seconds;  // only with --timing
};

nlohmann::json to_json(const MCEstimate& e);
MCEstimate estimate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Adjudication& a);
Adjudication adjudication_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InequalityReport& r);
InequalityReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExperimentConfig& c);
// Rejects unknown keys; missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReportDocument& doc);
ReportDocument document_from_json(const nlohmann::json& j);

// Every constant of the math kernel at (d, k, p).
nlohmann::json constants_json(int d, int k, double p);

std::string csv_header();
// n is the per-cell sample count; error is empty on success.
std::string csv_row(const InequalityReport& r, std::uint64_t n, const std::string& error = "");
// Row for a failed cell.
std::string csv_error_row(const std::string& theorem, const std::string& body, int d, int k,
                          double p, std::uint64_t n, const std::string& error);
// %.17g, with nan/inf spelled out.
std::string format_real(double v);

}  // namespace sectionlab
