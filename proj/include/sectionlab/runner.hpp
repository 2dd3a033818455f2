#pragma once

// Executes an ExperimentConfig and maps outcomes onto the exit-code contract:
// 0 equality, strict inequality, or a plain estimate; 2 violation;
// 3 inconclusive; 1 configuration or runtime error.

#include <string>
#include <vector>

#include "sectionlab/config.hpp"
#include "sectionlab/report_io.hpp"

namespace sectionlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInconclusive = 3;

int exit_code_for(Verdict v);

struct RunResult {
  ReportDocument document;
  int exit_code = kExitOk;
};

// Never throws: failures land in document.error with exit code 1.
RunResult run(const ExperimentConfig& config);

struct SweepResult {
  std::vector<ReportDocument> cells;
  std::string csv;
  int exit_code = kExitOk;  // 1 on an invalid grid, 2 if any cell is a violation
};

// bodies x ks x ps in that nesting order; cell i runs with seed mix_seed(seed, i).
SweepResult sweep(const ExperimentConfig& config);

std::string render(const RunResult& result, OutputFormat format);
std::string render(const SweepResult& result, OutputFormat format);

}  // namespace sectionlab
