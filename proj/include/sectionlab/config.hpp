#pragma once

// Experiment configuration and the body-spec grammar used by the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectionlab/bodies.hpp"
#include "sectionlab/estimators.hpp"

namespace sectionlab {

enum class Command { Constants, Verify, Identity, BpCheck, Crofton, Sweep };
enum class OutputFormat { Json, Csv };

const char* to_string(Command c);
const char* to_string(OutputFormat f);
std::optional<Command> parse_command(const std::string& name);
std::optional<OutputFormat> parse_format(const std::string& name);

inline constexpr std::size_t kMaxSweepCells = 200;
inline constexpr const char* kSeedEnvVar = "SECTIONLAB_SEED";

struct ExperimentConfig {
  Command command = Command::Verify;
  std::string theorem = "thm1";
  std::string body = "ball";
  int d = 3;
  int k = 1;
  double p = 0.0;
  std::uint64_t n = 100000;
  std::uint64_t n_inner = 1000;
  std::uint64_t seed = 1;
  int workers = 0;
  double eq_tol = kDefaultEqualityTolerance;
  OutputFormat format = OutputFormat::Json;
  std::string family = "linear";  // identity
  std::string kind = "linear";    // bp-check
  bool probabilistic = false;     // verify via the probabilistic form
  std::uint64_t mc_section_points = 0;
  bool timing = false;
  // sweep grid
  std::vector<std::string> bodies;
  std::vector<int> ks;
  std::vector<double> ps;

  RunOptions run_options() const;
  // Throws ConfigError (or DomainError from MomentParams) before any sampling.
  void validate() const;
};

// Decimal or 0x-prefixed hexadecimal.
std::uint64_t parse_seed(const std::string& text);
// Seed from SECTIONLAB_SEED if set, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 1);

// ball[:r=<real>] | ellipsoid:axes=<a1,...,ad> | box:half=<h> |
// box:bounds=<l1,u1;...> | simplex | polytope:file=<path>
ConvexBody parse_body_spec(const std::string& spec, int d);

// {"A": [[...], ...], "b": [...]}, rows of A x <= b.
ConvexBody load_polytope_file(const std::string& path, int d);

}  // namespace sectionlab
