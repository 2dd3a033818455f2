#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "sectionlab/runner.hpp"

using namespace sectionlab;

namespace {

struct Flags {
  ExperimentConfig config;
  std::string seed;
  std::string format = "json";
};

void add_common(CLI::App* sub, Flags& f, bool sampling) {
  sub->add_option("--d", f.config.d, "ambient dimension");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  if (!sampling) return;
  sub->add_option("--n", f.config.n, "Monte Carlo samples (outer samples for bp-check)");
  sub->add_option("--seed", f.seed, "root seed, decimal or 0x-hex (default: $SECTIONLAB_SEED or 1)");
  sub->add_option("--workers", f.config.workers, "worker threads, 0 for the OpenMP default");
  sub->add_flag("--timing", f.config.timing, "include wall time in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of section-moment inequalities"};
  app.require_subcommand(1);
  Flags f;

  auto* constants = app.add_subcommand("constants", "closed-form constants at (d, k, p)");
  add_common(constants, f, false);
  constants->add_option("--k", f.config.k, "section dimension");
  constants->add_option("--p", f.config.p, "moment exponent");

  auto* verify = app.add_subcommand("verify", "estimate both sides of an inequality");
  add_common(verify, f, true);
  verify->add_option("--theorem", f.config.theorem, "theorem id");
  verify->add_option("--body", f.config.body, "body spec");
  verify->add_option("--k", f.config.k, "section dimension");
  verify->add_option("--p", f.config.p, "moment exponent");
  verify->add_option("--eq-tol", f.config.eq_tol, "equality tolerance");
  verify->add_option("--n-inner", f.config.n_inner, "inner samples for bp-* theorems");
  verify->add_option("--mc-section-points", f.config.mc_section_points,
                     "membership-counting points for polytope sections with k > 3");
  verify->add_flag("--probabilistic", f.config.probabilistic, "use the probabilistic form");

  auto* identity = app.add_subcommand("identity", "k = 1 moment identities");
  add_common(identity, f, true);
  identity->add_option("--family", f.config.family, "linear or affine")
      ->check(CLI::IsMember({"linear", "affine"}));
  identity->add_option("--body", f.config.body, "body spec");
  identity->add_option("--p", f.config.p, "moment exponent");
  identity->add_option("--eq-tol", f.config.eq_tol, "equality tolerance");

  auto* bp = app.add_subcommand("bp-check", "Blaschke-Petkantschin decomposition check");
  add_common(bp, f, true);
  bp->add_option("--kind", f.config.kind, "linear or affine")
      ->check(CLI::IsMember({"linear", "affine"}));
  bp->add_option("--body", f.config.body, "body spec");
  bp->add_option("--k", f.config.k, "section dimension");
  bp->add_option("--p", f.config.p, "moment exponent");
  bp->add_option("--n-inner", f.config.n_inner, "inner samples per section");
  bp->add_option("--eq-tol", f.config.eq_tol, "equality tolerance");
  bp->add_option("--mc-section-points", f.config.mc_section_points,
                 "membership-counting points for polytope sections with k > 3");

  auto* crofton = app.add_subcommand("crofton", "intrinsic volume V_{d-k} by Crofton's formula");
  add_common(crofton, f, true);
  crofton->add_option("--body", f.config.body, "body spec");
  crofton->add_option("--k", f.config.k, "flat dimension");

  auto* sweep_cmd = app.add_subcommand("sweep", "grid of verify runs over bodies x k x p");
  add_common(sweep_cmd, f, true);
  f.format = "csv";
  sweep_cmd->add_option("--theorem", f.config.theorem, "theorem id");
  sweep_cmd->add_option("--body", f.config.bodies, "body spec (repeatable)");
  sweep_cmd->add_option("--ks", f.config.ks, "section dimensions")->delimiter(',');
  sweep_cmd->add_option("--ps", f.config.ps, "moment exponents")->delimiter(',');
  sweep_cmd->add_option("--eq-tol", f.config.eq_tol, "equality tolerance");
  sweep_cmd->add_option("--n-inner", f.config.n_inner, "inner samples for bp-* theorems");
  sweep_cmd->add_option("--mc-section-points", f.config.mc_section_points,
                        "membership-counting points for polytope sections with k > 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen != sweep_cmd && chosen->count("--format") == 0) f.format = "json";
  f.config.command = *parse_command(chosen->get_name());
  f.config.format = *parse_format(f.format);
  try {
    f.config.seed = f.seed.empty() ? default_seed() : parse_seed(f.seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  if (f.config.command == Command::Sweep) {
    const SweepResult result = sweep(f.config);
    std::cout << render(result, f.config.format);
    if (result.exit_code == kExitError && !result.cells.empty() && result.cells.front().error) {
      std::cerr << "error: " << result.cells.front().error->message << "\n";
    }
    return result.exit_code;
  }
  const RunResult result = run(f.config);
  std::cout << render(result, f.config.format);
  if (result.document.error) std::cerr << "error: " << result.document.error->message << "\n";
  return result.exit_code;
}
