#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "wavelab/cli/commands.hpp"
#include "wavelab/errors.hpp"

namespace wavelab::cli {

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"wavelab: traveling waves of nonlocal dispersive equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned jobs = 1;
  bool plots = false;
  double q = 1.0;

  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (WAVELAB_OUT overrides)");
    sub->add_option("--jobs", jobs, "worker threads for independent solves")->check(CLI::Range(1u, 256u));
    sub->add_flag("--plots", plots, "also write SVG plots");
    return sub;
  };
  auto* solve = with_config(app.add_subcommand("solve", "solve one traveling wave"));
  auto* sweep = with_config(app.add_subcommand("sweep", "mu ladder with exponent fits"));
  auto* gamma = app.add_subcommand("gamma", "print the Jensen constant Gamma_q");
  gamma->add_option("q", q, "exponent q >= 0")->required();
  auto* symbol = with_config(app.add_subcommand("symbol-check", "symbol assumptions and Wiener predicates"));
  auto* kdv = with_config(app.add_subcommand("compare-kdv", "distance to the sech^{2/q} long-wave profile"));
  auto* probe = with_config(app.add_subcommand("probe-nonexistence", "small-amplitude branch probe"));
  auto* solitary = with_config(app.add_subcommand("solitary-limit", "P-doubling convergence"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (gamma->parsed()) return cmd_gamma(q, out);

    Context ctx;
    ctx.config = RunConfig::load(config_path);
    ctx.jobs = jobs;
    ctx.plots = plots || ctx.config.output.plots;
    ctx.log = &err;
    ctx.out_dir = ctx.config.output.dir;
    if (!out_dir.empty()) ctx.out_dir = out_dir;
    if (const char* env = std::getenv("WAVELAB_OUT"); env && *env) ctx.out_dir = env;

    if (solve->parsed()) return cmd_solve(ctx);
    if (sweep->parsed()) return cmd_sweep(ctx);
    if (symbol->parsed()) return cmd_symbol_check(ctx);
    if (kdv->parsed()) return cmd_compare_kdv(ctx);
    if (probe->parsed()) return cmd_probe_nonexistence(ctx);
    if (solitary->parsed()) return cmd_solitary_limit(ctx);
  } catch (const DomainError& e) {
    err << "error: domain error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "error: configuration error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "error: validation failed: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_error;
}

}  // namespace wavelab::cli
