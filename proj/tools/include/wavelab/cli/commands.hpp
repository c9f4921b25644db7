#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "wavelab/cli/config.hpp"

namespace wavelab::cli {

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_flagged = 2 };

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  unsigned jobs = 1;
  bool plots = false;
  std::ostream* log = nullptr;
};

int cmd_solve(const Context& ctx);
int cmd_sweep(const Context& ctx);
int cmd_gamma(double q, std::ostream& out);
int cmd_symbol_check(const Context& ctx);
int cmd_compare_kdv(const Context& ctx);
int cmd_probe_nonexistence(const Context& ctx);
int cmd_solitary_limit(const Context& ctx);

/// Entry point shared by the executable and the tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wavelab::cli
