#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "milnor/cli/report.hpp"

namespace milnor::cli {

// Parses `args` (without the program name) and runs one subcommand:
//
//   info        GERM
//   weights     GERM [--same-degree]
//   identities  GERM
//   critical    GERM --epsilon E [--starts N] [--seed S]
//   link        GERM --epsilon E [--samples N] [--seed S]
//   fiber       GERM --mode tube|sphere --theta T --epsilon E [--eta H] [--samples N] [--seed S]
//   equivalence GERM --epsilon E --eta H [--samples N] [--seed S]
//   rank        GERM --epsilon E [--samples N] [--seed S]
//
// plus --out PATH and --format json|csv. Throws UsageError or SpecError for
// exit-code-2 conditions; certificate failures come back as exit_code 1.
RunReport run_command(const std::vector<std::string>& args);

// Full CLI behaviour: JSON report on `out`, diagnostics and usage on `err`,
// optional file output. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace milnor::cli
