#pragma once

#include <ostream>

namespace promptrec {

// Subcommands: generate, evaluate, recommend, serve. Returns the process exit
// status; diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace promptrec
