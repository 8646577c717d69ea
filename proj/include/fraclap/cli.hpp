#pragma once

#include <string>

namespace fraclap::cli {

/** Full command-line entry point (the installed binary's main defers here;
 * tests call it in-process with synthetic argv).
 *
 * Subcommands: matrix, dominance, spectrum, poisson, ac-run, ac-converge.
 * Exit codes: 0 success, 1 usage/config error (bad flags, unknown config
 * keys, out-of-range parameters), 2 numerical failure (solver or search
 * did not converge).
 *
 * --config FILE reads flat key=value lines (# comments allowed) that act as
 * defaults for the chosen subcommand; explicit flags override the file, and
 * keys that do not name an option of that subcommand are usage errors.
 *
 * All floating-point output is printed with %.17g, rows end in LF, files
 * start with # comment lines (tool version line, seed when randomness is
 * involved) followed by a header row; reruns with the same flags and seed
 * are byte-identical.
 */
int run_cli(int argc, const char* const* argv);

/** %.17g formatting used for every float the tool emits. */
std::string format_g17(double v);

}  // namespace fraclap::cli
