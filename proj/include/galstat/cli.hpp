#pragma once

#include <string>
#include <vector>

namespace galstat {

// Outcome of one command-line invocation. `output` carries everything a
// terminal user would see (reports and error messages alike).
//
// Exit codes partition outcomes:
//   0  success (for identify: unique consistent candidate)
//   2  argument or parse errors (flags, polynomials, basis specs, names)
//   3  polynomial or data preconditions (zero discriminant, mixed degrees)
//   4  group too large to enumerate under the requested cap
//   10 identify: several consistent candidates remain
//   11 identify: every candidate excluded or inconsistent
struct CliResult {
  int exit_code = 0;
  std::string output;
};

// Runs one command line, e.g. {"gram", "x^8+6x^4+1", "--group", "D4x8",
// "--basis", "reduced", "--primes", "80"}. Deterministic: identical inputs
// produce byte-identical output.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace galstat
