#pragma once

// Command line driver. The dispatcher is a library function so the whole
// surface is testable without spawning processes; the binary in tools/ only
// parses argv into a RunConfig.
//
// Exit code contract: 0 when every requested property holds, 1 when a
// verification fails (non-diced input to `diced`, a non-sharp polytope fed
// to `morse`, a Betti mismatch, ...), 2 for unusable input: unknown command
// or fixture, unreadable or malformed file, out-of-range scale guards.

#include <iosfwd>
#include <string>

#include "dicer/geometry.hpp"
#include "dicer/minkowski.hpp"
#include "dicer/resolution.hpp"

namespace dicer {

struct RunConfig {
  std::string command;          // diced, sharp, subdivide, morse, resolve,
                                // oracle, verify-fine-mixed, export
  std::string input;            // file path or fixture:NAME
  std::string field = "q";      // q or gf:p
  bool strict_reverify = true;  // re-check matchings after every glue step
  std::string format = "text";  // text, json, svg, off
  std::string out;              // output path; empty writes to the stream
};

// Dispatches one command; reports go to `out` (or RunConfig::out when set),
// diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// JSON file {"vertices": [[2,0,0], ...]}; coordinates must be nonnegative
// integers, floating point literals are rejected. Errors carry the path and,
// for syntax errors, the line reported by the parser.
Polytope parse_polytope_file(const std::string& path);

// Text file: one "summands {1,2,3} {1,4} ..." line, then one
// "cell {1,2} {1} ..." line per mixed cell. '#' starts a comment. Errors
// carry the path and line number.
MixedSubdivision parse_mixed_file(const std::string& path);

// JSON file {"generators": [[1,0],[0,1]]} with nonnegative integer
// exponent rows.
MonomialIdeal parse_ideal_file(const std::string& path);

}  // namespace dicer
