#pragma once
//
// Command surface: spec-string parsing, run configuration, report
// serialization (JSON with decimal-string numbers, full-precision CSV),
// and the subcommand drivers shared by the binary and the tests.
//

#include "riembed/asymptotics.hpp"
#include "riembed/criteria.hpp"
#include "riembed/witnesses.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace riembed::cli {

/// Parse failure carrying the spec string and the byte offset of the
/// offending token.
struct ParseError : std::runtime_error {
    std::string spec;
    size_t position;
    ParseError(std::string spec_, size_t pos, const std::string& msg)
        : std::runtime_error(msg), spec(std::move(spec_)), position(pos) {}
};

/// Space grammar: L:p | Linf | Lw:p | Lor:p:q | Orl:<young> | Zyg:p:alpha
/// with young one of pow:p, powlog:p:alpha, linf. "inf" is accepted for p/q.
RiSpace parse_space(const std::string& spec);

/// Weight grammar: one | pow:a | powlog:a:b | powloglog:a:b:c
Weight parse_weight(const std::string& spec);

/// Profile grammar: const:c | ind:a | pow:e  (s^e on the default grid);
/// the result is rearranged.
StepFunction parse_profile(const std::string& spec);

/// Caret diagram pointing at the parse error inside the offending argument.
std::string annotate_parse_error(const ParseError& err);

struct RunConfig {
    std::string space;
    std::string weight;
    int n = 3;
    int m = 1;
    int k = -1;  // < 0: Morrey-type command
    bool vanishing = false;
    std::string target_kind;  // "morrey" | "campanato" for cmd_target
    std::string profile;      // for cmd_domain_norm
    double grid_eps = 1e-14;
    int grid_density = 64;
    double window_lo = 1e-12;
    double window_hi = 1e-4;
    std::string format = "json";  // json | csv
    std::uint64_t seed = 1;
    std::string only;        // row-key substring filter for cmd_table
    std::string table_path;  // empty: compiled-in default
};

struct CommandResult {
    int exit_code = 0;  // 0 holds/pass, 1 fails, 2 inconclusive, 64 usage error
    std::string output;
};

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_target(const RunConfig& cfg);
CommandResult cmd_domain_norm(const RunConfig& cfg);
CommandResult cmd_table(const RunConfig& cfg);
CommandResult cmd_witness(const RunConfig& cfg);
CommandResult cmd_selftest(const RunConfig& cfg);

/// Dispatch by name with usage errors mapped to exit code 64.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

/// Shortest round-trip decimal representation (17 significant digits).
std::string format_double(double x);

}  // namespace riembed::cli
