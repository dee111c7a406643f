#pragma once

// Command-line surface: scan (random point counts on one prime), survey
// (find-k across primes plus the codimension fit) and solve (exact
// solutions via remaindering or Newton lifting). Reports echo every
// effective parameter including the seed, so a rerun of the same command
// reproduces the same bytes.

#include "ffx/lift.hpp"
#include "ffx/scan.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ffx::cli {

// Input format: first significant line "vars: x,y,..."; every following
// significant line is one polynomial in those variables. '#' starts a
// comment line; blank lines and CR line endings are tolerated.
struct SystemFile {
    std::vector<std::string> vars;
    PolySystem system;
    std::vector<std::string> sources;  // one line per polynomial, as read
};

SystemFile parse_system_text(const std::string& text);
SystemFile load_system_file(const std::string& path);

enum class Format { table, json, csv };

// exit codes: 0 success, 1 runtime failure, 2 bad input, 3 no modular solutions
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNoSolutions = 3;

struct CommandResult {
    int code = 0;
    std::string out;
    std::string err;
};

struct ScanArgs {
    std::string system_path;
    std::int64_t p = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool ranks = false;
    bool values = false;
    Format format = Format::table;
};

struct SurveyArgs {
    std::string system_path;  // exactly one of system_path / pred
    std::string pred;         // "symrank:<dim>:<maxrank>"
    std::vector<std::int64_t> primes;
    std::uint64_t k = 50;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultTrialCap;
    Format format = Format::table;
};

struct SolveArgs {
    std::string system_path;
    std::vector<std::int64_t> primes;
    std::string mode = "crt";  // crt | newton
    unsigned steps = 4;
    std::uint64_t budget = 10000000;
    std::uint64_t seed = 0;
    bool stable_only = false;  // newton: only certify stabilized traces
    Format format = Format::table;
};

CommandResult cmd_scan(const ScanArgs& args);
CommandResult cmd_survey(const SurveyArgs& args);
CommandResult cmd_solve(const SolveArgs& args);

int run_main(int argc, char** argv);

}  // namespace ffx::cli
