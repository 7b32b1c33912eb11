#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "paraqed/decay.hpp"
#include "paraqed/modes.hpp"

namespace paraqed::cli {

enum class Command { quantize, rate, decay, field, tdist, selfcheck };
enum class Format { csv, json };

struct Range {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;  // 0: a single value held in start
};

struct RunConfig {
    Command command = Command::rate;
    CavityParams params;
    std::optional<Range> sweep;        // over u
    std::vector<int> ns;               // quantum numbers; for decay/tdist they fix u = pi(n + 1/2)
    std::vector<double> gammas;        // gamma_s_T values (decay)
    Range t{0.0, 5.0, 501};            // t/T grid (decay) or single t (field)
    bool t_given = false;
    Range y{0.0, 4.0, 401};            // tdist grid
    Range xi{2.0, 100.0, 50};          // field grid, in units of 2f
    Range eta{0.05, 0.95, 50};
    std::vector<std::string> methods;  // command specific
    bool u_given = false;
    Branch branch = Branch::retarded;
    int threads = 0;
    std::string output_path;           // empty: stdout
    Format format = Format::csv;
};

/// A table plus the header lines that make it self-describing.
struct Table {
    std::vector<std::string> header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Thrown by parse for --help and --version; text goes to stdout.
struct HelpRequested {
    std::string text;
};

/// Parses argv into a RunConfig (including --config and PARAQED_THREADS).
/// Throws paraqed::InvalidParameter with a usage message on bad input.
RunConfig parse(int argc, const char* const* argv);

/// Canonical argument string that reproduces the run's output.
std::string reproduce_command(const RunConfig& cfg);

Table compute(const RunConfig& cfg);

void write(const Table& t, Format f, std::ostream& os);

/// Parse, compute and emit; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CheckRow {
    std::string name;
    std::string status;  // PASS, FAIL or SKIP
    double measured = 0.0;
    double tolerance = 0.0;
};

/// Kernels the self-check uses, replaceable for fault injection.
struct SelfcheckHooks {
    std::function<double(double)> kernel_even;
    std::function<double(double)> kernel_odd;
};

SelfcheckHooks default_hooks();

std::vector<CheckRow> selfcheck(const CavityParams& params, const SelfcheckHooks& hooks = default_hooks());

} // namespace paraqed::cli
