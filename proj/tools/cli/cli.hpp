#pragma once

#include <cvxdiff/sequence.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvxdiff::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_usage = 2,
    exit_budget = 3,
    exit_io = 4,
};

class UsageError : public std::runtime_error
{
  public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for --help; carries the help text.
class HelpRequested : public std::runtime_error
{
  public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

enum class Format { text, json, csv };

struct Command
{
    std::string name; // compute | construct | minimize | verify | scan
    std::optional<std::string> seq;
    std::optional<OffsetSet> offsets;
    std::optional<int> n;
    int kconvex = 1;
    std::optional<std::string> family;
    std::optional<double> budget_seconds;
    std::optional<std::uint64_t> budget_nodes;
    int workers = 1;
    bool use_paper_bounds = false;
    std::optional<std::string> out;
    std::optional<Format> format;
    std::uint64_t seed = 1;
    std::optional<int> samples;
    bool allow_nonconvex = false;
    bool show_values = false;
    std::optional<std::string> config;
    std::optional<std::string> resume;
    std::optional<std::string> frontier;
    std::optional<std::string> cert;
    std::int64_t seed_bound = 200;
};

/// Validates everything that can be checked without touching the disk.
/// Throws UsageError (or HelpRequested).
Command parse(const std::vector<std::string>& args);

int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + execute with the exit-code contract.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cvxdiff::cli
