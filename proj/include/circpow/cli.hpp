#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "circpow/integers.hpp"

namespace circpow {

enum class MatrixKind { semicirculant, rcirculant };
enum class CliCommand { power, formal, verify, bench };
enum class OutputFormat { text, json };

/// One fully parsed command-line job. Integers arrive as arbitrary-precision
/// decimals and are mapped into the selected ring via from_integer.
struct JobSpec {
    CliCommand command = CliCommand::power;
    std::string ring_spec = "Z";
    MatrixKind kind = MatrixKind::semicirculant;
    std::vector<Int> row;
    Int r = 1;
    bool r_given = false;
    std::uint64_t k = 0;
    bool symbolic_k = false;
    OutputFormat format = OutputFormat::text;

    // bench sweep parameters
    std::vector<std::uint64_t> bench_orders{2, 4, 8};
    std::vector<std::uint64_t> bench_exponents{2, 4, 8};
    std::uint64_t bench_reps = 3;
    std::uint64_t bench_seed = 0xC19C0;
};

/// Runs a parsed job. Exit status 0 on success, 1 on a validation failure
/// (message names the offending field), 2 on a verification mismatch.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (program name excluded) and runs the job.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circpow
