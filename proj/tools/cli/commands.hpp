#pragma once

#include "cli/report.hpp"

#include <polya/integer.hpp>

#include <cstdint>
#include <iosfwd>

namespace polya::cli {

struct CommonOptions {
    bool json = false;
    bool csv = false;
    int threads = 1;
    std::string out; // write the report here instead of stdout when set
};

struct QuadOptions {
    Int d;
    bool oracle = false;
};

struct BiquadOptions {
    Int m1, m2;
};

struct FindPrimesOptions {
    int t = 0;
    std::string pattern; // "trotter" or empty
    std::string signs;   // comma-separated upper-triangular +-1 list, or empty
    Int start = 2;
    std::uint64_t limit = 1'000'000;
};

struct FamilyOptions {
    int t = 0;
    int count = 1;
    Int start = 2;
    std::uint64_t limit = 1'000'000;
};

struct VerifyHilbertOptions {
    std::string range; // "A..B" over |d|
};

struct CommandResult {
    int exit_code = 0;
    Report report;
};

CommandResult cmd_quad(const QuadOptions&, const CommonOptions&);
CommandResult cmd_biquad(const BiquadOptions&, const CommonOptions&);
CommandResult cmd_find_primes(const FindPrimesOptions&, const CommonOptions&);
CommandResult cmd_family(const FamilyOptions&, const CommonOptions&);
CommandResult cmd_verify_hilbert(const VerifyHilbertOptions&, const CommonOptions&);

/// Render to --json / --csv / human text and write to stdout or --out.
/// Returns the final process exit code.
int emit(const CommandResult& result, const CommonOptions& common);

} // namespace polya::cli
