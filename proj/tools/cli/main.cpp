#include "cli/commands.hpp"

#include <polya/errors.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace polya;
using namespace polya::cli;

// Exit codes: 0 success, 1 verification/search failure, 2 invalid input.
int run(int argc, char** argv) {
    CLI::App app{"Polya groups of real quadratic and totally real bi-quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough(); // let --json etc. appear after the subcommand

    CommonOptions common;
    app.add_flag("--json", common.json, "emit the report as a single JSON object");
    app.add_flag("--csv", common.csv, "emit CSV (batch verify commands)");
    app.add_option("--threads", common.threads, "parallelism cap (default 1, deterministic)");
    app.add_option("--out", common.out, "write the report to FILE instead of stdout");

    std::string d_str, m1_str, m2_str, start_str = "2";
    QuadOptions quad;
    auto* quad_cmd = app.add_subcommand("quad", "quadratic field report");
    quad_cmd->add_option("--d", d_str, "squarefree d, not 0 or 1")->required();
    quad_cmd->add_flag("--oracle", quad.oracle, "cross-check with the direct ideal oracle");

    auto* biquad_cmd = app.add_subcommand("biquad", "bi-quadratic field report");
    biquad_cmd->add_option("--m1", m1_str, "first radicand (> 1, squarefree)")->required();
    biquad_cmd->add_option("--m2", m2_str, "second radicand (> 1, squarefree)")->required();

    FindPrimesOptions fp;
    auto* fp_cmd = app.add_subcommand("find-primes", "prime tuple with prescribed symbols");
    fp_cmd->add_option("--t", fp.t, "tuple length (>= 2)")->required();
    fp_cmd->add_option("--pattern", fp.pattern, "named sign pattern: trotter");
    fp_cmd->add_option("--signs", fp.signs, "upper-triangular +-1 entries, comma separated");
    fp_cmd->add_option("--start", start_str, "scan primes from here (default 2)");
    fp_cmd->add_option("--limit", fp.limit, "candidate limit per progression");

    FamilyOptions fam;
    auto* fam_cmd = app.add_subcommand("family", "build and verify theorem instances");
    fam_cmd->add_option("--t", fam.t, "number of odd primes (>= 2)")->required();
    fam_cmd->add_option("--count", fam.count, "instances to build (disjoint restarts)");
    fam_cmd->add_option("--start", start_str, "scan primes from here (default 2)");
    fam_cmd->add_option("--limit", fam.limit, "candidate limit per progression");

    VerifyHilbertOptions vh;
    auto* vh_cmd = app.add_subcommand("verify-hilbert", "ramification formula vs ideal oracle");
    vh_cmd->add_option("--range", vh.range, "|d| range, e.g. 2..300")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CommandResult result;
        if (quad_cmd->parsed()) {
            quad.d = Int(d_str);
            result = cmd_quad(quad, common);
        } else if (biquad_cmd->parsed()) {
            result = cmd_biquad({Int(m1_str), Int(m2_str)}, common);
        } else if (fp_cmd->parsed()) {
            fp.start = Int(start_str);
            result = cmd_find_primes(fp, common);
        } else if (fam_cmd->parsed()) {
            fam.start = Int(start_str);
            result = cmd_family(fam, common);
        } else {
            result = cmd_verify_hilbert(vh, common);
        }
        return emit(result, common);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        // e.g. malformed integers handed to cpp_int
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
