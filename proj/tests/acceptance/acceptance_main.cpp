#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fracsch_tools/acceptance.hpp"

int main(int argc, char** argv) {
    fracsch::tools::AcceptanceOptions opts;
    opts.data_dir = FRACSCH_DEFAULT_DATA_DIR;
    std::string output = "accept_out", data_dir = opts.data_dir.string();
    CLI::App app("Acceptance criteria; one PASS/FAIL line each", "fracsch_acceptance");
    app.add_option("--only", opts.criteria, "criterion ids (default: all)")->check(CLI::Range(1, 15));
    app.add_option("--seed", opts.seed, "ensemble seed");
    app.add_option("--output", output, "directory for criterion CSVs");
    app.add_option("--data-dir", data_dir, "directory holding ml_reference.csv");
    CLI11_PARSE(app, argc, argv);
    opts.output = output;
    opts.data_dir = data_dir;

    const auto results = fracsch::tools::run_acceptance(opts, std::cout);
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}
