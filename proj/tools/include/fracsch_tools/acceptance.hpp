#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracsch_tools/csv.hpp"

namespace fracsch::tools {

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    std::filesystem::path output = "accept_out";
    std::filesystem::path data_dir = "data";
    std::vector<int> criteria;  // empty = 1..15
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;  // deterministic summary of the measured values
    double seconds = 0.0;
    CsvTable table{{}};
};

/// alpha, beta, t, re, im of E_{alpha,beta}(-i t) from the extended-precision
/// oracle on the criterion-1 point set.
CsvTable ml_reference_table();

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

/// Runs the requested criteria, prints one PASS/FAIL line each to out and
/// writes criterion_XX.csv and accept_summary.csv under opts.output.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

}  // namespace fracsch::tools
