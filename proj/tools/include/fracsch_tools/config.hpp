#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsch/spectral_types.hpp"

namespace CLI {
class App;
}

namespace fracsch::tools {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_divergence = 3 };

/// Invalid configuration value; the message starts with the offending key.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& key, const std::string& constraint)
        : std::runtime_error(key + ": " + constraint), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct RunConfig {
    std::string command;  // leaf subcommand path, e.g. "solve" or "verify.coercivity"

    double alpha = 0.5;
    double p = 2.0;
    double T = 1.0;
    int N = 1024;
    int M = 64;
    std::string op = "dirichlet_laplacian_1d";  // or a comma-separated eigenvalue list
    int ensemble = 100;
    double mode_decay = 1.0;
    int smoothness = 4;
    std::uint64_t seed = 1;
    std::string output = "out";

    double beta = 1.0;
    double t = 1.0;             // mlf eval: |z|
    double ray = -0.5;          // mlf eval: arg z / pi
    std::string rays = "-0.5";  // mlf scan: arg z / pi, comma-separated
    double t_min = 1e-3;
    double t_max = 50.0;
    int points = 200;

    std::string initial = "random";  // zero | mode1 | random
    std::string forcing = "random";  // zero | random
    bool plot_data = false;

    double tol = 1e-8;
    int max_iter = 50;
    double u0_norm = 0.1;  // interp_norm of the rescaled initial value
    double r = 1.0;
    double delta = 0.2;

    double s_max = 1e6;
    std::string data_dir;
    std::string only;  // accept: comma-separated criterion ids, empty = all

    bool operator==(const RunConfig&) const = default;
};

/// Leaf subcommand paths in registration order.
const std::vector<std::string>& commands();

/// CLI11 application bound to cfg; after parsing, finish_parse fills cfg.command.
std::unique_ptr<CLI::App> make_app(RunConfig& cfg);
void finish_parse(const CLI::App& app, RunConfig& cfg);

/// Parses argv-style arguments (without the program name). Flags override
/// values read with --config. Throws CLI::ParseError or ValidationError.
RunConfig parse_config(const std::vector<std::string>& args);

/// INI text with one [section] for cfg.command holding every key it accepts.
std::string effective_config(const RunConfig& cfg);

/// Command-specific checks (alpha in (0,1), N >= 8, M >= 1, alpha p > 1 where required).
void validate(const RunConfig& cfg);

DiagonalOperator make_operator(const RunConfig& cfg);
std::vector<double> parse_list(const std::string& key, const std::string& text);
std::vector<int> criterion_ids(const RunConfig& cfg);

}  // namespace fracsch::tools
