#include "fracsch_tools/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "fracsch_tools/csv.hpp"

#ifndef FRACSCH_DEFAULT_DATA_DIR
#define FRACSCH_DEFAULT_DATA_DIR "data"
#endif

namespace fracsch::tools {

namespace {

struct Field {
    std::string name;
    std::function<void(CLI::App&, RunConfig&)> bind;
    std::function<std::string(const RunConfig&)> get;
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

template <class T>
Field field(const char* name, const char* help, T RunConfig::*m) {
    Field f;
    f.name = name;
    f.bind = [name, help, m](CLI::App& app, RunConfig& cfg) {
        if constexpr (std::is_same_v<T, bool>)
            app.add_flag(std::string("--") + name, cfg.*m, help);
        else
            app.add_option(std::string("--") + name, cfg.*m, help)->capture_default_str();
    };
    f.get = [m](const RunConfig& cfg) -> std::string {
        const T& v = cfg.*m;
        if constexpr (std::is_same_v<T, bool>)
            return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>)
            return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>)
            return quoted(v);
        else
            return std::to_string(v);
    };
    return f;
}

const std::map<std::string, Field>& registry() {
    static const std::map<std::string, Field> fields = [] {
        std::map<std::string, Field> m;
        auto put = [&m](Field f) { m.emplace(f.name, std::move(f)); };
        put(field("alpha", "fractional order in (0,1)", &RunConfig::alpha));
        put(field("p", "time integrability exponent", &RunConfig::p));
        put(field("T", "time horizon", &RunConfig::T));
        put(field("N", "time steps", &RunConfig::N));
        put(field("M", "spectral modes", &RunConfig::M));
        put(field("operator", "dirichlet_laplacian_1d or comma-separated eigenvalues", &RunConfig::op));
        put(field("ensemble", "ensemble size", &RunConfig::ensemble));
        put(field("mode-decay", "mode n amplitude lambda_n^-decay", &RunConfig::mode_decay));
        put(field("smoothness", "degree of the random trigonometric polynomials", &RunConfig::smoothness));
        put(field("seed", "seed of every random draw", &RunConfig::seed));
        put(field("output", "output directory", &RunConfig::output));
        put(field("beta", "second Mittag-Leffler parameter", &RunConfig::beta));
        put(field("t", "|z| of the evaluation point", &RunConfig::t));
        put(field("ray", "arg z / pi of the evaluation point", &RunConfig::ray));
        put(field("rays", "comma-separated arg z / pi of the scanned rays", &RunConfig::rays));
        put(field("t-min", "smallest scanned |z|", &RunConfig::t_min));
        put(field("t-max", "largest scanned |z|", &RunConfig::t_max));
        put(field("points", "log-spaced points per ray", &RunConfig::points));
        put(field("initial", "initial value: zero, mode1 or random", &RunConfig::initial));
        put(field("forcing", "forcing: zero or random", &RunConfig::forcing));
        put(field("plot-data", "also emit t/x-gridded |u|^2", &RunConfig::plot_data));
        put(field("tol", "relative Picard tolerance", &RunConfig::tol));
        put(field("max-iter", "Picard iteration cap", &RunConfig::max_iter));
        put(field("u0-norm", "interp_norm of the rescaled initial value", &RunConfig::u0_norm));
        put(field("r", "admissible ball radius", &RunConfig::r));
        put(field("delta", "operator family amplitude", &RunConfig::delta));
        put(field("s-max", "truncation point of the I(alpha) integral", &RunConfig::s_max));
        put(field("data-dir", "directory of the reference tables", &RunConfig::data_dir));
        put(field("only", "comma-separated criterion ids (empty = all)", &RunConfig::only));
        return m;
    }();
    return fields;
}

const std::vector<std::string> kCommon = {"alpha", "p",          "T",          "N",    "M",     "operator",
                                          "ensemble", "mode-decay", "smoothness", "seed", "output"};

std::vector<std::string> with_common(std::vector<std::string> extra) {
    std::vector<std::string> out = kCommon;
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

struct Command {
    std::string path;
    std::string help;
    std::vector<std::string> fields;
};

const std::vector<Command>& command_table() {
    static const std::vector<Command> table = {
        {"mlf.eval", "E_{alpha,beta}(t e^{i pi ray})", {"alpha", "beta", "t", "ray", "output"}},
        {"mlf.scan", "E_{alpha,beta} on log-spaced points of each ray",
         {"alpha", "beta", "rays", "t-min", "t-max", "points", "output"}},
        {"solve", "solve the linear problem", with_common({"initial", "forcing", "plot-data"})},
        {"verify.coercivity", "coercivity inequality on the ensemble", with_common({})},
        {"verify.mrconstant", "maximal-regularity constant and its stability", with_common({})},
        {"verify.ialpha", "I(alpha) integral", {"alpha", "s-max", "output"}},
        {"verify.mikhlin", "Mikhlin symbol scan", with_common({})},
        {"verify.homogeneous", "homogeneous-solution estimates", with_common({"initial"})},
        {"verify.continuity", "continuity into H and T-scaling", with_common({})},
        {"verify.embedding", "Hoelder embedding of J^alpha L^p", with_common({})},
        {"verify.fklemma", "weighted L^p lemma on J^alpha images", with_common({})},
        {"verify.daconstant", "explicit D(A) constant", with_common({})},
        {"semilinear", "Picard iteration for F(u) = u - |u|^2 u", with_common({"tol", "max-iter", "u0-norm"})},
        {"quasilinear", "Picard iteration for the diagonal operator family",
         with_common({"tol", "max-iter", "u0-norm", "r", "delta"})},
        {"oracle.regen", "regenerate the Mittag-Leffler reference table", {"data-dir"}},
        {"accept", "run the acceptance suite", {"seed", "output", "data-dir", "only"}},
    };
    return table;
}

const Command& find_command(const std::string& path) {
    for (const auto& c : command_table())
        if (c.path == path) return c;
    throw ValidationError("command", "unknown command '" + path + "'");
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& c : command_table()) v.push_back(c.path);
        return v;
    }();
    return names;
}

std::unique_ptr<CLI::App> make_app(RunConfig& cfg) {
    if (cfg.data_dir.empty()) cfg.data_dir = FRACSCH_DEFAULT_DATA_DIR;
    auto app = std::make_unique<CLI::App>("Time-fractional Schroedinger solver and regularity checks", "fracsch");
    app->config_formatter(std::make_shared<CLI::ConfigINI>());
    app->set_config("--config", "", "INI file with one [section] per subcommand");
    app->require_subcommand(1);
    std::map<std::string, CLI::App*> groups;
    for (const auto& c : command_table()) {
        CLI::App* parent = app.get();
        const auto dot = c.path.find('.');
        std::string leaf = c.path;
        if (dot != std::string::npos) {
            const std::string group = c.path.substr(0, dot);
            leaf = c.path.substr(dot + 1);
            auto it = groups.find(group);
            if (it == groups.end()) {
                CLI::App* g = app->add_subcommand(group, group + " subcommands");
                g->require_subcommand(1);
                it = groups.emplace(group, g).first;
            }
            parent = it->second;
        }
        CLI::App* sub = parent->add_subcommand(leaf, c.help);
        for (const auto& name : c.fields) registry().at(name).bind(*sub, cfg);
    }
    return app;
}

void finish_parse(const CLI::App& app, RunConfig& cfg) {
    std::string path;
    const CLI::App* node = &app;
    while (true) {
        const auto subs = node->get_subcommands();
        if (subs.empty()) break;
        node = subs.front();
        path += (path.empty() ? "" : ".") + node->get_name();
    }
    cfg.command = path;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    auto app = make_app(cfg);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app->parse(rev);
    finish_parse(*app, cfg);
    validate(cfg);
    return cfg;
}

std::string effective_config(const RunConfig& cfg) {
    const Command& c = find_command(cfg.command);
    std::string out = "[" + c.path + "]\n";
    for (const auto& name : c.fields) out += name + " = " + registry().at(name).get(cfg) + "\n";
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ValidationError(key, "empty list entry");
        const std::string s = item.substr(b, e - b + 1);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ValidationError(key, "'" + s + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError(key, "list must not be empty");
    return out;
}

DiagonalOperator make_operator(const RunConfig& cfg) {
    if (cfg.op == "dirichlet_laplacian_1d") return DiagonalOperator::dirichlet_laplacian_1d(cfg.M);
    const std::vector<double> ev = parse_list("operator", cfg.op);
    if (static_cast<int>(ev.size()) != cfg.M)
        throw ValidationError("operator", "eigenvalue list has " + std::to_string(ev.size()) + " entries but M = " +
                                              std::to_string(cfg.M));
    for (double v : ev)
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("operator", "eigenvalues must be positive and finite");
    return DiagonalOperator(ev);
}

std::vector<int> criterion_ids(const RunConfig& cfg) {
    std::vector<int> ids;
    if (cfg.only.empty()) {
        for (int i = 1; i <= 15; ++i) ids.push_back(i);
        return ids;
    }
    for (double v : parse_list("only", cfg.only)) {
        if (v != std::floor(v) || v < 1 || v > 15) throw ValidationError("only", "criterion ids must be integers in 1..15");
        ids.push_back(static_cast<int>(v));
    }
    return ids;
}

void validate(const RunConfig& cfg) {
    const Command& c = find_command(cfg.command);
    auto has = [&c](const char* name) {
        for (const auto& f : c.fields)
            if (f == name) return true;
        return false;
    };
    if (has("alpha") && !(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ValidationError("alpha", "alpha must lie in (0,1)");
    if (has("N") && cfg.N < 8) throw ValidationError("N", "N must be at least 8");
    if (has("M") && cfg.M < 1) throw ValidationError("M", "M must be at least 1");
    if (has("T") && !(cfg.T > 0.0 && std::isfinite(cfg.T))) throw ValidationError("T", "T must be positive");
    if (has("p") && !(cfg.p > 1.0 && std::isfinite(cfg.p))) throw ValidationError("p", "p must lie in (1, infinity)");
    if (has("ensemble") && cfg.ensemble < 1) throw ValidationError("ensemble", "ensemble must be at least 1");
    if (has("mode-decay") && !(cfg.mode_decay >= 0.0)) throw ValidationError("mode-decay", "mode-decay must be nonnegative");
    if (has("smoothness") && cfg.smoothness < 0) throw ValidationError("smoothness", "smoothness must be nonnegative");
    if (has("operator")) (void)make_operator(cfg);
    if (has("beta") && !std::isfinite(cfg.beta)) throw ValidationError("beta", "beta must be finite");
    if (has("t") && !(cfg.t >= 0.0 && std::isfinite(cfg.t))) throw ValidationError("t", "t must be nonnegative");
    if (has("rays")) (void)parse_list("rays", cfg.rays);
    if (has("t-min") && !(cfg.t_min > 0.0 && cfg.t_min < cfg.t_max)) throw ValidationError("t-min", "need 0 < t-min < t-max");
    if (has("points") && cfg.points < 2) throw ValidationError("points", "points must be at least 2");
    if (has("initial") && cfg.initial != "zero" && cfg.initial != "mode1" && cfg.initial != "random")
        throw ValidationError("initial", "initial must be zero, mode1 or random");
    if (has("forcing") && cfg.forcing != "zero" && cfg.forcing != "random")
        throw ValidationError("forcing", "forcing must be zero or random");
    if (has("tol") && !(cfg.tol > 0.0)) throw ValidationError("tol", "tol must be positive");
    if (has("max-iter") && cfg.max_iter < 1) throw ValidationError("max-iter", "max-iter must be at least 1");
    if (has("u0-norm") && !(cfg.u0_norm >= 0.0)) throw ValidationError("u0-norm", "u0-norm must be nonnegative");
    if (has("r") && !(cfg.r > 0.0)) throw ValidationError("r", "r must be positive");
    if (has("delta") && !(cfg.delta >= 0.0)) throw ValidationError("delta", "delta must be nonnegative");
    if (has("s-max") && !(cfg.s_max > 1.0)) throw ValidationError("s-max", "s-max must exceed 1");
    if (has("only")) (void)criterion_ids(cfg);

    const bool needs_alpha_p = c.path == "semilinear" || c.path == "quasilinear" || c.path == "verify.continuity" ||
                               c.path == "verify.embedding";
    if (needs_alpha_p && !(cfg.alpha * cfg.p > 1.0)) throw ValidationError("p", "alpha*p must exceed 1");
    const bool needs_collocation = c.path == "semilinear";
    if (needs_collocation && cfg.op != "dirichlet_laplacian_1d")
        throw ValidationError("operator", "the pointwise nonlinearity needs dirichlet_laplacian_1d");
}

}  // namespace fracsch::tools
