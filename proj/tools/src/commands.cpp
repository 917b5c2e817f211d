#include "fracsch_tools/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "fracsch/error.hpp"
#include "fracsch/maxreg.hpp"
#include "fracsch/mlf.hpp"
#include "fracsch/nonlinear.hpp"
#include "fracsch/solver.hpp"
#include "fracsch_tools/acceptance.hpp"
#include "fracsch_tools/experiments.hpp"

namespace fracsch::tools {

namespace {

namespace fs = std::filesystem;

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.output) / name; }

CsvTable ml_table() { return CsvTable({"t", "re", "im", "abs", "method", "err_estimate"}); }

void ml_row(CsvTable& t, double r, const mlf::MLValue& v) {
    t.row().add(r).add(v.value.real()).add(v.value.imag()).add(std::abs(v.value)).add(mlf::to_string(v.method)).add(v.err_estimate);
}

int mlf_eval(const RunConfig& cfg, std::ostream& out) {
    const cplx z = std::polar(cfg.t, std::numbers::pi * cfg.ray);
    const mlf::MLValue v = mlf::ml_eval({cfg.alpha, cfg.beta}, z);
    CsvTable t = ml_table();
    ml_row(t, cfg.t, v);
    t.write(out_path(cfg, "mlf_eval.csv"));
    out << "E(" << format_double(z.real()) << "," << format_double(z.imag()) << ") = " << format_double(v.value.real())
        << (v.value.imag() < 0 ? "" : "+") << format_double(v.value.imag()) << "i [" << mlf::to_string(v.method) << "]\n";
    return exit_ok;
}

int mlf_scan(const RunConfig& cfg, std::ostream& out) {
    const auto rays = parse_list("rays", cfg.rays);
    const double la = std::log(cfg.t_min), lb = std::log(cfg.t_max);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        CsvTable t = ml_table();
        for (int j = 0; j < cfg.points; ++j) {
            const double r = j == cfg.points - 1 ? cfg.t_max : std::exp(la + (lb - la) * j / (cfg.points - 1));
            ml_row(t, r, mlf::ml_eval({cfg.alpha, cfg.beta}, std::polar(r, std::numbers::pi * rays[i])));
        }
        const std::string name = "mlf_scan_ray" + std::to_string(i) + ".csv";
        t.write(out_path(cfg, name));
        out << name << ": arg z = " << format_double(rays[i]) << " pi, " << cfg.points << " points\n";
    }
    return exit_ok;
}

int solve(const RunConfig& cfg, std::ostream& out) {
    const auto sc = solve_config(cfg);
    const SpectralField u =
        solver::solve_full(sc, initial_value(cfg, sc.op), forcing_field(cfg, sc.op, sc.grid));
    spectral_table(u).write(out_path(cfg, "solve_spectral.csv"));
    if (cfg.op == "dirichlet_laplacian_1d") {
        physical_table(u).write(out_path(cfg, "solve_physical.csv"));
        if (cfg.plot_data) plot_table(u).write(out_path(cfg, "solve_plot_abs2.csv"));
    } else {
        out << "explicit eigenvalues: physical-space output skipped\n";
    }
    out << "solved " << sc.op.size() << " modes on " << sc.grid.steps() << " steps\n";
    return exit_ok;
}

std::vector<maxreg::RegularityReport> verify_reports(const RunConfig& cfg) {
    const std::string check = cfg.command.substr(cfg.command.find('.') + 1);
    if (check == "ialpha") {
        const maxreg::IAlpha ia = maxreg::i_alpha(cfg.alpha, cfg.s_max);
        maxreg::RegularityReport r;
        r.name = "ialpha";
        r.lhs = ia.tail_fraction();
        r.rhs = 1e-3;
        r.tolerance = 0.0;
        r.constant_estimate = ia.value;
        r.passed = std::isfinite(ia.value) && r.lhs < r.rhs;
        r.metrics = {{"body", ia.body}, {"tail", ia.tail}};
        return {r};
    }
    const auto sc = solve_config(cfg);
    const auto ens = ensemble_spec(cfg);
    if (check == "coercivity") return {maxreg::coercivity_ensemble(cfg.alpha, sc.grid, ens)};
    if (check == "mrconstant") return {maxreg::estimate_mr_constant(sc, cfg.p, ens)};
    if (check == "mikhlin")
        return {maxreg::mikhlin_scan(sc.op, cfg.alpha, maxreg::symmetric_log_samples(1e-6, 1e6, 10))};
    if (check == "homogeneous") return maxreg::homogeneous_checks(sc, initial_value(cfg, sc.op), cfg.p);
    if (check == "continuity") return {maxreg::continuity_check(sc, cfg.p, ens)};
    if (check == "embedding") return {maxreg::embedding_check(cfg.alpha, cfg.p, sc.grid, ens)};
    if (check == "fklemma") return {fk_lemma_ensemble(cfg.alpha, cfg.p, sc.op, sc.grid, ens)};
    if (check == "daconstant") return {maxreg::da_constant_check(sc, cfg.p, ens)};
    throw ValidationError("command", "unknown check '" + check + "'");
}

int verify(const RunConfig& cfg, std::ostream& out) {
    const auto reports = verify_reports(cfg);
    const std::string check = cfg.command.substr(cfg.command.find('.') + 1);
    report_table(reports).write(out_path(cfg, "verify_" + check + ".csv"));
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " lhs=" << format_double(r.lhs)
            << " rhs=" << format_double(r.rhs) << " constant=" << format_double(r.constant_estimate) << "\n";
    }
    return all ? exit_ok : exit_check_failed;
}

int write_iteration(const RunConfig& cfg, const std::string& stem, const nonlinear::IterationResult& res,
                    std::ostream& out) {
    spectral_table(res.u).write(out_path(cfg, stem + "_solution.csv"));
    trace_table(res.trace).write(out_path(cfg, stem + "_trace.csv"));
    out << stem << ": " << res.trace.iterations << " iterations, "
        << (res.trace.converged ? "converged" : "not converged");
    if (!res.trace.ratios.empty()) out << ", final ratio " << format_double(res.trace.ratios.back());
    out << "\n";
    return res.trace.converged ? exit_ok : exit_check_failed;
}

int semilinear(const RunConfig& cfg, std::ostream& out) {
    const auto sc = solve_config(cfg);
    const SpectralVector u0 = with_interp_norm(sc.op, initial_value(cfg, sc.op), cfg.alpha, cfg.p, cfg.u0_norm);
    const auto res = nonlinear::semilinear_solve(sc, u0, nonlinear::pointwise_rhs(cfg.M, cubic),
                                                 {cfg.p, cfg.tol, cfg.max_iter});
    return write_iteration(cfg, "semilinear", res, out);
}

int quasilinear(const RunConfig& cfg, std::ostream& out) {
    const auto sc = solve_config(cfg);
    const SpectralVector u0 = with_interp_norm(sc.op, initial_value(cfg, sc.op), cfg.alpha, cfg.p, cfg.u0_norm);
    nonlinear::QuasilinearOptions opts;
    opts.p = cfg.p;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.norm_ensemble = ensemble_spec(cfg);
    const auto res = nonlinear::quasilinear_solve(sc, u0, ball_family(cfg.delta, cfg.r), cfg.r, opts);
    out << "||L|| estimate " << format_double(res.solution_operator_norm) << ", smallness threshold "
        << format_double(res.smallness_threshold) << "\n";
    return write_iteration(cfg, "quasilinear", res, out);
}

int oracle_regen(const RunConfig& cfg, std::ostream& out) {
    const fs::path path = fs::path(cfg.data_dir) / "ml_reference.csv";
    const CsvTable t = ml_reference_table();
    t.write(path);
    out << "wrote " << t.rows() << " reference values to " << path.string() << "\n";
    return exit_ok;
}

int accept(const RunConfig& cfg, std::ostream& out) {
    AcceptanceOptions opts;
    opts.seed = cfg.seed;
    opts.output = cfg.output;
    opts.data_dir = cfg.data_dir;
    opts.criteria = criterion_ids(cfg);
    const auto results = run_acceptance(opts, out);
    for (const auto& r : results)
        if (!r.passed) return exit_check_failed;
    return exit_ok;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out) {
    const std::string& c = cfg.command;
    if (c == "mlf.eval") return mlf_eval(cfg, out);
    if (c == "mlf.scan") return mlf_scan(cfg, out);
    if (c == "solve") return solve(cfg, out);
    if (c.rfind("verify.", 0) == 0) return verify(cfg, out);
    if (c == "semilinear") return semilinear(cfg, out);
    if (c == "quasilinear") return quasilinear(cfg, out);
    if (c == "oracle.regen") return oracle_regen(cfg, out);
    if (c == "accept") return accept(cfg, out);
    throw ValidationError("command", "unknown command '" + c + "'");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    auto app = make_app(cfg);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app->parse(rev);
        finish_parse(*app, cfg);
        validate(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app->exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        if (cfg.command != "oracle.regen") {
            fs::create_directories(cfg.output);
            std::ofstream(fs::path(cfg.output) / "effective_config", std::ios::binary) << effective_config(cfg);
        }
        return run_command(cfg, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return exit_divergence;
    } catch (const BallEscapeError& e) {
        err << "divergence: " << e.what() << "\n";
        return exit_divergence;
    } catch (const ConvergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return exit_divergence;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
}

}  // namespace fracsch::tools
