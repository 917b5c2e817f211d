#include "fracsch_tools/experiments.hpp"

#include <algorithm>

#include "fracsch/collocation.hpp"
#include "fracsch/ensemble.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/spectral.hpp"

namespace fracsch::tools {

ensemble::EnsembleSpec ensemble_spec(const RunConfig& cfg) {
    return {cfg.ensemble, cfg.seed, cfg.mode_decay, cfg.smoothness};
}

solver::SolveConfig solve_config(const RunConfig& cfg) {
    return solver::SolveConfig(cfg.alpha, TimeGrid(cfg.T, cfg.N), make_operator(cfg));
}

SpectralVector initial_value(const RunConfig& cfg, const DiagonalOperator& A) {
    const auto M = static_cast<std::size_t>(A.size());
    if (cfg.initial == "zero") return SpectralVector(M);
    if (cfg.initial == "mode1") return SpectralVector::basis(M, 0);
    return ensemble::random_vector(ensemble_spec(cfg), 0, A);
}

SpectralField forcing_field(const RunConfig& cfg, const DiagonalOperator& A, const TimeGrid& grid) {
    if (cfg.forcing == "zero") return SpectralField(grid, A.size());
    return ensemble::random_field(ensemble_spec(cfg), 0, A, grid);
}

SpectralVector with_interp_norm(const DiagonalOperator& A, SpectralVector x, double alpha, double p, double target) {
    const double n = spectral::interp_norm(A, x, alpha, p);
    if (n == 0.0) return x;
    for (cplx& c : x.coeffs) c *= target / n;
    return x;
}

cplx cubic(cplx u) { return u - std::norm(u) * u; }

nonlinear::OperatorMap ball_family(double delta, double r) {
    return {delta, [r](const SpectralVector& x) { return std::min(1.0, spectral::h_norm(x) / r); }};
}

maxreg::RegularityReport fk_lemma_ensemble(double alpha, double p, const DiagonalOperator& A, const TimeGrid& grid,
                                           const ensemble::EnsembleSpec& ens) {
    ens.validate();
    maxreg::RegularityReport worst;
    bool all = true;
    for (int m = 0; m < ens.count; ++m) {
        const SpectralField f = ensemble::random_field(ens, m, A, grid);
        SpectralField u(grid, A.size());
        for (int n = 0; n < A.size(); ++n) u.set_mode(n, fracalc::rl_integral(alpha, f.mode_trajectory(n)));
        auto rep = nonlinear::fk_lemma_check(alpha, p, u);
        all = all && rep.passed;
        if (m == 0 || rep.constant_estimate > worst.constant_estimate) worst = std::move(rep);
    }
    worst.passed = all;
    worst.ensemble_size = ens.count;
    worst.seed = ens.seed;
    return worst;
}

CsvTable spectral_table(const SpectralField& u) {
    CsvTable t({"t", "mode", "re", "im"});
    for (std::size_t k = 0; k < u.nodes(); ++k)
        for (int n = 0; n < u.modes(); ++n)
            t.row().add(u.grid().node(static_cast<int>(k))).add(n + 1).add(u(n, k).real()).add(u(n, k).imag());
    return t;
}

CsvTable physical_table(const SpectralField& u) {
    const SineCollocation col(u.modes());
    CsvTable t({"t", "x", "re", "im", "abs2"});
    for (std::size_t k = 0; k < u.nodes(); ++k) {
        const auto v = col.to_physical(u.at(k));
        for (int j = 0; j < col.points(); ++j) {
            const cplx c = v[static_cast<std::size_t>(j)];
            t.row().add(u.grid().node(static_cast<int>(k))).add(col.x(j)).add(c.real()).add(c.imag()).add(std::norm(c));
        }
    }
    return t;
}

CsvTable plot_table(const SpectralField& u) {
    const SineCollocation col(u.modes());
    std::vector<std::string> header{"t"};
    for (int j = 0; j < col.points(); ++j) header.push_back("x=" + format_double(col.x(j)));
    CsvTable t(header);
    for (std::size_t k = 0; k < u.nodes(); ++k) {
        t.row().add(u.grid().node(static_cast<int>(k)));
        for (const cplx& c : col.to_physical(u.at(k))) t.add(std::norm(c));
    }
    return t;
}

CsvTable report_table(const std::vector<maxreg::RegularityReport>& reports) {
    CsvTable t({"name", "lhs", "rhs", "constant_estimate", "passed", "N", "M", "ensemble", "seed"});
    for (const auto& r : reports)
        t.row()
            .add(r.name)
            .add(r.lhs)
            .add(r.rhs)
            .add(r.constant_estimate)
            .add(r.passed)
            .add(r.steps)
            .add(r.modes)
            .add(r.ensemble_size)
            .add(std::to_string(r.seed));
    return t;
}

CsvTable trace_table(const nonlinear::IterationTrace& trace) {
    CsvTable t({"iter", "increment", "ratio"});
    for (std::size_t i = 0; i < trace.increments.size(); ++i) {
        t.row().add(i + 1).add(trace.increments[i]);
        if (i == 0)
            t.add("");
        else
            t.add(trace.ratios[i - 1]);
    }
    return t;
}

}  // namespace fracsch::tools
