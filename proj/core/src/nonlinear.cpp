#include "fracsch/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "fracsch/collocation.hpp"
#include "fracsch/error.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/spectral.hpp"

namespace fracsch::nonlinear {

namespace {

void require_alpha_p(double alpha, double p, const char* where) {
    if (!(alpha * p > 1.0)) throw DomainError(std::string(where) + ": alpha*p must exceed 1");
}

/// Per-node H-norms of the per-mode inverse_rl of u - u(0).
std::vector<double> derivative_norms(double alpha, const SpectralField& u) {
    std::vector<double> s(u.nodes(), 0.0);
    for (int n = 0; n < u.modes(); ++n) {
        Trajectory v = u.mode_trajectory(n);
        const cplx v0 = v[0];
        for (cplx& c : v.values()) c -= v0;
        const Trajectory w = fracalc::inverse_rl(alpha, v);
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += std::norm(w[k]);
    }
    for (double& x : s) x = std::sqrt(x);
    return s;
}

/// Tracks d_k and raises DivergenceError after three consecutive increases.
void record(IterationTrace& trace, double d, int& growth) {
    if (!trace.increments.empty()) {
        const double prev = trace.increments.back();
        trace.ratios.push_back(prev > 0.0 ? d / prev : 0.0);
        growth = d > prev ? growth + 1 : 0;
    }
    trace.increments.push_back(d);
    if (growth >= 3) throw DivergenceError("Picard increments grew three times in a row");
}

}  // namespace

double mr_norm(double alpha, double p, const DiagonalOperator& A, const SpectralField& u) {
    require_alpha_p(alpha, p, "mr_norm");
    const double w = fracalc::lp_norm(p, derivative_norms(alpha, u), u.grid());
    return w + spectral::lp_da_norm(p, A, u) + spectral::h_norm(u.at(0));
}

RHSMap pointwise_rhs(int modes, std::function<cplx(cplx)> g) {
    auto col = std::make_shared<SineCollocation>(modes);
    RHSMap F;
    F.apply = [col, g = std::move(g)](const SpectralField& u) {
        SpectralField out(u.grid(), u.modes());
        for (std::size_t k = 0; k < u.nodes(); ++k) {
            std::vector<cplx> x = col->to_physical(u.at(k));
            for (cplx& c : x) c = g(c);
            out.set_at(k, col->to_spectral(x));
        }
        return out;
    };
    return F;
}

double OperatorMap::factor(const SpectralVector& x) const {
    const double f = 1.0 + delta * (s ? s(x) : 0.0);
    if (!(f >= 0.5)) throw DomainError("OperatorMap: 1 + delta s(u) fell below the ellipticity floor 1/2");
    return f;
}

IterationResult semilinear_solve(const solver::SolveConfig& cfg, const SpectralVector& u0, const RHSMap& F,
                                 const IterationOptions& opts) {
    require_alpha_p(cfg.alpha, opts.p, "semilinear_solve");
    const solver::Propagator prop(cfg);
    IterationResult res{prop.homogeneous(u0), {}};
    int growth = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        SpectralField next = prop.full(u0, F.apply(res.u));
        const double d = mr_norm(cfg.alpha, opts.p, cfg.op, next - res.u);
        record(res.trace, d, growth);
        const double scale = mr_norm(cfg.alpha, opts.p, cfg.op, res.u);
        res.u = std::move(next);
        res.trace.iterations = it;
        if (d <= opts.tol * scale) {
            res.trace.converged = true;
            break;
        }
    }
    return res;
}

QuasilinearResult quasilinear_solve(const solver::SolveConfig& cfg, const SpectralVector& u0, const OperatorMap& Amap,
                                    double r, const QuasilinearOptions& opts) {
    require_alpha_p(cfg.alpha, opts.p, "quasilinear_solve");
    if (!(r > 0.0)) throw DomainError("quasilinear_solve: r must be positive");
    QuasilinearResult res{{SpectralField(cfg.grid, cfg.op.size()), {}}, 0.0, 0.0};
    res.solution_operator_norm = opts.solution_operator_norm
                                     ? *opts.solution_operator_norm
                                     : maxreg::estimate_mr_constant(cfg, opts.p, opts.norm_ensemble).constant_estimate;
    res.smallness_threshold = r / (4.0 * res.solution_operator_norm);
    if (spectral::interp_norm(cfg.op, u0, cfg.alpha, opts.p) > res.smallness_threshold)
        warn("quasilinear_solve", "interp_norm(u0) exceeds r / (4 ||L||); convergence is not guaranteed");

    const solver::Propagator prop(cfg);
    // Psi(u)(t) = i (A(u(t)) - A) u(t) = -i delta s(u(t)) lambda_n u_n(t).
    auto psi = [&](const SpectralField& u) {
        SpectralField out(u.grid(), u.modes());
        for (std::size_t k = 0; k < u.nodes(); ++k) {
            const SpectralVector x = u.at(k);
            const double excess = Amap.factor(x) - 1.0;
            for (int n = 0; n < u.modes(); ++n)
                out(n, k) = cplx(0.0, -excess * cfg.op.eigenvalue(n)) * x[static_cast<std::size_t>(n)];
        }
        return out;
    };
    auto check_ball = [&](const SpectralField& u) {
        const double m = mr_norm(cfg.alpha, opts.p, cfg.op, u);
        if (m > r) throw BallEscapeError("quasilinear_solve: mr_norm " + std::to_string(m) + " exceeds r = " + std::to_string(r));
        return m;
    };
    res.u = prop.homogeneous(u0);
    check_ball(res.u);
    int growth = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        SpectralField next = prop.full(u0, psi(res.u));
        const double m = check_ball(next);
        const double d = mr_norm(cfg.alpha, opts.p, cfg.op, next - res.u);
        record(res.trace, d, growth);
        res.u = std::move(next);
        res.trace.iterations = it;
        if (d <= opts.tol * m) {
            res.trace.converged = true;
            break;
        }
    }
    return res;
}

double root_test_term(double alpha, double p, double T, int j) {
    if (j < 1) throw DomainError("root_test_term: j must be positive");
    const double log_term = j * std::log(2.0) +
                            (j * std::lgamma(alpha) + j * alpha * std::log(T) - std::lgamma(j * alpha + 1.0)) / p;
    return std::exp(log_term / j);
}

maxreg::RegularityReport fk_lemma_check(double alpha, double p, const SpectralField& u) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fk_lemma_check: alpha must lie in (0,1)");
    if (!(p > 1.0 && std::isfinite(p))) throw DomainError("fk_lemma_check: p must lie in (1, infinity)");
    if (spectral::h_norm(u.at(0)) > 1e-12 * std::max(1.0, spectral::lp_h_norm(fracalc::infinity, u)))
        throw DomainError("fk_lemma_check: u(0) must vanish");
    const TimeGrid& g = u.grid();
    const double T = g.horizon();
    const double q = p / (p - 1.0);

    std::vector<double> up = spectral::h_norms(u);
    for (double& x : up) x = std::pow(x, p);
    const double lhs = fracalc::lp_norm(1.0, up, g);

    // G(r) = int_0^r ||d^alpha u||^p by cumulative trapezoid, then
    // int_0^T (T-r)^{alpha-1} G(r) dr = Gamma(alpha) (J^alpha G)(T).
    const std::vector<double> dn = derivative_norms(alpha, u);
    Trajectory G(g);
    double acc = 0.0;
    for (std::size_t k = 1; k < dn.size(); ++k) {
        acc += 0.5 * g.step() * (std::pow(dn[k - 1], p) + std::pow(dn[k], p));
        G[k] = acc;
    }
    const double conv = std::tgamma(alpha) * fracalc::rl_integral(alpha, G)[static_cast<std::size_t>(g.steps())].real();
    const double c = std::pow(T, alpha * p / q) / (std::pow(alpha, p / q) * std::pow(std::tgamma(alpha), p));

    maxreg::RegularityReport r;
    r.name = "fklemma";
    r.horizon = T;
    r.steps = g.steps();
    r.modes = u.modes();
    r.tolerance = 2e-2;
    r.lhs = lhs;
    r.rhs = c * conv;
    r.constant_estimate = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    r.passed = r.lhs <= r.rhs * (1.0 + r.tolerance);
    for (int j : {10, 20, 40}) r.metrics.emplace_back("root_test_" + std::to_string(j), root_test_term(alpha, p, T, j));
    return r;
}

}  // namespace fracsch::nonlinear
