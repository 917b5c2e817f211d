#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracsch/ensemble.hpp"
#include "fracsch/error.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/maxreg.hpp"
#include "fracsch/mlf.hpp"
#include "fracsch/solver.hpp"
#include "fracsch/spectral.hpp"

using namespace fracsch;
using namespace fracsch::maxreg;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
Trajectory sample(const TimeGrid& g, F f) {
    Trajectory v(g);
    for (int k = 0; k <= g.steps(); ++k) v[static_cast<std::size_t>(k)] = f(g.node(k));
    return v;
}

std::vector<Trajectory> ensemble_ws(const TimeGrid& g, int count, std::uint64_t seed) {
    std::vector<Trajectory> ws;
    for (int m = 0; m < count; ++m) ws.push_back(ensemble::random_trajectory({count, seed, 0.0, 4}, m, g));
    return ws;
}

}  // namespace

TEST_SUITE("maxreg") {

TEST_CASE("RegularityReport metric lookup") {
    RegularityReport r;
    r.metrics = {{"a", 1.0}, {"b", 2.0}};
    CHECK(r.metric("b").value() == 2.0);
    CHECK_FALSE(r.metric("c").has_value());
}

TEST_CASE("coercivity examples") {
    const TimeGrid g(1.0, 512);
    const auto one = coercivity_check(0.5, fracalc::rl_integral(0.5, sample(g, [](double) { return cplx(1.0); })));
    CHECK(one.passed);
    CHECK(one.rhs / one.lhs >= 1.0);
    const auto zero = coercivity_check(0.5, Trajectory(g));
    CHECK(zero.passed);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    for (double w : {1.0, 10.0, 100.0}) {
        const auto r =
            coercivity_check(0.5, fracalc::rl_integral(0.5, sample(g, [&](double t) { return std::polar(1.0, w * t); })));
        CAPTURE(w);
        CHECK(r.passed);
    }
}

TEST_CASE("coercivity ensemble") {
    for (double a : {0.3, 0.8}) {
        const auto r = coercivity_ensemble(a, TimeGrid(2.0, 256), {20, 4, 1.0, 4});
        CHECK(r.passed);
        CHECK(r.ensemble_size == 20);
    }
}

TEST_CASE("maximal-regularity ratio for constant forcing on one mode") {
    const double a = 0.5, p = 2.0;
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(4);
    const double lam = A.eigenvalue(0);
    const TimeGrid g(1.0, 1024);
    SpectralField f(g, 4);
    const cplx c(1.0, -0.5);
    for (std::size_t k = 0; k < f.nodes(); ++k) f(0, k) = c;
    const SpectralField u = solver::solve_inhomogeneous(solver::SolveConfig(a, g, A), f);
    const double measured = (fracalc::waps_norm(a, p, u.mode_trajectory(0)) + lam * fracalc::lp_norm(p, u.mode_trajectory(0))) /
                            fracalc::lp_norm(p, f.mode_trajectory(0));
    // u = c t^a E_{a,a+1}(-i lam t^a) and d^a u = c - i lam u.
    const auto exact = sample(g, [&](double t) {
        return c * std::pow(t, a) * mlf::ml_eval({a, a + 1.0}, cplx(0.0, -lam * std::pow(t, a))).value;
    });
    Trajectory du(g);
    for (std::size_t k = 0; k < du.size(); ++k) du[k] = c - cplx(0.0, lam) * exact[k];
    const double closed = (fracalc::lp_norm(p, du) + lam * fracalc::lp_norm(p, exact)) / std::abs(c);
    CHECK(std::isfinite(measured));
    CHECK(std::abs(measured - closed) / closed <= 1e-2);
}

TEST_CASE("estimate_mr_constant is refinement and dimension stable") {
    const solver::SolveConfig cfg(0.5, TimeGrid(1.0, 256), DiagonalOperator::dirichlet_laplacian_1d(32));
    const auto r = estimate_mr_constant(cfg, 2.0, {10, 1, 0.5, 4});
    CHECK(r.passed);
    CHECK(std::isfinite(r.constant_estimate));
    CHECK(r.metric("sup_2M").has_value());
    CHECK_THROWS_AS(estimate_mr_constant(cfg, 1.0, {10, 1, 0.5, 4}), DomainError);
}

TEST_CASE("maximal-regularity constant grows with alpha") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(16);
    std::vector<double> sups;
    for (double a : {0.3, 0.5, 0.7, 0.9, 0.95}) {
        const solver::Propagator prop(solver::SolveConfig(a, TimeGrid(1.0, 256), A));
        sups.push_back(mr_constant_sups(prop, {2.0}, {10, 1, 0.5, 4})[0]);
    }
    for (std::size_t i = 1; i < sups.size(); ++i) CHECK(sups[i] >= sups[i - 1]);
    CHECK(sups.back() > 1.5 * sups.front());
}

TEST_CASE("i_alpha examples") {
    const auto a = i_alpha(0.5, 1e5), b = i_alpha(0.5, 2e5);
    CHECK(std::abs(a.value - b.value) / b.value < 1e-3);
    CHECK(i_alpha(0.95, 1e6).value > a.value);
    // s^{1-a} s^{a-1} |E_{a,a}(-i s^a)| -> 1/Gamma(a) as s -> 0.
    for (double al : {0.3, 0.7}) {
        const double s = 1e-10;
        const double ratio = std::abs(mlf::ml_eval({al, al}, cplx(0.0, -std::pow(s, al))).value);
        CHECK(ratio == doctest::Approx(1.0 / std::tgamma(al)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(i_alpha(1.0, 1e3), DomainError);
}

TEST_CASE("mikhlin_scan") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(64);
    const auto r = mikhlin_scan(A, 0.5, symmetric_log_samples(1e-6, 1e6, 10));
    CHECK(r.passed);
    CHECK(r.metric("angle_error").value() <= 1e-12);
    // |m_n(s)| -> 1 as lambda -> infinity at fixed s.
    const auto big = mikhlin_scan(DiagonalOperator({1e14}), 0.5, {1.0, -1.0});
    CHECK(big.metric("sup_m").value() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(symmetric_log_samples(1.0, 10.0, 4).size() == 10);
}

TEST_CASE("homogeneous checks on a single mode") {
    for (double lam : {1.0, 100.0, 1e4}) {
        const solver::SolveConfig cfg(0.5, TimeGrid(1.0, 512), DiagonalOperator({lam}));
        const auto reps = homogeneous_checks(cfg, SpectralVector::basis(1, 0), 4.0);
        for (const auto& r : reps) {
            CAPTURE(r.name);
            CAPTURE(lam);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("homogeneous checks with u0 in D(A)") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(32);
    const SpectralVector u0 = ensemble::random_vector({1, 2, 2.0, 4}, 0, A);
    for (double p : {1.5, 4.0}) {
        const auto reps = homogeneous_checks(solver::SolveConfig(0.5, TimeGrid(1.0, 512), A), u0, p);
        CHECK(reps.size() == 4);
        for (const auto& r : reps) {
            CAPTURE(r.name);
            CHECK(r.passed);
        }
        CHECK(reps.back().name == "homogeneous_da");
    }
    CHECK_THROWS_AS(homogeneous_checks(solver::SolveConfig(0.5, TimeGrid(1.0, 16), A), SpectralVector(32), 2.0), DomainError);
}

TEST_CASE("decay_sup is finite") {
    const auto d = decay_sup(0.5, TimeGrid(1.0, 256), {kPi * kPi, 100.0, 1e4});
    CHECK(std::isfinite(d.pointwise));
    CHECK(std::isfinite(d.weak));
    CHECK(d.pointwise > 0.0);
}

TEST_CASE("continuity check and T-scaling") {
    const solver::SolveConfig cfg(0.6, TimeGrid(1.0, 256), DiagonalOperator::dirichlet_laplacian_1d(16));
    const auto r = continuity_check(cfg, 4.0, {10, 3, 1.0, 4});
    CHECK(r.passed);
    CHECK(std::abs(r.metric("slope").value() - (0.6 - 0.25)) <= 0.05);
    CHECK_THROWS_AS(continuity_check(cfg, 1.5, {10, 3, 1.0, 4}), DomainError);
    // f = 0 gives u = 0.
    const auto u = solver::solve_inhomogeneous(cfg, SpectralField(cfg.grid, 16));
    CHECK(spectral::lp_h_norm(fracalc::infinity, u) == 0.0);
}

TEST_CASE("embedding check examples") {
    const double a = 0.6, p = 2.0;
    const TimeGrid g(1.0, 512);
    const auto one = embedding_check(a, p, {sample(g, [](double) { return cplx(1.0); })});
    CHECK(one.passed);
    // w = 1: Gamma(a) t^a / Gamma(a+1) against (t^e / e)^{1/q}, e = q(a-1)+1.
    const double q = 2.0, e = q * (a - 1.0) + 1.0;
    const double closed = std::tgamma(a) / std::tgamma(a + 1.0) / std::pow(1.0 / e, 1.0 / q);
    CHECK(one.lhs == doctest::Approx(closed).epsilon(1e-9));
    const auto zero = embedding_check(a, p, {Trajectory(g)});
    CHECK(zero.passed);
    CHECK(zero.lhs == 0.0);
    CHECK(embedding_check(a, p, g, {20, 6, 0.0, 4}).passed);
}

TEST_CASE("explicit D(A) constant") {
    const solver::SolveConfig cfg(0.5, TimeGrid(1.0, 256), DiagonalOperator::dirichlet_laplacian_1d(32));
    const auto r = da_constant_check(cfg, 2.0, {10, 1, 2.0, 4});
    CHECK(r.passed);
    CHECK(r.metric("C0").has_value());
}

TEST_CASE("constants are invariant under phase rotation and scaling") {
    const double a = 0.6, p = 2.0;
    const TimeGrid g(1.0, 256);
    const auto ws = ensemble_ws(g, 5, 9);
    const auto base = embedding_check(a, p, ws);
    for (cplx c : {std::polar(1.0, 1.1), cplx(-3.0, 0.0), cplx(0.0, 1e-3)}) {
        std::vector<Trajectory> cw;
        for (const auto& w : ws) cw.push_back(c * w);
        CHECK(embedding_check(a, p, cw).constant_estimate ==
              doctest::Approx(base.constant_estimate).epsilon(1e-10));
        const Trajectory v = fracalc::rl_integral(a, ws[0]);
        CHECK(coercivity_check(a, c * v).constant_estimate ==
              doctest::Approx(coercivity_check(a, v).constant_estimate).epsilon(1e-10));
    }
}

}  // TEST_SUITE
