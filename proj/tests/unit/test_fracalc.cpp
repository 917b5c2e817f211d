#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracsch/ensemble.hpp"
#include "fracsch/error.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/mlf.hpp"
#include "fracsch/oracle.hpp"

using namespace fracsch;
using namespace fracsch::fracalc;

namespace {

template <class F>
Trajectory sample(const TimeGrid& g, F f) {
    Trajectory v(g);
    for (int k = 0; k <= g.steps(); ++k) v[static_cast<std::size_t>(k)] = f(g.node(k));
    return v;
}

double max_abs_diff(const Trajectory& a, const Trajectory& b, std::size_t from = 0) {
    double m = 0.0;
    for (std::size_t k = from; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

Trajectory smooth_zero_start(const TimeGrid& g, std::uint64_t seed) {
    Trajectory w = ensemble::random_trajectory({1, seed, 0.0, 4}, 0, g);
    const cplx w0 = w[0];
    for (cplx& c : w.values()) c -= w0;
    return w;
}

}  // namespace

TEST_SUITE("fracalc") {

TEST_CASE("rl_integral of a constant is exact") {
    for (double a : {0.2, 0.5, 0.9, 1.0}) {
        const TimeGrid g(2.0, 64);
        const auto v = rl_integral(a, sample(g, [](double) { return cplx(1.0); }));
        const auto ref = sample(g, [&](double t) { return cplx(std::pow(t, a) / std::tgamma(a + 1.0)); });
        CAPTURE(a);
        CHECK(max_abs_diff(v, ref) <= 1e-14);
    }
}

TEST_CASE("rl_integral of t is exact") {
    const TimeGrid g(1.0, 100);
    const auto v = rl_integral(0.5, sample(g, [](double t) { return cplx(t); }));
    const auto ref = sample(g, [](double t) { return cplx(std::pow(t, 1.5) / std::tgamma(2.5)); });
    CHECK(max_abs_diff(v, ref) <= 1e-14);
    CHECK(v[0] == cplx(0.0));
}

TEST_CASE("rl_integral converges on sin at order at least 1.5") {
    const double a = 0.3;
    auto at_T = [&](int N) {
        const TimeGrid g(1.0, N);
        return rl_integral(a, sample(g, [](double t) { return cplx(std::sin(t)); }))[static_cast<std::size_t>(N)];
    };
    const cplx ref = at_T(8192);
    const double e1 = std::abs(at_T(512) - ref), e2 = std::abs(at_T(1024) - ref);
    CHECK(std::log2(e1 / e2) >= 1.5);
}

TEST_CASE("caputo_derivative of a constant vanishes") {
    const TimeGrid g(1.0, 32);
    const auto d = caputo_derivative(0.4, sample(g, [](double) { return cplx(3.0, -1.0); }), cplx(3.0, -1.0));
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(d[k] == cplx(0.0));
}

TEST_CASE("caputo_derivative of t^alpha + c") {
    // The first cell carries an O(1) error; away from 0 the error is O(h^{2-alpha}).
    const double a = 0.5;
    auto tail_error = [&](int N) {
        const TimeGrid g(1.0, N);
        const auto d = caputo_derivative(a, sample(g, [&](double t) { return cplx(std::pow(t, a) + 2.0); }), 2.0);
        double m = 0.0;
        for (int k = N / 2; k <= N; ++k) m = std::max(m, std::abs(d[static_cast<std::size_t>(k)] - std::tgamma(a + 1.0)));
        return m;
    };
    const double e1 = tail_error(512), e2 = tail_error(1024);
    CHECK(e2 <= 2e-5);
    CHECK(std::abs(std::log2(e1 / e2) - (2.0 - a)) <= 0.2);
}

TEST_CASE("caputo_derivative of the relaxation mode tends to -i lambda u") {
    const double a = 0.5, lam = 2.0;
    std::vector<double> res;
    for (int N : {256, 512, 1024}) {
        const TimeGrid g(1.0, N);
        const auto u = sample(g, [&](double t) { return mlf::ml_eval({a, 1.0}, cplx(0.0, -lam * std::pow(t, a))).value; });
        Trajectory r = caputo_derivative(a, u, 1.0);
        r += cplx(0.0, lam) * u;
        res.push_back(lp_norm(2.0, r));
    }
    // Measured order 0.51: the t^alpha layer at t = 0 limits the L1 scheme in L^2.
    CHECK(res[1] < res[0]);
    CHECK(res[2] < res[1]);
    CHECK(std::log2(res[1] / res[2]) >= 0.45);
}

TEST_CASE("inverse_rl examples") {
    const double a = 0.5;
    const TimeGrid g(1.0, 256);
    const auto w = inverse_rl(a, sample(g, [&](double t) { return cplx(std::pow(t, a) / std::tgamma(a + 1.0)); }));
    for (std::size_t k = 1; k < w.size(); ++k) CHECK(std::abs(w[k] - 1.0) <= 1e-12);
}

TEST_CASE("inverse_rl and rl_integral are exact inverses") {
    for (double a : {0.2, 0.5, 0.8}) {
        const TimeGrid g(1.5, 300);
        const Trajectory w = smooth_zero_start(g, 7);
        const double scale = lp_norm(infinity, w);
        CAPTURE(a);
        CHECK(max_abs_diff(inverse_rl(a, rl_integral(a, w), StartClosure::zero), w) <= 1e-10 * scale);
    }
}

TEST_CASE("inverse_rl with the linear start closure inverts affine data exactly") {
    const TimeGrid g(1.0, 100);
    const auto w = sample(g, [](double t) { return cplx(1.0 + 2.0 * t, -t); });
    CHECK(max_abs_diff(inverse_rl(0.6, rl_integral(0.6, w)), w) <= 1e-12);
}

TEST_CASE("inverse_rl of the relaxation increment") {
    // v = E(-i t^a) - 1 has J^{-a} v = -i E(-i t^a); error on [T/2, T] is O(h^2).
    const double a = 0.6;
    auto tail_error = [&](int N) {
        const TimeGrid g(1.0, N);
        const auto e = sample(g, [&](double t) { return mlf::ml_eval({a, 1.0}, cplx(0.0, -std::pow(t, a))).value; });
        Trajectory v = e;
        for (cplx& c : v.values()) c -= 1.0;
        const auto w = inverse_rl(a, v);
        double m = 0.0;
        for (int k = N / 2; k <= N; ++k) {
            const auto i = static_cast<std::size_t>(k);
            m = std::max(m, std::abs(w[i] + cplx(0.0, 1.0) * e[i]));
        }
        return m;
    };
    const double e1 = tail_error(512), e2 = tail_error(1024);
    CHECK(e2 <= 1e-6);
    CHECK(std::log2(e1 / e2) >= 2.0 - a);
}

TEST_CASE("lp_norm examples") {
    CHECK(lp_norm(2.0, sample(TimeGrid(4.0, 16), [](double) { return cplx(1.0); })) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lp_norm(infinity, sample(TimeGrid(3.0, 16), [](double t) { return cplx(t); })) == 3.0);
    const double s = lp_norm(2.0, sample(TimeGrid(1.0, 1024), [](double t) { return cplx(std::sin(std::numbers::pi * t)); }));
    CHECK(std::abs(s - std::sqrt(0.5)) <= 1e-6);
}

TEST_CASE("weak_lp_quasinorm examples") {
    const TimeGrid g(2.0, 40);
    CHECK(weak_lp_quasinorm(3.0, sample(g, [](double) { return cplx(0.0, 2.0); })) ==
          doctest::Approx(2.0 * std::cbrt(2.0)).epsilon(1e-12));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 20; ++trial) {
        Trajectory v(TimeGrid(1.0, 200));
        for (cplx& c : v.values()) c = cplx(n(rng), n(rng));
        for (double p : {1.0, 2.0, 4.0}) CHECK(weak_lp_quasinorm(p, v) <= lp_norm(p, v) * 1.05 + 1e-12);
    }
}

TEST_CASE("weak norm of t^{-alpha} at p = 1/alpha is refinement-stable") {
    const double a = 0.4;
    auto q = [&](int N) {
        const TimeGrid g(1.0, N);
        return weak_lp_quasinorm(1.0 / a, sample(g, [&](double t) { return cplx(std::pow(std::max(t, g.step()), -a)); }));
    };
    const double q1 = q(512), q2 = q(1024);
    CHECK(std::abs(q2 - q1) / q1 < 1e-2);
}

TEST_CASE("waps_norm examples") {
    const double a = 0.5;
    const TimeGrid g(1.0, 512);
    CHECK(std::abs(waps_norm(a, 2.0, sample(g, [&](double t) { return cplx(std::pow(t, a) / std::tgamma(a + 1.0)); })) - 1.0) <=
          1e-3);
    CHECK(waps_norm(a, 2.0, Trajectory(g)) == 0.0);
    const auto s = sample(g, [](double t) { return cplx(std::sin(t)); });
    CHECK(std::abs(waps_norm(0.4, 3.0, rl_integral(0.4, s)) - lp_norm(3.0, s)) <= 1e-8);
}

TEST_CASE("power_kernel_selfconv examples") {
    CHECK(power_kernel_selfconv(0.35, 1, 2.5) == doctest::Approx(std::pow(2.5, -0.65)).epsilon(1e-14));
    CHECK(power_kernel_selfconv(0.5, 2, 1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK_THROWS_AS(power_kernel_selfconv(0.9, 200, 1.0), DomainError);
}

TEST_CASE("power_kernel_selfconv matches the discrete 4-fold convolution at t = 2") {
    const double a = 0.3, T = 2.0;
    const int N = 4096, n = 4;
    const auto m = oracle::discrete_power_kernel_selfconv(a, n, T, N);
    const double h = T / N;
    // Cell mass of the closed form over the last cell.
    const double mass = power_kernel_selfconv(a, n, 1.0) / (n * a) * (std::pow(T, n * a) - std::pow(T - h, n * a));
    CHECK(std::abs(m.back() / mass - 1.0) <= 2e-2);
}

TEST_CASE("semigroup J^a J^b = J^{a+b}") {
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{0.5, 0.5}, std::pair{0.2, 0.7}}) {
        auto error = [&](int N) {
            const Trajectory v = smooth_zero_start(TimeGrid(1.0, N), 11);
            return max_abs_diff(rl_integral(a, rl_integral(b, v)), rl_integral(a + b, v)) / lp_norm(infinity, v);
        };
        const double e1 = error(512), e2 = error(1024);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(e2 <= 1e-5);
        CHECK(std::log2(e1 / e2) >= std::min(2.0 - a, 2.0 - b));
    }
}

TEST_CASE("rl_integral preserves nonnegativity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Trajectory v(TimeGrid(1.0, 200));
    for (cplx& c : v.values()) c = u(rng);
    for (double a : {0.1, 0.5, 0.9}) {
        const auto w = rl_integral(a, v);
        for (std::size_t k = 0; k < w.size(); ++k) CHECK(w[k].real() >= 0.0);
    }
}

TEST_CASE("operators are complex-linear") {
    const TimeGrid g(1.0, 128);
    const Trajectory v = smooth_zero_start(g, 1), w = smooth_zero_start(g, 2);
    const cplx c(0.3, -1.7);
    const Trajectory comb = v + c * w;
    const double s = lp_norm(infinity, comb) + lp_norm(infinity, v) + lp_norm(infinity, w);
    CHECK(max_abs_diff(rl_integral(0.4, comb), rl_integral(0.4, v) + c * rl_integral(0.4, w)) <= 1e-13 * s);
    CHECK(max_abs_diff(inverse_rl(0.4, comb), inverse_rl(0.4, v) + c * inverse_rl(0.4, w)) <= 1e-10 * s);
    CHECK(max_abs_diff(caputo_derivative(0.4, comb, 0.0), caputo_derivative(0.4, v, 0.0) + c * caputo_derivative(0.4, w, 0.0)) <=
          1e-10 * s);
}

TEST_CASE("lp_norm is monotone under magnitude domination") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Trajectory v(TimeGrid(1.0, 100)), w(TimeGrid(1.0, 100));
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = std::polar(u(rng), 6.0 * u(rng));
        w[k] = std::polar(std::abs(v[k]) + u(rng), 6.0 * u(rng));
    }
    for (double p : {1.0, 2.0, 3.5, infinity}) CHECK(lp_norm(p, v) <= lp_norm(p, w));
}

TEST_CASE("argument validation") {
    const TimeGrid g(1.0, 8);
    CHECK_THROWS_AS(rl_integral(0.0, Trajectory(g)), DomainError);
    CHECK_THROWS_AS(rl_integral(1.2, Trajectory(g)), DomainError);
    CHECK_THROWS_AS(caputo_derivative(1.0, Trajectory(g), 0.0), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, 8), DomainError);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), DomainError);
}

}  // TEST_SUITE
