#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fracsch/collocation.hpp"
#include "fracsch/ensemble.hpp"
#include "fracsch/error.hpp"
#include "fracsch/fracalc.hpp"
#include "fracsch/spectral.hpp"

using namespace fracsch;
using namespace fracsch::spectral;

namespace {

SpectralVector random_coeffs(std::size_t M, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    SpectralVector x(M);
    for (cplx& c : x.coeffs) c = cplx(n(rng), n(rng));
    return x;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("DiagonalOperator invariants") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(4);
    CHECK(A.size() == 4);
    CHECK(A.eigenvalue(2) == doctest::Approx(9.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(DiagonalOperator({}), DomainError);
    CHECK_THROWS_AS(DiagonalOperator({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(DiagonalOperator({2.0, 1.0}), DomainError);
    CHECK_NOTHROW(DiagonalOperator({1.0, 1.0, 3.0}));
}

TEST_CASE("apply_A examples") {
    const DiagonalOperator A({2.0, 5.0, 7.0});
    const auto y = apply_A(A, SpectralVector::basis(3, 0));
    CHECK(y[0] == cplx(-2.0));
    CHECK(y[1] == cplx(0.0));
    const SpectralVector x = random_coeffs(3, 1);
    double inner = 0.0;
    const auto ax = apply_A(A, x);
    for (std::size_t n = 0; n < 3; ++n) inner += (std::conj(x[n]) * ax[n]).real();
    CHECK(inner < 0.0);
    const auto aax = apply_A(A, ax);
    for (std::size_t n = 0; n < 3; ++n) CHECK(std::abs(aax[n] - A.eigenvalue(int(n)) * A.eigenvalue(int(n)) * x[n]) <= 1e-13);
    CHECK_THROWS_AS(apply_A(A, SpectralVector(2)), ShapeError);
}

TEST_CASE("resolvent examples") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(8);
    const SpectralVector x = random_coeffs(8, 2);
    const auto r0 = resolvent(A, 0.0, x);
    for (std::size_t n = 0; n < 8; ++n) CHECK(std::abs(r0[n] - x[n] / A.eigenvalue(int(n))) <= 1e-15);
    CHECK(h_norm(r0) <= h_norm(x) / A.eigenvalue(0));
    const auto half = resolvent(DiagonalOperator({1.0}), 1.0, SpectralVector::basis(1, 0));
    CHECK(half[0] == cplx(0.5));
    CHECK_THROWS_AS(resolvent(A, cplx(-A.eigenvalue(3), 0.0), x), SpectrumError);
}

TEST_CASE("resolvent sector bound") {
    // min_n |z + lambda_n| >= |z| sin(pi/4) when |arg z| <= 3 pi / 4.
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(32);
    double sup = 0.0;
    for (int i = -40; i <= 40; ++i)
        for (int j = -6; j <= 6; ++j) {
            const cplx z = std::polar(std::pow(10.0, i / 8.0), 0.75 * std::numbers::pi * j / 6.0);
            for (std::uint64_t s = 0; s < 3; ++s) {
                const SpectralVector x = random_coeffs(32, s);
                sup = std::max(sup, std::abs(z) * h_norm(resolvent(A, z, x)) / h_norm(x));
            }
        }
    CHECK(std::isfinite(sup));
    CHECK(sup <= std::sqrt(2.0) * (1.0 + 1e-12));
}

TEST_CASE("h_norm and da_norm") {
    const DiagonalOperator A({3.0, 4.0});
    const auto e = SpectralVector::basis(2, 0);
    CHECK(h_norm(e) == 1.0);
    CHECK(da_norm(A, e) == 3.0);
    const SpectralVector x = random_coeffs(2, 3);
    CHECK(da_norm(A, x) >= A.eigenvalue(0) * h_norm(x));
    CHECK(h_norm(x) * h_norm(x) == doctest::Approx(std::norm(x[0]) + std::norm(x[1])).epsilon(1e-15));
}

TEST_CASE("k_functional limits") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(16);
    const SpectralVector x = random_coeffs(16, 4);
    CHECK(k_functional(A, x, 1e12) == doctest::Approx(h_norm(x)).epsilon(1e-12));
    CHECK(k_functional(A, x, 1e-12) / 1e-12 == doctest::Approx(da_norm(A, x)).epsilon(1e-12));
    const DiagonalOperator one({5.0});
    for (double t : {1e-3, 0.1, 1.0, 30.0})
        CHECK(k_functional(one, SpectralVector::basis(1, 0), t) == doctest::Approx(5.0 * t / std::sqrt(1.0 + 25.0 * t * t)));
    CHECK_THROWS_AS(k_functional(A, x, 0.0), DomainError);
}

TEST_CASE("k_functional is nondecreasing and concave in t") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(16);
    const SpectralVector x = random_coeffs(16, 5);
    std::vector<double> k;
    const double dt = 1e-3;
    for (int i = 1; i <= 400; ++i) k.push_back(k_functional(A, x, i * dt));
    for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i] >= k[i - 1]);
    for (std::size_t i = 1; i + 1 < k.size(); ++i) CHECK(k[i + 1] - 2.0 * k[i] + k[i - 1] <= 1e-12 * k[i]);
}

TEST_CASE("interp_norm scales like lambda^theta on a single mode") {
    for (auto [a, p] : {std::pair{0.5, 4.0}, std::pair{0.6, 2.0}, std::pair{0.9, 3.0}}) {
        std::vector<double> xs, ys;
        for (double lam : {1.0, 4.0, 16.0, 64.0}) {
            xs.push_back(std::log(lam));
            ys.push_back(std::log(interp_norm(DiagonalOperator({lam}), SpectralVector::basis(1, 0), a, p)));
        }
        CAPTURE(a);
        CAPTURE(p);
        CHECK(std::abs(slope(xs, ys) - interp_theta(a, p)) <= 1e-6);
    }
}

TEST_CASE("interp_norm at p = 2 matches the diagonal closed form up to one constant") {
    const double a = 0.75, p = 2.0;
    const double theta = interp_theta(a, p);
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(32);
    std::vector<double> ratios;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const SpectralVector x = random_coeffs(32, 100 + s);
        double closed = 0.0;
        for (std::size_t n = 0; n < 32; ++n) closed += std::pow(A.eigenvalue(int(n)), 2.0 * theta) * std::norm(x[n]);
        ratios.push_back(std::pow(interp_norm(A, x, a, p), 2.0) / closed);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK((*hi - *lo) / *lo <= 1e-3);
}

TEST_CASE("interp_norm is a norm") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(16);
    CHECK(interp_norm(A, SpectralVector(16), 0.5, 4.0) == 0.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const SpectralVector x = random_coeffs(16, 2 * s), y = random_coeffs(16, 2 * s + 1);
        SpectralVector sum(16), scaled(16);
        const cplx c(-2.5, 0.7);
        for (std::size_t n = 0; n < 16; ++n) {
            sum[n] = x[n] + y[n];
            scaled[n] = c * x[n];
        }
        const double nx = interp_norm(A, x, 0.5, 4.0);
        CHECK(interp_norm(A, scaled, 0.5, 4.0) == doctest::Approx(std::abs(c) * nx).epsilon(1e-12));
        CHECK(interp_norm(A, sum, 0.5, 4.0) <= nx + interp_norm(A, y, 0.5, 4.0) + 1e-12);
    }
}

TEST_CASE("interp_norm sits between the H and D(A) norms") {
    // 0 < theta < 1, so the lambda-scaling exponent is strictly between those of h_norm and da_norm.
    for (auto [a, p] : {std::pair{0.3, 4.0}, std::pair{0.5, 2.5}, std::pair{0.95, 8.0}}) {
        const double theta = interp_theta(a, p);
        CHECK(theta > 0.0);
        CHECK(theta < 1.0);
    }
    CHECK_THROWS_AS(interp_theta(0.5, 2.0), DomainError);
    CHECK_THROWS_AS(interp_norm(DiagonalOperator({1.0}), SpectralVector::basis(1, 0), 0.4, 2.0), DomainError);
}

TEST_CASE("interp_norm warns when the window is too narrow for the tail models") {
    std::vector<std::string> seen;
    auto previous = set_warning_handler([&](const std::string& where, const std::string&) { seen.push_back(where); });
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(8);
    const SpectralVector x = random_coeffs(8, 6);
    interp_norm(A, x, 0.6, 2.0);
    const auto quiet = seen.size();
    interp_norm(A, x, 0.6, 2.0, {1.0, 1.0, 50});
    set_warning_handler(previous);
    CHECK(quiet == 0);
    CHECK(seen.size() == 1);
}

TEST_CASE("sine collocation round trip") {
    const SineCollocation col(12);
    const SpectralVector c = random_coeffs(12, 7);
    const auto back = col.to_spectral(col.to_physical(c));
    for (std::size_t n = 0; n < 12; ++n) CHECK(std::abs(back[n] - c[n]) <= 1e-13);
    const auto phys = col.to_physical(SpectralVector::basis(12, 2));
    for (int j = 0; j < col.points(); ++j)
        CHECK(std::abs(phys[std::size_t(j)] - std::sqrt(2.0) * std::sin(3.0 * std::numbers::pi * col.x(j))) <= 1e-14);
}

TEST_CASE("field norms") {
    const auto A = DiagonalOperator::dirichlet_laplacian_1d(4);
    const TimeGrid g(2.0, 16);
    SpectralField u(g, 4);
    for (std::size_t k = 0; k < u.nodes(); ++k) u(1, k) = cplx(0.0, 3.0);
    CHECK(lp_h_norm(2.0, u) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(lp_da_norm(fracalc::infinity, A, u) == doctest::Approx(3.0 * A.eigenvalue(1)).epsilon(1e-14));
    const auto au = apply_A(A, u);
    CHECK(au(1, 3) == cplx(0.0, -3.0 * A.eigenvalue(1)));
}

}  // TEST_SUITE
