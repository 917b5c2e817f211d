#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracsch/error.hpp"
#include "fracsch/mlf.hpp"

using namespace fracsch;
using namespace fracsch::mlf;

namespace {

// Oracle values (60-digit series / Hankel contour), cross-checked with mpmath.
const cplx kE05_05_m2i(-0.11586285058437612, -0.036631277777468357);
const cplx kE05_05_m40i(-0.00017647479360777444, 2.230235773443766e-46);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("mlf") {

TEST_CASE("gamma_real values and poles") {
    CHECK(gamma_real(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel(gamma_real(0.5), std::sqrt(std::numbers::pi)) <= 1e-13);
    CHECK(rel(gamma_real(5.0), 24.0) <= 1e-13);
    CHECK(rel(gamma_real(-0.5), -2.0 * std::sqrt(std::numbers::pi)) <= 1e-13);
    CHECK(rel(gamma_real(170.5), std::tgamma(170.5)) <= 1e-13);
    CHECK(rel(gamma_real(-169.5), std::tgamma(-169.5)) <= 1e-12);
    CHECK_THROWS_AS(gamma_real(0.0), PoleError);
    CHECK_THROWS_AS(gamma_real(-3.0), PoleError);
    CHECK(rgamma(-2.0) == 0.0);
}

TEST_CASE("gamma_real relative accuracy against lgamma-based reference") {
    double worst = 0.0;
    for (double x = -30.25; x < 30.0; x += 0.5) worst = std::max(worst, rel(gamma_real(x), std::tgamma(x)));
    CHECK(worst <= 1e-13);
}

TEST_CASE("ml_series examples") {
    CHECK(ml_series({0.7, 1.0}, 0.0).value == cplx(1.0, 0.0));
    const cplx e = ml_series({1.0, 1.0}, cplx(0.0, 1.0)).value;
    CHECK(std::abs(e - cplx(0.5403023058681398, 0.8414709848078965)) <= 1e-15);
    CHECK(std::abs(ml_series({0.5, 0.5}, cplx(0.0, -2.0)).value - kE05_05_m2i) <= 1e-15);
}

TEST_CASE("ml_series error estimate bounds the actual error") {
    const auto v = ml_series({0.5, 0.5}, cplx(0.0, -2.0), 1e-6);
    CHECK(v.method == MLMethod::series);
    CHECK(std::abs(v.value - kE05_05_m2i) <= v.err_estimate + 1e-16);
}

TEST_CASE("ml_series refuses arguments beyond the multiprecision limit") {
    CHECK_THROWS_AS(ml_series({0.5, 1.0}, cplx(0.0, -50.0)), ConvergenceError);
    CHECK_THROWS_AS(ml_series({0.5, 1.0}, 0.0, 0.0), DomainError);
}

TEST_CASE("ml_asymptotic examples") {
    const auto zero = ml_asymptotic({0.6, 0.6}, cplx(0.0, -30.0), 1);
    // Only the exponentially small contribution inside |arg z| < alpha pi remains.
    CHECK(std::abs(zero.value) <= 1e-100);
    // Six terms leave 3e-5 at |z| = sqrt(20); optimal truncation reaches 3e-10.
    const cplx z(0.0, -std::sqrt(20.0));
    CHECK(std::abs(ml_asymptotic_optimal({0.5, 0.5}, z).value - ml_series({0.5, 0.5}, z).value) <= 1e-8);
    CHECK_THROWS_AS(ml_asymptotic({0.5, 1.0}, cplx(40.0, 0.0)), SectorError);
}

TEST_CASE("ml_eval leading behaviour along the negative imaginary ray") {
    // E_{1/2,1}(z) ~ -1/(Gamma(1/2) z); the ratio approaches 1 like 1/z^2.
    auto ratio = [](double t) {
        const cplx z(0.0, -t);
        return std::abs(ml_eval({0.5, 1.0}, z).value * (-std::sqrt(std::numbers::pi) * z));
    };
    const double r50 = ratio(50.0), r100 = ratio(100.0), r200 = ratio(200.0);
    CHECK(std::abs(r100 - 1.0) < std::abs(r50 - 1.0));
    CHECK(std::abs(r200 - 1.0) < std::abs(r100 - 1.0));
    CHECK(std::abs((4.0 * r200 - r100) / 3.0 - 1.0) <= 1e-8);
}

TEST_CASE("ml_eval examples") {
    CHECK(ml_eval({0.6, 1.0}, 0.0).value == cplx(1.0, 0.0));
    const cplx e = ml_eval({1.0, 1.0}, cplx(0.0, -5.0)).value;
    CHECK(std::abs(std::abs(e) - 1.0) <= 1e-15);
    CHECK(std::abs(e - std::exp(cplx(0.0, -5.0))) <= 1e-14);
    CHECK(std::abs(ml_eval({0.5, 0.5}, cplx(0.0, -40.0)).value - kE05_05_m40i) <= 1e-9);
}

TEST_CASE("ml_eval uses the asymptotic path far out on the ray") {
    const auto v = ml_eval({0.5, 1.0}, cplx(0.0, -1e6));
    CHECK(v.method != MLMethod::series);
    CHECK(std::abs(v.value * cplx(0.0, -1e6) * std::sqrt(std::numbers::pi) + 1.0) <= 1e-9);
}

TEST_CASE("classical limit equals exp") {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j < 32; ++j) {
            const cplx z = std::polar(double(i), 2.0 * std::numbers::pi * j / 32.0);
            worst = std::max(worst, std::abs(ml_eval({1.0, 1.0}, z).value - std::exp(z)) / std::abs(std::exp(z)));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("recurrence E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)") {
    for (double a : {0.3, 0.5, 0.7, 0.9})
        for (double b : {1.0, a, a + 1.0})
            for (double t : {0.1, 1.0, 5.0, 30.0, 200.0}) {
                const cplx z(0.0, -t);
                const cplx lhs = ml_eval({a, b}, z).value;
                const cplx rhs = z * ml_eval({a, a + b}, z).value + rgamma(b);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(t);
                CHECK(std::abs(lhs - rhs) <= 1e-9);
            }
}

TEST_CASE("series and asymptotic agree in the overlap annulus") {
    for (double a : {0.3, 0.5, 0.7, 0.9})
        for (double b : {1.0, a, a + 1.0}) {
            const double R = crossover_radius({a, b});
            for (double s : {1.0, 1.5, 2.0}) {
                const cplx z(0.0, -R * s);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(std::abs(ml_series({a, b}, z).value - ml_asymptotic_optimal({a, b}, z).value) <= 1e-7);
            }
        }
}

TEST_CASE("ml_bound_constant") {
    CHECK(ml_bound_constant({1.0, 1.0}, 100.0) == doctest::Approx(101.0).epsilon(1e-12));
    const double c1 = ml_bound_constant({0.5, 0.5}, 1e4);
    const double c2 = ml_bound_constant({0.5, 0.5}, 2e4);
    CHECK(std::isfinite(c1));
    CHECK(std::abs(c2 - c1) / c1 < 1e-2);
    CHECK(std::isfinite(ml_bound_constant({0.5, 1.0}, 1e4)));
    CHECK_THROWS_AS(ml_bound_constant({0.5, 1.0}, 0.0), DomainError);
}

TEST_CASE("boundedness on the imaginary ray") {
    for (double a : {0.3, 0.5, 0.8}) {
        const double c3 = ml_bound_constant({a, 1.0}, 1e3);
        const double c6 = ml_bound_constant({a, 1.0}, 1e6);
        CAPTURE(a);
        CHECK((c6 - c3) / c3 < 1e-2);
    }
}

TEST_CASE("ml_series converges up to the series radius for large beta") {
    // Needed coefficients there fall below the double range.
    for (double a : {0.7, 0.9, 0.95}) {
        for (double b : {a + 2.0, 3.0}) {
            const MLParams p{a, b};
            const double rs = series_radius(p);
            for (double th : {-0.5, 0.0, 1.0}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(th);
                const cplx z = std::polar(0.999 * rs, th * std::numbers::pi);
                MLValue v;
                REQUIRE_NOTHROW(v = ml_series(p, z));
                const cplx rec = z * ml_series({a, a + b}, z).value + rgamma(b);
                CHECK(std::abs(v.value - rec) <= 1e-9 * std::max(1.0, std::abs(v.value)));
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ml_eval({0.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(ml_eval({0.5, INFINITY}, 1.0), DomainError);
}

}  // TEST_SUITE
