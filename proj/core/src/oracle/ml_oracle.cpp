#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracsch/error.hpp"
#include "fracsch/oracle.hpp"

namespace fracsch::oracle {

namespace {

/// Exact ratio p/q with q <= 1000 when v is such a decimal-sized rational.
bool rationalize(double v, long& p, long& q) {
    for (long d = 1; d <= 1000; ++d) {
        const double n = std::round(v * d);
        if (std::fabs(v * d - n) <= 1e-12 * d) {
            p = static_cast<long>(n);
            q = d;
            return true;
        }
    }
    return false;
}

BigFloat exact_parameter(double v) {
    long p = 0, q = 1;
    if (rationalize(v, p, q)) return BigFloat::ratio(p, q);
    return BigFloat(v);
}

bool is_pole(double y) { return y <= 0.0 && y == std::floor(y); }

/// log10 of sum_n |z|^n / |Gamma(alpha n + beta)| for choosing the working precision.
double log10_series_mass(double alpha, double beta, double r) {
    if (r == 0.0) return 0.0;
    const double logr = std::log(r);
    double lse = -std::numeric_limits<double>::infinity();
    double prev = lse;
    for (int n = 0; n < 1000000; ++n) {
        const double y = alpha * n + beta;
        if (is_pole(y)) continue;
        int s = 0;
        const double L = n * logr - lgamma_r(y, &s);
        lse = L > lse ? L + std::log1p(std::exp(lse - L)) : lse + std::log1p(std::exp(L - lse));
        if (y > 2.0 && L < prev && L < lse - 60.0) break;
        prev = L;
    }
    return lse / std::log(10.0);
}

}  // namespace

BigComplex highprec_ml_big(double alpha, double beta, cplx z, int digits) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("highprec_ml: alpha must lie in (0,1]");
    if (digits < 10) throw DomainError("highprec_ml: digits must be at least 10");
    const double r = std::abs(z);
    const double x = std::pow(r, 1.0 / alpha);
    if (!(x <= 2000.0))
        throw ConvergenceError("highprec_ml: |z|^(1/alpha) = " + std::to_string(x) + " exceeds the series limit 2000");
    const int cancel = static_cast<int>(std::ceil(std::max(0.0, log10_series_mass(alpha, beta, r))));
    const int work = digits + cancel + 15;
    PrecisionGuard guard(work);

    const BigFloat a = exact_parameter(alpha);
    const BigFloat b = exact_parameter(beta);
    long ap = 0, aq = 1;
    const bool use_recurrence = beta > 0.0 && rationalize(alpha, ap, aq) && ap <= 64;

    const BigComplex zb(z);
    BigComplex power(BigFloat(1.0), BigFloat(0.0));
    BigComplex sum;
    std::vector<BigFloat> coef;
    const BigFloat threshold = pow(BigFloat(10.0), BigFloat(-(digits + 5)));
    int below = 0;
    for (long n = 0;; ++n) {
        BigFloat c;
        const double y = alpha * double(n) + beta;
        if (use_recurrence && n >= aq) {
            // Gamma(y + p) = Gamma(y) * y (y+1) ... (y+p-1) with y = alpha (n - q) + beta.
            BigFloat prod(1.0);
            const BigFloat yb = a * BigFloat(n - aq) + b;
            for (long j = 0; j < ap; ++j) prod *= yb + BigFloat(j);
            c = coef[static_cast<std::size_t>(n - aq)] / prod;
        } else if (!is_pole(y)) {
            c = BigFloat(1.0) / gamma(a * BigFloat(n) + b);
        }
        if (use_recurrence) coef.push_back(c);
        const BigComplex term = c * power;
        sum += term;
        if (abs(term) < threshold) {
            if (++below >= 10 && y > 2.0) break;
        } else {
            below = 0;
        }
        power = power * zb;
        if (n > 5000000) throw ConvergenceError("highprec_ml: series did not terminate");
    }
    return sum;
}

cplx highprec_ml(double alpha, double beta, cplx z, int digits) {
    return highprec_ml_big(alpha, beta, z, digits).to_cplx();
}

namespace {

using CFun = std::function<BigComplex(const BigFloat&)>;

BigFloat ten_pow(int e) { return pow(BigFloat(10.0), BigFloat(e)); }

/// Double-exponential (tanh-sinh) quadrature on [a, b].
BigComplex tanh_sinh(const CFun& f, const BigFloat& a, const BigFloat& b, int digits) {
    const BigFloat c = (a + b) / BigFloat(2.0);
    const BigFloat d = (b - a) / BigFloat(2.0);
    const BigFloat half_pi = BigFloat::pi() / BigFloat(2.0);
    const double t_max = std::asinh((digits + 10) * std::log(10.0) / std::numbers::pi) + 0.5;
    auto node = [&](double t) {
        const BigFloat tb(t);
        const BigFloat u = half_pi * sinh(tb);
        const BigFloat cu = cosh(u);
        const BigFloat w = d * half_pi * cosh(tb) / (cu * cu);
        const BigFloat x = c + d * (sinh(u) / cu);
        return w * f(x);
    };
    double h = 0.5;
    BigComplex sum = node(0.0);
    for (int k = 1; k * h <= t_max; ++k) {
        sum += node(k * h);
        sum += node(-k * h);
    }
    BigComplex prev = BigFloat(h) * sum;
    const BigFloat tol = ten_pow(-digits);
    for (int level = 1; level <= 14; ++level) {
        h *= 0.5;
        for (int k = 1; k * h <= t_max; k += 2) {
            sum += node(k * h);
            sum += node(-k * h);
        }
        BigComplex cur = BigFloat(h) * sum;
        const BigFloat diff = abs(cur - prev);
        const BigFloat scale = abs(cur) + tol;
        prev = std::move(cur);
        if (level >= 3 && diff < tol * scale) break;
    }
    return prev;
}

/// Double-exponential (exp-sinh) quadrature on [a, infinity) for rapidly decaying f.
BigComplex exp_sinh(const CFun& f, const BigFloat& a, int digits) {
    const BigFloat half_pi = BigFloat::pi() / BigFloat(2.0);
    const double t_lo = -std::asinh((digits + 10) * std::log(10.0) * 2.0 / std::numbers::pi) - 0.5;
    auto node = [&](double t) {
        const BigFloat tb(t);
        const BigFloat e = exp(half_pi * sinh(tb));
        return (half_pi * cosh(tb) * e) * f(a + e);
    };
    const BigFloat negligible = ten_pow(-(digits + 12));
    double h = 0.5;
    BigComplex sum;
    double t_hi = t_lo;
    int small = 0;
    for (int k = 0;; ++k) {
        const double t = t_lo + k * h;
        const BigComplex v = node(t);
        sum += v;
        t_hi = t;
        if (t > 0.0 && abs(v) < negligible * (abs(sum) + negligible)) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
        if (t > 12.0) break;
    }
    BigComplex prev = BigFloat(h) * sum;
    const BigFloat tol = ten_pow(-digits);
    for (int level = 1; level <= 14; ++level) {
        h *= 0.5;
        for (int k = 1; t_lo + k * h <= t_hi; k += 2) sum += node(t_lo + k * h);
        BigComplex cur = BigFloat(h) * sum;
        const BigFloat diff = abs(cur - prev);
        const BigFloat scale = abs(cur) + tol;
        prev = std::move(cur);
        if (level >= 3 && diff < tol * scale) break;
    }
    return prev;
}

}  // namespace

BigComplex contour_ml_big(double alpha, double beta, cplx z, int digits) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("contour_ml: alpha must lie in (0,1]");
    const double r = std::abs(z);
    if (r == 0.0) throw DomainError("contour_ml: z = 0");
    const double theta = std::arg(z);
    const double abs_theta = std::fabs(theta);
    const double pi = std::numbers::pi;

    // Ray angle: pick the admissible candidate farthest from arg z.
    const double d_hi = std::min(pi, alpha * pi);
    const double d_lo = 0.6 * alpha * pi;
    const double delta = std::fabs(d_hi - abs_theta) >= std::fabs(d_lo - abs_theta) ? d_hi : d_lo;
    const double eps = std::min(1.0, 0.5 * r);

    PrecisionGuard guard(digits + 12);
    const BigFloat a = exact_parameter(alpha);
    const BigFloat b = exact_parameter(beta);
    const BigFloat inv_a = BigFloat(1.0) / a;
    const BigFloat expo = (BigFloat(1.0) - b) / a;
    const BigComplex zb(z);

    auto g = [&](const BigFloat& rho, const BigFloat& th) {
        const BigComplex zeta_pow = polar_pow(rho, th, inv_a);
        const BigComplex pref = polar_pow(rho, th, expo);
        const BigComplex zeta(rho * cos(th), rho * sin(th));
        return exp(zeta_pow) * pref / (zeta - zb);
    };

    const BigFloat dl(delta);
    const BigComplex e_plus(cos(dl), sin(dl));
    const BigComplex e_minus(cos(dl), -sin(dl));
    CFun rays = [&](const BigFloat& rho) {
        return g(rho, dl) * e_plus - g(rho, -dl) * e_minus;
    };
    const BigFloat eb(eps);
    CFun arc = [&](const BigFloat& phi) {
        const BigComplex dz(-eb * sin(phi), eb * cos(phi));
        return g(eb, phi) * dz;
    };

    // Beyond r_support the ray integrand is below 10^-(digits+20).
    const double decay = -std::cos(delta / alpha);
    const double r_support = std::pow((digits + 20) * std::log(10.0) / decay, alpha) + 1.0;
    BigComplex J = tanh_sinh(arc, -dl, dl, digits + 2);
    if (r > eps && r < 2.0 * r_support) {
        J += tanh_sinh(rays, eb, BigFloat(r), digits + 2);
        J += exp_sinh(rays, BigFloat(r), digits + 2);
    } else {
        J += exp_sinh(rays, eb, digits + 2);
    }
    // (1 / (2 alpha pi i)) J
    const BigFloat scale = BigFloat(1.0) / (BigFloat(2.0) * a * BigFloat::pi());
    BigComplex result(scale * J.im, -(scale * J.re));
    if (abs_theta < delta && r > eps) {
        const BigFloat rb = hypot(zb.re, zb.im);
        const BigFloat tb = atan2(zb.im, zb.re);
        result += inv_a * (exp(polar_pow(rb, tb, inv_a)) * polar_pow(rb, tb, expo));
    }
    return result;
}

cplx contour_ml(double alpha, double beta, cplx z, int digits) {
    return contour_ml_big(alpha, beta, z, digits).to_cplx();
}

cplx reference_ml(double alpha, double beta, cplx z) {
    const double x = std::pow(std::abs(z), 1.0 / alpha);
    if (x <= 200.0) return highprec_ml(alpha, beta, z, 40);
    return contour_ml(alpha, beta, z, 30);
}

double agreement_digits(const BigComplex& a, const BigComplex& b) {
    const BigFloat d = abs(a - b);
    if (d.is_zero()) return std::numeric_limits<double>::infinity();
    const BigFloat m = abs(a) > abs(b) ? abs(a) : abs(b);
    if (m.is_zero()) return -d.log10_abs();
    return m.log10_abs() - d.log10_abs();
}

}  // namespace fracsch::oracle
