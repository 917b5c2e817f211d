#include "fracsch/mlf.hpp"

#include <mpfr.h>
#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "fracsch/error.hpp"

namespace fracsch::mlf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEpsQuad = 1.93e-34;
constexpr double kEpsLong = 1.09e-19;
constexpr double kEpsDouble = 1.12e-16;
constexpr double kRoundingFloor = 1e-15;
constexpr double kSeriesRadiusBound = 1e-10;
constexpr double kMultiprecisionLimit = 2000.0;  // largest |z|^{1/alpha} summed in MPFR

void check_params(const MLParams& p, const char* where) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0))
        throw DomainError(std::string(where) + ": alpha must lie in (0,1]");
    if (!std::isfinite(p.beta)) throw DomainError(std::string(where) + ": beta must be finite");
}

bool is_pole(double y) { return y <= 0.0 && y == std::floor(y); }

double lgamma_pos(double y) {
    int sign = 0;
    return lgamma_r(y, &sign);
}

/// log|1/Gamma(y)| and its sign; sign 0 at poles.
double log_abs_rgamma(double y, int& sign) {
    if (is_pole(y)) {
        sign = 0;
        return -std::numeric_limits<double>::infinity();
    }
    if (y >= 0.5) {
        sign = 1;
        if (y < 170.0) return -std::log(std::tgamma(y));
        return -lgamma_pos(y);
    }
    const double s = sinpi(y);
    sign = s > 0 ? 1 : -1;
    const double g = 1.0 - y < 170.0 ? std::log(std::tgamma(1.0 - y)) : lgamma_pos(1.0 - y);
    return std::log(std::fabs(s)) + g - std::log(kPi);
}

/// Smooth upper envelope of log|1/Gamma(y)| (the sine factor dropped for y < 1).
double log_rgamma_envelope(double y) {
    if (y >= 1.0) return -lgamma_pos(y);
    return lgamma_pos(1.0 - y) - std::log(kPi);
}

/// log-sum of |z|^n / |Gamma(alpha n + beta)| and the number of terms the
/// series needs at radius r.
struct Profile {
    double log_sum;
    int terms;
};

Profile series_profile(double alpha, double beta, double r) {
    const double logr = std::log(r);
    double lse = -std::numeric_limits<double>::infinity();
    double prev = lse;
    int n = 0;
    for (; n < 200000; ++n) {
        int sign = 0;
        const double L = n * logr + log_abs_rgamma(alpha * n + beta, sign);
        if (sign != 0) {
            if (L > lse) {
                lse = L + std::log1p(std::exp(lse - L));
            } else {
                lse = lse + std::log1p(std::exp(L - lse));
            }
            if (alpha * n + beta >= 2.0 && L < prev && L < lse + std::log(1e-24) && L < std::log(1e-24))
                break;
            prev = L;
        }
    }
    return {lse, n + 1};
}

double quad_rounding_bound(double alpha, double beta, double r) {
    const Profile pr = series_profile(alpha, beta, r);
    return kEpsQuad * (pr.terms + 4) * std::exp(pr.log_sum);
}

/// Minimum over k of the asymptotic remainder envelope at radius r; 0 when
/// the algebraic expansion terminates (alpha = 1, integer beta).
struct Envelope {
    double value;
    int index;
};

bool terminating(const MLParams& p) { return p.alpha == 1.0 && p.beta == std::floor(p.beta); }

Envelope envelope_min(const MLParams& p, double r, double floor) {
    if (terminating(p)) return {0.0, 0};
    const double logr = std::log(r);
    const double x = std::pow(r, 1.0 / p.alpha);
    const double kopt = std::min(40000.0, x / p.alpha + 4.0);
    Envelope best{std::numeric_limits<double>::infinity(), 1};
    for (int k = 1; k < 40000; ++k) {
        const double e = std::exp(log_rgamma_envelope(p.beta - p.alpha * k) - k * logr);
        if (e < best.value) best = {e, k};
        if (e < floor) break;
        if (k > kopt) break;
    }
    return best;
}

struct Tables {
    std::vector<__float128> c_quad;
    std::vector<long double> c_long;
    std::vector<double> c_double;
    double r_series = 0.0;
    double r_cross = 0.0;
};

double find_series_radius(const MLParams& p) {
    double lo = std::log(1e-3), hi = std::log(1e5);
    if (quad_rounding_bound(p.alpha, p.beta, std::exp(hi)) <= kSeriesRadiusBound) return std::exp(hi);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (quad_rounding_bound(p.alpha, p.beta, std::exp(mid)) <= kSeriesRadiusBound)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(lo);
}

double series_error_model(const MLParams& p, double r) {
    return std::max(kRoundingFloor, quad_rounding_bound(p.alpha, p.beta, r));
}

double find_crossover(const MLParams& p, double r_series) {
    const double r_lo = 0.05;
    if (terminating(p)) return r_lo;
    auto asym_wins = [&](double r) {
        return envelope_min(p, r, 1e-30).value < series_error_model(p, r);
    };
    if (r_series <= r_lo) return r_series;
    const int grid = 200;
    const double a = std::log(r_lo), b = std::log(r_series);
    double prev = a;
    for (int i = 0; i <= grid; ++i) {
        const double lr = a + (b - a) * i / grid;
        if (asym_wins(std::exp(lr))) {
            if (i == 0) return r_lo;
            double lo = prev, hi = lr;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (asym_wins(std::exp(mid)))
                    hi = mid;
                else
                    lo = mid;
            }
            return std::exp(hi);
        }
        prev = lr;
    }
    return r_series;
}

std::unique_ptr<Tables> build_tables(const MLParams& p) {
    auto t = std::make_unique<Tables>();
    t->r_series = find_series_radius(p);
    const int n_max = series_profile(p.alpha, p.beta, t->r_series).terms + 64;
    t->c_quad.resize(static_cast<std::size_t>(n_max));
    t->c_long.resize(t->c_quad.size());
    t->c_double.resize(t->c_quad.size());
    for (int n = 0; n < n_max; ++n) {
        const double y = p.alpha * n + p.beta;
        __float128 c = 0;
        if (!is_pole(y)) {
            const __float128 yq = static_cast<__float128>(p.alpha) * n + static_cast<__float128>(p.beta);
            const __float128 g = tgammaq(yq);
            c = (isinfq(g) || isnanq(g)) ? 0 : 1 / g;
        }
        const auto i = static_cast<std::size_t>(n);
        t->c_quad[i] = c;
        t->c_long[i] = static_cast<long double>(c);
        t->c_double[i] = static_cast<double>(c);
    }
    t->r_cross = find_crossover(p, t->r_series);
    return t;
}

const Tables& tables(const MLParams& p) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, std::unique_ptr<Tables>> cache;
    const auto key = std::make_pair(p.alpha, p.beta);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto built = build_tables(p);
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(built));
    return *it->second;
}

struct SeriesOut {
    cplx value;
    double tail;
    double rounding;
    bool converged;
};

template <class R>
SeriesOut sum_series(const std::vector<R>& c, const MLParams& p, cplx z, double tol, double eps) {
    const R zr = static_cast<R>(z.real()), zi = static_cast<R>(z.imag());
    const double r = std::abs(z);
    R pr = 1, pi = 0;
    R sr = 0, si = 0, cr = 0, ci = 0;
    double sum_abs = 0.0;
    const std::size_t n_avail = c.size();
    for (std::size_t n = 0; n + 1 < n_avail; ++n) {
        const R tr = c[n] * pr, ti = c[n] * pi;
        {
            const R y = tr - cr, t = sr + y;
            cr = (t - sr) - y;
            sr = t;
        }
        {
            const R y = ti - ci, t = si + y;
            ci = (t - si) - y;
            si = t;
        }
        const double mag = std::hypot(static_cast<double>(tr), static_cast<double>(ti));
        sum_abs += mag;
        // Ratio in R: late coefficients underflow double.
        if (p.alpha * double(n) + p.beta >= 2.0 && c[n] != 0) {
            const double rho = r * std::fabs(static_cast<double>(c[n + 1] / c[n]));
            if (rho < 1.0) {
                const double tail = mag * rho / (1.0 - rho);
                if (mag + tail <= tol || (mag == 0.0 && r == 0.0)) {
                    return {cplx(static_cast<double>(sr), static_cast<double>(si)), tail,
                            eps * double(n + 4) * sum_abs, true};
                }
            }
        }
        const R nr = pr * zr - pi * zi;
        pi = pr * zi + pi * zr;
        pr = nr;
    }
    return {cplx(static_cast<double>(sr), static_cast<double>(si)), 0.0, 0.0, false};
}

/// mpfr_t owner with a fixed precision.
class Mp {
public:
    explicit Mp(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~Mp() { mpfr_clear(v_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

/// Series summed in MPFR with enough bits to absorb the cancellation exp(log_sum).
SeriesOut sum_series_mp(const MLParams& p, cplx z, double tol) {
    const double r = std::abs(z);
    const Profile pr = series_profile(p.alpha, p.beta, r);
    const double target = std::max(tol, 1e-300);
    const auto bits = static_cast<mpfr_prec_t>(
        std::ceil((pr.log_sum - std::log(target)) / std::numbers::ln2 + std::log2(pr.terms + 4.0)) + 64);
    Mp zr(bits), zi(bits), wr(bits), wi(bits), sr(bits), si(bits), y(bits), g(bits), tr(bits), ti(bits), tmp(bits);
    mpfr_set_d(zr.get(), z.real(), MPFR_RNDN);
    mpfr_set_d(zi.get(), z.imag(), MPFR_RNDN);
    mpfr_set_ui(wr.get(), 1, MPFR_RNDN);
    mpfr_set_ui(wi.get(), 0, MPFR_RNDN);
    mpfr_set_ui(sr.get(), 0, MPFR_RNDN);
    mpfr_set_ui(si.get(), 0, MPFR_RNDN);
    const int n_max = 4 * pr.terms + 64;
    for (int n = 0; n < n_max; ++n) {
        // y = alpha n + beta is exact at this precision.
        mpfr_set_d(y.get(), p.alpha, MPFR_RNDN);
        mpfr_mul_si(y.get(), y.get(), n, MPFR_RNDN);
        mpfr_add_d(y.get(), y.get(), p.beta, MPFR_RNDN);
        const bool pole = mpfr_sgn(y.get()) <= 0 && mpfr_integer_p(y.get());
        double mag = 0.0;
        if (!pole) {
            mpfr_gamma(g.get(), y.get(), MPFR_RNDN);
            mpfr_div(tr.get(), wr.get(), g.get(), MPFR_RNDN);
            mpfr_div(ti.get(), wi.get(), g.get(), MPFR_RNDN);
            mpfr_add(sr.get(), sr.get(), tr.get(), MPFR_RNDN);
            mpfr_add(si.get(), si.get(), ti.get(), MPFR_RNDN);
            mag = std::hypot(mpfr_get_d(tr.get(), MPFR_RNDN), mpfr_get_d(ti.get(), MPFR_RNDN));
        }
        const double yd = p.alpha * n + p.beta;
        if (yd >= 2.0) {
            const double rho = r * std::exp(lgamma_pos(yd) - lgamma_pos(yd + p.alpha));
            if (rho < 1.0) {
                const double tail = mag * rho / (1.0 - rho);
                if (mag + tail <= tol) {
                    const double rounding = std::ldexp(double(n + 4), -static_cast<int>(bits)) * std::exp(pr.log_sum);
                    return {cplx(mpfr_get_d(sr.get(), MPFR_RNDN), mpfr_get_d(si.get(), MPFR_RNDN)), tail, rounding, true};
                }
            }
        }
        mpfr_mul(tmp.get(), wr.get(), zr.get(), MPFR_RNDN);
        mpfr_mul(tr.get(), wi.get(), zi.get(), MPFR_RNDN);
        mpfr_sub(tmp.get(), tmp.get(), tr.get(), MPFR_RNDN);
        mpfr_mul(wi.get(), wi.get(), zr.get(), MPFR_RNDN);
        mpfr_mul(tr.get(), wr.get(), zi.get(), MPFR_RNDN);
        mpfr_add(wi.get(), wi.get(), tr.get(), MPFR_RNDN);
        mpfr_set(wr.get(), tmp.get(), MPFR_RNDN);
    }
    return {0.0, 0.0, 0.0, false};
}

double arg_principal(cplx z) {
    double th = std::arg(z);
    if (th == -kPi) th = kPi;
    return th;
}

/// Weight of the exponential contribution: 1 inside |arg z| < alpha pi, 1/2 on
/// the boundary line, 0 outside; always 1 when the algebraic part terminates.
double exponential_weight(const MLParams& p, double abs_arg) {
    if (terminating(p)) return 1.0;
    const double edge = p.alpha * kPi;
    if (std::fabs(abs_arg - edge) <= 4.0 * std::numeric_limits<double>::epsilon() * edge) return 0.5;
    return abs_arg < edge ? 1.0 : 0.0;
}

cplx exponential_term(const MLParams& p, cplx z, double th) {
    const double logr = std::log(std::abs(z));
    const cplx logz(logr, th);
    const cplx zeta = p.alpha == 1.0 ? z : std::exp(logz / p.alpha);
    return std::exp((1.0 - p.beta) / p.alpha * logz + zeta) / p.alpha;
}

cplx asymptotic_term(const MLParams& p, double logr, double th, int k) {
    int sign = 0;
    const double L = log_abs_rgamma(p.beta - p.alpha * k, sign);
    if (sign == 0) return 0.0;
    const double mag = std::exp(L - k * logr);
    return -double(sign) * mag * cplx(std::cos(k * th), -std::sin(k * th));
}

void check_sector(const MLParams& p, double th, const char* where) {
    const double mu = sector_mu(p.alpha);
    if (std::fabs(th) < mu)
        throw SectorError(std::string(where) + ": |arg z| = " + std::to_string(std::fabs(th)) +
                          " is below the sector opening " + std::to_string(mu));
}

}  // namespace

const char* to_string(MLMethod m) {
    switch (m) {
        case MLMethod::series: return "series";
        case MLMethod::asymptotic: return "asymptotic";
        case MLMethod::hybrid: return "hybrid";
    }
    return "unknown";
}

double sinpi(double x) {
    double r = x - 2.0 * std::round(0.5 * x);
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(kPi * r);
}

double gamma_real(double x) {
    if (std::isnan(x)) throw DomainError("gamma_real: NaN argument");
    if (is_pole(x)) throw PoleError("gamma_real: pole at " + std::to_string(x));
    if (x >= 0.5) return std::tgamma(x);
    return kPi / (sinpi(x) * std::tgamma(1.0 - x));
}

double rgamma(double x) {
    if (is_pole(x)) return 0.0;
    int sign = 0;
    if (x >= 0.5 && x < 170.0) return 1.0 / std::tgamma(x);
    if (x < 0.5 && 1.0 - x < 170.0) return sinpi(x) * std::tgamma(1.0 - x) / kPi;
    const double L = log_abs_rgamma(x, sign);
    return sign * std::exp(L);
}

double sector_mu(double alpha) { return kPi * (alpha + 1.0) / 4.0; }

double crossover_radius(const MLParams& p) {
    check_params(p, "crossover_radius");
    return tables(p).r_cross;
}

double series_radius(const MLParams& p) {
    check_params(p, "series_radius");
    return tables(p).r_series;
}

MLValue ml_series(const MLParams& p, cplx z, double tol) {
    check_params(p, "ml_series");
    if (!(tol > 0.0)) throw DomainError("ml_series: tol must be positive");
    const Tables& t = tables(p);
    const double r = std::abs(z);
    if (r == 0.0) return {cplx(t.c_double[0], 0.0), MLMethod::series, 0.0};
    const double target = std::max(tol, kRoundingFloor);
    const double x = std::pow(r, 1.0 / p.alpha);
    if (!(r <= t.r_series)) {
        if (!(x <= kMultiprecisionLimit))
            throw ConvergenceError("ml_series: |z|^(1/alpha) = " + std::to_string(x) + " exceeds " +
                                   std::to_string(kMultiprecisionLimit));
        const SeriesOut out = sum_series_mp(p, z, target);
        if (!out.converged) throw ConvergenceError("ml_series: multiprecision sum did not converge");
        return {out.value, MLMethod::series, out.tail + out.rounding};
    }
    int tier = x <= 1.0 ? 0 : (x <= 12.0 ? 1 : 2);
    for (;; ++tier) {
        SeriesOut out;
        if (tier == 0)
            out = sum_series(t.c_double, p, z, tol, kEpsDouble);
        else if (tier == 1)
            out = sum_series(t.c_long, p, z, tol, kEpsLong);
        else
            out = sum_series(t.c_quad, p, z, tol, kEpsQuad);
        if (!out.converged) throw ConvergenceError("ml_series: coefficient table exhausted");
        if (out.rounding <= target || tier == 2)
            return {out.value, MLMethod::series, out.tail + out.rounding};
    }
}

MLValue ml_asymptotic(const MLParams& p, cplx z, int terms) {
    check_params(p, "ml_asymptotic");
    if (terms < 1) throw DomainError("ml_asymptotic: terms must be positive");
    if (z == cplx(0.0, 0.0)) throw SectorError("ml_asymptotic: z = 0");
    const double th = arg_principal(z);
    check_sector(p, th, "ml_asymptotic");
    const double logr = std::log(std::abs(z));
    cplx sum = 0.0;
    double err = 0.0;
    if (terminating(p)) {
        for (int k = 1; k <= terms && p.beta - k >= 1.0; ++k) sum += asymptotic_term(p, logr, th, k);
        for (int k = terms + 1; p.beta - k >= 1.0; ++k) {
            err = std::abs(asymptotic_term(p, logr, th, k));
            break;
        }
    } else {
        for (int k = 1; k <= terms; ++k) sum += asymptotic_term(p, logr, th, k);
        for (int k = terms + 1; k < terms + 100000; ++k) {
            if (is_pole(p.beta - p.alpha * k)) continue;
            err = std::abs(asymptotic_term(p, logr, th, k));
            break;
        }
    }
    const double w = exponential_weight(p, std::fabs(th));
    if (w > 0.0) sum += w * exponential_term(p, z, th);
    return {sum, MLMethod::asymptotic, err};
}

MLValue ml_asymptotic_optimal(const MLParams& p, cplx z) {
    check_params(p, "ml_asymptotic_optimal");
    if (z == cplx(0.0, 0.0)) throw SectorError("ml_asymptotic_optimal: z = 0");
    const double th = arg_principal(z);
    check_sector(p, th, "ml_asymptotic_optimal");
    const double r = std::abs(z);
    const double logr = std::log(r);
    cplx sum = 0.0;
    double err = 0.0;
    if (terminating(p)) {
        for (int k = 1; p.beta - k >= 1.0; ++k) sum += asymptotic_term(p, logr, th, k);
    } else {
        const double x = std::pow(r, 1.0 / p.alpha);
        const double kopt = std::min(40000.0, x / p.alpha + 4.0);
        double best = std::numeric_limits<double>::infinity();
        cplx best_sum = 0.0;
        cplx running = 0.0;
        for (int k = 1; k < 40000; ++k) {
            const double e = std::exp(log_rgamma_envelope(p.beta - p.alpha * k) - k * logr);
            if (e < best) {
                best = e;
                best_sum = running;
            }
            const double scale = std::max(std::abs(running), std::numeric_limits<double>::min());
            if (e < 1e-18 * scale || k > kopt) break;
            running += asymptotic_term(p, logr, th, k);
        }
        sum = best_sum;
        err = best;
    }
    const double w = exponential_weight(p, std::fabs(th));
    if (w > 0.0) sum += w * exponential_term(p, z, th);
    return {sum, MLMethod::asymptotic, err};
}

MLValue ml_eval(const MLParams& p, cplx z) {
    check_params(p, "ml_eval");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("ml_eval: non-finite argument");
    const Tables& t = tables(p);
    const double r = std::abs(z);
    if (r == 0.0) return {cplx(t.c_double[0], 0.0), MLMethod::series, 0.0};
    const double th = arg_principal(z);
    const bool in_sector = std::fabs(th) >= sector_mu(p.alpha);
    if (in_sector && r >= t.r_cross) {
        MLValue a = ml_asymptotic_optimal(p, z);
        if (r < 2.0 * t.r_cross && r <= t.r_series) {
            MLValue s = ml_series(p, z);
            MLValue best = s.err_estimate <= a.err_estimate ? s : a;
            best.method = MLMethod::hybrid;
            return best;
        }
        return a;
    }
    if (r <= t.r_series) return ml_series(p, z);
    if (in_sector) return ml_asymptotic_optimal(p, z);
    throw SectorError("ml_eval: |z| = " + std::to_string(r) +
                      " lies beyond the series radius and outside the asymptotic sector");
}

double ml_bound_constant(const MLParams& p, double t_max, int samples) {
    check_params(p, "ml_bound_constant");
    if (!(t_max > 0.0)) throw DomainError("ml_bound_constant: t_max must be positive");
    if (samples < 2) throw DomainError("ml_bound_constant: samples must be at least 2");
    double sup = std::abs(ml_eval(p, 0.0).value);
    const double t_lo = std::min(1e-3, t_max);
    const double la = std::log(t_lo), lb = std::log(t_max);
    for (int j = 0; j < samples; ++j) {
        const double t = j == samples - 1 ? t_max : std::exp(la + (lb - la) * j / (samples - 1));
        for (double s : {t, -t}) {
            const double v = (1.0 + t) * std::abs(ml_eval(p, cplx(0.0, s)).value);
            sup = std::max(sup, v);
        }
    }
    return sup;
}

}  // namespace fracsch::mlf
