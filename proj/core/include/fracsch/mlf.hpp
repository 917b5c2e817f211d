#pragma once

#include <complex>

#include "fracsch/grid.hpp"

namespace fracsch::mlf {

struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;
};

enum class MLMethod { series, asymptotic, hybrid };

const char* to_string(MLMethod m);

struct MLValue {
    cplx value;
    MLMethod method = MLMethod::series;
    double err_estimate = 0.0;
};

/// Gamma(x) for real x; throws PoleError at 0, -1, -2, ...
double gamma_real(double x);

/// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x);

/// sin(pi x) with exact argument reduction.
double sinpi(double x);

/// Power series sum_{n>=0} z^n / Gamma(alpha n + beta). Up to series_radius(p)
/// the working precision is raised (double, long double, binary128) until the
/// rounding bound is below max(tol, 1e-15); beyond it the sum runs in MPFR with
/// the precision sized to the cancellation. err_estimate = truncation tail bound
/// + rounding bound. Throws ConvergenceError when |z|^{1/alpha} > 2000.
MLValue ml_series(const MLParams& p, cplx z, double tol = 1e-16);

/// -sum_{k=1}^{terms} z^{-k} / Gamma(beta - alpha k), plus the exponential
/// contribution (1/alpha) z^{(1-beta)/alpha} exp(z^{1/alpha}) when
/// |arg z| < alpha pi (half of it on the line |arg z| = alpha pi).
/// err_estimate is the magnitude of the first omitted nonzero term.
/// Throws SectorError when |arg z| < sector_mu(alpha).
MLValue ml_asymptotic(const MLParams& p, cplx z, int terms = 6);

/// As ml_asymptotic, truncated at the smallest term of the remainder envelope.
MLValue ml_asymptotic_optimal(const MLParams& p, cplx z);

/// Hybrid evaluator: series below crossover_radius, asymptotic above, both in
/// the annulus [R*, 2R*] (the smaller error estimate wins).
MLValue ml_eval(const MLParams& p, cplx z);

/// Sampled sup of (1+|t|) |E_{alpha,beta}(i t)| over t = 0 and
/// +-t_j, t_j log-spaced in [min(1e-3, t_max), t_max].
double ml_bound_constant(const MLParams& p, double t_max, int samples = 2000);

/// Sector opening used by the asymptotic path: pi (alpha + 1) / 4.
double sector_mu(double alpha);

/// Smallest |z| on the ray arg z = -pi/2 at which the optimally truncated
/// asymptotic error envelope drops below the series error bound. Cached.
double crossover_radius(const MLParams& p);

/// Largest |z| at which the binary128 series rounding bound stays below 1e-10;
/// ml_eval never sums the series beyond it. Cached.
double series_radius(const MLParams& p);

}  // namespace fracsch::mlf
