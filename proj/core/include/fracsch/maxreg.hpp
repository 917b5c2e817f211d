#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracsch/ensemble.hpp"
#include "fracsch/solver.hpp"

namespace fracsch::maxreg {

using ensemble::EnsembleSpec;

/// One inequality check. Unless a check documents otherwise,
/// passed <=> lhs <= rhs (1 + tolerance).
struct RegularityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_estimate = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double horizon = 0.0;
    int steps = 0;
    int modes = 0;
    int ensemble_size = 0;
    std::uint64_t seed = 0;
    bool explicit_constant = false;  // compares against a closed-form constant
    std::vector<std::pair<std::string, double>> metrics;

    /// Named metric, or nullopt.
    std::optional<double> metric(const std::string& key) const;
};

/// Re int_0^T conj(v) d^alpha v dt >= T^{-alpha} / (2 Gamma(1-alpha)) ||v||^2.
/// lhs = the lower bound, rhs = the inner product with d^alpha v = inverse_rl(alpha, v);
/// passed iff rhs >= lhs (1 - 1e-2). Requires v(0) = 0.
RegularityReport coercivity_check(double alpha, const Trajectory& v);

/// coercivity_check on v = rl_integral(alpha, w) for every ensemble trajectory w;
/// constant_estimate is the smallest ratio rhs/lhs.
RegularityReport coercivity_ensemble(double alpha, const TimeGrid& grid, const EnsembleSpec& ens);

/// Ensemble sup over f of (||d^alpha u||_{L^p(H)} + ||A u||_{L^p(H)}) / ||f||_{L^p(H)},
/// u = solve_inhomogeneous(f), for each p in ps (one solve per member).
std::vector<double> mr_constant_sups(const solver::Propagator& prop, const std::vector<double>& ps,
                                     const EnsembleSpec& ens);

/// Operator with twice the modes when the family is known (dirichlet_laplacian_1d).
std::optional<DiagonalOperator> doubled_operator(const DiagonalOperator& A);

/// Maximal-regularity constant estimate for each p. constant_estimate is the
/// ensemble sup; lhs = largest relative change of the sup under N -> 2N and
/// M -> 2M, rhs = 0.05, passed iff lhs < rhs. Metrics: sup_N, sup_2N, sup_2M.
std::vector<RegularityReport> estimate_mr_constants(const solver::SolveConfig& cfg, const std::vector<double>& ps,
                                                    const EnsembleSpec& ens);
RegularityReport estimate_mr_constant(const solver::SolveConfig& cfg, double p, const EnsembleSpec& ens);

struct IAlpha {
    double value = 0.0;  // body + tail
    double body = 0.0;   // int_0^{s_max}
    double tail = 0.0;   // asymptotic estimate of int_{s_max}^inf
    double tail_fraction() const { return value > 0.0 ? tail / value : 0.0; }
};

/// I(alpha) = int_0^inf s^{alpha-1} |E_{alpha,alpha}(-i s^alpha)| ds. With u = s^alpha
/// the body is (1/alpha) int_0^{s_max^alpha} |E_{alpha,alpha}(-i u)| du by adaptive
/// Gauss-Kronrod; the tail uses |E_{alpha,alpha}(-i u)| ~ u^{-2} / |Gamma(-alpha)|.
/// Warns when the tail exceeds 10% of the total.
IAlpha i_alpha(double alpha, double s_max);

/// +-s for s log-spaced in [lo, hi] with `per_decade` points per decade.
std::vector<double> symmetric_log_samples(double lo, double hi, int per_decade);

/// Scalar symbols m_n(s) = i lambda_n / (lambda_n - i (is)^alpha) and
/// s m_n'(s) = -alpha w R - alpha i (w R)^2, w = (is)^alpha, R = 1/(lambda_n - i w).
/// Metrics: sup_m, sup_sm over the samples and over the samples with geometric
/// midpoints inserted, and the largest error of arg(-i (is)^alpha) against
/// -pi(1-alpha)/2 (s > 0) and -pi(1+alpha)/2 (s < 0). passed iff the angle error
/// is <= 1e-12 and both sups are finite and change by < 1e-2 under refinement.
RegularityReport mikhlin_scan(const DiagonalOperator& A, double alpha, const std::vector<double>& s_samples);

struct DecaySup {
    double pointwise = 0.0;  // sup_{k, lambda} t_k^alpha lambda |E_{alpha,1}(-i lambda t_k^alpha)|
    double weak = 0.0;       // sup_lambda of the weak L^{1/alpha} quasinorm of lambda |E_{alpha,1}(-i lambda t^alpha)|
};

/// Single-mode homogeneous solutions with u0 = 1 for each lambda.
DecaySup decay_sup(double alpha, const TimeGrid& grid, const std::vector<double>& lambdas);

/// Checks on u = solve_homogeneous(u0): pointwise decay, weak-norm ratio,
/// ||Au||_{L^p}/||u0|| (p < 1/alpha) or (||d^alpha(u-u0)||_{L^p} + ||Au||_{L^p}) / interp_norm(u0)
/// (p > 1/alpha), and ||Au(t)|| <= C0 ||Au0|| with C0 = ml_bound_constant.
/// The L^p norms integrate the closed form on a log-graded rule with N points
/// (the initial layer is far below the uniform step) and use d^alpha(u-u0) = iAu.
/// Each constant is measured at N and 2N; passed iff finite and stable within 5%
/// (the last check: lhs <= rhs (1 + 1e-2)). Throws DomainError if u0 = 0.
std::vector<RegularityReport> homogeneous_checks(const solver::SolveConfig& cfg, const SpectralVector& u0, double p);

/// sup_k ||u(t_k)|| / (T^{alpha-1/p} ||f||_{L^p}) over the ensemble at N and 2N,
/// plus the T-scaling exponent: f_n(t) = lambda_n^{-mode_decay} (t/T)^2 solved on
/// T in {T0/2, T0, 2 T0} with eigenvalues scaled by (T/T0)^{-alpha} (the scaling
/// under which the problem is self-similar). passed iff the sup changes by < 5%
/// and |slope - (alpha - 1/p)| <= 0.05. Requires alpha p > 1.
RegularityReport continuity_check(const solver::SolveConfig& cfg, double p, const EnsembleSpec& ens);

/// For each w: v = rl_integral(alpha, w) must satisfy
/// Gamma(alpha) |v(t_k)| <= (t_k^{q(alpha-1)+1} / (q(alpha-1)+1))^{1/q} ||w||_{L^p}, q = p/(p-1).
/// lhs = largest ratio of the two sides, rhs = 1, tolerance 1e-2. Requires alpha p > 1.
RegularityReport embedding_check(double alpha, double p, const std::vector<Trajectory>& ws);
RegularityReport embedding_check(double alpha, double p, const TimeGrid& grid, const EnsembleSpec& ens);

/// ||u||_{L^p(D(A))} <= (C0 T^alpha / alpha) ||f||_{L^p(D(A))} for u = solve_inhomogeneous(f),
/// C0 = ml_bound_constant(alpha, alpha, lambda_M T^alpha). lhs = ensemble sup of the
/// left-hand ratio, rhs = C0 T^alpha / alpha, tolerance 2e-2.
RegularityReport da_constant_check(const solver::SolveConfig& cfg, double p, const EnsembleSpec& ens);

}  // namespace fracsch::maxreg
