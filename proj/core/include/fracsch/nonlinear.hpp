#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fracsch/maxreg.hpp"
#include "fracsch/solver.hpp"

namespace fracsch::nonlinear {

/// ||u - u(0)||_{W_{alpha,p}} + ||u||_{L^p(D(A))} + ||u(0)||, with the W-term from
/// per-mode inverse_rl. Requires alpha p > 1.
double mr_norm(double alpha, double p, const DiagonalOperator& A, const SpectralField& u);

/// Right-hand side F of d^alpha (u - u0) - i A u = F(u); output on the input grid.
struct RHSMap {
    std::function<SpectralField(const SpectralField&)> apply;
    std::optional<std::pair<double, double>> lipschitz;  // (epsilon, C) when known
};

/// RHSMap applying g pointwise to the sine-collocation values at every node.
RHSMap pointwise_rhs(int modes, std::function<cplx(cplx)> g);

/// Diagonal family A(u) = (1 + delta s(u)) A with s real and bounded; s is applied
/// to u(t_k) node by node.
struct OperatorMap {
    double delta = 0.0;
    std::function<double(const SpectralVector&)> s;

    /// 1 + delta s(x); throws DomainError below the ellipticity floor 1/2.
    double factor(const SpectralVector& x) const;
};

struct IterationTrace {
    std::vector<double> increments;  // d_k = ||v_{k+1} - v_k||_MR
    std::vector<double> ratios;      // d_{k+1} / d_k
    bool converged = false;
    int iterations = 0;
};

struct IterationOptions {
    double p = 2.0;
    double tol = 1e-8;
    int max_iter = 50;
};

struct IterationResult {
    SpectralField u;
    IterationTrace trace;
};

/// Picard iteration v_{k+1} = solve_full(u0, F(v_k)) from v_0 = solve_homogeneous(u0);
/// stops when d_k <= tol mr_norm(v_k). Throws DivergenceError when d_k grows
/// three times in a row.
IterationResult semilinear_solve(const solver::SolveConfig& cfg, const SpectralVector& u0, const RHSMap& F,
                                 const IterationOptions& opts = {});

struct QuasilinearOptions : IterationOptions {
    /// Empirical ||L||; estimated with estimate_mr_constant on `norm_ensemble` when absent.
    std::optional<double> solution_operator_norm;
    maxreg::EnsembleSpec norm_ensemble{20, 1, 1.0, 4};
};

struct QuasilinearResult : IterationResult {
    double solution_operator_norm = 0.0;
    double smallness_threshold = 0.0;  // r / (4 ||L||)
};

/// Picard iteration u_{k+1} = solve_full(u0, i (A(u_k) - A) u_k). Warns when
/// interp_norm(u0) > r / (4 ||L||). Throws BallEscapeError when mr_norm(u_k) > r and
/// DivergenceError as semilinear_solve.
QuasilinearResult quasilinear_solve(const solver::SolveConfig& cfg, const SpectralVector& u0, const OperatorMap& Amap,
                                    double r, const QuasilinearOptions& opts = {});

/// j-th root of 2^j (Gamma(alpha)^j T^{j alpha} / Gamma(j alpha + 1))^{1/p}; tends to 0.
double root_test_term(double alpha, double p, double T, int j);

/// int_0^T ||u||^p <= T^{alpha p/q} / (alpha^{p/q} Gamma(alpha)^p) int_0^T k_alpha(T-r) int_0^r ||d^alpha u||^p ds dr,
/// k_alpha(t) = t^{alpha-1}, d^alpha u by per-mode inverse_rl. passed iff lhs <= rhs (1 + 2e-2).
/// Metrics include root_test_term at j = 10, 20, 40. Requires u(0) = 0.
maxreg::RegularityReport fk_lemma_check(double alpha, double p, const SpectralField& u);

}  // namespace fracsch::nonlinear
