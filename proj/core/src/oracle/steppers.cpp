#include <cmath>
#include <string>
#include <vector>

#include "fracsch/error.hpp"
#include "fracsch/oracle.hpp"

namespace fracsch::oracle {

namespace {

/// b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..N-1.
std::vector<double> l1_coefficients(double alpha, int N) {
    std::vector<double> b(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) b[static_cast<std::size_t>(j)] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(double(j), 1.0 - alpha);
    return b;
}

void check_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(where) + ": alpha must lie in (0,1)");
}

/// s * sum_{j=1}^{k-1} b_j (u_{k-j} - u_{k-j-1}) for one history vector.
cplx l1_history(const std::vector<double>& b, const std::vector<cplx>& u, int k) {
    cplx s = 0.0;
    for (int j = 1; j < k; ++j) s += b[static_cast<std::size_t>(j)] * (u[static_cast<std::size_t>(k - j)] - u[static_cast<std::size_t>(k - j - 1)]);
    return s;
}

}  // namespace

Trajectory l1_linear(double alpha, double lambda, const Trajectory& f, cplx u0) {
    check_alpha(alpha, "l1_linear");
    const TimeGrid& g = f.grid();
    const int N = g.steps();
    const double s = std::pow(g.step(), -alpha) / std::tgamma(2.0 - alpha);
    const std::vector<double> b = l1_coefficients(alpha, N);
    std::vector<cplx> u(static_cast<std::size_t>(N) + 1);
    u[0] = u0;
    const cplx diag = s * b[0] + cplx(0.0, lambda);
    for (int k = 1; k <= N; ++k) {
        const cplx rhs = f[static_cast<std::size_t>(k)] + s * b[0] * u[static_cast<std::size_t>(k - 1)] - s * l1_history(b, u, k);
        u[static_cast<std::size_t>(k)] = rhs / diag;
    }
    return Trajectory(g, std::move(u));
}

Trajectory classical_exact(double lambda, const Trajectory& f, cplx u0) {
    const TimeGrid& g = f.grid();
    const double h = g.step();
    const cplx z(0.0, -lambda * h);
    const cplx ez = std::exp(z);
    // phi1 = (e^z - 1)/z, phi2 = (e^z - 1 - z)/z^2, by series for small |z|.
    cplx phi1, phi2;
    if (std::abs(z) < 1e-2) {
        phi1 = phi2 = 0.0;
        cplx term = 1.0;
        for (int n = 0; n < 12; ++n) {
            phi1 += term / std::tgamma(n + 2.0);
            phi2 += term / std::tgamma(n + 3.0);
            term *= z;
        }
    } else {
        phi1 = (ez - 1.0) / z;
        phi2 = (ez - 1.0 - z) / (z * z);
    }
    Trajectory u(g);
    u[0] = u0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k)
        u[k + 1] = ez * u[k] + h * (phi1 * f[k] + phi2 * (f[k + 1] - f[k]));
    return u;
}

SpectralField l1_semilinear(double alpha, const DiagonalOperator& A, const TimeGrid& grid,
                            const SpectralVector& u0, const PointwiseMap& g,
                            const L1SemilinearOptions& opts) {
    check_alpha(alpha, "l1_semilinear");
    require_modes(A, u0.size(), "l1_semilinear");
    const int M = A.size();
    const int N = grid.steps();
    const SineCollocation col(M);
    const double s = std::pow(grid.step(), -alpha) / std::tgamma(2.0 - alpha);
    const std::vector<double> b = l1_coefficients(alpha, N);

    auto F = [&](const SpectralVector& x) {
        std::vector<cplx> v = col.to_physical(x);
        for (cplx& c : v) c = g(c);
        return col.to_spectral(v);
    };

    std::vector<std::vector<cplx>> u(static_cast<std::size_t>(M), std::vector<cplx>(static_cast<std::size_t>(N) + 1));
    for (int n = 0; n < M; ++n) u[static_cast<std::size_t>(n)][0] = u0[static_cast<std::size_t>(n)];

    SpectralVector cur(static_cast<std::size_t>(M)), known(static_cast<std::size_t>(M));
    for (int k = 1; k <= N; ++k) {
        // Part of the right-hand side fixed by the history.
        for (int n = 0; n < M; ++n) {
            const auto& un = u[static_cast<std::size_t>(n)];
            known[static_cast<std::size_t>(n)] = s * b[0] * un[static_cast<std::size_t>(k - 1)] - s * l1_history(b, un, k);
            cur[static_cast<std::size_t>(n)] = un[static_cast<std::size_t>(k - 1)];
        }
        bool converged = false;
        for (int it = 0; it < opts.max_inner; ++it) {
            const SpectralVector Fu = F(cur);
            double diff = 0.0, scale = 0.0;
            for (int n = 0; n < M; ++n) {
                const cplx diag = s * b[0] + cplx(0.0, A.eigenvalue(n));
                const cplx next = (known[static_cast<std::size_t>(n)] + Fu[static_cast<std::size_t>(n)]) / diag;
                diff += std::norm(next - cur[static_cast<std::size_t>(n)]);
                scale += std::norm(next);
                cur[static_cast<std::size_t>(n)] = next;
            }
            if (std::sqrt(diff) <= opts.inner_tol * std::max(std::sqrt(scale), 1e-300)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw ConvergenceError("l1_semilinear: inner iteration did not converge at node " + std::to_string(k));
        for (int n = 0; n < M; ++n) u[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(n)];
    }
    SpectralField out(grid, M);
    for (int n = 0; n < M; ++n) out.set_mode(n, Trajectory(grid, u[static_cast<std::size_t>(n)]));
    return out;
}

std::vector<double> discrete_power_kernel_selfconv(double alpha, int n, double T, int N) {
    if (!(alpha > 0.0) || n < 1 || !(T > 0.0) || N < 1)
        throw DomainError("discrete_power_kernel_selfconv: invalid arguments");
    const double h = T / N;
    std::vector<double> K(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j)
        K[static_cast<std::size_t>(j)] = std::pow(h, alpha) / alpha * (std::pow(j + 1.0, alpha) - std::pow(double(j), alpha));
    std::vector<double> cur = K;
    for (int rep = 1; rep < n; ++rep) {
        std::vector<double> next(static_cast<std::size_t>(N), 0.0);
        for (int i = 0; i < N; ++i) {
            const double ci = cur[static_cast<std::size_t>(i)];
            for (int l = 0; i + l < N; ++l) {
                const double m = 0.5 * ci * K[static_cast<std::size_t>(l)];
                next[static_cast<std::size_t>(i + l)] += m;
                if (i + l + 1 < N) next[static_cast<std::size_t>(i + l + 1)] += m;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace fracsch::oracle
