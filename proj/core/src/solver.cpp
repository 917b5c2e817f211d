#include "fracsch/solver.hpp"

#include <cmath>
#include <string>

#include "fracsch/error.hpp"
#include "fracsch/mlf.hpp"

namespace fracsch::solver {

namespace {

cplx ml(double alpha, double beta, cplx z) { return mlf::ml_eval({alpha, beta}, z).value; }

void check_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(where) + ": alpha must lie in (0,1)");
}

}  // namespace

SolveConfig::SolveConfig(double alpha_, TimeGrid grid_, DiagonalOperator op_)
    : alpha(alpha_), grid(grid_), op(std::move(op_)) {
    check_alpha(alpha, "SolveConfig");
}

cplx kernel_mode(double alpha, double lambda, double s) {
    if (!(s > 0.0)) return 0.0;
    const double sa = std::pow(s, alpha);
    return (sa / s) * ml(alpha, alpha, cplx(0.0, -lambda * sa));
}

SpectralVector kernel_apply(const SolveConfig& cfg, double s, const SpectralVector& x) {
    require_modes(cfg.op, x.size(), "kernel_apply");
    SpectralVector y(x.size());
    if (!(s > 0.0)) return y;
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = kernel_mode(cfg.alpha, cfg.op.eigenvalue(static_cast<int>(n)), s) * x[n];
    return y;
}

ModeConvolution::ModeConvolution(double alpha, double lambda, const TimeGrid& grid) : grid_(grid), lambda_(lambda) {
    check_alpha(alpha, "ModeConvolution");
    if (!(lambda >= 0.0)) throw DomainError("ModeConvolution: lambda must be nonnegative");
    const int N = grid.steps();
    const double h = grid.step();
    // Moments P0(tau) = int_0^tau k, P1(tau) = int_0^tau s k(s) ds in closed form.
    std::vector<cplx> P0(static_cast<std::size_t>(N) + 1, 0.0), P1(static_cast<std::size_t>(N) + 1, 0.0);
    for (int m = 1; m <= N; ++m) {
        const double tau = m * h;
        const double ta = std::pow(tau, alpha);
        const cplx z(0.0, -lambda * ta);
        const cplx e1 = ml(alpha, alpha + 1.0, z);
        const cplx e2 = ml(alpha, alpha + 2.0, z);
        P0[static_cast<std::size_t>(m)] = ta * e1;
        P1[static_cast<std::size_t>(m)] = ta * tau * (e1 - e2);
    }
    // On sigma in [(m-1)h, mh], f(t_k - sigma) is linear between f_{k-m+1} and f_{k-m}.
    std::vector<cplx> A(static_cast<std::size_t>(N) + 2, 0.0), B(static_cast<std::size_t>(N) + 2, 0.0);
    for (int m = 1; m <= N; ++m) {
        const cplx d0 = P0[static_cast<std::size_t>(m)] - P0[static_cast<std::size_t>(m - 1)];
        const cplx d1 = P1[static_cast<std::size_t>(m)] - P1[static_cast<std::size_t>(m - 1)];
        A[static_cast<std::size_t>(m)] = (d1 - (m - 1) * h * d0) / h;
        B[static_cast<std::size_t>(m)] = (m * h * d0 - d1) / h;
    }
    c_.assign(static_cast<std::size_t>(std::max(N, 1)), 0.0);
    c_[0] = B[1];
    for (int m = 1; m < N; ++m) c_[static_cast<std::size_t>(m)] = A[static_cast<std::size_t>(m)] + B[static_cast<std::size_t>(m + 1)];
    tail_.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 1; k <= N; ++k) tail_[static_cast<std::size_t>(k)] = A[static_cast<std::size_t>(k)];
}

void ModeConvolution::apply(std::span<const cplx> f, std::span<cplx> out) const {
    const std::size_t n = grid_.nodes();
    if (f.size() != n || out.size() != n) throw ShapeError("ModeConvolution::apply: sample count does not match grid");
    std::vector<double> fr(n), fi(n), cr(c_.size()), ci(c_.size());
    for (std::size_t k = 0; k < n; ++k) fr[k] = f[k].real(), fi[k] = f[k].imag();
    for (std::size_t m = 0; m < c_.size(); ++m) cr[m] = c_[m].real(), ci[m] = c_[m].imag();
    out[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        double sr = 0.0, si = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            const std::size_t j = k - m;
            sr += cr[m] * fr[j] - ci[m] * fi[j];
            si += cr[m] * fi[j] + ci[m] * fr[j];
        }
        out[k] = cplx(sr, si) + tail_[k] * f[0];
    }
}

Trajectory ModeConvolution::apply(const Trajectory& f) const {
    require_same_grid(grid_, f.grid(), "ModeConvolution::apply");
    Trajectory out(grid_);
    apply(f.values(), out.values());
    return out;
}

Trajectory homogeneous_mode(double alpha, double lambda, const TimeGrid& grid, cplx u0) {
    check_alpha(alpha, "homogeneous_mode");
    if (!(lambda >= 0.0)) throw DomainError("homogeneous_mode: lambda must be nonnegative");
    return Trajectory::sample(grid, [&](double t) {
        return u0 * ml(alpha, 1.0, cplx(0.0, -lambda * std::pow(t, alpha)));
    });
}

Propagator::Propagator(const SolveConfig& cfg) : cfg_(cfg) {
    const int M = cfg.op.size();
    conv_.reserve(static_cast<std::size_t>(M));
    relax_.reserve(static_cast<std::size_t>(M));
    for (int n = 0; n < M; ++n) {
        const double lam = cfg.op.eigenvalue(n);
        conv_.emplace_back(cfg.alpha, lam, cfg.grid);
        const Trajectory r = homogeneous_mode(cfg.alpha, lam, cfg.grid, 1.0);
        relax_.emplace_back(r.values().begin(), r.values().end());
    }
}

SpectralField Propagator::homogeneous(const SpectralVector& u0) const {
    require_modes(cfg_.op, u0.size(), "solve_homogeneous");
    SpectralField u(cfg_.grid, cfg_.op.size());
    for (int n = 0; n < u.modes(); ++n) {
        auto m = u.mode(n);
        const auto& r = relax_[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = u0[static_cast<std::size_t>(n)] * r[k];
    }
    return u;
}

SpectralField Propagator::inhomogeneous(const SpectralField& f) const {
    require_modes(cfg_.op, static_cast<std::size_t>(f.modes()), "solve_inhomogeneous");
    require_same_grid(cfg_.grid, f.grid(), "solve_inhomogeneous");
    SpectralField u(cfg_.grid, cfg_.op.size());
    for (int n = 0; n < u.modes(); ++n) conv_[static_cast<std::size_t>(n)].apply(f.mode(n), u.mode(n));
    return u;
}

SpectralField Propagator::full(const SpectralVector& u0, const SpectralField& f) const {
    SpectralField u = inhomogeneous(f);
    u += homogeneous(u0);
    return u;
}

SpectralField solve_homogeneous(const SolveConfig& cfg, const SpectralVector& u0) {
    require_modes(cfg.op, u0.size(), "solve_homogeneous");
    SpectralField u(cfg.grid, cfg.op.size());
    for (int n = 0; n < u.modes(); ++n)
        u.set_mode(n, homogeneous_mode(cfg.alpha, cfg.op.eigenvalue(n), cfg.grid, u0[static_cast<std::size_t>(n)]));
    return u;
}

SpectralField solve_inhomogeneous(const SolveConfig& cfg, const SpectralField& f) {
    require_modes(cfg.op, static_cast<std::size_t>(f.modes()), "solve_inhomogeneous");
    require_same_grid(cfg.grid, f.grid(), "solve_inhomogeneous");
    SpectralField u(cfg.grid, cfg.op.size());
    for (int n = 0; n < u.modes(); ++n) {
        const ModeConvolution conv(cfg.alpha, cfg.op.eigenvalue(n), cfg.grid);
        conv.apply(f.mode(n), u.mode(n));
    }
    return u;
}

SpectralField solve_full(const SolveConfig& cfg, const SpectralVector& u0, const SpectralField& f) {
    SpectralField u = solve_inhomogeneous(cfg, f);
    u += solve_homogeneous(cfg, u0);
    return u;
}

}  // namespace fracsch::solver
