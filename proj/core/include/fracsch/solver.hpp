#pragma once

#include <span>
#include <vector>

#include "fracsch/spectral_types.hpp"

namespace fracsch::solver {

/// Fractional order, time grid and operator of d^alpha (u - u0) - i A u = f.
struct SolveConfig {
    double alpha;
    TimeGrid grid;
    DiagonalOperator op;

    /// Throws DomainError unless alpha lies in (0,1).
    SolveConfig(double alpha, TimeGrid grid, DiagonalOperator op);
};

/// k(s) = s^{alpha-1} E_{alpha,alpha}(-i lambda s^alpha) for s > 0, else 0.
cplx kernel_mode(double alpha, double lambda, double s);

/// K(s) x = (k_n(s) x_n)_n.
SpectralVector kernel_apply(const SolveConfig& cfg, double s, const SpectralVector& x);

/// Product-integration weights of u_k = int_0^{t_k} k(t_k - s) f(s) ds for
/// piecewise-linear f, with the kernel integrated exactly:
/// u_k = sum_{m=0}^{k-1} c_m f_{k-m} + tail_k f_0.
class ModeConvolution {
public:
    ModeConvolution(double alpha, double lambda, const TimeGrid& grid);

    const TimeGrid& grid() const { return grid_; }
    double lambda() const { return lambda_; }
    const std::vector<cplx>& weights() const { return c_; }
    const std::vector<cplx>& tail() const { return tail_; }

    /// Convolution of the samples f (N+1 values); out[0] = 0.
    void apply(std::span<const cplx> f, std::span<cplx> out) const;
    Trajectory apply(const Trajectory& f) const;

private:
    TimeGrid grid_;
    double lambda_;
    std::vector<cplx> c_;     // c_m, m = 0..N-1
    std::vector<cplx> tail_;  // weight of f_0 at node k, k = 0..N
};

/// Homogeneous mode u_k = u0 E_{alpha,1}(-i lambda t_k^alpha); lambda >= 0.
Trajectory homogeneous_mode(double alpha, double lambda, const TimeGrid& grid, cplx u0);

/// Per-mode convolution tables of one configuration, built once and reused.
class Propagator {
public:
    explicit Propagator(const SolveConfig& cfg);

    const SolveConfig& config() const { return cfg_; }
    const ModeConvolution& mode(int n) const { return conv_[static_cast<std::size_t>(n)]; }
    /// E_{alpha,1}(-i lambda_n t_k^alpha).
    const std::vector<cplx>& relaxation(int n) const { return relax_[static_cast<std::size_t>(n)]; }

    SpectralField homogeneous(const SpectralVector& u0) const;
    SpectralField inhomogeneous(const SpectralField& f) const;
    SpectralField full(const SpectralVector& u0, const SpectralField& f) const;

private:
    SolveConfig cfg_;
    std::vector<ModeConvolution> conv_;
    std::vector<std::vector<cplx>> relax_;
};

/// u_n(t_k) = u0_n E_{alpha,1}(-i lambda_n t_k^alpha).
SpectralField solve_homogeneous(const SolveConfig& cfg, const SpectralVector& u0);

/// u(t) = int_0^t K(t-s) f(s) ds per mode; u(0) = 0.
SpectralField solve_inhomogeneous(const SolveConfig& cfg, const SpectralField& f);

/// Sum of the homogeneous and inhomogeneous parts; u(0) = u0.
SpectralField solve_full(const SolveConfig& cfg, const SpectralVector& u0, const SpectralField& f);

}  // namespace fracsch::solver
