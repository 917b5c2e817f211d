#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "fracsch/bigfloat.hpp"
#include "fracsch/collocation.hpp"
#include "fracsch/grid.hpp"
#include "fracsch/spectral_types.hpp"

/// Reference implementations that share no code path with the primary
/// modules: they depend only on the grid and spectral container types.
namespace fracsch::oracle {

/// Mittag-Leffler series summed in MPFR arithmetic. The working precision is
/// digits plus the cancellation digits of the series at |z| plus a guard.
/// Throws ConvergenceError when |z|^{1/alpha} exceeds 2000 (cancellation
/// beyond ~870 digits); use contour_ml there.
BigComplex highprec_ml_big(double alpha, double beta, cplx z, int digits);
cplx highprec_ml(double alpha, double beta, cplx z, int digits = 40);

/// Hankel-contour integral representation evaluated by double-exponential
/// quadrature in MPFR arithmetic. Requires alpha in (0,1], z != 0.
BigComplex contour_ml_big(double alpha, double beta, cplx z, int digits);
cplx contour_ml(double alpha, double beta, cplx z, int digits = 30);

/// Series when the cancellation is moderate (|z|^{1/alpha} <= 200), contour otherwise.
cplx reference_ml(double alpha, double beta, cplx z);

/// Decimal digits of agreement -log10(|a-b| / max(|a|, tiny)).
double agreement_digits(const BigComplex& a, const BigComplex& b);

/// Implicit L1 stepping for d^alpha u + i lambda u = f, u(0) = u0.
Trajectory l1_linear(double alpha, double lambda, const Trajectory& f, cplx u0);

/// Exact exponential integrator for the alpha = 1 equation u' + i lambda u = f
/// with f interpolated piecewise linearly.
Trajectory classical_exact(double lambda, const Trajectory& f, cplx u0);

/// Pointwise nonlinearity g(u) acting on physical collocation values.
using PointwiseMap = std::function<cplx(cplx)>;

struct L1SemilinearOptions {
    int max_inner = 20;
    double inner_tol = 1e-12;
};

/// Implicit L1 stepping of d^alpha (u - u0) - i A u = F(u) where F acts
/// pointwise on the sine-collocation values. Each step solves the implicit
/// relation by fixed-point iteration. Throws ConvergenceError if an inner
/// iteration does not reach inner_tol.
SpectralField l1_semilinear(double alpha, const DiagonalOperator& A, const TimeGrid& grid,
                            const SpectralVector& u0, const PointwiseMap& g,
                            const L1SemilinearOptions& opts = {});

struct OrderEstimate {
    double order = 0.0;
    bool monotone = true;
};

/// log2(|v_N - v_2N| / |v_2N - v_4N|); +infinity when the finer difference vanishes.
/// monotone is false when the differences do not shrink.
OrderEstimate refinement_order(double v_n, double v_2n, double v_4n);

/// Order from successive differences already formed (e.g. norms of field differences).
OrderEstimate refinement_order_from_differences(double d_coarse, double d_fine);

/// Cell masses of the n-fold convolution of t^{alpha-1} on [0, T] split into
/// N cells: the single-kernel cell masses are integrated exactly, and the
/// product mass of cells i and l is shared equally by cells i+l and i+l+1.
std::vector<double> discrete_power_kernel_selfconv(double alpha, int n, double T, int N);

}  // namespace fracsch::oracle
