#pragma once

#include "fracsch/spectral_types.hpp"

namespace fracsch::spectral {

/// A x: coefficients multiplied by -lambda_n.
SpectralVector apply_A(const DiagonalOperator& A, const SpectralVector& x);

/// (z - A)^{-1} x: coefficients divided by z + lambda_n.
/// Throws SpectrumError when min_n |z + lambda_n| < 1e-14 |z|.
SpectralVector resolvent(const DiagonalOperator& A, cplx z, const SpectralVector& x);

/// Euclidean norm of the coefficients.
double h_norm(const SpectralVector& x);

/// ||A x||.
double da_norm(const DiagonalOperator& A, const SpectralVector& x);

/// Quadratic K-functional of the couple (H, D(A)):
/// (sum_n |x_n|^2 t^2 lambda_n^2 / (1 + t^2 lambda_n^2))^{1/2}.
double k_functional(const DiagonalOperator& A, const SpectralVector& x, double t);

/// Quadrature window and resolution used by interp_norm.
struct InterpQuadrature {
    double lo_factor = 1e-3;  // t_lo = lo_factor / lambda_M
    double hi_factor = 1e3;   // t_hi = hi_factor / lambda_1
    int points = 400;
};

/// Norm of the real interpolation space (H, D(A))_{theta,p}, theta = 1 - 1/(alpha p):
/// (int_0^inf (t^{-theta} K(t,x))^p dt/t)^{1/p} by log-spaced trapezoid on
/// [t_lo, t_hi] plus closed-form power-law tails. Requires alpha p > 1.
/// Warns when the tail models deviate from K at the window edges by more than 1% of the total.
double interp_norm(const DiagonalOperator& A, const SpectralVector& x, double alpha, double p,
                   const InterpQuadrature& q = {});

/// theta = 1 - 1/(alpha p) of interp_norm.
double interp_theta(double alpha, double p);

/// A u(t_k) at every node.
SpectralField apply_A(const DiagonalOperator& A, const SpectralField& u);

/// ||u(t_k)|| per node.
std::vector<double> h_norms(const SpectralField& u);

/// ||A u(t_k)|| per node.
std::vector<double> da_norms(const DiagonalOperator& A, const SpectralField& u);

/// L^p(0,T;H) norm (trapezoid in time; max for p = infinity).
double lp_h_norm(double p, const SpectralField& u);

/// L^p(0,T;D(A)) norm.
double lp_da_norm(double p, const DiagonalOperator& A, const SpectralField& u);

}  // namespace fracsch::spectral
