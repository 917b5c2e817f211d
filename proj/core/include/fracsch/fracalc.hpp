#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fracsch/grid.hpp"

namespace fracsch::fracalc {

constexpr double infinity = std::numeric_limits<double>::infinity();

/// Product-integration weights of J^alpha for piecewise-linear data:
/// J^alpha v(t_k) = c [a0_k v_0 + sum_{j=1}^{k-1} a_{k-j} v_j + v_k], c = h^alpha / Gamma(alpha+2).
struct RLWeights {
    double alpha;
    double scale;             // c
    std::vector<double> a;    // a[m], m = 1..N (a[0] = 1 is the diagonal)
    std::vector<double> a0;   // a0[k], k = 1..N

    RLWeights(double alpha, const TimeGrid& grid);
};

/// L1 weights b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..N-1.
std::vector<double> l1_weights(double alpha, int N);

/// Riemann-Liouville integral by product integration with piecewise-linear v.
Trajectory rl_integral(double alpha, const Trajectory& v);

/// L1 discretization of the Caputo-type derivative of (u - u0); node 0 copies node 1.
Trajectory caputo_derivative(double alpha, const Trajectory& u, cplx u0);

/// How inverse_rl fixes the value at t = 0, which J^alpha cannot see.
enum class StartClosure {
    linear,  // w_0 = 2 w_1 - w_2, exact for data whose preimage is affine near 0
    flat,    // w_0 = w_1
    zero,    // w_0 = 0, the exact inverse for preimages vanishing at 0
};

/// Solves rl_integral(alpha, w) = v for w by forward substitution.
/// Warns when the sampled round-trip residual exceeds 1e-6 relative.
Trajectory inverse_rl(double alpha, const Trajectory& v, StartClosure closure = StartClosure::linear);

/// Composite-trapezoid (int_0^T |v|^p)^{1/p}; max over nodes for p = infinity.
double lp_norm(double p, const Trajectory& v);
double lp_norm(double p, std::span<const double> magnitudes, const TimeGrid& grid);

/// Weak-L^p quasinorm of the step function equal to |v_k| on (t_{k-1}, t_k], k = 1..N.
double weak_lp_quasinorm(double p, const Trajectory& v);
double weak_lp_quasinorm(double p, std::span<const double> magnitudes, const TimeGrid& grid);

/// lp_norm(p, inverse_rl(alpha, v)).
double waps_norm(double alpha, double p, const Trajectory& v, StartClosure closure = StartClosure::linear);

/// Closed form Gamma(alpha)^n / Gamma(n alpha) t^{n alpha - 1} of the n-fold
/// convolution of t^{alpha-1}.
double power_kernel_selfconv(double alpha, int n, double t);

/// Per-node magnitudes |v_k|.
std::vector<double> magnitudes(const Trajectory& v);

}  // namespace fracsch::fracalc
