#include "fracsch/fracalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracsch/error.hpp"
#include "fracsch/mlf.hpp"

namespace fracsch::fracalc {

namespace {

void check_alpha(double alpha, bool allow_one, const char* where) {
    const bool ok = alpha > 0.0 && (allow_one ? alpha <= 1.0 : alpha < 1.0);
    if (!ok)
        throw DomainError(std::string(where) + (allow_one ? ": alpha must lie in (0,1]" : ": alpha must lie in (0,1)"));
}

/// (m+1)^g - 2 m^g + (m-1)^g without cancellation for large m.
double second_difference_pow(double g, int m) {
    const double md = m;
    if (m < 4) return std::pow(md + 1.0, g) - 2.0 * std::pow(md, g) + std::pow(md - 1.0, g);
    const double x2 = 1.0 / (md * md);
    double binom = 1.0, xp = 1.0, s = 0.0;
    for (int j = 1; j < 200; ++j) {
        binom *= (g - (2 * j - 2)) / (2 * j - 1);
        binom *= (g - (2 * j - 1)) / (2 * j);
        xp *= x2;
        const double term = 2.0 * binom * xp;
        s += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(s)) break;
    }
    return std::pow(md, g) * s;
}

/// (k-1)^{a+1} - (k-1-a) k^a without cancellation for large k.
double start_weight(double a, int k) {
    const double kd = k;
    const double g = a + 1.0;
    if (k < 4) return (k == 1 ? 0.0 : std::pow(kd - 1.0, g)) - (kd - 1.0 - a) * std::pow(kd, a);
    const double x = -1.0 / kd;
    double binom = g * (g - 1.0) / 2.0, xp = x * x, s = binom * xp;
    for (int j = 3; j < 400; ++j) {
        binom *= (g - (j - 1)) / j;
        xp *= x;
        const double term = binom * xp;
        s += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(s)) break;
    }
    return std::pow(kd, g) * s;
}

}  // namespace

RLWeights::RLWeights(double alpha_, const TimeGrid& grid) : alpha(alpha_) {
    check_alpha(alpha, true, "RLWeights");
    const int N = grid.steps();
    scale = std::pow(grid.step(), alpha) / std::tgamma(alpha + 2.0);
    a.assign(static_cast<std::size_t>(N) + 1, 0.0);
    a0.assign(static_cast<std::size_t>(N) + 1, 0.0);
    a[0] = 1.0;
    for (int m = 1; m <= N; ++m) a[static_cast<std::size_t>(m)] = second_difference_pow(alpha + 1.0, m);
    for (int k = 1; k <= N; ++k) a0[static_cast<std::size_t>(k)] = start_weight(alpha, k);
}

std::vector<double> l1_weights(double alpha, int N) {
    std::vector<double> b(static_cast<std::size_t>(std::max(N, 1)));
    b[0] = 1.0;
    for (int j = 1; j < N; ++j) {
        const double jd = j;
        b[static_cast<std::size_t>(j)] = std::pow(jd, 1.0 - alpha) * std::expm1((1.0 - alpha) * std::log1p(1.0 / jd));
    }
    return b;
}

std::vector<double> magnitudes(const Trajectory& v) {
    std::vector<double> m(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) m[k] = std::abs(v[k]);
    return m;
}

Trajectory rl_integral(double alpha, const Trajectory& v) {
    check_alpha(alpha, true, "rl_integral");
    const TimeGrid& g = v.grid();
    const RLWeights w(alpha, g);
    const int N = g.steps();
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        re[k] = v[k].real();
        im[k] = v[k].imag();
    }
    Trajectory out(g);
    for (int k = 1; k <= N; ++k) {
        double sr = w.a0[static_cast<std::size_t>(k)] * re[0] + re[static_cast<std::size_t>(k)];
        double si = w.a0[static_cast<std::size_t>(k)] * im[0] + im[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            const double c = w.a[static_cast<std::size_t>(k - j)];
            sr += c * re[static_cast<std::size_t>(j)];
            si += c * im[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(k)] = w.scale * cplx(sr, si);
    }
    return out;
}

Trajectory caputo_derivative(double alpha, const Trajectory& u, cplx u0) {
    check_alpha(alpha, false, "caputo_derivative");
    if (std::abs(u[0] - u0) > 1e-10 * std::max(1.0, std::abs(u0)))
        warn("caputo_derivative", "u(t_0) differs from u0 by more than 1e-10");
    const TimeGrid& g = u.grid();
    const int N = g.steps();
    const std::vector<double> b = l1_weights(alpha, N);
    const double scale = std::pow(g.step(), -alpha) / std::tgamma(2.0 - alpha);
    std::vector<cplx> du(static_cast<std::size_t>(N) + 1);
    // Increments of (u - u0); the first one starts from u0.
    du[1] = u[1] - u0;
    for (int m = 2; m <= N; ++m) du[static_cast<std::size_t>(m)] = u[static_cast<std::size_t>(m)] - u[static_cast<std::size_t>(m - 1)];
    Trajectory out(g);
    for (int k = 1; k <= N; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < k; ++j) s += b[static_cast<std::size_t>(j)] * du[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = scale * s;
    }
    out[0] = N >= 1 ? out[1] : cplx(0.0);
    return out;
}

Trajectory inverse_rl(double alpha, const Trajectory& v, StartClosure closure) {
    check_alpha(alpha, true, "inverse_rl");
    const TimeGrid& g = v.grid();
    const int N = g.steps();
    const RLWeights w(alpha, g);
    std::vector<double> wr(static_cast<std::size_t>(N) + 1, 0.0), wi(static_cast<std::size_t>(N) + 1, 0.0);
    auto rhs = [&](int k) { return v[static_cast<std::size_t>(k)] / w.scale; };
    if (closure == StartClosure::linear && N < 2) closure = StartClosure::flat;

    int first = 1;
    if (closure == StartClosure::linear) {
        // Unknowns w1, w2 with w0 = 2 w1 - w2:
        //   (1 + 2 a0_1) w1 - a0_1 w2                 = v1 / c
        //   (2 a0_2 + a_1) w1 + (1 - a0_2) w2          = v2 / c
        const double a01 = w.a0[1], a02 = w.a0[2], a1 = w.a[1];
        const double m11 = 1.0 + 2.0 * a01, m12 = -a01;
        const double m21 = 2.0 * a02 + a1, m22 = 1.0 - a02;
        const double det = m11 * m22 - m12 * m21;
        const cplx r1 = rhs(1), r2 = rhs(2);
        const cplx w1 = (r1 * m22 - m12 * r2) / det;
        const cplx w2 = (m11 * r2 - m21 * r1) / det;
        const cplx w0 = 2.0 * w1 - w2;
        wr[0] = w0.real(), wi[0] = w0.imag();
        wr[1] = w1.real(), wi[1] = w1.imag();
        wr[2] = w2.real(), wi[2] = w2.imag();
        first = 3;
    } else if (closure == StartClosure::flat) {
        // v1 / c = a0_1 w0 + w1 with w0 = w1.
        const cplx w1 = rhs(1) / (1.0 + w.a0[1]);
        wr[0] = wr[1] = w1.real();
        wi[0] = wi[1] = w1.imag();
        first = 2;
    }
    for (int k = first; k <= N; ++k) {
        const cplx r = rhs(k);
        double sr = r.real() - w.a0[static_cast<std::size_t>(k)] * wr[0];
        double si = r.imag() - w.a0[static_cast<std::size_t>(k)] * wi[0];
        for (int j = 1; j < k; ++j) {
            const double c = w.a[static_cast<std::size_t>(k - j)];
            sr -= c * wr[static_cast<std::size_t>(j)];
            si -= c * wi[static_cast<std::size_t>(j)];
        }
        wr[static_cast<std::size_t>(k)] = sr;
        wi[static_cast<std::size_t>(k)] = si;
    }
    Trajectory out(g);
    for (int k = 0; k <= N; ++k) out[static_cast<std::size_t>(k)] = cplx(wr[static_cast<std::size_t>(k)], wi[static_cast<std::size_t>(k)]);

    // Sampled round-trip residual at nodes N, N/2, N/4, ...
    double vmax = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) vmax = std::max(vmax, std::abs(v[k]));
    if (vmax > 0.0) {
        double worst = 0.0;
        for (int k = N; k >= 1; k /= 2) {
            cplx s = w.a0[static_cast<std::size_t>(k)] * out[0] + out[static_cast<std::size_t>(k)];
            for (int j = 1; j < k; ++j) s += w.a[static_cast<std::size_t>(k - j)] * out[static_cast<std::size_t>(j)];
            worst = std::max(worst, std::abs(w.scale * s - v[static_cast<std::size_t>(k)]));
        }
        if (worst > 1e-6 * vmax) warn("inverse_rl", "round-trip residual " + std::to_string(worst / vmax) + " (relative) exceeds 1e-6");
    }
    return out;
}

double lp_norm(double p, std::span<const double> m, const TimeGrid& grid) {
    if (m.size() != grid.nodes()) throw ShapeError("lp_norm: magnitude count does not match grid");
    if (std::isinf(p)) return m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    const std::size_t n = m.size();
    double s = 0.5 * (std::pow(m[0], p) + std::pow(m[n - 1], p));
    for (std::size_t k = 1; k + 1 < n; ++k) s += std::pow(m[k], p);
    return std::pow(s * grid.step(), 1.0 / p);
}

double lp_norm(double p, const Trajectory& v) {
    const auto m = magnitudes(v);
    return lp_norm(p, m, v.grid());
}

double weak_lp_quasinorm(double p, std::span<const double> m, const TimeGrid& grid) {
    if (m.size() != grid.nodes()) throw ShapeError("weak_lp_quasinorm: magnitude count does not match grid");
    if (!(p >= 1.0)) throw DomainError("weak_lp_quasinorm: p must be >= 1");
    std::vector<double> s(m.begin() + 1, m.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    const double h = grid.step();
    double best = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) best = std::max(best, s[k] * std::pow(double(k + 1) * h, 1.0 / p));
    return best;
}

double weak_lp_quasinorm(double p, const Trajectory& v) {
    const auto m = magnitudes(v);
    return weak_lp_quasinorm(p, m, v.grid());
}

double waps_norm(double alpha, double p, const Trajectory& v, StartClosure closure) {
    return lp_norm(p, inverse_rl(alpha, v, closure));
}

double power_kernel_selfconv(double alpha, int n, double t) {
    if (!(alpha > 0.0)) throw DomainError("power_kernel_selfconv: alpha must be positive");
    if (n < 1) throw DomainError("power_kernel_selfconv: n must be positive");
    if (!(t > 0.0)) throw DomainError("power_kernel_selfconv: t must be positive");
    if (n * alpha > 170.0) throw DomainError("power_kernel_selfconv: n*alpha exceeds the Gamma overflow guard 170");
    const double na = n * alpha;
    return std::exp(n * std::lgamma(alpha) - std::lgamma(na)) * std::pow(t, na - 1.0);
}

}  // namespace fracsch::fracalc
