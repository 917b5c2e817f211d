#include "fracsch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracsch/error.hpp"
#include "fracsch/fracalc.hpp"

namespace fracsch::spectral {

SpectralVector apply_A(const DiagonalOperator& A, const SpectralVector& x) {
    require_modes(A, x.size(), "apply_A");
    SpectralVector y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = -A.eigenvalue(static_cast<int>(n)) * x[n];
    return y;
}

SpectralVector resolvent(const DiagonalOperator& A, cplx z, const SpectralVector& x) {
    require_modes(A, x.size(), "resolvent");
    double closest = std::numeric_limits<double>::infinity();
    for (double lam : A.eigenvalues()) closest = std::min(closest, std::abs(z + lam));
    if (closest < 1e-14 * std::abs(z) || closest == 0.0)
        throw SpectrumError("resolvent: z lies on the spectrum of A");
    SpectralVector y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = x[n] / (z + A.eigenvalue(static_cast<int>(n)));
    return y;
}

double h_norm(const SpectralVector& x) {
    double s = 0.0;
    for (const cplx& c : x.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double da_norm(const DiagonalOperator& A, const SpectralVector& x) {
    require_modes(A, x.size(), "da_norm");
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double lam = A.eigenvalue(static_cast<int>(n));
        s += lam * lam * std::norm(x[n]);
    }
    return std::sqrt(s);
}

double k_functional(const DiagonalOperator& A, const SpectralVector& x, double t) {
    require_modes(A, x.size(), "k_functional");
    if (!(t > 0.0)) throw DomainError("k_functional: t must be positive");
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double tl = t * A.eigenvalue(static_cast<int>(n));
        // t^2 l^2 / (1 + t^2 l^2) without overflow for large t l.
        const double w = tl < 1.0 ? tl * tl / (1.0 + tl * tl) : 1.0 / (1.0 + 1.0 / (tl * tl));
        s += w * std::norm(x[n]);
    }
    return std::sqrt(s);
}

double interp_theta(double alpha, double p) {
    if (!(alpha > 0.0) || !(p >= 1.0) || !(alpha * p > 1.0))
        throw DomainError("interp_norm: alpha*p must exceed 1");
    return 1.0 - 1.0 / (alpha * p);
}

double interp_norm(const DiagonalOperator& A, const SpectralVector& x, double alpha, double p,
                   const InterpQuadrature& q) {
    const double theta = interp_theta(alpha, p);
    require_modes(A, x.size(), "interp_norm");
    if (q.points < 2) throw DomainError("interp_norm: at least two quadrature points required");
    const double h = h_norm(x);
    if (h == 0.0) return 0.0;
    const double t_lo = q.lo_factor / A.eigenvalues().back();
    const double t_hi = q.hi_factor / A.eigenvalues().front();
    const double u_lo = std::log(t_lo), u_hi = std::log(t_hi);
    const double du = (u_hi - u_lo) / (q.points - 1);

    // In u = log t the integrand is t^{-theta p} K(t)^p.
    double body = 0.0;
    for (int i = 0; i < q.points; ++i) {
        const double u = u_lo + i * du;
        const double t = std::exp(u);
        const double v = std::pow(k_functional(A, x, t), p) * std::exp(-theta * p * u);
        body += (i == 0 || i == q.points - 1) ? 0.5 * v : v;
    }
    body *= du;
    const double d = da_norm(A, x);
    const double lower = std::pow(d, p) * std::pow(t_lo, (1.0 - theta) * p) / ((1.0 - theta) * p);
    const double upper = std::pow(h, p) * std::pow(t_hi, -theta * p) / (theta * p);
    const double total = body + lower + upper;
    // Tail models K(t) ~ t ||Ax|| below the window and K(t) ~ ||x|| above it.
    const double dev_lo = d > 0.0 ? std::abs(1.0 - std::pow(k_functional(A, x, t_lo) / (t_lo * d), p)) : 0.0;
    const double dev_hi = std::abs(1.0 - std::pow(k_functional(A, x, t_hi) / h, p));
    const double tail_error = dev_lo * lower + dev_hi * upper;
    if (tail_error > 0.01 * total)
        warn("interp_norm", "tail model error is " + std::to_string(100.0 * tail_error / total) + "% of the total");
    return std::pow(total, 1.0 / p);
}

SpectralField apply_A(const DiagonalOperator& A, const SpectralField& u) {
    require_modes(A, static_cast<std::size_t>(u.modes()), "apply_A");
    SpectralField out(u.grid(), u.modes());
    for (int n = 0; n < u.modes(); ++n) {
        const double lam = A.eigenvalue(n);
        auto src = u.mode(n);
        auto dst = out.mode(n);
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = -lam * src[k];
    }
    return out;
}

namespace {

std::vector<double> weighted_norms(const SpectralField& u, const std::vector<double>& weight) {
    std::vector<double> s(u.nodes(), 0.0);
    for (int n = 0; n < u.modes(); ++n) {
        const double w2 = weight.empty() ? 1.0 : weight[static_cast<std::size_t>(n)] * weight[static_cast<std::size_t>(n)];
        auto m = u.mode(n);
        for (std::size_t k = 0; k < m.size(); ++k) s[k] += w2 * std::norm(m[k]);
    }
    for (double& v : s) v = std::sqrt(v);
    return s;
}

}  // namespace

std::vector<double> h_norms(const SpectralField& u) { return weighted_norms(u, {}); }

std::vector<double> da_norms(const DiagonalOperator& A, const SpectralField& u) {
    require_modes(A, static_cast<std::size_t>(u.modes()), "da_norms");
    return weighted_norms(u, A.eigenvalues());
}

double lp_h_norm(double p, const SpectralField& u) {
    return fracalc::lp_norm(p, h_norms(u), u.grid());
}

double lp_da_norm(double p, const DiagonalOperator& A, const SpectralField& u) {
    return fracalc::lp_norm(p, da_norms(A, u), u.grid());
}

}  // namespace fracsch::spectral
