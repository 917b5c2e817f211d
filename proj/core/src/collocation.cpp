#include "fracsch/collocation.hpp"

#include <cmath>
#include <numbers>

#include "fracsch/error.hpp"

namespace fracsch {

SineCollocation::SineCollocation(int modes) : modes_(modes) {
    if (modes < 1) throw DomainError("SineCollocation: modes must be positive");
    const int P = points();
    basis_.resize(static_cast<std::size_t>(P) * modes_);
    const double denom = 2.0 * modes_ + 1.0;
    for (int j = 0; j < P; ++j)
        for (int n = 0; n < modes_; ++n) {
            // Reduce the integer angle index first so the sine argument stays small.
            const long long idx = static_cast<long long>(n + 1) * (j + 1) % (2LL * (2 * modes_ + 1));
            basis_[static_cast<std::size_t>(j) * modes_ + n] =
                std::numbers::sqrt2 * std::sin(std::numbers::pi * double(idx) / denom);
        }
}

std::vector<cplx> SineCollocation::to_physical(const SpectralVector& c) const {
    if (c.size() != static_cast<std::size_t>(modes_)) throw ShapeError("SineCollocation::to_physical");
    std::vector<cplx> out(static_cast<std::size_t>(points()));
    for (int j = 0; j < points(); ++j) {
        cplx s = 0.0;
        const double* row = &basis_[static_cast<std::size_t>(j) * modes_];
        for (int n = 0; n < modes_; ++n) s += row[n] * c[static_cast<std::size_t>(n)];
        out[static_cast<std::size_t>(j)] = s;
    }
    return out;
}

SpectralVector SineCollocation::to_spectral(const std::vector<cplx>& values) const {
    if (values.size() != static_cast<std::size_t>(points())) throw ShapeError("SineCollocation::to_spectral");
    SpectralVector c(static_cast<std::size_t>(modes_));
    const double scale = 1.0 / (2.0 * modes_ + 1.0);
    for (int j = 0; j < points(); ++j) {
        const double* row = &basis_[static_cast<std::size_t>(j) * modes_];
        for (int n = 0; n < modes_; ++n) c[static_cast<std::size_t>(n)] += row[n] * values[static_cast<std::size_t>(j)];
    }
    for (auto& v : c.coeffs) v *= scale;
    return c;
}

SpectralField SineCollocation::to_spectral_field(const TimeGrid& grid,
                                                 const std::vector<std::vector<cplx>>& values) const {
    if (values.size() != grid.nodes()) throw ShapeError("SineCollocation::to_spectral_field");
    SpectralField out(grid, modes_);
    for (std::size_t k = 0; k < values.size(); ++k) out.set_at(k, to_spectral(values[k]));
    return out;
}

}  // namespace fracsch
