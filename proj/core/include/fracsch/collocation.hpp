#pragma once

#include <vector>

#include "fracsch/spectral_types.hpp"

namespace fracsch {

/// Sine collocation matched to dirichlet_laplacian_1d(M): interior points
/// x_j = j/(2M+1), j = 1..2M, and basis phi_n(x) = sqrt(2) sin(n pi x).
class SineCollocation {
public:
    explicit SineCollocation(int modes);

    int modes() const { return modes_; }
    int points() const { return 2 * modes_; }
    double x(int j) const { return (j + 1) / double(2 * modes_ + 1); }

    /// Point values sum_n c_n phi_n(x_j).
    std::vector<cplx> to_physical(const SpectralVector& c) const;
    /// Discrete sine projection onto the first M modes (exact inverse of
    /// to_physical on the span of those modes).
    SpectralVector to_spectral(const std::vector<cplx>& values) const;

    SpectralField to_spectral_field(const TimeGrid& grid, const std::vector<std::vector<cplx>>& values) const;

private:
    int modes_;
    std::vector<double> basis_;  // points x modes, row-major
};

}  // namespace fracsch
