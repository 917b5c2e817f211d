#pragma once

#include <cstdint>

#include "fracsch/spectral_types.hpp"

namespace fracsch::ensemble {

/// Seeded family of random trigonometric polynomials in t/T.
struct EnsembleSpec {
    int count = 100;
    std::uint64_t seed = 1;
    double mode_decay = 1.0;  // mode n amplitude lambda_n^{-mode_decay}
    int smoothness = 4;       // polynomial degree in t

    /// Throws DomainError when count < 1, mode_decay < 0 or smoothness < 0.
    void validate() const;
};

/// splitmix64 mix of (seed, a, b); the per-member and per-mode RNG seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// sum_{j=0}^{d} (g_j cos(j pi t/T) + g'_j sin((j+1) pi t/T)) / (1+j) with
/// standard complex Gaussian g, g'. `stream` separates independent draws of one member.
Trajectory random_trajectory(const EnsembleSpec& spec, int member, const TimeGrid& grid, int stream = 0);

/// Mode n holds lambda_n^{-mode_decay} times an independent random_trajectory.
/// Mode n of a member does not depend on the number of modes or on N.
SpectralField random_field(const EnsembleSpec& spec, int member, const DiagonalOperator& A, const TimeGrid& grid);

/// Coefficients lambda_n^{-mode_decay} g_n with standard complex Gaussian g_n.
SpectralVector random_vector(const EnsembleSpec& spec, int member, const DiagonalOperator& A);

}  // namespace fracsch::ensemble
