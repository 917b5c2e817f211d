#include "fracsch/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fracsch/error.hpp"

namespace fracsch::ensemble {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, std::numbers::sqrt2 / 2.0);
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

// Streams: 0.. for trajectories of a member, mode fields use 1000 + n, vectors 1 << 30.
constexpr std::uint64_t field_stream = 1000;
constexpr std::uint64_t vector_stream = 1ULL << 30;

Trajectory trig_polynomial(std::uint64_t s, int degree, const TimeGrid& grid) {
    std::mt19937_64 rng(s);
    std::vector<cplx> a(static_cast<std::size_t>(degree) + 1), b(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) {
        a[static_cast<std::size_t>(j)] = gaussian(rng) / (1.0 + j);
        b[static_cast<std::size_t>(j)] = gaussian(rng) / (1.0 + j);
    }
    const double w = std::numbers::pi / grid.horizon();
    return Trajectory::sample(grid, [&](double t) {
        cplx v = 0.0;
        for (int j = 0; j <= degree; ++j)
            v += a[static_cast<std::size_t>(j)] * std::cos(j * w * t) + b[static_cast<std::size_t>(j)] * std::sin((j + 1) * w * t);
        return v;
    });
}

}  // namespace

void EnsembleSpec::validate() const {
    if (count < 1) throw DomainError("ensemble: count must be at least 1");
    if (!(mode_decay >= 0.0)) throw DomainError("ensemble: mode_decay must be nonnegative");
    if (smoothness < 0) throw DomainError("ensemble: smoothness must be nonnegative");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

Trajectory random_trajectory(const EnsembleSpec& spec, int member, const TimeGrid& grid, int stream) {
    spec.validate();
    return trig_polynomial(derive_seed(spec.seed, static_cast<std::uint64_t>(member), static_cast<std::uint64_t>(stream)),
                           spec.smoothness, grid);
}

SpectralField random_field(const EnsembleSpec& spec, int member, const DiagonalOperator& A, const TimeGrid& grid) {
    spec.validate();
    SpectralField f(grid, A.size());
    for (int n = 0; n < A.size(); ++n) {
        Trajectory v = trig_polynomial(derive_seed(spec.seed, static_cast<std::uint64_t>(member), field_stream + static_cast<std::uint64_t>(n)),
                                       spec.smoothness, grid);
        v *= std::pow(A.eigenvalue(n), -spec.mode_decay);
        f.set_mode(n, v);
    }
    return f;
}

SpectralVector random_vector(const EnsembleSpec& spec, int member, const DiagonalOperator& A) {
    spec.validate();
    SpectralVector x(static_cast<std::size_t>(A.size()));
    for (int n = 0; n < A.size(); ++n) {
        std::mt19937_64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(member), vector_stream + static_cast<std::uint64_t>(n)));
        x[static_cast<std::size_t>(n)] = std::pow(A.eigenvalue(n), -spec.mode_decay) * gaussian(rng);
    }
    return x;
}

}  // namespace fracsch::ensemble
