#include "fracsch/spectral_types.hpp"

#include <cmath>
#include <numbers>

#include "fracsch/error.hpp"

namespace fracsch {

DiagonalOperator::DiagonalOperator(std::vector<double> eigenvalues, std::string name)
    : lambda_(std::move(eigenvalues)), name_(std::move(name)) {
    if (lambda_.empty()) throw DomainError("DiagonalOperator: at least one eigenvalue required");
    for (std::size_t n = 0; n < lambda_.size(); ++n) {
        if (!(lambda_[n] > 0.0) || !std::isfinite(lambda_[n]))
            throw DomainError("DiagonalOperator: eigenvalues must be positive and finite");
        if (n > 0 && lambda_[n] < lambda_[n - 1])
            throw DomainError("DiagonalOperator: eigenvalues must be nondecreasing");
    }
}

DiagonalOperator DiagonalOperator::dirichlet_laplacian_1d(int modes) {
    if (modes < 1) throw DomainError("dirichlet_laplacian_1d: modes must be positive");
    std::vector<double> lam(static_cast<std::size_t>(modes));
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (int n = 1; n <= modes; ++n) lam[static_cast<std::size_t>(n - 1)] = double(n) * n * pi2;
    return DiagonalOperator(std::move(lam), "dirichlet_laplacian_1d(" + std::to_string(modes) + ")");
}

DiagonalOperator DiagonalOperator::scaled(double factor) const {
    std::vector<double> lam = lambda_;
    for (auto& l : lam) l *= factor;
    return DiagonalOperator(std::move(lam), name_ + "*" + std::to_string(factor));
}

DiagonalOperator DiagonalOperator::truncated(int modes) const {
    if (modes < 1 || modes > size()) throw DomainError("DiagonalOperator::truncated: bad mode count");
    return DiagonalOperator(std::vector<double>(lambda_.begin(), lambda_.begin() + modes), name_);
}

SpectralVector SpectralVector::basis(std::size_t modes, std::size_t n, cplx value) {
    SpectralVector x(modes);
    x.coeffs.at(n) = value;
    return x;
}

SpectralField::SpectralField(TimeGrid grid, int modes)
    : grid_(grid), modes_(modes),
      data_(static_cast<std::size_t>(modes) * grid.nodes(), cplx(0.0, 0.0)) {
    if (modes < 1) throw DomainError("SpectralField: modes must be positive");
}

Trajectory SpectralField::mode_trajectory(int n) const {
    auto m = mode(n);
    return Trajectory(grid_, std::vector<cplx>(m.begin(), m.end()));
}

void SpectralField::set_mode(int n, const Trajectory& v) {
    require_same_grid(grid_, v.grid(), "SpectralField::set_mode");
    auto m = mode(n);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = v[k];
}

SpectralVector SpectralField::at(std::size_t k) const {
    SpectralVector x(static_cast<std::size_t>(modes_));
    for (int n = 0; n < modes_; ++n) x[static_cast<std::size_t>(n)] = (*this)(n, k);
    return x;
}

void SpectralField::set_at(std::size_t k, const SpectralVector& x) {
    if (x.size() != static_cast<std::size_t>(modes_)) throw ShapeError("SpectralField::set_at: mode count");
    for (int n = 0; n < modes_; ++n) (*this)(n, k) = x[static_cast<std::size_t>(n)];
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_shape(*this, other, "SpectralField::operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_shape(*this, other, "SpectralField::operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx c) {
    for (auto& v : data_) v *= c;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx c, SpectralField a) { return a *= c; }

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where) {
    require_same_grid(a.grid(), b.grid(), where);
    if (a.modes() != b.modes()) throw ShapeError(std::string(where) + ": mode counts differ");
}

void require_modes(const DiagonalOperator& A, std::size_t modes, const char* where) {
    if (static_cast<std::size_t>(A.size()) != modes)
        throw ShapeError(std::string(where) + ": operator has " + std::to_string(A.size()) +
                         " modes, vector has " + std::to_string(modes));
}

}  // namespace fracsch
