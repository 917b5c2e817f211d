#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracsch/grid.hpp"

namespace fracsch {

/// Truncated spectrum 0 < lambda_1 <= ... <= lambda_M of -A; A acts as -lambda_n on mode n.
class DiagonalOperator {
public:
    explicit DiagonalOperator(std::vector<double> eigenvalues, std::string name = "explicit");

    /// lambda_n = n^2 pi^2, n = 1..M: the Dirichlet Laplacian on (0,1).
    static DiagonalOperator dirichlet_laplacian_1d(int modes);

    int size() const { return static_cast<int>(lambda_.size()); }
    double eigenvalue(int n) const { return lambda_[static_cast<std::size_t>(n)]; }
    const std::vector<double>& eigenvalues() const { return lambda_; }
    const std::string& name() const { return name_; }

    /// Eigenvalues multiplied by a positive factor.
    DiagonalOperator scaled(double factor) const;
    /// First `modes` eigenvalues.
    DiagonalOperator truncated(int modes) const;

private:
    std::vector<double> lambda_;
    std::string name_;
};

/// Eigenbasis coefficients <x, phi_n> of a point of H.
struct SpectralVector {
    std::vector<cplx> coeffs;

    SpectralVector() = default;
    explicit SpectralVector(std::size_t modes) : coeffs(modes, cplx(0.0, 0.0)) {}
    explicit SpectralVector(std::vector<cplx> c) : coeffs(std::move(c)) {}

    static SpectralVector basis(std::size_t modes, std::size_t n, cplx value = 1.0);

    std::size_t size() const { return coeffs.size(); }
    cplx& operator[](std::size_t n) { return coeffs[n]; }
    const cplx& operator[](std::size_t n) const { return coeffs[n]; }
};

/// Mode-by-time array of coefficients u_n(t_k), stored mode-major.
class SpectralField {
public:
    SpectralField(TimeGrid grid, int modes);

    const TimeGrid& grid() const { return grid_; }
    int modes() const { return modes_; }
    std::size_t nodes() const { return grid_.nodes(); }

    cplx& operator()(int n, std::size_t k) { return data_[index(n, k)]; }
    const cplx& operator()(int n, std::size_t k) const { return data_[index(n, k)]; }

    std::span<cplx> mode(int n) { return {data_.data() + index(n, 0), nodes()}; }
    std::span<const cplx> mode(int n) const { return {data_.data() + index(n, 0), nodes()}; }

    Trajectory mode_trajectory(int n) const;
    void set_mode(int n, const Trajectory& v);

    SpectralVector at(std::size_t k) const;
    void set_at(std::size_t k, const SpectralVector& x);

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(cplx c);

    std::span<const cplx> raw() const { return data_; }

private:
    std::size_t index(int n, std::size_t k) const {
        return static_cast<std::size_t>(n) * nodes() + k;
    }

    TimeGrid grid_;
    int modes_;
    std::vector<cplx> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx c, SpectralField a);

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where);
void require_modes(const DiagonalOperator& A, std::size_t modes, const char* where);

}  // namespace fracsch
