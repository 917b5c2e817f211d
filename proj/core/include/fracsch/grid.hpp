#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracsch {

using cplx = std::complex<double>;

/// Uniform partition t_k = k T / N, k = 0..N, of [0, T].
class TimeGrid {
public:
    TimeGrid(double horizon, int steps);

    double horizon() const { return T_; }
    int steps() const { return N_; }
    std::size_t nodes() const { return static_cast<std::size_t>(N_) + 1; }
    double step() const { return T_ / N_; }
    double node(int k) const { return k == N_ ? T_ : k * (T_ / N_); }

    /// Same horizon, twice the steps.
    TimeGrid refined() const { return TimeGrid(T_, 2 * N_); }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.T_ == b.T_ && a.N_ == b.N_;
    }

private:
    double T_;
    int N_;
};

/// Samples of one scalar complex function on a TimeGrid.
class Trajectory {
public:
    explicit Trajectory(TimeGrid grid);
    Trajectory(TimeGrid grid, std::vector<cplx> values);

    template <class F>
    static Trajectory sample(TimeGrid grid, F&& f) {
        Trajectory out(grid);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(grid.node(static_cast<int>(k)));
        return out;
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    cplx& operator[](std::size_t k) { return values_[k]; }
    const cplx& operator[](std::size_t k) const { return values_[k]; }
    std::span<cplx> values() { return values_; }
    std::span<const cplx> values() const { return values_; }

    Trajectory& operator+=(const Trajectory& other);
    Trajectory& operator-=(const Trajectory& other);
    Trajectory& operator*=(cplx c);

private:
    TimeGrid grid_;
    std::vector<cplx> values_;
};

Trajectory operator+(Trajectory a, const Trajectory& b);
Trajectory operator-(Trajectory a, const Trajectory& b);
Trajectory operator*(cplx c, Trajectory a);

/// Throws ShapeError unless both grids coincide.
void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where);

}  // namespace fracsch
