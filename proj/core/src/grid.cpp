#include "fracsch/grid.hpp"

#include <cmath>
#include <string>

#include "fracsch/error.hpp"

namespace fracsch {

TimeGrid::TimeGrid(double horizon, int steps) : T_(horizon), N_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw DomainError("TimeGrid: horizon must be positive and finite");
    if (steps < 1) throw DomainError("TimeGrid: steps must be positive");
}

Trajectory::Trajectory(TimeGrid grid) : grid_(grid), values_(grid.nodes(), cplx(0.0, 0.0)) {}

Trajectory::Trajectory(TimeGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.nodes())
        throw ShapeError("Trajectory: expected " + std::to_string(grid_.nodes()) + " values, got " +
                         std::to_string(values_.size()));
}

Trajectory& Trajectory::operator+=(const Trajectory& other) {
    require_same_grid(grid_, other.grid_, "Trajectory::operator+=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& other) {
    require_same_grid(grid_, other.grid_, "Trajectory::operator-=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

Trajectory& Trajectory::operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
}

Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
Trajectory operator*(cplx c, Trajectory a) { return a *= c; }

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where) {
    if (!(a == b)) throw ShapeError(std::string(where) + ": grids differ");
}

}  // namespace fracsch
