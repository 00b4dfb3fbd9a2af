#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fagnano {

/// Invalid geometric input: off-hyperboloid points, degenerate spans, dimension mismatches.
class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to converge or to bracket a root.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A billiard trajectory touched a lower-dimensional face or grazed a facet.
class TrajectoryError : public std::runtime_error {
public:
    TrajectoryError(std::size_t step, const std::string& what)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace fagnano
