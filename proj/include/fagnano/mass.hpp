#pragma once

// Hyperbolic center of mass of point masses.
//
// For (X,x) and (Y,y) the centroid (Z,z) lies on [XY] with
//   x sinh d(X,Z) = y sinh d(Y,Z),   z = x cosh d(X,Z) + y cosh d(Y,Z).
// In the hyperboloid model this is the Minkowski-weighted sum S = xX + yY:
// Z = S / sqrt(-<S,S>) and z = sqrt(-<S,S>). The sum is linear, so the n-ary
// centroid is commutative, associative and commutes with isometries.

#include <cmath>
#include <span>
#include <vector>

#include "fagnano/errors.hpp"
#include "fagnano/geometry.hpp"

namespace fagnano {

struct PointMass {
    HPoint location;
    double weight = 0.0;
};

inline PointMass combine(const PointMass& p, const PointMass& q) {
    require_same_ambient(p.location, q.location);
    if (!(p.weight >= 0.0) || !(q.weight >= 0.0)) throw GeometryError("combine: negative or NaN weight");
    if (p.weight == 0.0 && q.weight == 0.0) throw GeometryError("combine: both weights are zero");
    if (q.weight == 0.0) return p;
    if (p.weight == 0.0) return q;

    // -<S,S> = x^2 + y^2 + 2xy cosh d(X,Y); every term is non-negative.
    const double cosh_d = std::max(1.0, -mink_inner(p.location.coords(), q.location.coords()));
    const double mass = std::sqrt(p.weight * p.weight + q.weight * q.weight + 2.0 * p.weight * q.weight * cosh_d);
    Vec s = detail::axpby(p.weight / mass, p.location.coords(), q.weight / mass, q.location.coords());
    return {HPoint::normalized(std::move(s)), mass};
}

/// Left fold of `combine` over a nonempty sequence with at least one positive weight.
inline PointMass centroid_fold(std::span<const PointMass> items) {
    if (items.empty()) throw GeometryError("centroid_fold: empty sequence");
    for (const auto& item : items)
        if (!(item.weight >= 0.0)) throw GeometryError("centroid_fold: negative or NaN weight");
    // Zero weights are neutral; skip them so the fold starts from a massive item.
    std::size_t first = 0;
    while (first < items.size() && items[first].weight == 0.0) ++first;
    if (first == items.size()) throw GeometryError("centroid_fold: all weights are zero");
    PointMass acc = items[first];
    for (std::size_t i = 0; i < items.size(); ++i)
        if (i != first) acc = combine(acc, items[i]);
    return acc;
}

inline std::vector<PointMass> scale_masses(std::span<const PointMass> items, double factor) {
    if (!(factor > 0.0)) throw GeometryError("scale_masses: factor must be positive");
    std::vector<PointMass> out(items.begin(), items.end());
    for (auto& item : out) item.weight *= factor;
    return out;
}

} // namespace fagnano
