#pragma once

// The (n+1)-periodic orbit: bounce points P_j = *_k (V_{k+j}, alpha_k), P_j on facet j,
// and its verification. The defining relation checked for every j is
//   (P_{j-1}, m_{j-1}) * (sigma_j P_{j+1}, m_{j+1}) = (P_j, lambda m_j).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fagnano/errors.hpp"
#include "fagnano/geometry.hpp"
#include "fagnano/mass.hpp"
#include "fagnano/mass_sequence.hpp"
#include "fagnano/simplex.hpp"
#include "fagnano/tolerances.hpp"

namespace fagnano {

struct BounceCheck {
    std::size_t facet = 0;
    PointClass classification;
    double incidence = 0.0;          ///< |<P_j, u_j>|
    double min_other_margin = 0.0;   ///< min_{k != j} <P_j, u_k>
    double collinearity = 0.0;       ///< segment_defect(P_j; P_{j-1}, sigma_j P_{j+1})
    double centroid_location = 0.0;  ///< hyperbolic distance between both sides
    double centroid_mass = 0.0;      ///< relative mass difference between both sides
    double angle_defect = 0.0;       ///< radians
};

struct OrbitVerification {
    std::vector<BounceCheck> bounces;
    double mass_spread = 0.0; ///< max relative deviation of m_j from m_0

    double max_incidence() const { return max_of(&BounceCheck::incidence); }
    double max_collinearity() const { return max_of(&BounceCheck::collinearity); }
    double max_centroid_location() const { return max_of(&BounceCheck::centroid_location); }
    double max_centroid_mass() const { return max_of(&BounceCheck::centroid_mass); }
    double max_angle_defect() const { return max_of(&BounceCheck::angle_defect); }

    bool all_facet_interior() const {
        return std::all_of(bounces.begin(), bounces.end(),
                           [](const BounceCheck& c) { return c.classification.is_facet_interior(c.facet); });
    }

    bool passes(const Tolerances& tol) const {
        return all_facet_interior() && max_incidence() < tol.incidence && max_collinearity() < tol.collinearity &&
               max_centroid_location() < tol.centroid && max_centroid_mass() < tol.centroid &&
               max_angle_defect() < tol.angle && mass_spread < tol.identity;
    }

private:
    double max_of(double BounceCheck::*field) const {
        double worst = 0.0;
        for (const auto& c : bounces) worst = std::max(worst, c.*field);
        return worst;
    }
};

struct BilliardOrbit {
    std::vector<HPoint> points;       ///< P_0..P_n
    std::vector<double> masses;       ///< m_0..m_n
    std::vector<std::size_t> facets;  ///< facet hit by each point (j for the constructed orbit)
    double lambda = 0.0;
    OrbitVerification residuals;

    std::size_t size() const noexcept { return points.size(); }
    const HPoint& point(long j) const { return points[detail::wrap(j, points.size())]; }
    double mass(long j) const { return masses[detail::wrap(j, masses.size())]; }
    std::size_t facet(long j) const { return facets[detail::wrap(j, facets.size())]; }

    /// Time-reversed orbit P_0, P_n, ..., P_1 (residuals not recomputed).
    BilliardOrbit reversed() const {
        BilliardOrbit r;
        r.lambda = lambda;
        for (long j = 0; j < static_cast<long>(size()); ++j) {
            r.points.push_back(point(-j));
            r.masses.push_back(mass(-j));
            r.facets.push_back(facet(-j));
        }
        return r;
    }
};

/// Angle between the arrival direction at `at` and the specular image of the departure direction.
inline double specular_defect(const Hyperplane& wall, const HPoint& prev, const HPoint& at, const HPoint& next) {
    const TangentVec arrival = tangent_toward(at, prev).reversed();
    const TangentVec departure = tangent_toward(at, next);
    const TangentVec mirrored = TangentVec::make(at, reflect_vector(wall, departure.dir()));
    return angle_between(arrival, mirrored);
}

inline OrbitVerification verify_orbit(const RegularSimplex& s, const BilliardOrbit& o,
                                      double classify_tol = Tolerances{}.classify) {
    if (o.size() != s.vertex_count() || o.masses.size() != o.size() || o.facets.size() != o.size())
        throw GeometryError("verify_orbit: orbit size does not match the simplex");
    OrbitVerification v;
    for (long j = 0; j < static_cast<long>(o.size()); ++j) {
        BounceCheck c;
        c.facet = o.facet(j);
        const auto& wall = s.facet(static_cast<long>(c.facet)).hyperplane;
        const HPoint& here = o.point(j);
        const HPoint& prev = o.point(j - 1);
        const HPoint mirrored_next = reflect(wall, o.point(j + 1));

        c.classification = classify_point(s, here, classify_tol);
        c.incidence = std::abs(wall.margin(here));
        c.min_other_margin = std::numeric_limits<double>::infinity();
        for (const auto& f : s.facets())
            if (f.index != c.facet) c.min_other_margin = std::min(c.min_other_margin, f.hyperplane.margin(here));

        c.collinearity = segment_defect(here, prev, mirrored_next);
        const PointMass lhs = combine({prev, o.mass(j - 1)}, {mirrored_next, o.mass(j + 1)});
        const double target = o.lambda * o.mass(j);
        c.centroid_location = dist(lhs.location, here);
        c.centroid_mass = std::abs(lhs.weight - target) / target;
        c.angle_defect = specular_defect(wall, prev, here, o.point(j + 1));
        v.bounces.push_back(c);
    }
    for (double m : o.masses) v.mass_spread = std::max(v.mass_spread, std::abs(m - o.masses.front()) / o.masses.front());
    return v;
}

inline BilliardOrbit construct_orbit(const RegularSimplex& s, const MassSequence& m) {
    if (s.dim() < 2) throw GeometryError("construct_orbit: requires n >= 2");
    if (m.n != s.dim()) throw GeometryError("construct_orbit: mass sequence built for a different dimension");
    if (std::abs(m.cosh_edge - s.cosh_edge()) > 1e-12 * s.cosh_edge())
        throw GeometryError("construct_orbit: mass sequence built for a different edge length");
    BilliardOrbit o;
    o.lambda = m.lambda;
    const long count = static_cast<long>(s.vertex_count());
    for (long j = 0; j < count; ++j) {
        std::vector<PointMass> items;
        for (long k = 0; k < count; ++k) items.push_back({s.vertex(k + j), m.alphas[static_cast<std::size_t>(k)]});
        PointMass p = centroid_fold(items);
        o.points.push_back(std::move(p.location));
        o.masses.push_back(p.weight);
        o.facets.push_back(static_cast<std::size_t>(j));
    }
    o.residuals = verify_orbit(s, o);
    return o;
}

inline BilliardOrbit construct_orbit(const RegularSimplex& s) {
    if (s.dim() < 2) throw GeometryError("construct_orbit: requires n >= 2");
    return construct_orbit(s, build_sequence_cosh(s.dim(), s.cosh_edge()));
}

/// Feet of the altitudes of an equilateral triangle: point i is the foot from V_i onto facet i.
inline std::vector<HPoint> orthic_points(const RegularSimplex& s) {
    if (s.dim() != 2) throw GeometryError("orthic_points: requires n = 2");
    std::vector<HPoint> feet;
    for (long i = 0; i < 3; ++i) feet.push_back(foot_of_perpendicular(s.facet(i).hyperplane, s.vertex(i)));
    return feet;
}

/// Specular defect at each facet midpoint of the closed path W_0 -> W_1 -> ... -> W_n -> W_0.
inline std::vector<double> midpoint_trajectory_defects(const RegularSimplex& s) {
    if (s.dim() < 2) throw GeometryError("midpoint_trajectory_defect: requires n >= 2");
    std::vector<double> out;
    for (long j = 0; j < static_cast<long>(s.vertex_count()); ++j)
        out.push_back(specular_defect(s.facet(j).hyperplane, s.facet(j - 1).midpoint, s.facet(j).midpoint,
                                      s.facet(j + 1).midpoint));
    return out;
}

inline double midpoint_trajectory_defect(const RegularSimplex& s) {
    const auto d = midpoint_trajectory_defects(s);
    return *std::max_element(d.begin(), d.end());
}

/// d(P_j, W_j) for each bounce; exploration data only.
inline std::vector<double> facet_midpoint_offsets(const RegularSimplex& s, const BilliardOrbit& o) {
    std::vector<double> out;
    for (long j = 0; j < static_cast<long>(o.size()); ++j)
        out.push_back(dist(o.point(j), s.facet(static_cast<long>(o.facet(j))).midpoint));
    return out;
}

} // namespace fagnano
