#pragma once

// Geodesic billiard flow inside a convex polytope given by oriented facet hyperplanes
// (interior = all margins positive). Along x(t) = x cosh t + v sinh t the margin
// <x(t),u> = p cosh t + q sinh t vanishes at tanh t = -p/q, so collisions are solved
// in closed form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fagnano/errors.hpp"
#include "fagnano/geometry.hpp"
#include "fagnano/orbit.hpp"
#include "fagnano/simplex.hpp"

namespace fagnano {

struct FlowState {
    TangentVec ray;                        ///< position and unit direction
    std::optional<std::size_t> last_facet; ///< facet the particle is leaving, if on the boundary

    const HPoint& position() const noexcept { return ray.base(); }
};

struct FlowOptions {
    double t_min = 1e-9;        ///< excludes re-hitting the departure facet
    double smooth_tol = 1e-9;   ///< margin below which a second facet counts as touched
    double grazing_tol = 1e-12; ///< |<v,u>| below which a hit counts as tangential
};

struct Collision {
    std::size_t facet = 0;
    HPoint point;
    double arclength = 0.0;
    TangentVec arrival; ///< velocity at the collision point, before reflection
};

struct Bounce {
    std::size_t step = 0; ///< 1-based
    std::size_t facet = 0;
    HPoint point;
    TangentVec outgoing;
    double segment_length = 0.0;
};

inline std::vector<Hyperplane> facet_planes(const RegularSimplex& s) {
    std::vector<Hyperplane> out;
    for (const auto& f : s.facets()) out.push_back(f.hyperplane);
    return out;
}

inline Collision next_collision(std::span<const Hyperplane> walls, const FlowState& st, const FlowOptions& opt = {}) {
    const auto& x = st.position().coords();
    const auto& v = st.ray.dir();
    std::optional<std::size_t> best;
    double best_t = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < walls.size(); ++k) {
        const double p = mink_inner(x, walls[k].normal());
        const double q = mink_inner(v, walls[k].normal());
        if (!(q < 0.0)) continue; // not approaching
        const double r = -p / q;
        if (!(r < 1.0)) continue; // geodesic never reaches this hyperplane
        const double t = std::atanh(r);
        if (t > opt.t_min && t < best_t) {
            best_t = t;
            best = k;
        }
    }
    if (!best) throw GeometryError("next_collision: no facet ahead; the state is not inside the polytope");
    TangentVec arrival = transport(st.ray, best_t);
    HPoint at = arrival.base();
    return {*best, std::move(at), best_t, std::move(arrival)};
}

inline Collision next_collision(const RegularSimplex& s, const FlowState& st, const FlowOptions& opt = {}) {
    const auto walls = facet_planes(s);
    return next_collision(walls, st, opt);
}

/// Specular reflection v_out = v_in - 2<v_in,u>u of an arrival velocity at a point of the wall.
inline TangentVec reflect_at(const Hyperplane& wall, const HPoint& q, const TangentVec& v_in,
                             const FlowOptions& opt = {}) {
    const double normal = mink_inner(v_in.dir(), wall.normal());
    if (std::abs(normal) < opt.grazing_tol) throw TrajectoryError(0, "reflect_at: grazing incidence");
    return TangentVec::make(q, reflect_vector(wall, v_in.dir()));
}

inline TangentVec reflect_at(const RegularSimplex& s, std::size_t k, const HPoint& q, const TangentVec& v_in,
                             const FlowOptions& opt = {}) {
    return reflect_at(s.facet(static_cast<long>(k)).hyperplane, q, v_in, opt);
}

/// Runs `steps` bounces. Throws TrajectoryError on grazing or non-smooth (edge/vertex) hits.
inline std::vector<Bounce> iterate(std::span<const Hyperplane> walls, FlowState st, std::size_t steps,
                                   const FlowOptions& opt = {}) {
    std::vector<Bounce> out;
    out.reserve(steps);
    for (std::size_t step = 1; step <= steps; ++step) {
        Collision c = next_collision(walls, st, opt);
        for (std::size_t k = 0; k < walls.size(); ++k)
            if (k != c.facet && walls[k].margin(c.point) <= opt.smooth_tol)
                throw TrajectoryError(step, "iterate: trajectory hits a lower-dimensional face");
        TangentVec out_dir = [&] {
            try {
                return reflect_at(walls[c.facet], c.point, c.arrival, opt);
            } catch (const TrajectoryError&) {
                throw TrajectoryError(step, "iterate: grazing incidence");
            }
        }();
        out.push_back({step, c.facet, c.point, out_dir, c.arclength});
        st = FlowState{std::move(out_dir), c.facet};
    }
    return out;
}

inline std::vector<Bounce> iterate(const RegularSimplex& s, FlowState st, std::size_t steps,
                                   const FlowOptions& opt = {}) {
    const auto walls = facet_planes(s);
    return iterate(walls, std::move(st), steps, opt);
}

struct ClosureReport {
    double position_error = 0.0;  ///< d(final point, P_0)
    double direction_error = 0.0; ///< angle between final and initial directions
    std::vector<std::size_t> facets;
    std::vector<double> segment_lengths;

    double error() const { return std::max(position_error, direction_error); }
};

/// Launches from P_0 toward P_1 and follows n+1 bounces.
inline ClosureReport closure_report(const RegularSimplex& s, const BilliardOrbit& o, const FlowOptions& opt = {}) {
    FlowState start{tangent_toward(o.point(0), o.point(1)), o.facet(0)};
    const auto bounces = iterate(s, start, o.size(), opt);
    ClosureReport r;
    const Bounce& last = bounces.back();
    r.position_error = dist(last.point, o.point(0));
    // Compare directions in the tangent space at P_0.
    const TangentVec back_home = TangentVec::make(start.position(), last.outgoing.dir());
    r.direction_error = angle_between(back_home, start.ray);
    for (const auto& b : bounces) {
        r.facets.push_back(b.facet);
        r.segment_lengths.push_back(b.segment_length);
    }
    return r;
}

inline double closure_error(const RegularSimplex& s, const BilliardOrbit& o) { return closure_report(s, o).error(); }

struct MidpointFlowMiss {
    double miss = 0.0;               ///< d(second collision, W_2)
    std::size_t second_facet = 0;
    double second_other_margin = 0.0; ///< smallest margin to any other facet; ~0 on an edge
};

/// Flow launched from W_0 toward W_1, followed to its second collision. The second
/// collision may land on a lower-dimensional face, so raw collisions are used.
inline MidpointFlowMiss midpoint_flow_miss(const RegularSimplex& s) {
    if (s.dim() < 2) throw GeometryError("midpoint_flow_miss: requires n >= 2");
    const auto walls = facet_planes(s);
    FlowState st{tangent_toward(s.facet(0).midpoint, s.facet(1).midpoint), std::size_t{0}};
    const Collision first = next_collision(walls, st);
    st = FlowState{reflect_at(walls[first.facet], first.point, first.arrival), first.facet};
    const Collision second = next_collision(walls, st);
    MidpointFlowMiss out{dist(second.point, s.facet(2).midpoint), second.facet,
                         std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < walls.size(); ++k)
        if (k != second.facet) out.second_other_margin = std::min(out.second_other_margin, walls[k].margin(second.point));
    return out;
}

} // namespace fagnano
