#pragma once

// Hyperbolic geometry in the hyperboloid model.
//
// Points of H^n are vectors x in R^{n,1} with <x,x> = -1 and x[0] > 0, where
// <x,y> = -x0*y0 + x1*y1 + ... + xn*yn (timelike coordinate first). Every
// point-producing operation renormalizes its result onto the upper sheet.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fagnano/errors.hpp"

namespace fagnano {

using Vec = std::vector<double>;

inline double mink_inner(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw GeometryError("mink_inner: coordinate vectors differ in length");
    if (x.empty()) throw GeometryError("mink_inner: empty coordinate vector");
    double s = -x[0] * y[0];
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

namespace detail {

inline Vec axpby(double a, std::span<const double> x, double b, std::span<const double> y) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

inline Vec scaled(double a, std::span<const double> x) {
    Vec out(x.begin(), x.end());
    for (auto& c : out) c *= a;
    return out;
}

inline double euclid_dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// Angle between two unit vectors of a positive-definite space, accurate near 0 and pi.
inline double unit_angle(double diff_sq, double sum_sq) {
    return 2.0 * std::atan2(std::sqrt(std::max(diff_sq, 0.0)), std::sqrt(std::max(sum_sq, 0.0)));
}

} // namespace detail

/// A point on the upper sheet of the unit hyperboloid.
class HPoint {
public:
    /// The model basepoint (1, 0, ..., 0) in R^{ambient-1,1}.
    static HPoint basepoint(std::size_t ambient) {
        if (ambient < 2) throw GeometryError("HPoint: ambient dimension must be at least 2");
        Vec c(ambient, 0.0);
        c[0] = 1.0;
        return HPoint(std::move(c));
    }

    /// Rescales a future-timelike vector onto the hyperboloid.
    static HPoint normalized(Vec coords) {
        if (coords.size() < 2) throw GeometryError("HPoint: ambient dimension must be at least 2");
        const double q = -mink_inner(coords, coords);
        if (!(q > 0.0) || !(coords[0] > 0.0))
            throw GeometryError("HPoint: vector is not future timelike");
        const double s = 1.0 / std::sqrt(q);
        for (auto& c : coords) c *= s;
        return HPoint(std::move(coords));
    }

    /// Accepts coordinates already on the hyperboloid, within `tol`, then renormalizes.
    static HPoint checked(Vec coords, double tol = 1e-12) {
        if (coords.size() < 2) throw GeometryError("HPoint: ambient dimension must be at least 2");
        const double q = mink_inner(coords, coords);
        if (std::abs(q + 1.0) > tol * std::max(1.0, coords[0] * coords[0]) || !(coords[0] > 0.0))
            throw GeometryError("HPoint: coordinates are not on the upper hyperboloid sheet");
        return normalized(std::move(coords));
    }

    const Vec& coords() const noexcept { return coords_; }
    std::size_t ambient_dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const HPoint&, const HPoint&) = default;

private:
    explicit HPoint(Vec c) : coords_(std::move(c)) {}

    Vec coords_;
};

/// A hyperplane {x : <x,u> = 0}, u a unit spacelike normal. The sign of u picks a side.
class Hyperplane {
public:
    static Hyperplane from_normal(Vec normal) {
        const double q = mink_inner(normal, normal);
        if (!(q > 0.0)) throw GeometryError("Hyperplane: normal is not spacelike");
        const double s = 1.0 / std::sqrt(q);
        for (auto& c : normal) c *= s;
        return Hyperplane(std::move(normal));
    }

    const Vec& normal() const noexcept { return normal_; }
    std::size_t ambient_dim() const noexcept { return normal_.size(); }

    /// Signed Minkowski margin <P,u>; sinh of the signed distance to the hyperplane.
    double margin(const HPoint& p) const { return mink_inner(p.coords(), normal_); }

    Hyperplane flipped() const { return Hyperplane(detail::scaled(-1.0, normal_)); }

private:
    explicit Hyperplane(Vec u) : normal_(std::move(u)) {}

    Vec normal_;
};

/// Unit tangent vector at a point of the hyperboloid.
class TangentVec {
public:
    /// Projects `raw` onto the tangent space at `base` and normalizes it.
    static TangentVec make(HPoint base, std::span<const double> raw) {
        Vec t = detail::axpby(1.0, raw, mink_inner(raw, base.coords()), base.coords());
        const double q = mink_inner(t, t);
        if (!(q > 0.0)) throw GeometryError("TangentVec: direction has no tangential component");
        const double s = 1.0 / std::sqrt(q);
        for (auto& c : t) c *= s;
        return TangentVec(std::move(base), std::move(t));
    }

    const HPoint& base() const noexcept { return base_; }
    const Vec& dir() const noexcept { return dir_; }

    TangentVec reversed() const { return TangentVec(base_, detail::scaled(-1.0, dir_)); }

private:
    TangentVec(HPoint b, Vec d) : base_(std::move(b)), dir_(std::move(d)) {}

    HPoint base_;
    Vec dir_;
};

inline void require_same_ambient(const HPoint& a, const HPoint& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("points live in different ambient spaces");
}

/// Hyperbolic distance arccosh(-<A,B>), evaluated through the chordal form for nearby points.
inline double dist(const HPoint& a, const HPoint& b) {
    require_same_ambient(a, b);
    const double c = -mink_inner(a.coords(), b.coords());
    if (c < 1.0 - 1e-12) throw GeometryError("dist: -<A,B> < 1, inputs are not hyperboloid points");
    if (c > 2.0) return std::acosh(c);
    // <A-B, A-B> = 2(cosh d - 1) = 4 sinh^2(d/2)
    const Vec diff = detail::axpby(1.0, a.coords(), -1.0, b.coords());
    const double chord_sq = std::max(mink_inner(diff, diff), 0.0);
    return 2.0 * std::asinh(0.5 * std::sqrt(chord_sq));
}

/// Unit tangent at `from` pointing along the geodesic toward `to`.
inline TangentVec tangent_toward(const HPoint& from, const HPoint& to) {
    require_same_ambient(from, to);
    const Vec d = detail::axpby(1.0, to.coords(), -1.0, from.coords());
    if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; }))
        throw GeometryError("tangent_toward: coincident points");
    return TangentVec::make(from, d);
}

/// Exponential map: the point at arclength s along the geodesic with initial velocity v.
inline HPoint geodesic_point(const TangentVec& v, double s) {
    return HPoint::normalized(detail::axpby(std::cosh(s), v.base().coords(), std::sinh(s), v.dir()));
}

/// The point at signed arclength s from A on the geodesic through A and B (positive toward B).
inline HPoint geodesic_point(const HPoint& a, const HPoint& b, double s) {
    if (s == 0.0) return a;
    return geodesic_point(tangent_toward(a, b), s);
}

/// Velocity of the geodesic with initial velocity v at arclength s.
inline TangentVec transport(const TangentVec& v, double s) {
    HPoint at = geodesic_point(v, s);
    const Vec vel = detail::axpby(std::sinh(s), v.base().coords(), std::cosh(s), v.dir());
    return TangentVec::make(std::move(at), vel);
}

/// d(A,P) + d(P,B) - d(A,B); zero exactly when P lies on the segment [AB].
inline double segment_defect(const HPoint& p, const HPoint& a, const HPoint& b) {
    return dist(a, p) + dist(p, b) - dist(a, b);
}

/// Reflection of an ambient vector: x - 2<x,u>u.
inline Vec reflect_vector(const Hyperplane& h, std::span<const double> x) {
    return detail::axpby(1.0, x, -2.0 * mink_inner(x, h.normal()), h.normal());
}

inline HPoint reflect(const Hyperplane& h, const HPoint& p) {
    return HPoint::normalized(reflect_vector(h, p.coords()));
}

inline TangentVec reflect(const Hyperplane& h, const TangentVec& v) {
    return TangentVec::make(reflect(h, v.base()), reflect_vector(h, v.dir()));
}

/// The hyperplane of H^n through n points in general position (ambient dimension n+1).
inline Hyperplane hyperplane_through(std::span<const HPoint> points) {
    if (points.empty()) throw GeometryError("hyperplane_through: no points");
    const std::size_t ambient = points.front().ambient_dim();
    if (points.size() + 1 != ambient)
        throw GeometryError("hyperplane_through: need exactly ambient_dim - 1 points");

    // <P,w> = euclid_dot(J P, w) with J = diag(-1, 1, ..., 1). Orthonormalize the rows
    // J P_i, then complete with the standard basis vector that survives best.
    std::vector<Vec> basis;
    for (const auto& p : points) {
        if (p.ambient_dim() != ambient) throw GeometryError("hyperplane_through: mixed ambient dimensions");
        Vec row = p.coords();
        row[0] = -row[0];
        const double norm0 = std::sqrt(detail::euclid_dot(row, row));
        for (auto& c : row) c /= norm0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                const double proj = detail::euclid_dot(row, q);
                for (std::size_t i = 0; i < ambient; ++i) row[i] -= proj * q[i];
            }
        const double norm = std::sqrt(detail::euclid_dot(row, row));
        if (norm < 1e-10) throw GeometryError("hyperplane_through: points are not in general position");
        for (auto& c : row) c /= norm;
        basis.push_back(std::move(row));
    }

    Vec best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < ambient; ++k) {
        Vec e(ambient, 0.0);
        e[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                const double proj = detail::euclid_dot(e, q);
                for (std::size_t i = 0; i < ambient; ++i) e[i] -= proj * q[i];
            }
        const double norm = std::sqrt(detail::euclid_dot(e, e));
        if (norm > best_norm) {
            best_norm = norm;
            best = std::move(e);
        }
    }
    return Hyperplane::from_normal(std::move(best));
}

/// Nearest point of the hyperplane to P. sinh d(P, foot) = |<P,u>|.
inline HPoint foot_of_perpendicular(const Hyperplane& h, const HPoint& p) {
    const double c = h.margin(p);
    return HPoint::normalized(detail::axpby(1.0, p.coords(), -c, h.normal()));
}

/// Angle between two unit tangent vectors at the same point, in [0, pi].
inline double angle_between(const TangentVec& a, const TangentVec& b) {
    const Vec diff = detail::axpby(1.0, a.dir(), -1.0, b.dir());
    const Vec sum = detail::axpby(1.0, a.dir(), 1.0, b.dir());
    return detail::unit_angle(mink_inner(diff, diff), mink_inner(sum, sum));
}

/// Angle at P of the geodesic triangle P, A, B.
inline double angle_at(const HPoint& p, const HPoint& a, const HPoint& b) {
    return angle_between(tangent_toward(p, a), tangent_toward(p, b));
}

/// Poincare ball chart: x_i / (1 + x_0) on the spacelike coordinates.
inline Vec to_poincare_ball(const HPoint& p) {
    const auto& x = p.coords();
    Vec out(x.begin() + 1, x.end());
    for (auto& c : out) c /= 1.0 + x[0];
    return out;
}

} // namespace fagnano
