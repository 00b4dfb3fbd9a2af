#pragma once

// Regular hyperbolic n-simplices with edge length a.
//
// Vertices are the lift of a Euclidean regular simplex: unit vectors e_0..e_n in
// R^n with pairwise inner product -1/n, V_j = (cosh r, sinh r * e_j) where
// sinh^2 r = n (cosh a - 1) / (n + 1). The circumcenter is the model basepoint.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fagnano/errors.hpp"
#include "fagnano/geometry.hpp"
#include "fagnano/mass.hpp"

namespace fagnano {

namespace detail {

// Dense solve with partial pivoting; small systems only.
inline Vec solve_dense(std::vector<Vec> m, Vec rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) throw GeometryError("solve_dense: singular system");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * x[c];
        x[i] = s / m[i][i];
    }
    return x;
}

inline std::size_t wrap(long j, std::size_t count) {
    const long m = static_cast<long>(count);
    return static_cast<std::size_t>(((j % m) + m) % m);
}

} // namespace detail

/// The point equidistant from `points` that is incident to every hyperplane in `planes`.
/// Requires points.size() + planes.size() == ambient dimension.
inline HPoint equidistant_point(std::span<const HPoint> points, std::span<const Hyperplane> planes = {}) {
    if (points.empty()) throw GeometryError("equidistant_point: no points");
    const std::size_t ambient = points.front().ambient_dim();
    if (points.size() + planes.size() != ambient)
        throw GeometryError("equidistant_point: constraint count must equal the ambient dimension");
    std::vector<Vec> rows;
    Vec rhs;
    for (const auto& p : points) {
        Vec row = p.coords();
        row[0] = -row[0];
        rows.push_back(std::move(row));
        rhs.push_back(-1.0); // <W,P> = -1, rescaled away below
    }
    for (const auto& h : planes) {
        Vec row = h.normal();
        row[0] = -row[0];
        rows.push_back(std::move(row));
        rhs.push_back(0.0);
    }
    return HPoint::normalized(detail::solve_dense(std::move(rows), std::move(rhs)));
}

// Closed forms, with c = cosh a.
namespace formulas {

inline double cosh2_vertex_center(int n, double c) { return (n * c + 1.0) / (n + 1.0); }

inline double cosh2_vertex_facet_midpoint(int n, double c) { return n * c * c / ((n - 1.0) * c + 1.0); }

/// Mass of the centroid of unit masses on the n+1 vertices.
inline double centroid_mass(int n, double c) { return std::sqrt((n + 1.0) * (n * c + 1.0)); }

/// Per-vertex facet weight b = 2 / (n - 1 + 1/cosh a).
inline double reflection_weight(int n, double c) { return 2.0 / (n - 1.0 + 1.0 / c); }

/// Mass of (V_j,1) * (sigma_j V_j,1).
inline double reflection_pair_mass(int n, double c) { return 2.0 * std::sqrt(cosh2_vertex_facet_midpoint(n, c)); }

} // namespace formulas

struct FacetData {
    std::size_t index = 0;
    Hyperplane hyperplane; ///< oriented so the opposite vertex has positive margin
    HPoint midpoint;       ///< W_j, equidistant from the facet's vertices
};

struct SimplexMetrics {
    double r_vertex_center = 0.0;   ///< d(V_0, C_n)
    double r_vertex_facetmid = 0.0; ///< d(V_n, W_n)
    double centroid_mass = 0.0;     ///< mass of the unit-mass vertex centroid
};

class RegularSimplex {
public:
    static RegularSimplex build(int n, double edge) {
        if (n < 1) throw GeometryError("RegularSimplex: dimension must be at least 1");
        if (!(edge > 0.0) || !std::isfinite(edge)) throw GeometryError("RegularSimplex: edge length must be positive");
        const double half = std::sinh(0.5 * edge);
        return lifted(n, edge, std::cosh(edge), 2.0 * half * half);
    }

    /// Same as build, parameterized by cosh a (exact for rational cosh a).
    static RegularSimplex build_from_cosh(int n, double cosh_edge) {
        if (n < 1) throw GeometryError("RegularSimplex: dimension must be at least 1");
        if (!(cosh_edge > 1.0) || !std::isfinite(cosh_edge))
            throw GeometryError("RegularSimplex: cosh of the edge length must exceed 1");
        return lifted(n, std::acosh(cosh_edge), cosh_edge, cosh_edge - 1.0);
    }

    /// Relabels the vertices: vertex j of the result is vertex order[j] of this simplex.
    RegularSimplex permuted(std::span<const std::size_t> order) const {
        if (order.size() != vertices_.size()) throw GeometryError("permuted: order has the wrong length");
        std::vector<HPoint> verts;
        for (auto k : order) verts.push_back(vertices_.at(k));
        return RegularSimplex(n_, edge_, cosh_edge_, std::move(verts), circumcenter_);
    }

    /// Image of the simplex under a reflection; vertex labels follow the map.
    RegularSimplex reflected(const Hyperplane& h) const {
        std::vector<HPoint> verts;
        for (const auto& v : vertices_) verts.push_back(reflect(h, v));
        return RegularSimplex(n_, edge_, cosh_edge_, std::move(verts), reflect(h, circumcenter_));
    }

    int dim() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t ambient_dim() const noexcept { return circumcenter_.ambient_dim(); }
    double edge() const noexcept { return edge_; }
    double cosh_edge() const noexcept { return cosh_edge_; }

    const std::vector<HPoint>& vertices() const noexcept { return vertices_; }
    const std::vector<FacetData>& facets() const noexcept { return facets_; }
    const HPoint& circumcenter() const noexcept { return circumcenter_; }

    // Indices are cyclic: vertex(-1) is V_n.
    const HPoint& vertex(long j) const { return vertices_[detail::wrap(j, vertices_.size())]; }
    const FacetData& facet(long j) const { return facets_[detail::wrap(j, facets_.size())]; }

    /// sigma_j: reflection in the hyperplane of facet j.
    HPoint reflect_in_facet(long j, const HPoint& p) const { return reflect(facet(j).hyperplane, p); }

private:
    RegularSimplex(int n, double edge, double cosh_edge, std::vector<HPoint> vertices, HPoint center)
        : n_(n), edge_(edge), cosh_edge_(cosh_edge), vertices_(std::move(vertices)), circumcenter_(std::move(center)) {
        for (std::size_t j = 0; j < vertices_.size(); ++j) {
            std::vector<HPoint> others;
            for (std::size_t k = 0; k < vertices_.size(); ++k)
                if (k != j) others.push_back(vertices_[k]);
            Hyperplane plane = hyperplane_through(others);
            if (plane.margin(vertices_[j]) < 0.0) plane = plane.flipped();
            HPoint mid = equidistant_point(others, std::span<const Hyperplane>(&plane, 1));
            facets_.push_back({j, std::move(plane), std::move(mid)});
        }
    }

    static RegularSimplex lifted(int n, double edge, double cosh_edge, double cosh_edge_minus_one) {
        const double sinh_r = std::sqrt(n * cosh_edge_minus_one / (n + 1.0));
        const double cosh_r = std::sqrt(1.0 + sinh_r * sinh_r);
        const double stretch = std::sqrt((n + 1.0) / n);
        std::vector<HPoint> verts;
        for (int j = 0; j <= n; ++j) {
            // Helmert basis of the sum-zero hyperplane of R^{n+1}.
            Vec c(static_cast<std::size_t>(n) + 1, 0.0);
            c[0] = cosh_r;
            for (int k = 1; k <= n; ++k) {
                const double h = j < k ? 1.0 : (j == k ? -static_cast<double>(k) : 0.0);
                c[static_cast<std::size_t>(k)] = sinh_r * stretch * h / std::sqrt(k * (k + 1.0));
            }
            verts.push_back(HPoint::normalized(std::move(c)));
        }
        return RegularSimplex(n, edge, cosh_edge, std::move(verts),
                              HPoint::basepoint(static_cast<std::size_t>(n) + 1));
    }

    int n_;
    double edge_;
    double cosh_edge_;
    std::vector<HPoint> vertices_;
    HPoint circumcenter_;
    std::vector<FacetData> facets_;
};

inline std::vector<PointMass> vertex_masses(const RegularSimplex& s, std::span<const double> weights) {
    if (weights.size() != s.vertex_count()) throw GeometryError("vertex_masses: one weight per vertex required");
    std::vector<PointMass> out;
    for (std::size_t k = 0; k < weights.size(); ++k) out.push_back({s.vertices()[k], weights[k]});
    return out;
}

/// Measured (not closed-form) radii and vertex-centroid mass.
inline SimplexMetrics metrics(const RegularSimplex& s) {
    const Vec ones(s.vertex_count(), 1.0);
    const auto masses = vertex_masses(s, ones);
    return {dist(s.vertex(0), s.circumcenter()), dist(s.vertex(s.dim()), s.facet(s.dim()).midpoint),
            centroid_fold(masses).weight};
}

/// The two sides of (V_j,1) * (sigma_j V_j,1) = *_{k != j} (V_k, b).
inline std::pair<PointMass, PointMass> vertex_reflection_sides(const RegularSimplex& s, long j) {
    if (s.dim() < 2) throw GeometryError("vertex_reflection_sides: requires n >= 2");
    if (j < 0 || j > s.dim()) throw GeometryError("vertex_reflection_sides: facet index out of range");
    const HPoint& v = s.vertex(j);
    PointMass lhs = combine({v, 1.0}, {s.reflect_in_facet(j, v), 1.0});
    Vec weights(s.vertex_count(), formulas::reflection_weight(s.dim(), s.cosh_edge()));
    weights[static_cast<std::size_t>(j)] = 0.0;
    PointMass rhs = centroid_fold(vertex_masses(s, weights));
    return {std::move(lhs), std::move(rhs)};
}

/// max(location distance, relative mass difference) between the two sides.
inline double vertex_reflection_identity_residual(const RegularSimplex& s, long j) {
    const auto [lhs, rhs] = vertex_reflection_sides(s, j);
    return std::max(dist(lhs.location, rhs.location), std::abs(lhs.weight - rhs.weight) / rhs.weight);
}

struct PointClass {
    enum class Kind { interior, facet_interior, lower_boundary, outside };

    Kind kind = Kind::interior;
    std::optional<std::size_t> facet; ///< set for facet_interior

    bool is_facet_interior(std::size_t j) const { return kind == Kind::facet_interior && facet == j; }

    std::string label() const {
        switch (kind) {
            case Kind::interior: return "interior";
            case Kind::facet_interior: return "facet-interior(" + std::to_string(*facet) + ")";
            case Kind::lower_boundary: return "lower-boundary";
            case Kind::outside: return "outside";
        }
        return "unknown";
    }
};

inline PointClass classify_point(const RegularSimplex& s, const HPoint& p, double tol = 1e-9) {
    std::size_t near_zero = 0;
    std::size_t last = 0;
    for (const auto& f : s.facets()) {
        const double m = f.hyperplane.margin(p);
        if (m < -tol) return {PointClass::Kind::outside, std::nullopt};
        if (m <= tol) {
            ++near_zero;
            last = f.index;
        }
    }
    if (near_zero == 0) return {PointClass::Kind::interior, std::nullopt};
    if (near_zero == 1) return {PointClass::Kind::facet_interior, last};
    return {PointClass::Kind::lower_boundary, std::nullopt};
}

/// beta, gamma, delta of the trigonometric identity cosh^2(gamma - delta) cosh^2(beta) = cosh^2(delta).
struct DistanceIdentityArgs {
    int n = 1;
    double zeta = 2.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    static DistanceIdentityArgs make(int n, double zeta) {
        if (n < 1) throw GeometryError("DistanceIdentityArgs: n must be positive");
        if (!(zeta > 1.0)) throw GeometryError("DistanceIdentityArgs: zeta must exceed 1");
        // Through sinh^2 to stay accurate as zeta -> 1.
        const double zm1 = zeta - 1.0;
        const double sinh2_beta = n * zm1 / (n + 1.0);
        const double sinh2_gamma = (n * zeta + zeta + 1.0) * zm1 / (n * zeta + 1.0);
        const double sinh2_delta = (n + 1.0) * zm1 / (n + 2.0);
        return {n, zeta, std::asinh(std::sqrt(sinh2_beta)), std::asinh(std::sqrt(sinh2_gamma)),
                std::asinh(std::sqrt(sinh2_delta))};
    }
};

/// Relative residual (cosh^2(gamma - delta) cosh^2(beta) - cosh^2(delta)) / cosh^2(delta).
inline double distance_identity_residual(const DistanceIdentityArgs& args) {
    if (!(args.zeta > 1.0) || args.n < 1) throw GeometryError("distance_identity_residual: requires zeta > 1, n >= 1");
    const double cgd = std::cosh(args.gamma - args.delta);
    const double cb = std::cosh(args.beta);
    const double cd = std::cosh(args.delta);
    return (cgd * cgd * cb * cb - cd * cd) / (cd * cd);
}

} // namespace fagnano
