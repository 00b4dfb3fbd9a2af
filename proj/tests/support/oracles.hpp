#pragma once

// Independent reference computations for the test suites. Nothing here reuses the
// Minkowski-sum shortcuts of the library: the centroid is found by bisection on the
// balance condition, the weights by running the recurrence forward, and distances
// through the Poincare ball.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fagnano/fagnano.hpp"

namespace oracle {

using fagnano::HPoint;
using fagnano::PointMass;
using fagnano::Vec;

// Values frozen from tests/oracles/frozen_values.py (50-digit arithmetic).
inline constexpr double kLambdaN3A1 = 2.0799519218164737266;
inline constexpr double kBN3A1 = 0.75527152894520234753;
inline constexpr double kAlpha2N3A1 = 1.3246803928712713791;
inline constexpr double kY0N3A1 = 1.0399759609082368633;
inline constexpr double kMidpointDefectA1[] = {0.0,
                                               0.57911888829954949,
                                               0.71821897420174005,
                                               0.79223699767738266,
                                               0.83875601456818904,
                                               0.87081610904977876,
                                               0.89428635891528634}; // n = 2..8

/// Centroid from the balance x sinh d(X,Z) = y sinh d(Y,Z) solved by bisection along [XY].
inline PointMass combine_intrinsic(const PointMass& p, const PointMass& q) {
    const double x = p.weight;
    const double y = q.weight;
    if (x == 0.0) return q;
    if (y == 0.0) return p;
    const double d = fagnano::dist(p.location, q.location);
    if (d == 0.0) return {p.location, x + y};
    double lo = 0.0;
    double hi = d;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (x * std::sinh(mid) - y * std::sinh(d - mid) < 0.0) lo = mid;
        else hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return {fagnano::geodesic_point(p.location, q.location, t), x * std::cosh(t) + y * std::cosh(d - t)};
}

/// alpha_0 = 0, alpha_1 = 1, alpha_{j+1} = lambda alpha_j - alpha_{j-1} - b, up to alpha_{n+1}.
inline std::vector<double> forward_recurrence(int n, double lambda, double b) {
    std::vector<double> a{0.0, 1.0};
    for (int j = 1; j <= n; ++j) a.push_back(lambda * a[j] - a[j - 1] - b);
    return a;
}

/// lambda from the boundary-value problem alpha_{n+1}(lambda) = 0 of the forward recurrence,
/// taking the largest root in (2, 64). Scan downward, then bisect.
inline double boundary_value_lambda(int n, double b) {
    auto end = [&](double lambda) { return forward_recurrence(n, lambda, b).back(); };
    double hi = 64.0;
    const double step = 1e-3;
    double lo = hi - step;
    while (end(lo) > 0.0) {
        hi = lo;
        lo -= step;
        if (lo <= 2.0) return std::nan("");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (end(mid) > 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Distance through the Poincare ball: acosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))).
inline double ball_distance(const HPoint& a, const HPoint& b) {
    const Vec p = fagnano::to_poincare_ball(a);
    const Vec q = fagnano::to_poincare_ball(b);
    double pp = 0.0, qq = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        pp += p[i] * p[i];
        qq += q[i] * q[i];
        dd += (p[i] - q[i]) * (p[i] - q[i]);
    }
    return std::acosh(1.0 + 2.0 * dd / ((1.0 - pp) * (1.0 - qq)));
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    /// Point with spatial coordinates uniform in [-spread, spread]^n, lifted to the sheet.
    HPoint point(std::size_t n, double spread = 2.0) {
        Vec c(n + 1);
        double sq = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            c[i] = uniform(-spread, spread);
            sq += c[i] * c[i];
        }
        c[0] = std::sqrt(1.0 + sq);
        return HPoint::checked(std::move(c), 1e-9);
    }

    PointMass point_mass(std::size_t n, double spread = 2.0) { return {point(n, spread), uniform(0.05, 5.0)}; }

    /// Random unit tangent at p (Gaussian ambient vector projected onto the tangent space).
    fagnano::TangentVec tangent(const HPoint& p) {
        std::normal_distribution<double> g;
        Vec raw(p.ambient_dim());
        for (auto& v : raw) v = g(rng_);
        return fagnano::TangentVec::make(p, raw);
    }

    /// Random hyperplane through a random point, with a random orientation.
    fagnano::Hyperplane hyperplane(std::size_t n) {
        const HPoint p = point(n, 1.0);
        return fagnano::Hyperplane::from_normal(tangent(p).dir());
    }

    /// Random point of the hyperplane at distance up to `radius` from its point `on`.
    HPoint point_on(const fagnano::Hyperplane& h, const HPoint& on, double radius) {
        Vec raw = tangent(on).dir();
        const double c = fagnano::mink_inner(raw, h.normal());
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i] -= c * h.normal()[i];
        return fagnano::geodesic_point(fagnano::TangentVec::make(on, raw), uniform(0.0, radius));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
