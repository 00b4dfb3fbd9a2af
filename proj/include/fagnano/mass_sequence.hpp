#pragma once

// Vertex weights alpha_0..alpha_{n+1} for the periodic orbit.
//
// With b = 2 / (n - 1 + 1/cosh a) the weights satisfy
//   alpha_0 = alpha_{n+1} = 0,  alpha_1 = alpha_n = 1,  alpha_j > 0 inside,
//   lambda alpha_j = alpha_{j-1} + alpha_{j+1} + b     (1 <= j <= n).
// lambda = 2 y0 where y0 > 1 is the nontrivial root of
//   g(y) = h(y + sqrt(y^2 - 1)) - 1 + (y - 1)(n - 1 + 1/cosh a),
//   h(x) = (x^{(n-1)/2} + x^{-(n-1)/2}) / (x^{(n+1)/2} + x^{-(n+1)/2}),
// and alpha_j = b/(lambda-2) (1 - (xi^{j-(n+1)/2} + xi^{(n+1)/2-j}) / (xi^{(n+1)/2} + xi^{-(n+1)/2}))
// with xi = y0 + sqrt(y0^2 - 1).

#include <cmath>
#include <string>
#include <vector>

#include "fagnano/errors.hpp"

namespace fagnano {

struct MassSequence {
    int n = 0;
    double edge = 0.0;
    double cosh_edge = 0.0;
    double b = 0.0;
    double y0 = 0.0;
    double lambda = 0.0;
    double xi = 0.0;
    std::vector<double> alphas; ///< n + 2 entries
    bool explicit_fallback = false;
};

inline double eval_h(double x, int n) {
    if (!(x > 0.0)) throw SolverError("eval_h: x must be positive");
    if (x < 1.0) x = 1.0 / x; // h(x) = h(1/x)
    // Factor out x^{(n+1)/2}: h = x^{-1} (1 + x^{-(n-1)}) / (1 + x^{-(n+1)}).
    const double inv = 1.0 / x;
    return inv * (1.0 + std::pow(inv, n - 1)) / (1.0 + std::pow(inv, n + 1));
}

/// g(y) parameterized by cosh a.
inline double eval_g_cosh(double y, int n, double cosh_edge) {
    if (!(y >= 1.0)) throw SolverError("eval_g: y must be at least 1");
    if (n < 2) throw SolverError("eval_g: n must be at least 2");
    if (!(cosh_edge > 1.0)) throw SolverError("eval_g: edge length must be positive");
    const double xi = y + std::sqrt((y - 1.0) * (y + 1.0));
    return eval_h(xi, n) - 1.0 + (y - 1.0) * (n - 1.0 + 1.0 / cosh_edge);
}

inline double eval_g(double y, int n, double edge) {
    if (!(edge > 0.0)) throw SolverError("eval_g: edge length must be positive");
    return eval_g_cosh(y, n, std::cosh(edge));
}

/// Nontrivial root y0 > 1 of g. Scan outward from 1 + 1e-6 by doubling, then bisect
/// to machine resolution (bracket width well under 1e-14).
inline double solve_y0_cosh(int n, double cosh_edge) {
    if (n < 2) throw SolverError("solve_y0: n must be at least 2");
    if (!(cosh_edge > 1.0) || !std::isfinite(cosh_edge)) throw SolverError("solve_y0: edge length must be positive");
    double offset = 1e-6;
    // For tiny edges the root can sit closer to 1 than the default offset; move in first.
    while (!(eval_g_cosh(1.0 + offset, n, cosh_edge) < 0.0)) {
        offset *= 0.5;
        if (offset < 1e-15) throw SolverError("solve_y0: g is not negative just right of 1");
    }
    double lo = 1.0 + offset;
    double hi = lo;
    while (!(eval_g_cosh(hi, n, cosh_edge) > 0.0)) {
        lo = hi;
        offset *= 2.0;
        if (offset > 0x1p60) throw SolverError("solve_y0: no sign change found before y = 2^60");
        hi = 1.0 + offset;
    }
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (eval_g_cosh(mid, n, cosh_edge) < 0.0) lo = mid;
        else hi = mid;
    }
    if (hi - lo >= 1e-14) throw SolverError("solve_y0: bisection did not reach the target bracket width");
    return std::abs(eval_g_cosh(lo, n, cosh_edge)) <= std::abs(eval_g_cosh(hi, n, cosh_edge)) ? lo : hi;
}

inline double solve_y0(int n, double edge) {
    if (!(edge > 0.0)) throw SolverError("solve_y0: edge length must be positive");
    return solve_y0_cosh(n, std::cosh(edge));
}

/// alpha_j from the closed form; valid for any integer j.
inline double closed_form_alpha(int j, int n, double xi, double lambda, double b) {
    const double half = 0.5 * (n + 1);
    const double num = std::pow(xi, j - half) + std::pow(xi, half - j);
    const double den = std::pow(xi, half) + std::pow(xi, -half);
    return b / (lambda - 2.0) * (1.0 - num / den);
}

inline MassSequence build_sequence_cosh(int n, double cosh_edge) {
    if (n < 2) throw SolverError("build_sequence: n must be at least 2");
    MassSequence m;
    m.n = n;
    m.cosh_edge = cosh_edge;
    m.edge = std::acosh(cosh_edge);
    m.b = 2.0 / (n - 1.0 + 1.0 / cosh_edge);

    auto fallback = [&] {
        // For n = 2 the weights (0,1,1,0) with lambda = 1 + b satisfy the recurrence exactly.
        m.explicit_fallback = true;
        m.lambda = 1.0 + m.b;
        m.y0 = 0.5 * m.lambda;
        m.xi = m.y0 + std::sqrt(m.y0 * m.y0 - 1.0);
        m.alphas = {0.0, 1.0, 1.0, 0.0};
        return m;
    };

    try {
        m.y0 = solve_y0_cosh(n, cosh_edge);
    } catch (const SolverError&) {
        if (n == 2) return fallback();
        throw;
    }
    m.lambda = 2.0 * m.y0;
    m.xi = m.y0 + std::sqrt((m.y0 - 1.0) * (m.y0 + 1.0));
    m.alphas.resize(static_cast<std::size_t>(n) + 2);
    for (int j = 0; j <= n + 1; ++j) m.alphas[static_cast<std::size_t>(j)] = closed_form_alpha(j, n, m.xi, m.lambda, m.b);

    const double end0 = m.alphas.front();
    const double end1 = m.alphas.back();
    if (std::abs(end0) > 1e-10 || std::abs(end1) > 1e-10) {
        if (n == 2) return fallback();
        throw SolverError("build_sequence: boundary weights are not zero (" + std::to_string(end0) + ", " +
                          std::to_string(end1) + ")");
    }
    // The boundary weights are zero by construction; drop the rounding residue.
    m.alphas.front() = 0.0;
    m.alphas.back() = 0.0;
    for (int j = 1; j <= n; ++j)
        if (!(m.alphas[static_cast<std::size_t>(j)] > 0.0)) {
            if (n == 2) return fallback();
            throw SolverError("build_sequence: interior weight is not positive");
        }
    return m;
}

inline MassSequence build_sequence(int n, double edge) {
    if (!(edge > 0.0) || !std::isfinite(edge)) throw SolverError("build_sequence: edge length must be positive");
    MassSequence m = build_sequence_cosh(n, std::cosh(edge));
    m.edge = edge;
    return m;
}

/// max_j |lambda alpha_j - alpha_{j-1} - alpha_{j+1} - b| over 1 <= j <= n.
inline double recurrence_residual(const MassSequence& m) {
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < m.alphas.size(); ++j)
        worst = std::max(worst, std::abs(m.lambda * m.alphas[j] - m.alphas[j - 1] - m.alphas[j + 1] - m.b));
    return worst;
}

} // namespace fagnano
