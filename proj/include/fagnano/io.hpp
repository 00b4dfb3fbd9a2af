#pragma once

// JSON documents, CSV exports and the verification sweep behind the command line tool.
// Coordinates are serialized in Minkowski order (timelike first).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fagnano/billiard.hpp"
#include "fagnano/errors.hpp"
#include "fagnano/mass_sequence.hpp"
#include "fagnano/orbit.hpp"
#include "fagnano/simplex.hpp"
#include "fagnano/tolerances.hpp"

namespace fagnano::io {

using json = nlohmann::json;

/// Rounds to `digits` significant decimal digits; 17 reproduces every double exactly.
inline double round_sig(double value, int digits) {
    if (digits >= 17 || !std::isfinite(value)) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", std::max(digits, 1), value);
    return std::strtod(buf, nullptr);
}

inline std::string format_number(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", std::clamp(digits, 1, 17), value);
    return buf;
}

inline json number(double value, int digits) { return round_sig(value, digits); }

inline json coords_json(std::span<const double> coords, int digits) {
    json arr = json::array();
    for (double c : coords) arr.push_back(round_sig(c, digits));
    return arr;
}

inline json point_json(const HPoint& p, int digits) { return coords_json(p.coords(), digits); }

inline Vec coords_from_json(const json& j) { return j.get<Vec>(); }

/// Edge length given either directly or through cosh a (cosh a wins when both are set).
struct EdgeSpec {
    double edge = 0.0;
    double cosh_edge = 0.0;
    bool from_cosh = false;

    static EdgeSpec length(double a) { return {a, std::cosh(a), false}; }
    static EdgeSpec cosh(double c) { return {std::acosh(c), c, true}; }

    RegularSimplex simplex(int n) const {
        return from_cosh ? RegularSimplex::build_from_cosh(n, cosh_edge) : RegularSimplex::build(n, edge);
    }
};

inline MassSequence sequence_for(const RegularSimplex& s, const EdgeSpec& e) {
    MassSequence m = build_sequence_cosh(s.dim(), s.cosh_edge());
    m.edge = e.edge;
    return m;
}

inline json simplex_json(const RegularSimplex& s, int digits) {
    json doc;
    doc["n"] = s.dim();
    doc["edge"] = number(s.edge(), digits);
    doc["cosh_edge"] = number(s.cosh_edge(), digits);
    doc["vertices"] = json::array();
    for (const auto& v : s.vertices()) doc["vertices"].push_back(point_json(v, digits));
    doc["circumcenter"] = point_json(s.circumcenter(), digits);
    doc["facets"] = json::array();
    for (const auto& f : s.facets())
        doc["facets"].push_back({{"index", f.index},
                                 {"normal", coords_json(f.hyperplane.normal(), digits)},
                                 {"midpoint", point_json(f.midpoint, digits)}});

    const SimplexMetrics m = metrics(s);
    const double c = s.cosh_edge();
    const double ch_center = std::cosh(m.r_vertex_center);
    const double ch_facet = std::cosh(m.r_vertex_facetmid);
    doc["metrics"] = {
        {"r_vertex_center", number(m.r_vertex_center, digits)},
        {"r_vertex_facetmid", number(m.r_vertex_facetmid, digits)},
        {"centroid_mass", number(m.centroid_mass, digits)},
        {"cosh2_vertex_center", number(ch_center * ch_center, digits)},
        {"cosh2_vertex_facetmid", number(ch_facet * ch_facet, digits)},
        {"closed_form",
         {{"cosh2_vertex_center", number(formulas::cosh2_vertex_center(s.dim(), c), digits)},
          {"cosh2_vertex_facetmid", number(formulas::cosh2_vertex_facet_midpoint(s.dim(), c), digits)},
          {"centroid_mass", number(formulas::centroid_mass(s.dim(), c), digits)}}},
    };
    return doc;
}

inline json mass_sequence_json(const MassSequence& m, int digits) {
    return {{"y0", number(m.y0, digits)},         {"lambda", number(m.lambda, digits)},
            {"xi", number(m.xi, digits)},         {"b", number(m.b, digits)},
            {"alphas", coords_json(m.alphas, digits)}, {"explicit_fallback", m.explicit_fallback}};
}

/// Every residual of one (n, a) cell, with the pass verdict against a tolerance set.
struct CellReport {
    int n = 0;
    EdgeSpec edge;
    MassSequence sequence;
    double g_residual = 0.0;
    double recurrence = 0.0;
    double boundary_alpha = 0.0;     ///< max |closed-form alpha_0|, |alpha_{n+1}|
    double unit_alpha = 0.0;         ///< max |alpha_1 - 1|, |alpha_n - 1|
    double min_interior_alpha = 0.0;
    double metric_vertex_center = 0.0;   ///< relative, cosh^2
    double metric_vertex_facetmid = 0.0; ///< relative, cosh^2
    double metric_centroid_mass = 0.0;   ///< relative
    double vertex_reflection = 0.0;
    OrbitVerification orbit;
    double closure = 0.0;
    double midpoint_defect = 0.0;
    bool pass = false;
    std::string error; ///< set when the solver or the flow failed

    json checks_json() const {
        return {{"g_residual", g_residual},
                {"recurrence_residual", recurrence},
                {"boundary_alpha", boundary_alpha},
                {"unit_alpha", unit_alpha},
                {"min_interior_alpha", min_interior_alpha},
                {"metric_vertex_center", metric_vertex_center},
                {"metric_vertex_facetmid", metric_vertex_facetmid},
                {"metric_centroid_mass", metric_centroid_mass},
                {"vertex_reflection", vertex_reflection},
                {"incidence", orbit.max_incidence()},
                {"collinearity", orbit.max_collinearity()},
                {"centroid_location", orbit.max_centroid_location()},
                {"centroid_mass", orbit.max_centroid_mass()},
                {"angle_defect", orbit.max_angle_defect()},
                {"mass_spread", orbit.mass_spread},
                {"all_facet_interior", orbit.all_facet_interior()},
                {"closure_error", closure},
                {"midpoint_defect", midpoint_defect},
                {"pass", pass}};
    }
};

inline double relative(double measured, double expected) { return std::abs(measured - expected) / std::abs(expected); }

inline bool judge(const CellReport& r, const Tolerances& tol) {
    return r.error.empty() && r.g_residual < tol.root && r.recurrence < tol.identity &&
           r.boundary_alpha < tol.identity && r.unit_alpha < tol.identity && r.min_interior_alpha > 0.0 &&
           r.metric_vertex_center < tol.identity && r.metric_vertex_facetmid < tol.identity &&
           r.metric_centroid_mass < tol.identity && r.vertex_reflection < tol.identity && r.orbit.passes(tol) &&
           r.closure < tol.closure;
}

/// Builds the simplex, weights and orbit for one cell and records every residual.
/// Solver failures propagate as SolverError; flow failures are recorded in `error`.
inline CellReport verify_cell(int n, const EdgeSpec& e, const Tolerances& tol) {
    CellReport r;
    r.n = n;
    r.edge = e;
    const RegularSimplex s = e.simplex(n);
    const double c = s.cosh_edge();
    r.sequence = sequence_for(s, e);
    const MassSequence& m = r.sequence;

    r.g_residual = std::abs(eval_g_cosh(m.y0, n, c));
    r.recurrence = recurrence_residual(m);
    if (!m.explicit_fallback)
        r.boundary_alpha = std::max(std::abs(closed_form_alpha(0, n, m.xi, m.lambda, m.b)),
                                    std::abs(closed_form_alpha(n + 1, n, m.xi, m.lambda, m.b)));
    r.unit_alpha = std::max(std::abs(m.alphas[1] - 1.0), std::abs(m.alphas[static_cast<std::size_t>(n)] - 1.0));
    r.min_interior_alpha = *std::min_element(m.alphas.begin() + 1, m.alphas.end() - 1);

    const SimplexMetrics sm = metrics(s);
    const double ch_center = std::cosh(sm.r_vertex_center);
    const double ch_facet = std::cosh(sm.r_vertex_facetmid);
    r.metric_vertex_center = relative(ch_center * ch_center, formulas::cosh2_vertex_center(n, c));
    r.metric_vertex_facetmid = relative(ch_facet * ch_facet, formulas::cosh2_vertex_facet_midpoint(n, c));
    r.metric_centroid_mass = relative(sm.centroid_mass, formulas::centroid_mass(n, c));
    for (long j = 0; j <= n; ++j) r.vertex_reflection = std::max(r.vertex_reflection, vertex_reflection_identity_residual(s, j));

    const BilliardOrbit o = construct_orbit(s, m);
    r.orbit = verify_orbit(s, o, tol.classify);
    r.midpoint_defect = midpoint_trajectory_defect(s);
    try {
        r.closure = closure_error(s, o);
    } catch (const TrajectoryError& err) {
        r.error = err.what();
        r.closure = std::numeric_limits<double>::infinity();
    }
    r.pass = judge(r, tol);
    return r;
}

/// Evaluates every (n, a) cell concurrently; results come back sorted by (n, a).
inline std::vector<CellReport> run_sweep(std::vector<int> dims, std::vector<EdgeSpec> edges, const Tolerances& tol) {
    std::sort(dims.begin(), dims.end());
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.cosh_edge < b.cosh_edge; });
    std::vector<std::future<CellReport>> jobs;
    for (int n : dims)
        for (const auto& e : edges) jobs.push_back(std::async(std::launch::async, verify_cell, n, e, tol));
    std::vector<CellReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

inline json cell_json(const CellReport& r, int digits) {
    return {{"n", r.n},
            {"edge", number(r.edge.edge, digits)},
            {"cosh_edge", number(r.edge.cosh_edge, digits)},
            {"mass_sequence", mass_sequence_json(r.sequence, digits)},
            {"checks", r.checks_json()},
            {"error", r.error},
            {"pass", r.pass}};
}

inline json tolerances_json(const Tolerances& t) {
    return {{"representation", t.representation}, {"identity", t.identity}, {"orbit", t.orbit},
            {"classify", t.classify},             {"incidence", t.incidence}, {"collinearity", t.collinearity},
            {"centroid", t.centroid},             {"angle", t.angle},         {"closure", t.closure},
            {"root", t.root},                     {"distance_identity", t.distance_identity}};
}

inline json report_json(const std::vector<CellReport>& cells, const Tolerances& tol, int digits) {
    json doc;
    doc["tolerances"] = tolerances_json(tol);
    doc["cells"] = json::array();
    bool all = true;
    for (const auto& c : cells) {
        doc["cells"].push_back(cell_json(c, digits));
        all = all && c.pass;
    }
    doc["pass"] = all;
    return doc;
}

/// Full orbit document: simplex, weights, bounce points, checks (and orthic feet for n = 2).
inline json orbit_json(const RegularSimplex& s, const BilliardOrbit& o, const CellReport& report, int digits) {
    json doc = simplex_json(s, digits);
    doc["mass_sequence"] = mass_sequence_json(report.sequence, digits);
    json orbit;
    orbit["lambda"] = number(o.lambda, digits);
    orbit["points"] = json::array();
    orbit["disk_points"] = json::array();
    orbit["masses"] = json::array();
    orbit["facets"] = o.facets;
    orbit["classification"] = json::array();
    for (std::size_t j = 0; j < o.size(); ++j) {
        orbit["points"].push_back(point_json(o.points[j], digits));
        orbit["disk_points"].push_back(coords_json(to_poincare_ball(o.points[j]), digits));
        orbit["masses"].push_back(number(o.masses[j], digits));
        orbit["classification"].push_back(report.orbit.bounces[j].classification.label());
    }
    orbit["facet_midpoint_offsets"] = coords_json(facet_midpoint_offsets(s, o), digits);
    doc["orbit"] = orbit;
    if (s.dim() == 2) {
        const auto feet = orthic_points(s);
        doc["orthic_points"] = json::array();
        double worst = 0.0;
        for (std::size_t i = 0; i < feet.size(); ++i) {
            doc["orthic_points"].push_back(point_json(feet[i], digits));
            worst = std::max(worst, dist(feet[i], o.points[i]));
        }
        doc["orthic_deviation"] = worst;
    }
    doc["checks"] = report.checks_json();
    return doc;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
}

/// Poincare-ball coordinates of the bounce points followed by the simplex vertices.
inline void write_disk_csv(std::ostream& out, const RegularSimplex& s, const BilliardOrbit& o, int digits) {
    std::vector<std::string> header{"kind", "index"};
    for (int i = 1; i <= s.dim(); ++i) header.push_back("d" + std::to_string(i));
    write_csv_row(out, header);
    auto emit = [&](const std::string& kind, std::size_t idx, const HPoint& p) {
        std::vector<std::string> row{kind, std::to_string(idx)};
        for (double c : to_poincare_ball(p)) row.push_back(format_number(c, digits));
        write_csv_row(out, row);
    };
    for (std::size_t j = 0; j < o.size(); ++j) emit("bounce", j, o.points[j]);
    for (std::size_t j = 0; j < s.vertex_count(); ++j) emit("vertex", j, s.vertices()[j]);
}

/// One row per bounce: step, facet, Minkowski coordinates, ball coordinates, segment length.
inline void write_trajectory_csv(std::ostream& out, std::size_t ambient, const std::vector<Bounce>& bounces, int digits) {
    std::vector<std::string> header{"step", "facet"};
    for (std::size_t i = 0; i < ambient; ++i) header.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i < ambient; ++i) header.push_back("d" + std::to_string(i));
    header.push_back("segment_length");
    write_csv_row(out, header);
    for (const auto& b : bounces) {
        std::vector<std::string> row{std::to_string(b.step), std::to_string(b.facet)};
        for (double c : b.point.coords()) row.push_back(format_number(c, digits));
        for (double c : to_poincare_ball(b.point)) row.push_back(format_number(c, digits));
        row.push_back(format_number(b.segment_length, digits));
        write_csv_row(out, row);
    }
}

/// "2..8" or "2,3,5" (or a mix, "2..4,7").
inline std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(part));
            } else {
                const int lo = std::stoi(part.substr(0, dots));
                const int hi = std::stoi(part.substr(dots + 2));
                if (hi < lo) throw std::invalid_argument("empty range");
                for (int n = lo; n <= hi; ++n) out.push_back(n);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse dimension list '" + text + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty dimension list");
    return out;
}

inline std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse number list '" + text + "'");
        }
        if (used != part.size()) throw std::invalid_argument("cannot parse number list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

} // namespace fagnano::io
