// fagnano: build, verify, sweep and simulate periodic billiard orbits in regular
// hyperbolic simplices.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 solver failure,
// 4 non-smooth trajectory hit.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fagnano/fagnano.hpp"
#include "fagnano/io.hpp"

namespace {

using namespace fagnano;
using fagnano::io::json;

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kSolver = 3, kNonSmooth = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeFlags {
    std::optional<double> edge;
    std::optional<double> cosh_edge;

    void add(CLI::App* cmd) {
        cmd->add_option("--edge", edge, "Edge length a > 0");
        cmd->add_option("--cosh-edge", cosh_edge, "cosh of the edge length (> 1); wins over --edge");
    }

    io::EdgeSpec resolve() const {
        if (cosh_edge) {
            if (!(*cosh_edge > 1.0) || !std::isfinite(*cosh_edge)) throw UsageError("--cosh-edge must exceed 1");
            return io::EdgeSpec::cosh(*cosh_edge);
        }
        if (!edge) throw UsageError("one of --edge or --cosh-edge is required");
        if (!(*edge > 0.0) || !std::isfinite(*edge)) throw UsageError("--edge must be positive");
        return io::EdgeSpec::length(*edge);
    }
};

struct TolFlags {
    std::optional<double> all;
    std::optional<double> incidence, collinearity, centroid, angle, closure, identity, root;

    void add(CLI::App* cmd) {
        cmd->add_option("--tol", all, "Override every tolerance with one value");
        cmd->add_option("--tol-incidence", incidence);
        cmd->add_option("--tol-collinearity", collinearity);
        cmd->add_option("--tol-centroid", centroid);
        cmd->add_option("--tol-angle", angle);
        cmd->add_option("--tol-closure", closure);
        cmd->add_option("--tol-identity", identity);
        cmd->add_option("--tol-root", root);
    }

    Tolerances resolve() const {
        Tolerances t = all ? Tolerances::uniform(*all) : Tolerances{};
        auto set = [](double& field, const std::optional<double>& v) {
            if (!v) return;
            if (!(*v > 0.0)) throw UsageError("tolerances must be positive");
            field = *v;
        };
        if (all && !(*all > 0.0)) throw UsageError("tolerances must be positive");
        set(t.incidence, incidence);
        set(t.collinearity, collinearity);
        set(t.centroid, centroid);
        set(t.angle, angle);
        set(t.closure, closure);
        set(t.identity, identity);
        set(t.root, root);
        return t;
    }
};

void check_precision(int digits) {
    if (digits < 1 || digits > 17) throw UsageError("--precision must be in 1..17");
}

void emit_json(const json& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open " + path + " for writing");
    fn(out);
}

int cmd_simplex(int n, const EdgeFlags& ef, const std::string& json_path, int digits) {
    if (n < 1) throw UsageError("--dim must be at least 1 for the simplex command");
    check_precision(digits);
    const auto s = ef.resolve().simplex(n);
    emit_json(io::simplex_json(s, digits), json_path);
    return kPass;
}

int cmd_orbit(int n, const EdgeFlags& ef, const TolFlags& tf, const std::string& json_path,
              const std::string& disk_path, int digits) {
    if (n < 2) throw UsageError("--dim must be at least 2 for orbit commands");
    check_precision(digits);
    const auto edge = ef.resolve();
    const auto tol = tf.resolve();
    const auto s = edge.simplex(n);
    const auto report = io::verify_cell(n, edge, tol);
    const auto o = construct_orbit(s, report.sequence);
    emit_json(io::orbit_json(s, o, report, digits), json_path);
    if (!disk_path.empty()) with_output(disk_path, [&](std::ostream& out) { io::write_disk_csv(out, s, o, digits); });
    if (!report.error.empty()) std::cerr << "orbit: " << report.error << '\n';
    return report.pass ? kPass : kFail;
}

int cmd_verify(const std::string& dims_text, const std::string& edges_text, const std::string& cosh_text,
               const TolFlags& tf, const std::string& report_path, int digits) {
    check_precision(digits);
    std::vector<int> dims;
    std::vector<io::EdgeSpec> edges;
    try {
        dims = io::parse_dims(dims_text);
        if (!cosh_text.empty())
            for (double c : io::parse_reals(cosh_text)) {
                if (!(c > 1.0)) throw UsageError("--cosh-edges entries must exceed 1");
                edges.push_back(io::EdgeSpec::cosh(c));
            }
        else
            for (double a : io::parse_reals(edges_text)) {
                if (!(a > 0.0)) throw UsageError("--edges entries must be positive");
                edges.push_back(io::EdgeSpec::length(a));
            }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (int n : dims)
        if (n < 2) throw UsageError("--dims entries must be at least 2");
    const auto tol = tf.resolve();
    const auto cells = io::run_sweep(dims, edges, tol);
    const json doc = io::report_json(cells, tol, digits);
    emit_json(doc, report_path);
    for (const auto& c : cells)
        std::cerr << "n=" << c.n << " a=" << io::format_number(c.edge.edge, 6) << (c.pass ? " PASS" : " FAIL")
                  << (c.error.empty() ? "" : " (" + c.error + ")") << '\n';
    return doc["pass"].get<bool>() ? kPass : kFail;
}

struct SimulateFlags {
    int n = 0;
    EdgeFlags edge;
    std::size_t steps = 0;
    bool steps_set = false;
    bool from_orbit = false;
    std::string start_weights, start_coords, toward_weights, toward_coords;
    double perturb = 0.0;
    std::string csv_path;
    int digits = 17;
};

HPoint point_from_flags(const RegularSimplex& s, const std::string& weights, const std::string& coords,
                        const char* what) {
    try {
        if (!weights.empty()) {
            const auto w = io::parse_reals(weights);
            if (w.size() != s.vertex_count())
                throw UsageError(std::string(what) + " weights need one entry per vertex");
            return centroid_fold(vertex_masses(s, w)).location;
        }
        if (!coords.empty()) {
            auto c = io::parse_reals(coords);
            if (c.size() != s.ambient_dim())
                throw UsageError(std::string(what) + " coordinates need " + std::to_string(s.ambient_dim()) + " entries");
            return HPoint::checked(std::move(c), 1e-9);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const GeometryError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
    throw UsageError(std::string("missing ") + what + " point (weights or coordinates)");
}

/// Rotates v by `angle` toward a deterministic tangent direction orthogonal to it.
TangentVec perturbed(const RegularSimplex& s, const TangentVec& v, double angle) {
    if (angle == 0.0) return v;
    for (const auto& target : s.vertices()) {
        if (dist(target, v.base()) < 1e-9) continue;
        const Vec t = tangent_toward(v.base(), target).dir();
        Vec w = detail::axpby(1.0, t, -mink_inner(t, v.dir()), v.dir());
        const double q = mink_inner(w, w);
        if (q < 1e-12) continue;
        for (auto& c : w) c /= std::sqrt(q);
        return TangentVec::make(v.base(), detail::axpby(std::cos(angle), v.dir(), std::sin(angle), w));
    }
    throw UsageError("cannot find a perturbation direction");
}

int cmd_simulate(const SimulateFlags& f) {
    if (f.n < 2) throw UsageError("--dim must be at least 2 for orbit commands");
    check_precision(f.digits);
    const auto edge = f.edge.resolve();
    const auto s = edge.simplex(f.n);

    FlowState st = [&] {
        if (f.from_orbit) {
            const auto o = construct_orbit(s, io::sequence_for(s, edge));
            return FlowState{tangent_toward(o.point(0), o.point(1)), o.facet(0)};
        }
        const HPoint start = point_from_flags(s, f.start_weights, f.start_coords, "start");
        const HPoint toward = point_from_flags(s, f.toward_weights, f.toward_coords, "toward");
        const PointClass cls = classify_point(s, start);
        if (cls.kind == PointClass::Kind::outside || cls.kind == PointClass::Kind::lower_boundary)
            throw UsageError("start point must be interior or in the interior of a facet");
        if (dist(start, toward) < 1e-12) throw UsageError("start and toward points coincide");
        return FlowState{tangent_toward(start, toward), cls.facet};
    }();
    st.ray = perturbed(s, st.ray, f.perturb);
    if (st.last_facet && mink_inner(st.ray.dir(), s.facet(static_cast<long>(*st.last_facet)).hyperplane.normal()) <= 0.0)
        throw UsageError("initial direction must point into the simplex");

    const std::size_t steps = f.steps_set ? f.steps : s.vertex_count();
    const auto walls = facet_planes(s);
    std::vector<Bounce> bounces;
    int code = kPass;
    try {
        bounces = iterate(walls, st, steps);
    } catch (const TrajectoryError& e) {
        std::cerr << "simulate: " << e.what() << '\n';
        // Emit the bounces up to the failing step for inspection.
        if (e.step() > 1) bounces = iterate(walls, st, e.step() - 1);
        code = kNonSmooth;
    }
    with_output(f.csv_path, [&](std::ostream& out) { io::write_trajectory_csv(out, s.ambient_dim(), bounces, f.digits); });
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic billiard orbits in regular hyperbolic simplices"};
    app.require_subcommand(1);

    int n = 0;
    EdgeFlags edge;
    TolFlags tol;
    std::string json_path, disk_path;
    int digits = 17;

    auto* simplex = app.add_subcommand("simplex", "Construct a regular simplex and report its measurements");
    simplex->add_option("--dim", n, "Dimension n >= 1")->required();
    edge.add(simplex);
    simplex->add_option("--json", json_path, "Output path (default stdout)");
    simplex->add_option("--precision", digits, "Significant digits (1..17)");

    auto* orbit = app.add_subcommand("orbit", "Construct and verify the periodic orbit");
    orbit->add_option("--dim", n, "Dimension n >= 2")->required();
    edge.add(orbit);
    tol.add(orbit);
    orbit->add_option("--json", json_path, "Output path (default stdout)");
    orbit->add_option("--disk-coords", disk_path, "CSV of Poincare-ball coordinates");
    orbit->add_option("--precision", digits, "Significant digits (1..17)");

    std::string dims_text, edges_text, cosh_text, report_path;
    auto* verify = app.add_subcommand("verify", "Verify every (n, a) cell of a sweep");
    verify->add_option("--dims", dims_text, "Dimensions, e.g. 2..8 or 2,3,5")->required();
    verify->add_option("--edges", edges_text, "Edge lengths, e.g. 0.5,1,2");
    verify->add_option("--cosh-edges", cosh_text, "cosh of the edge lengths; wins over --edges");
    tol.add(verify);
    verify->add_option("--report", report_path, "Report path (default stdout)");
    verify->add_option("--precision", digits, "Significant digits (1..17)");

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run the billiard flow and write bounces as CSV");
    simulate->add_option("--dim", sim.n, "Dimension n >= 2")->required();
    sim.edge.add(simulate);
    simulate->add_option("--steps", sim.steps, "Number of bounces (default n+1)");
    simulate->add_flag("--from-orbit", sim.from_orbit, "Start at P_0 heading to P_1 of the constructed orbit");
    simulate->add_option("--start-weights", sim.start_weights, "Start at the centroid of these vertex weights");
    simulate->add_option("--start-coords", sim.start_coords, "Start at these Minkowski coordinates");
    simulate->add_option("--toward-weights", sim.toward_weights, "Head toward the centroid of these weights");
    simulate->add_option("--toward-coords", sim.toward_coords, "Head toward these Minkowski coordinates");
    simulate->add_option("--perturb", sim.perturb, "Rotate the initial direction by this angle (radians)");
    simulate->add_option("--csv", sim.csv_path, "Output path (default stdout)");
    simulate->add_option("--precision", sim.digits, "Significant digits (1..17)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    sim.steps_set = simulate->count("--steps") > 0;

    try {
        if (*simplex) return cmd_simplex(n, edge, json_path, digits);
        if (*orbit) return cmd_orbit(n, edge, tol, json_path, disk_path, digits);
        if (*verify) {
            if (edges_text.empty() && cosh_text.empty()) throw UsageError("one of --edges or --cosh-edges is required");
            return cmd_verify(dims_text, edges_text, cosh_text, tol, report_path, digits);
        }
        if (*simulate) return cmd_simulate(sim);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const TrajectoryError& e) {
        std::cerr << "non-smooth trajectory: " << e.what() << '\n';
        return kNonSmooth;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
