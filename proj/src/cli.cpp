#include "polymorse/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polymorse/bench.hpp"
#include "polymorse/document.hpp"
#include "polymorse/export.hpp"
#include "polymorse/fixtures.hpp"
#include "polymorse/mesh_io.hpp"
#include "polymorse/oracle.hpp"
#include "polymorse/probe.hpp"

namespace polymorse {
namespace {

struct UsageError : Error {
    using Error::Error;
};

Vec3 parse_triple(const std::string& text, const char* what) {
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + " must be x,y,z or centroid, got '" + text + "'");
        }
    }
    if (v.size() != 3) throw UsageError(std::string(what) + " needs three comma-separated numbers");
    return {v[0], v[1], v[2]};
}

ReferencedPolyhedron reference(Polyhedron poly, const std::string& origin) {
    if (origin == "centroid") return with_centroid(std::move(poly));
    return with_reference(std::move(poly), parse_triple(origin, "--origin"));
}

/// Writes to `path`, or to `fallback` when the path is empty or `-`.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error("cannot write " + path);
    write(file);
}

struct MeshArgs {
    std::string mesh;
    std::string origin = "centroid";
    double tol = kDefaultRelativeEpsilon;
};

void add_mesh_args(CLI::App* cmd, MeshArgs& a) {
    cmd->add_option("mesh", a.mesh, "OFF or OBJ file, - for OFF on stdin")->required();
    cmd->add_option("--origin", a.origin, "reference point x,y,z or centroid");
    cmd->add_option("--tol", a.tol, "relative tolerance")->check(CLI::PositiveNumber);
}

int analyze(const MeshArgs& a, const std::string& out_path, const std::string& curves_path, const std::string& format,
            int probe_trials, std::ostream& out, std::ostream& err) {
    const GraphFormat graph_format = parse_graph_format(format);
    const ReferencedPolyhedron rp = reference(load_mesh(a.mesh, a.tol), a.origin);
    if (!rp.polyhedron().is_simplicial())
        err << "warning: mesh has non-triangular faces; genericity is only defined for simplicial polyhedra\n";

    StepTimings timings;
    const auto t0 = std::chrono::steady_clock::now();
    const Equilibria eq = find_equilibria(rp);
    const auto t1 = std::chrono::steady_clock::now();
    const MSComplex msc = build_ms_complex(rp, eq);
    const auto t2 = std::chrono::steady_clock::now();
    timings.steps_1_3_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    timings.steps_4_5_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

    const ValidationReport report = validate(msc);
    emit(out_path, out, [&](std::ostream& o) {
        if (graph_format == GraphFormat::json) o << to_json(make_document(rp, eq, msc, report, timings));
        else export_graph(msc, graph_format, o);
    });
    if (!curves_path.empty()) export_curves(msc, curve_format_for(curves_path), curves_path);

    for (const ValidationFailure& f : report.failures) err << "validation: " << f.check << ": " << f.message << '\n';
    if (!report.pass()) return kExitInvalid;

    if (probe_trials > 0) {
        const GenericityVerdict v = probe_genericity(rp, ProbeOptions{probe_trials, 0.0, 1});
        err << "genericity probe: " << (v.generic ? "generic" : "non-generic") << " (" << v.detail << ")\n";
        if (!v.generic) return kExitNonGeneric;
    }
    return kExitOk;
}

int oracle_cmd(const MeshArgs& a, const OracleOptions& options, const std::string& against, std::ostream& out,
               std::ostream& err) {
    using nlohmann::json;
    const ReferencedPolyhedron rp = reference(load_mesh(a.mesh, a.tol), a.origin);
    const OracleResult res = oracle_basins(rp, options);

    json census = json::object();
    for (const auto& [id, n] : res.census) census[std::to_string(id)] = n;
    json j{{"samples", res.samples.size()},
           {"ambiguous", res.ambiguous},
           {"spacing", res.spacing},
           {"step", res.step},
           {"census", census},
           {"adjacency", res.adjacency}};

    int code = kExitOk;
    if (!against.empty()) {
        std::ifstream in(against);
        if (!in) throw ParseError("cannot open " + against, 0);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const AnalysisDocument doc = document_from_json(text);
        const MSComplex recorded = complex_from_document(doc);
        const OracleComparison cmp = compare_with_complex(rp, res, recorded);
        const OpennessReport open = basin_openness(res, recorded);
        j["comparison"] = {{"agrees", cmp.agrees()},
                           {"complex_adjacency", cmp.complex_adjacency},
                           {"ring_incidences", cmp.ring_incidences},
                           {"cell_incidences", cmp.cell_incidences},
                           {"located", cmp.located},
                           {"curve_adjacent", cmp.curve_adjacent},
                           {"unlocated", cmp.unlocated},
                           {"disagreements", cmp.disagreements},
                           {"messages", cmp.messages}};
        j["openness"] = {{"checked", open.checked}, {"violations", open.violations}, {"radius", open.radius}};
        if (!cmp.agrees() || open.violations > 0) {
            err << "oracle disagrees with " << against << '\n';
            code = kExitInvalid;
        }
    }
    out << j.dump(2) << '\n';
    return code;
}

Polyhedron generate(const std::string& kind, std::size_t n, std::uint64_t seed, const std::string& axes) {
    if (kind == "cube") return make_cube();
    if (kind == "tetra") return make_tetrahedron();
    if (kind == "pex") return make_pex();
    if (kind == "badguy") return make_badguy();
    if (kind == "random") return make_random_hull(n, seed, parse_triple(axes, "--axes"));
    throw UsageError("unknown fixture '" + kind + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Morse-Smale complexes of convex polyhedra under the radial distance function", "polymorse"};
    app.require_subcommand(1);

    MeshArgs mesh_args;
    std::string out_path, curves_path, format = "json", against, gen_kind, axes = "1,1,1";
    int probe_trials = 0, reps = 5;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    double eps = 1e-6;
    OracleOptions oracle_options;
    std::vector<std::size_t> sizes{100, 1000, 10000};

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "build and validate the Morse-Smale complex");
    add_mesh_args(analyze_cmd, mesh_args);
    analyze_cmd->add_option("--out", out_path, "output file (default stdout)");
    analyze_cmd->add_option("--curves", curves_path, "write curve polylines (.obj or .vtk)");
    analyze_cmd->add_option("--format", format, "json, dot or graphml")->check(CLI::IsMember({"json", "dot", "graphml"}));
    analyze_cmd->add_option("--probe", probe_trials, "also run a perturbation genericity probe with this many trials");

    CLI::App* eq_cmd = app.add_subcommand("equilibria", "list equilibria and nondegeneracy findings");
    add_mesh_args(eq_cmd, mesh_args);
    eq_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "write a fixture polyhedron as OFF");
    gen_cmd->add_option("kind", gen_kind, "cube, tetra, pex, badguy or random")->required();
    gen_cmd->add_option("--n", n, "point count for random hulls");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--axes", axes, "ellipsoid semi-axes a,b,c for random hulls");
    gen_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* oracle_cmd_app = app.add_subcommand("oracle", "dense-sampling basin oracle");
    add_mesh_args(oracle_cmd_app, mesh_args);
    oracle_cmd_app->add_option("--samples", oracle_options.samples, "sample count");
    oracle_cmd_app->add_option("--step", oracle_options.step, "ascent step length (0 = automatic)");
    oracle_cmd_app->add_option("--seed", oracle_options.seed, "random seed");
    oracle_cmd_app->add_option("--against", against, "analysis JSON to compare with");

    CLI::App* perturb_cmd = app.add_subcommand("perturb", "write a randomly perturbed copy as OFF");
    perturb_cmd->add_option("mesh", mesh_args.mesh, "OFF or OBJ file, - for OFF on stdin")->required();
    perturb_cmd->add_option("--eps", eps, "perturbation magnitude")->check(CLI::PositiveNumber);
    perturb_cmd->add_option("--seed", seed, "random seed");
    perturb_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* bench_cmd = app.add_subcommand("bench", "time the algorithm steps on random hulls");
    bench_cmd->add_option("--sizes", sizes, "hull sizes");
    bench_cmd->add_option("--reps", reps, "repetitions per size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", seed, "first random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze_cmd->parsed())
            return analyze(mesh_args, out_path, curves_path, format, probe_trials, out, err);
        if (eq_cmd->parsed()) {
            const ReferencedPolyhedron rp = reference(load_mesh(mesh_args.mesh, mesh_args.tol), mesh_args.origin);
            const Equilibria eq = find_equilibria(rp);
            emit(out_path, out, [&](std::ostream& o) { o << equilibria_json(rp, eq); });
            return eq.report.degenerate() ? kExitNonGeneric : kExitOk;
        }
        if (gen_cmd->parsed()) {
            const Polyhedron poly = generate(gen_kind, n, seed, axes);
            emit(out_path, out, [&](std::ostream& o) { write_off(o, poly); });
            return kExitOk;
        }
        if (oracle_cmd_app->parsed()) return oracle_cmd(mesh_args, oracle_options, against, out, err);
        if (perturb_cmd->parsed()) {
            const Polyhedron poly = perturb(load_mesh(mesh_args.mesh), eps, seed);
            emit(out_path, out, [&](std::ostream& o) { write_off(o, poly); });
            return kExitOk;
        }
        if (bench_cmd->parsed()) {
            BenchOptions options;
            options.sizes = sizes;
            options.repetitions = reps;
            options.seed = seed;
            const BenchReport report = run_bench(options);
            print_bench(report, out);
            return report.linear_ok() && report.quadratic_ok() && report.time_ok() ? kExitOk : kExitInvalid;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonGenericError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonGeneric;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kExitInternal;
    } catch (const MeshError& e) {
        err << "invalid mesh (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}

}  // namespace polymorse
