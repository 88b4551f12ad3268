// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "polymorse/bench.hpp"
#include "polymorse/cli.hpp"
#include "polymorse/fixtures.hpp"
#include "polymorse/oracle.hpp"
#include "polymorse/probe.hpp"
#include "sampling.hpp"

using namespace polymorse;
using namespace polymorse::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& fn) {
    Verdict v;
    try {
        v = fn();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << name << "  (" << v.detail << ")"
              << std::endl;
}

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polymorse");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "polymorse_acceptance";
    fs::create_directories(dir);
    return dir / name;
}

std::string census_text(const MSComplex& msc) {
    std::ostringstream os;
    os << msc.count(EquilibriumKind::stable) << "/" << msc.count(EquilibriumKind::saddle) << "/"
       << msc.count(EquilibriumKind::unstable) << " V=" << msc.vertices.size() << " E=" << msc.edges.size()
       << " cells=" << msc.cells.size();
    return os.str();
}

long long index_sum(const MSComplex& msc) {
    return static_cast<long long>(msc.count(EquilibriumKind::stable) + msc.count(EquilibriumKind::unstable)) -
           static_cast<long long>(msc.count(EquilibriumKind::saddle));
}

Verdict exact_census(const ReferencedPolyhedron& rp, std::size_t s, std::size_t h, std::size_t u, std::size_t cells,
                     double limit_s) {
    const auto t0 = Clock::now();
    const MSComplex msc = build_ms_complex(rp);
    const ValidationReport r = validate(msc);
    const double secs = seconds_since(t0);
    const bool counts = msc.count(EquilibriumKind::stable) == s && msc.count(EquilibriumKind::saddle) == h &&
                        msc.count(EquilibriumKind::unstable) == u && msc.vertices.size() == s + h + u &&
                        msc.edges.size() == 4 * h && msc.cells.size() == cells;
    std::ostringstream os;
    os << census_text(msc) << ", validate " << (r.pass() ? "ok" : "failed") << ", " << secs << " s";
    return {counts && r.pass() && secs < limit_s, os.str()};
}

// Independent carrier distance: point-plane or point-line distance.
double carrier_distance(const Polyhedron& p, const Point3& o, const Carrier& c) {
    if (c.kind == Carrier::Kind::face) {
        const auto& f = p.face(c.id);
        const Point3 a = p.vertex(f[0]), b = p.vertex(f[1]), d = p.vertex(f[2]);
        return std::abs(dot(o - a, normalized(cross(b - a, d - a))));
    }
    const Point3 a = p.vertex(p.edge(c.id).vertices[0]), b = p.vertex(p.edge(c.id).vertices[1]);
    return norm(cross(o - a, b - a)) / norm(b - a);
}

// Curve invariants checked from the polyline and carrier ids alone.
std::string curve_violation(const Polyhedron& p, const Point3& o, const AscendingCurve& c) {
    if (c.segments.empty()) return "empty curve";
    if (c.segments.size() > p.edge_count() + p.face_count()) return "more than E + F segments";
    std::set<std::pair<int, std::uint32_t>> seen;
    double last_carrier = -1.0;
    const std::vector<Point3> line = c.polyline();
    for (std::size_t i = 0; i < c.segments.size(); ++i) {
        const Carrier& k = c.segments[i].carrier;
        if (!seen.emplace(static_cast<int>(k.kind), k.id).second) return "repeated carrier";
        const double d = carrier_distance(p, o, k);
        if (!(d > last_carrier)) return "carrier distance not increasing";
        last_carrier = d;
        if (!(distance(line[i + 1], o) > distance(line[i], o))) return "distance from o not increasing";
    }
    return {};
}

Verdict gradient_suite() {
    std::vector<std::pair<std::string, ReferencedPolyhedron>> fixtures;
    fixtures.emplace_back("cube", with_reference(make_cube(), {0, 0, 0}));
    fixtures.emplace_back("pex", with_reference(make_pex(), kPexReference));
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        fixtures.emplace_back("random" + std::to_string(seed), with_centroid(make_random_hull(100, 1000 + seed)));

    const double h = 1e-6;
    std::mt19937_64 rng(2024);
    std::size_t samples = 0, fd_bad = 0, max_bad = 0, first_order_bad = 0, beyond_bias = 0;
    double worst_fd = 0.0, worst_max = 0.0;
    for (const auto& [name, rp] : fixtures) {
        const Polyhedron& p = rp.polyhedron();
        const Equilibria eq = find_equilibria(rp);
        for (int i = 0; i < 1000; ++i) {
            const SurfacePoint q = random_surface_point(p, rng);
            const ExtendedGradient g = extended_gradient(rp, q, eq.edge_classes);
            const double len = norm(g.vector);
            double best = -1.0;
            for (const Vec3& t : tangent_directions(p, q, 32, rng))
                best = std::max(best, directional_fd2(q.position, t, rp.origin(), h));
            ++samples;
            const double excess = best - len;
            worst_max = std::max(worst_max, excess);
            if (excess > 1e-6) ++max_bad;
            if (len > 0.0) {
                const Vec3 v = g.vector / len;
                const double rel = std::abs(directional_fd2(q.position, v, rp.origin(), h) - len) / len;
                worst_fd = std::max(worst_fd, rel);
                if (rel > 1e-4) ++fd_bad;
                // The plain quotient is reported, not judged: its bias is h / (2|q - o|).
                const double fd1 = directional_fd(q.position, v, rp.origin(), h);
                if (std::abs(fd1 - len) > 1e-4 * len) ++first_order_bad;
                if (std::abs(fd1 - len) > first_order_bias(q.position, rp.origin(), h) + 1e-9) ++beyond_bias;
            }
        }
    }
    std::ostringstream os;
    os << samples << " samples on " << fixtures.size() << " fixtures, fd misses " << fd_bad << " (worst rel "
       << worst_fd << "), maximality misses " << max_bad << " (worst excess " << worst_max
       << "); first-order quotient: " << first_order_bad << " beyond 1e-4 rel, " << beyond_bias
       << " beyond its truncation bound";
    return {fd_bad == 0 && max_bad == 0 && beyond_bias == 0, os.str()};
}

std::string strip_timings(const std::string& json) {
    const std::size_t at = json.find("\"timings_ms\"");
    if (at == std::string::npos) return json;
    const std::size_t close = json.find('}', at);
    return json.substr(0, at) + json.substr(close + 1);
}

}  // namespace

int main() {
    // Accepted random hulls feed criterion 7 as well.
    std::vector<MSComplex> random_complexes;

    report(1, "cube census", [] {
        return exact_census(with_reference(make_cube(), {0, 0, 0}), 6, 12, 8, 24, 0.1);
    });

    report(2, "tetrahedron census", [] {
        return exact_census(with_centroid(make_tetrahedron()), 4, 6, 4, 12, 0.1);
    });

    report(3, "pex reproduction", [] {
        const fs::path off = scratch("pex.off");
        const auto t0 = Clock::now();
        const CliRun gen = cli({"gen", "pex", "--out", off.string()});
        const CliRun run = cli({"analyze", off.string(), "--origin", "0.5,0.5,0.5", "--out", scratch("pex.json").string()});
        const double secs = seconds_since(t0);

        const ReferencedPolyhedron rp = with_reference(make_pex(), kPexReference);
        const MSComplex msc = build_ms_complex(rp);
        std::map<std::uint32_t, std::pair<int, int>> degree;
        for (const AscendingCurve& c : msc.edges) {
            if (c.role == CurveRole::stable_to_saddle) ++degree[c.destination].first;
            else ++degree[c.origin].second;
        }
        bool two_and_two = degree.size() == msc.count(EquilibriumKind::saddle);
        for (const auto& [id, d] : degree) two_and_two = two_and_two && d.first == 2 && d.second == 2;

        const GenericityVerdict probe = probe_genericity(rp, {20, 0.0, 1});
        const OracleResult oracle = oracle_basins(rp, {10000, 0.0, 1, 0});
        const OracleComparison cmp = compare_with_complex(rp, oracle, msc);

        std::ostringstream os;
        os << "exit " << run.code << ", " << census_text(msc) << ", S+U-H=" << index_sum(msc) << ", 2+2 curves "
           << (two_and_two ? "yes" : "no") << ", probe " << (probe.generic ? "generic" : "non-generic") << " ("
           << probe.detail << "), oracle adjacency " << cmp.oracle_adjacency.size() << " vs "
           << cmp.complex_adjacency.size() << ", incidences " << cmp.ring_incidences.size() << " vs "
           << cmp.cell_incidences.size() << ", disagreements " << cmp.disagreements << ", unlocated "
           << cmp.unlocated << ", analyze " << secs << " s";
        const bool ok = gen.code == kExitOk && run.code == kExitOk && probe.generic && index_sum(msc) == 2 &&
                        two_and_two && cmp.agrees() && secs < 1.0;
        return Verdict{ok, os.str()};
    });

    report(4, "non-generic detection", [] {
        const fs::path off = scratch("badguy.off");
        const CliRun gen = cli({"gen", "badguy", "--out", off.string()});
        const CliRun run = cli({"analyze", off.string(), "--origin", "0,0,0"});
        const std::size_t at = run.err.find("saddle-saddle");
        const bool witness = at != std::string::npos;
        std::string msg = run.err;
        if (witness) {
            const std::size_t begin = run.err.rfind('\n', at);
            msg = run.err.substr(begin == std::string::npos ? 0 : begin + 1);
        }
        msg = msg.substr(0, msg.find('\n'));
        return Verdict{gen.code == kExitOk && run.code == kExitNonGeneric && witness,
                       "exit " + std::to_string(run.code) + ", " + msg};
    });

    report(5, "curve invariants on random hulls", [&] {
        const auto t0 = Clock::now();
        std::size_t curves = 0, violations = 0, skipped = 0;
        std::string first;
        std::uint64_t seed = 1;
        while (random_complexes.size() < 50 && seed < 200) {
            const Vec3 axes = random_complexes.size() % 2 == 0 ? Vec3{1, 1, 1} : Vec3{1, 0.75, 0.5};
            const ReferencedPolyhedron rp = with_centroid(make_random_hull(100, seed++, axes));
            MSComplex msc;
            try {
                msc = build_ms_complex(rp);
            } catch (const NonGenericError&) {
                ++skipped;
                continue;
            }
            for (const AscendingCurve& c : msc.edges) {
                ++curves;
                const std::string v = curve_violation(rp.polyhedron(), rp.origin(), c);
                if (!v.empty()) {
                    ++violations;
                    if (first.empty()) first = "seed " + std::to_string(seed - 1) + ": " + v;
                }
            }
            random_complexes.push_back(std::move(msc));
        }
        const double secs = seconds_since(t0);
        std::ostringstream os;
        os << random_complexes.size() << " hulls (" << skipped << " non-generic skipped), " << curves << " curves, "
           << violations << " violations" << (first.empty() ? "" : " [" + first + "]") << ", " << secs << " s";
        return Verdict{random_complexes.size() == 50 && violations == 0 && secs < 10.0, os.str()};
    });

    report(6, "gradient correctness", [] { return gradient_suite(); });

    report(7, "index identity", [&] {
        std::vector<MSComplex> all{build_ms_complex(with_reference(make_cube(), {0, 0, 0})),
                                   build_ms_complex(with_centroid(make_tetrahedron())),
                                   build_ms_complex(with_reference(make_pex(), kPexReference))};
        std::size_t bad = 0;
        for (const MSComplex& m : all) bad += index_sum(m) != 2;
        for (const MSComplex& m : random_complexes) bad += index_sum(m) != 2;
        const std::size_t total = all.size() + random_complexes.size();
        return Verdict{bad == 0 && !random_complexes.empty(),
                       std::to_string(total) + " complexes, " + std::to_string(bad) + " violations"};
    });

    report(8, "basin openness", [] {
        std::ostringstream os;
        bool ok = true;
        for (const auto& [name, rp] : {std::pair{"cube", with_reference(make_cube(), {0, 0, 0})},
                                       std::pair{"pex", with_reference(make_pex(), kPexReference)}}) {
            const MSComplex msc = build_ms_complex(rp);
            const OracleResult oracle = oracle_basins(rp, {10000, 0.0, 11, 0});
            const OpennessReport open = basin_openness(oracle, msc);
            ok = ok && open.violations == 0 && open.checked > 0;
            os << name << ": " << open.checked << " checked, " << open.violations << " violations, "
               << oracle.ambiguous << " ambiguous; ";
        }
        return Verdict{ok, os.str()};
    });

    report(9, "complexity trend", [] {
        const BenchReport r = run_bench();
        std::ostringstream os;
        os << "steps 1-3 per-vertex spread " << r.linear_ratio << ", steps 4-5 slope " << r.tracing_slope
           << ", largest total " << r.largest_total_ms << " ms";
        for (const BenchRow& row : r.rows) os << "; n=" << row.vertices << " " << row.steps_1_3_ms << "/" << row.steps_4_5_ms << " ms";
        return Verdict{r.linear_ok() && r.quadratic_ok() && r.time_ok(), os.str()};
    });

    report(10, "determinism", [] {
        bool same = true;
        std::size_t bytes = 0;
        for (const char* kind : {"pex", "random", "cube"}) {
            const fs::path off = scratch(std::string("det_") + kind + ".off");
            cli({"gen", kind, "--n", "200", "--seed", "5", "--out", off.string()});
            const CliRun a = cli({"analyze", off.string()});
            const CliRun b = cli({"analyze", off.string()});
            same = same && a.code == b.code && strip_timings(a.out) == strip_timings(b.out) && !a.out.empty();
            bytes += a.out.size();
        }
        return Verdict{same, std::to_string(bytes) + " bytes compared across 3 inputs"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
