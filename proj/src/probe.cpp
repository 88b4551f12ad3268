#include "polymorse/probe.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "polymorse/hull.hpp"

namespace polymorse {
namespace {

struct Pairing {
    Point3 saddle;
    std::array<std::uint32_t, 2> origins{};
    std::array<std::uint32_t, 2> destinations{};
};

std::uint32_t nearest(const Equilibria& eq, EquilibriumKind kind, const Point3& p) {
    std::uint32_t best = kNone;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < eq.points.size(); ++i) {
        if (eq.points[i].kind != kind) continue;
        const double d = distance(eq.points[i].location.position, p);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

/// Pairings of `traced` with every equilibrium id expressed in `base` numbering.
std::vector<Pairing> pairings(const std::vector<SaddleCurves>& traced, const Equilibria& eq, const Equilibria& base) {
    std::vector<Pairing> out;
    for (const SaddleCurves& sc : traced) {
        Pairing p;
        p.saddle = eq.points[sc.saddle].location.position;
        for (int k = 0; k < 2; ++k) {
            p.origins[k] = nearest(base, EquilibriumKind::stable, eq.points[sc.down[k].origin].location.position);
            p.destinations[k] = nearest(base, EquilibriumKind::unstable, eq.points[sc.up[k].destination].location.position);
        }
        std::sort(p.origins.begin(), p.origins.end());
        std::sort(p.destinations.begin(), p.destinations.end());
        out.push_back(p);
    }
    return out;
}

Polyhedron perturb_planes(const Polyhedron& poly, double magnitude, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> jitter(-magnitude, magnitude);
    const double tilt = magnitude / poly.diameter();
    std::vector<Plane> planes;
    planes.reserve(poly.face_count());
    for (FaceId f = 0; f < poly.face_count(); ++f) {
        const Plane& pl = poly.face_plane(f);
        const Vec3 n = normalized(pl.normal + Vec3{jitter(rng), jitter(rng), jitter(rng)} * (tilt / magnitude));
        const Point3 anchor = pl.offset * pl.normal + n * jitter(rng);
        planes.push_back(Plane::through(anchor, n));
    }
    HullMesh mesh = halfspace_intersection(planes, poly.tolerance().relative);
    if (mesh.faces.size() != poly.face_count() || mesh.vertices.size() != poly.vertex_count())
        throw MeshError(MeshError::Kind::degenerate_hull, "perturbation changed the face structure");
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
        if (mesh.faces[f].size() != poly.face(static_cast<FaceId>(f)).size())
            throw MeshError(MeshError::Kind::degenerate_hull, "perturbation changed the face structure");
    return Polyhedron::build(std::move(mesh.vertices), std::move(mesh.faces), poly.tolerance().relative);
}

}  // namespace

Polyhedron perturb(const Polyhedron& poly, double magnitude, std::uint64_t seed) {
    if (!(magnitude > 0.0)) throw PreconditionError("perturbation magnitude must be positive");
    std::mt19937_64 rng(seed);
    if (!poly.is_simplicial()) return perturb_planes(poly, magnitude, rng);

    std::uniform_real_distribution<double> jitter(-magnitude, magnitude);
    std::vector<Point3> verts(poly.vertices().begin(), poly.vertices().end());
    for (Point3& v : verts) v += Vec3{jitter(rng), jitter(rng), jitter(rng)};
    return Polyhedron::build(std::move(verts), poly.faces(), poly.tolerance().relative);
}

GenericityVerdict probe_genericity(const ReferencedPolyhedron& rp, const ProbeOptions& options) {
    GenericityVerdict verdict;
    const double magnitude = options.magnitude > 0.0 ? options.magnitude : 10.0 * rp.tolerance().length();

    const Equilibria base = find_equilibria(rp);
    if (base.report.degenerate()) {
        verdict.witness = base.report.findings.front();
        verdict.detail = "degenerate: " + describe(*verdict.witness);
        return verdict;
    }
    std::vector<SaddleCurves> base_curves;
    try {
        base_curves = trace_all_saddles(rp, base);
    } catch (const NonGenericError& err) {
        verdict.witness = err.witness();
        verdict.detail = describe(err.witness());
        return verdict;
    }
    const std::vector<Pairing> expected = pairings(base_curves, base, base);

    for (int trial = 0; trial < options.trials; ++trial) {
        auto discard = [&](const std::string& why) {
            ++verdict.trials_discarded;
            verdict.discard_reasons.push_back("trial " + std::to_string(trial) + ": " + why);
        };
        std::optional<ReferencedPolyhedron> moved;
        try {
            auto shaped = std::make_shared<const Polyhedron>(
                perturb(rp.polyhedron(), magnitude, options.seed + static_cast<std::uint64_t>(trial)));
            moved = with_reference(shaped, rp.origin(), rp.provenance());
        } catch (const MeshError& err) {
            discard(err.what());
            continue;
        }
        const Equilibria eq = find_equilibria(*moved);
        if (eq.report.degenerate()) {
            discard("degenerate: " + describe(eq.report.findings.front()));
            continue;
        }
        if (eq.stable_count() != base.stable_count() || eq.saddle_count() != base.saddle_count() ||
            eq.unstable_count() != base.unstable_count()) {
            discard("equilibrium census changed");
            continue;
        }
        ++verdict.trials_run;

        std::vector<SaddleCurves> curves;
        try {
            curves = trace_all_saddles(*moved, eq);
        } catch (const NonGenericError& err) {
            verdict.witness = err.witness();
            verdict.detail = "trial " + std::to_string(trial) + ": " + describe(err.witness());
            return verdict;
        }
        const std::vector<Pairing> got = pairings(curves, eq, base);
        std::vector<char> used(got.size(), 0);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            std::size_t match = got.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < got.size(); ++j)
                if (double d = distance(got[j].saddle, expected[i].saddle); d < best) {
                    best = d;
                    match = j;
                }
            const bool same = match < got.size() && !used[match] && got[match].origins == expected[i].origins &&
                              got[match].destinations == expected[i].destinations;
            if (!same) {
                verdict.detail = "trial " + std::to_string(trial) + ": saddle " +
                                 std::to_string(base_curves[i].saddle) + " changed its connections";
                return verdict;
            }
            used[match] = 1;
        }
    }
    if (verdict.trials_run == 0)
        throw InconclusiveError("all " + std::to_string(options.trials) + " perturbation trials were discarded");
    verdict.generic = true;
    verdict.detail = std::to_string(verdict.trials_run) + " trials agree";
    return verdict;
}

}  // namespace polymorse
