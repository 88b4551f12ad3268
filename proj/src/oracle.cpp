#include "polymorse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

namespace polymorse {
namespace {

/// Uniform grid over sample positions for fixed-radius neighbour queries.
class PointGrid {
public:
    PointGrid(const std::vector<OracleSample>& samples, double cell) : samples_(samples), cell_(cell) {
        for (std::size_t i = 0; i < samples.size(); ++i) buckets_[key(cell_of(samples[i].position))].push_back(i);
    }

    /// Up to `k` nearest samples other than i within radius r.
    std::vector<std::size_t> neighbours(std::size_t i, double r, std::size_t k) const {
        const Point3& p = samples_[i].position;
        const auto c = cell_of(p);
        std::vector<std::pair<double, std::size_t>> found;
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy)
                for (long dz = -1; dz <= 1; ++dz) {
                    const auto it = buckets_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
                    if (it == buckets_.end()) continue;
                    for (std::size_t j : it->second) {
                        if (j == i) continue;
                        const double d = distance(p, samples_[j].position);
                        if (d <= r) found.emplace_back(d, j);
                    }
                }
        std::sort(found.begin(), found.end());
        if (found.size() > k) found.resize(k);
        std::vector<std::size_t> out;
        for (const auto& [d, j] : found) out.push_back(j);
        return out;
    }

private:
    std::array<long, 3> cell_of(const Point3& p) const {
        return {static_cast<long>(std::floor(p.x / cell_)), static_cast<long>(std::floor(p.y / cell_)),
                static_cast<long>(std::floor(p.z / cell_))};
    }
    static std::uint64_t key(const std::array<long, 3>& c) {
        const auto h = [](long v) { return static_cast<std::uint64_t>(v + (1L << 20)) & 0x1fffffu; };
        return (h(c[0]) << 42) | (h(c[1]) << 21) | h(c[2]);
    }

    const std::vector<OracleSample>& samples_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

constexpr double kNeighbourRadius = 1.2;  // in sample spacings
constexpr double kCurveMargin = 2.0;      // in sample spacings
constexpr std::size_t kNeighbours = 8;
constexpr std::size_t kCandidatesPerPair = 64;
constexpr double kBisectionResolution = 1e-7;  // relative to the diameter

IdPair unordered(std::uint32_t a, std::uint32_t b) { return a < b ? IdPair{a, b} : IdPair{b, a}; }

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
    const Vec3 ab = b - a;
    const double len2 = norm2(ab);
    const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return distance(p, a + t * ab);
}

std::vector<char> curve_adjacent_flags(const std::vector<OracleSample>& samples, const MSComplex& msc, double margin) {
    std::vector<char> flags(samples.size(), 0);
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (const AscendingCurve& c : msc.edges) {
            for (const CurveSegment& s : c.segments)
                if (point_segment_distance(samples[i].position, s.start.position, s.end.position) < margin) {
                    flags[i] = 1;
                    break;
                }
            if (flags[i]) break;
        }
    return flags;
}

/// True when the minor great-circle arcs ab and cd cross.
bool arcs_cross(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Vec3 n1 = cross(a, b);
    const Vec3 n2 = cross(c, d);
    if (dot(n1, c) * dot(n1, d) >= 0.0) return false;
    if (dot(n2, a) * dot(n2, b) >= 0.0) return false;
    const Vec3 t = cross(n1, n2);
    return (dot(t, a + b) > 0.0) == (dot(t, c + d) > 0.0);
}

/// A cell as closed spherical polygon around the origin with an interior
/// reference direction.
struct SphericalCell {
    std::vector<std::pair<Vec3, Vec3>> arcs;
    Vec3 reference;
    std::uint32_t stable = kNone;
    std::uint32_t unstable = kNone;
    /// Point on the sector bisector halfway to the face boundary.
    Point3 probe;
    /// Quarter of the sector width at the probe.
    double probe_step = 0.0;
};

/// Room around a stable point inside its face.
double stable_room(const Polyhedron& poly, const Equilibrium& x) {
    const FaceId f = x.carrier().id;
    const auto& face = poly.face(f);
    double room = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < face.size(); ++i)
        room = std::min(room, dot(x.location.position - poly.vertex(face[i]), poly.inward_edge_normal(f, i)));
    return room;
}

std::vector<SphericalCell> spherical_cells(const ReferencedPolyhedron& rp, const MSComplex& msc) {
    const Polyhedron& poly = rp.polyhedron();
    const Point3& o = rp.origin();
    auto dir = [&](const Point3& p) { return normalized(p - o); };

    std::vector<SphericalCell> out;
    for (const Cell& cell : msc.cells) {
        SphericalCell sc;
        sc.unstable = cell.corners[2];
        for (std::uint32_t e : cell.edges)
            for (const CurveSegment& s : msc.edges[e].segments)
                sc.arcs.emplace_back(dir(s.start.position), dir(s.end.position));

        // Reference: just off the stable corner along the bisector of the
        // sector between the two stable-side curves.
        const Equilibrium& x = msc.vertices[cell.corners[0]];
        const FaceId f = x.carrier().id;
        const Vec3& n = poly.face_plane(f).normal;
        const Vec3 di = normalized(msc.edges[cell.edges[0]].segments.front().end.position - x.location.position);
        const Vec3 dj = normalized(msc.edges[cell.edges[3]].segments.front().end.position - x.location.position);
        double sweep = std::atan2(dot(cross(di, dj), n), dot(di, dj));
        if (sweep <= 0.0) sweep += 2.0 * std::numbers::pi;
        const double half = sweep / 2.0;
        const Vec3 bis = std::cos(half) * di + std::sin(half) * cross(n, di);

        const double room = stable_room(poly, x);
        sc.reference = dir(x.location.position + 1e-4 * room * bis);
        sc.stable = cell.corners[0];
        sc.probe = x.location.position + 0.5 * room * bis;
        sc.probe_step = 0.25 * room * std::sin(std::min(half, std::numbers::pi / 2.0));
        out.push_back(std::move(sc));
    }
    return out;
}

bool inside(const SphericalCell& cell, const Vec3& u) {
    std::size_t crossings = 0;
    for (const auto& [a, b] : cell.arcs)
        if (arcs_cross(u, cell.reference, a, b)) ++crossings;
    return crossings % 2 == 0;
}

}  // namespace

std::optional<std::uint32_t> ascend(const ReferencedPolyhedron& rp, const Equilibria& eq, Point3 start, double step,
                                    std::size_t budget) {
    const Polyhedron& poly = rp.polyhedron();
    const double capture = 2.0 * step;
    SurfacePoint q = locate(poly, start);

    auto captured = [&](VertexId v) {
        return eq.unstable_of_vertex[v] != kNone && distance(q.position, poly.vertex(v)) <= capture;
    };
    for (std::size_t k = 0; k < budget; ++k) {
        switch (q.carrier.kind) {
            case Carrier::Kind::face:
                for (VertexId v : poly.face(q.carrier.id))
                    if (captured(v)) return eq.unstable_of_vertex[v];
                break;
            case Carrier::Kind::edge:
                for (VertexId v : poly.edge(q.carrier.id).vertices)
                    if (captured(v)) return eq.unstable_of_vertex[v];
                break;
            case Carrier::Kind::vertex:
                if (captured(q.carrier.id)) return eq.unstable_of_vertex[q.carrier.id];
                break;
        }
        ExtendedGradient g;
        try {
            g = extended_gradient(rp, q, eq.edge_classes);
        } catch (const NonGenericError&) {
            return std::nullopt;
        }
        const double len = norm(g.vector);
        if (len == 0.0) return std::nullopt;
        const Point3 moved = q.position + (step / len) * g.vector;
        q = radial_function(rp, normalized(moved - rp.origin())).point;
    }
    return std::nullopt;
}

OracleResult oracle_basins(const ReferencedPolyhedron& rp, const OracleOptions& options) {
    const Polyhedron& poly = rp.polyhedron();
    if (options.samples == 0) throw PreconditionError("oracle needs at least one sample");

    OracleResult out;
    out.equilibria = find_equilibria(rp);
    const Equilibria& eq = out.equilibria;

    double shortest = std::numeric_limits<double>::infinity();
    for (EdgeId e = 0; e < poly.edge_count(); ++e) shortest = std::min(shortest, poly.edge_length(e));
    out.spacing = std::sqrt(poly.surface_area() / static_cast<double>(options.samples));
    out.step = options.step > 0.0 ? options.step : std::min(0.1 * out.spacing, 0.25 * shortest);
    const std::size_t budget =
        options.budget > 0 ? options.budget : static_cast<std::size_t>(std::ceil(50.0 * poly.diameter() / out.step));

    // Area-weighted sampling over the fan triangles of every face.
    struct Tri {
        FaceId face;
        Point3 a, b, c;
    };
    std::vector<Tri> tris;
    std::vector<double> cumulative;
    double total = 0.0;
    for (FaceId f = 0; f < poly.face_count(); ++f) {
        const auto& face = poly.face(f);
        for (std::size_t i = 1; i + 1 < face.size(); ++i) {
            Tri t{f, poly.vertex(face[0]), poly.vertex(face[i]), poly.vertex(face[i + 1])};
            total += 0.5 * norm(cross(t.b - t.a, t.c - t.a));
            tris.push_back(t);
            cumulative.push_back(total);
        }
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.samples.reserve(options.samples);
    for (std::size_t i = 0; i < options.samples; ++i) {
        const double pick = unit(rng) * total;
        const auto at = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin()),
            tris.size() - 1);
        const Tri& t = tris[at];
        const double r1 = std::sqrt(unit(rng));
        const double r2 = unit(rng);
        OracleSample s;
        s.position = (1.0 - r1) * t.a + r1 * (1.0 - r2) * t.b + r1 * r2 * t.c;
        s.face = t.face;
        out.samples.push_back(s);
    }

    for (OracleSample& s : out.samples) {
        const auto dest = ascend(rp, eq, s.position, out.step, budget);
        if (dest) {
            s.destination = *dest;
            ++out.census[*dest];
        } else {
            ++out.ambiguous;
        }
    }
    if (out.ambiguous * 100 > out.samples.size())
        throw InconclusiveError(std::to_string(out.ambiguous) + " of " + std::to_string(out.samples.size()) +
                                " oracle samples are ambiguous");

    // Basin adjacency. Close sample pairs with different destinations are
    // candidates; a pair counts once bisection between the two samples meets
    // no third basin, which rules out contacts through a thin cell or a
    // single point.
    const double radius = kNeighbourRadius * out.spacing;
    const double resolution = kBisectionResolution * poly.diameter();
    const PointGrid grid(out.samples, radius);
    std::map<IdPair, std::vector<std::pair<std::size_t, std::size_t>>> candidates;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const std::uint32_t a = out.samples[i].destination;
        if (a == kNone) continue;
        for (std::size_t j : grid.neighbours(i, radius, kNeighbours)) {
            const std::uint32_t b = out.samples[j].destination;
            if (j < i || b == kNone || b == a) continue;
            auto& list = candidates[unordered(a, b)];
            if (list.size() < kCandidatesPerPair) list.emplace_back(i, j);
        }
    }
    for (const auto& [pair, list] : candidates) {
        for (const auto& [i, j] : list) {
            Point3 p = out.samples[i].position, q = out.samples[j].position;
            const std::uint32_t a = out.samples[i].destination, b = out.samples[j].destination;
            bool direct = true;
            while (direct && distance(p, q) > resolution) {
                const Point3 m = radial_function(rp, normalized(0.5 * (p + q) - rp.origin())).point.position;
                const auto d = ascend(rp, eq, m, out.step, budget);
                if (d == a) p = m;
                else if (d == b) q = m;
                else direct = false;
            }
            if (direct) {
                out.adjacency.insert(pair);
                break;
            }
        }
    }
    return out;
}

OracleComparison compare_with_complex(const ReferencedPolyhedron& rp, const OracleResult& oracle, const MSComplex& msc,
                                      std::size_t ring_samples) {
    const Polyhedron& poly = rp.polyhedron();
    OracleComparison cmp;
    cmp.oracle_adjacency = oracle.adjacency;

    std::map<std::uint32_t, std::vector<std::uint32_t>> unstable_beside;
    for (const Cell& c : msc.cells) {
        cmp.cell_incidences.insert({c.corners[0], c.corners[2]});
        unstable_beside[c.edges[0]].push_back(c.corners[2]);
        unstable_beside[c.edges[3]].push_back(c.corners[2]);
    }
    for (const auto& [edge, ys] : unstable_beside)
        for (std::size_t i = 0; i < ys.size(); ++i)
            for (std::size_t j = i + 1; j < ys.size(); ++j)
                if (ys[i] != ys[j]) cmp.complex_adjacency.insert(unordered(ys[i], ys[j]));

    // Rings around each stable point.
    const std::size_t budget = static_cast<std::size_t>(std::ceil(50.0 * poly.diameter() / oracle.step));
    for (std::uint32_t id = 0; id < oracle.equilibria.points.size(); ++id) {
        const Equilibrium& x = oracle.equilibria.points[id];
        if (x.kind != EquilibriumKind::stable) continue;
        const FaceId f = x.carrier().id;
        const auto& face = poly.face(f);
        const double room = stable_room(poly, x);
        const Vec3& n = poly.face_plane(f).normal;
        const Vec3 e1 = normalized(poly.vertex(face[1]) - poly.vertex(face[0]));
        const Vec3 e2 = cross(n, e1);
        std::size_t lost = 0;
        for (std::size_t k = 0; k < ring_samples; ++k) {
            const double a = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(ring_samples);
            const Point3 p = x.location.position + 0.5 * room * (std::cos(a) * e1 + std::sin(a) * e2);
            if (const auto y = ascend(rp, oracle.equilibria, p, oracle.step, budget)) cmp.ring_incidences.insert({id, *y});
            else ++lost;
        }
        if (lost > 0)
            cmp.messages.push_back("stable " + std::to_string(id) + ": " + std::to_string(lost) + " ring samples lost");
    }

    // One probe inside each claimed sector catches sectors narrower than the
    // ring spacing; a wrong claim lands in another basin. The step shrinks to
    // the sector width so thin strips are not stepped across.
    const std::vector<SphericalCell> cells = spherical_cells(rp, msc);
    for (const SphericalCell& c : cells) {
        const double step = std::min(oracle.step, c.probe_step);
        const auto probe_budget = static_cast<std::size_t>(std::ceil(50.0 * poly.diameter() / step));
        if (const auto y = ascend(rp, oracle.equilibria, c.probe, step, probe_budget))
            cmp.ring_incidences.insert({c.stable, *y});
        else
            cmp.messages.push_back("sector probe of stable " + std::to_string(c.stable) + " lost");
    }

    // Locate every sample that is clear of the curves.
    const std::vector<char> near_curve = curve_adjacent_flags(oracle.samples, msc, kCurveMargin * oracle.spacing);
    for (std::size_t i = 0; i < oracle.samples.size(); ++i) {
        const OracleSample& s = oracle.samples[i];
        if (near_curve[i]) {
            ++cmp.curve_adjacent;
            continue;
        }
        if (s.destination == kNone) continue;
        const Vec3 u = normalized(s.position - rp.origin());
        std::vector<std::uint32_t> hits;
        for (const SphericalCell& c : cells)
            if (inside(c, u)) hits.push_back(c.unstable);
        if (hits.size() != 1) {
            ++cmp.unlocated;
            if (cmp.messages.size() < 20)
                cmp.messages.push_back("sample " + std::to_string(i) + " lies in " + std::to_string(hits.size()) +
                                       " cells");
            continue;
        }
        ++cmp.located;
        if (hits.front() != s.destination) {
            ++cmp.disagreements;
            if (cmp.messages.size() < 20)
                cmp.messages.push_back("sample " + std::to_string(i) + " reaches unstable " +
                                       std::to_string(s.destination) + " but lies in a cell of unstable " +
                                       std::to_string(hits.front()));
        }
    }
    if (cmp.oracle_adjacency != cmp.complex_adjacency) cmp.messages.push_back("basin adjacency differs");
    if (cmp.ring_incidences != cmp.cell_incidences) cmp.messages.push_back("stable-unstable incidences differ");
    return cmp;
}

OpennessReport basin_openness(const OracleResult& oracle, const MSComplex& msc) {
    OpennessReport report;
    report.radius = kNeighbourRadius * oracle.spacing;
    const std::vector<char> near_curve = curve_adjacent_flags(oracle.samples, msc, kCurveMargin * oracle.spacing);
    const PointGrid grid(oracle.samples, report.radius);
    for (std::size_t i = 0; i < oracle.samples.size(); ++i) {
        const OracleSample& s = oracle.samples[i];
        if (s.destination == kNone || near_curve[i]) continue;
        ++report.checked;
        for (std::size_t j : grid.neighbours(i, report.radius, kNeighbours)) {
            const std::uint32_t d = oracle.samples[j].destination;
            if (d != kNone && d != s.destination) {
                ++report.violations;
                report.violating_samples.push_back(i);
                break;
            }
        }
    }
    return report;
}

}  // namespace polymorse
