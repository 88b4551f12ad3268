#include "polymorse/mscomplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace polymorse {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Vec3 first_direction(const AscendingCurve& c) {
    return c.segments.front().end.position - c.segments.front().start.position;
}

/// The up-curve of a saddle leaving along `side`.
std::uint32_t up_curve_toward(const MSComplex& msc, const std::array<std::uint32_t, 2>& ups, const Vec3& side) {
    const double a = dot(first_direction(msc.edges[ups[0]]), side);
    const double b = dot(first_direction(msc.edges[ups[1]]), side);
    if ((a > 0.0) == (b > 0.0))
        throw InternalInconsistency("both up-curves of a saddle leave on the same side of its down-curve");
    return a > 0.0 ? ups[0] : ups[1];
}

void stitch_cells(const ReferencedPolyhedron& rp, MSComplex& msc,
                  const std::map<std::uint32_t, std::array<std::uint32_t, 2>>& ups_of_saddle) {
    const Polyhedron& poly = rp.polyhedron();
    std::map<std::uint32_t, std::vector<std::uint32_t>> downs_of_stable;
    for (std::uint32_t c = 0; c < msc.edges.size(); ++c)
        if (msc.edges[c].role == CurveRole::stable_to_saddle) downs_of_stable[msc.edges[c].origin].push_back(c);

    for (auto& [x, downs] : downs_of_stable) {
        const FaceId f = msc.vertices[x].carrier().id;
        const Vec3& n = poly.face_plane(f).normal;
        const auto& face = poly.face(f);
        const Vec3 e1 = normalized(poly.vertex(face[1]) - poly.vertex(face[0]));
        const Vec3 e2 = cross(n, e1);
        auto angle = [&](std::uint32_t c) {
            const Vec3 d = first_direction(msc.edges[c]);
            return std::atan2(dot(d, e2), dot(d, e1));
        };
        std::sort(downs.begin(), downs.end(), [&](std::uint32_t a, std::uint32_t b) { return angle(a) < angle(b); });

        for (std::size_t i = 0; i < downs.size(); ++i) {
            const std::uint32_t ci = downs[i];
            const std::uint32_t cj = downs[(i + 1) % downs.size()];
            const AscendingCurve& a = msc.edges[ci];
            const AscendingCurve& b = msc.edges[cj];

            // The region lies left of ci and right of cj, seen from outside.
            auto arrival_side = [&](const AscendingCurve& c) {
                const CurveSegment& last = c.segments.back();
                const FaceId g = last.carrier.id;
                return cross(poly.face_plane(g).normal, normalized(last.end.position - rp.face_foot(g)));
            };
            const std::uint32_t left = up_curve_toward(msc, ups_of_saddle.at(a.destination), arrival_side(a));
            const std::uint32_t right = up_curve_toward(msc, ups_of_saddle.at(b.destination), -arrival_side(b));
            const AscendingCurve& ul = msc.edges[left];
            const AscendingCurve& ur = msc.edges[right];
            if (ul.destination != ur.destination) {
                std::ostringstream msg;
                msg << "region at stable " << x << " between curves " << ci << " and " << cj
                    << " does not close: saddle " << a.destination << " reaches unstable " << ul.destination
                    << ", saddle " << b.destination << " reaches unstable " << ur.destination;
                throw InternalInconsistency(msg.str());
            }
            Cell cell;
            cell.corners = {x, a.destination, ul.destination, b.destination};
            cell.edges = {ci, left, right, cj};
            cell.merged = left != right && ul.segments.back().carrier == ur.segments.back().carrier;
            msc.cells.push_back(cell);
        }
    }
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

bool same_point(const Point3& a, const Point3& b, double eps) { return distance(a, b) <= eps; }

/// Coplanar segments cross or overlap beyond shared endpoints.
bool segments_conflict(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Vec3& n, double eps) {
    auto orient = [&](const Point3& p, const Point3& q, const Point3& r) { return dot(cross(q - p, r - p), n); };
    const double lab = norm(b - a), lcd = norm(d - c);
    const double o1 = orient(a, b, c) / lab, o2 = orient(a, b, d) / lab;
    const double o3 = orient(c, d, a) / lcd, o4 = orient(c, d, b) / lcd;
    if (std::abs(o1) <= eps && std::abs(o2) <= eps) {
        const Vec3 u = (b - a) / lab;
        const double lo = std::max(0.0, std::min(dot(c - a, u), dot(d - a, u)));
        const double hi = std::min(lab, std::max(dot(c - a, u), dot(d - a, u)));
        return hi - lo > eps;
    }
    return o1 * o2 < 0.0 && o3 * o4 < 0.0 && std::abs(o1) > eps && std::abs(o2) > eps && std::abs(o3) > eps &&
           std::abs(o4) > eps;
}

}  // namespace

std::size_t MSComplex::count(EquilibriumKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [kind](const Equilibrium& e) { return e.kind == kind; }));
}

MSComplex build_ms_complex(const ReferencedPolyhedron& rp, const Equilibria& eq) {
    if (eq.report.degenerate()) throw NonGenericError(eq.report.findings.front());
    const Polyhedron& poly = rp.polyhedron();

    MSComplex msc;
    msc.vertices = eq.points;
    msc.origin = rp.origin();
    msc.face_feet = face_feet(rp);
    for (FaceId f = 0; f < poly.face_count(); ++f) msc.face_normals.push_back(poly.face_plane(f).normal);
    msc.step_budget = poly.edge_count() + poly.face_count();
    msc.length_tolerance = rp.tolerance().length();

    std::map<std::uint32_t, std::array<std::uint32_t, 2>> ups_of_saddle;
    for (SaddleCurves& sc : trace_all_saddles(rp, eq)) {
        const auto base = static_cast<std::uint32_t>(msc.edges.size());
        for (auto& c : sc.down) msc.edges.push_back(std::move(c));
        for (auto& c : sc.up) msc.edges.push_back(std::move(c));
        ups_of_saddle[sc.saddle] = {base + 2, base + 3};
    }
    stitch_cells(rp, msc, ups_of_saddle);
    return msc;
}

MSComplex build_ms_complex(const ReferencedPolyhedron& rp, StepTimings* timings) {
    const auto t0 = Clock::now();
    const Equilibria eq = find_equilibria(rp);
    const double steps_1_3 = elapsed_ms(t0);
    const auto t1 = Clock::now();
    MSComplex msc = build_ms_complex(rp, eq);
    if (timings) *timings = {steps_1_3, elapsed_ms(t1)};
    return msc;
}

bool ValidationReport::failed(std::string_view check) const {
    return std::any_of(failures.begin(), failures.end(), [&](const ValidationFailure& f) { return f.check == check; });
}

ValidationReport validate(const MSComplex& msc) {
    ValidationReport report;
    auto fail = [&](std::string check, std::string message, std::vector<std::uint32_t> ids) {
        report.failures.push_back({std::move(check), std::move(message), std::move(ids)});
    };
    const auto nv = static_cast<std::uint32_t>(msc.vertices.size());
    auto kind_of = [&](std::uint32_t id) { return msc.vertices[id].kind; };

    // Endpoint rule.
    std::vector<int> down_degree(nv, 0), up_degree(nv, 0);
    for (std::uint32_t e = 0; e < msc.edges.size(); ++e) {
        const AscendingCurve& c = msc.edges[e];
        if (c.origin >= nv || c.destination >= nv) {
            fail("endpoint-rule", "curve " + std::to_string(e) + " has an unknown endpoint", {e});
            continue;
        }
        const EquilibriumKind a = kind_of(c.origin), b = kind_of(c.destination);
        const bool stable_side = a == EquilibriumKind::stable && b == EquilibriumKind::saddle;
        const bool unstable_side = a == EquilibriumKind::saddle && b == EquilibriumKind::unstable;
        if (!stable_side && !unstable_side) {
            fail("endpoint-rule",
                 "curve " + std::to_string(e) + " joins " + std::string(to_string(a)) + " to " +
                     std::string(to_string(b)),
                 {e, c.origin, c.destination});
            continue;
        }
        if (stable_side) ++down_degree[c.destination];
        else ++up_degree[c.origin];
    }

    // Saddle degree.
    for (std::uint32_t v = 0; v < nv; ++v) {
        if (kind_of(v) != EquilibriumKind::saddle) continue;
        if (down_degree[v] != 2 || up_degree[v] != 2)
            fail("saddle-degree",
                 "saddle " + std::to_string(v) + " has " + std::to_string(down_degree[v]) + " stable-side and " +
                     std::to_string(up_degree[v]) + " unstable-side curves",
                 {v});
    }

    // Euler characteristic of the sphere.
    const long long euler = static_cast<long long>(nv) - static_cast<long long>(msc.edges.size()) +
                            static_cast<long long>(msc.cells.size());
    if (euler != 2) fail("euler", "V - E + C = " + std::to_string(euler), {});

    // Cell corners alternate stable, saddle, unstable, saddle and are joined
    // by the listed edges.
    static constexpr std::array<EquilibriumKind, 4> kPattern{EquilibriumKind::stable, EquilibriumKind::saddle,
                                                             EquilibriumKind::unstable, EquilibriumKind::saddle};
    for (std::uint32_t k = 0; k < msc.cells.size(); ++k) {
        const Cell& cell = msc.cells[k];
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            const std::uint32_t a = cell.corners[i], b = cell.corners[(i + 1) % 4];
            ok = a < nv && b < nv && kind_of(a) == kPattern[i] && cell.edges[i] < msc.edges.size();
            if (!ok) break;
            const AscendingCurve& c = msc.edges[cell.edges[i]];
            ok = (c.origin == a && c.destination == b) || (c.origin == b && c.destination == a);
        }
        if (!ok) fail("corner-cycle", "cell " + std::to_string(k) + " is not a stable-saddle-unstable-saddle cycle", {k});
    }

    // S + U - H = 2.
    const auto s = static_cast<long long>(msc.count(EquilibriumKind::stable));
    const auto u = static_cast<long long>(msc.count(EquilibriumKind::unstable));
    const auto h = static_cast<long long>(msc.count(EquilibriumKind::saddle));
    if (s + u - h != 2) fail("census", "S + U - H = " + std::to_string(s + u - h), {});

    // Connectivity. A saddle-free complex has no edges and is vacuously connected.
    if (nv > 0 && !msc.edges.empty()) {
        UnionFind uf(nv);
        for (const AscendingCurve& c : msc.edges)
            if (c.origin < nv && c.destination < nv) uf.unite(c.origin, c.destination);
        std::vector<std::uint32_t> stray;
        for (std::uint32_t v = 0; v < nv; ++v)
            if (uf.find(v) != uf.find(0)) stray.push_back(v);
        if (!stray.empty()) fail("connectivity", "graph has more than one component", stray);
    }

    // Curve monotonicity.
    for (std::uint32_t e = 0; e < msc.edges.size(); ++e) {
        const std::size_t budget = msc.step_budget > 0 ? msc.step_budget : msc.edges[e].segments.size();
        const CurveCheck check = check_curve(msc.edges[e], msc.origin, msc.face_feet, budget, msc.length_tolerance);
        if (!check.ok) fail("curve-monotonicity", "curve " + std::to_string(e) + ": " + check.problem, {e});
    }

    // Curves meet only at shared endpoints or along merged tails.
    if (!msc.face_normals.empty()) {
        const double eps = msc.length_tolerance;
        std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, const CurveSegment*>>> by_face;
        for (std::uint32_t e = 0; e < msc.edges.size(); ++e)
            for (const CurveSegment& seg : msc.edges[e].segments)
                if (seg.carrier.kind == Carrier::Kind::face && seg.carrier.id < msc.face_normals.size())
                    by_face[seg.carrier.id].emplace_back(e, &seg);
        for (const auto& [f, segs] : by_face) {
            for (std::size_t i = 0; i < segs.size(); ++i)
                for (std::size_t j = i + 1; j < segs.size(); ++j) {
                    const auto [ei, si] = segs[i];
                    const auto [ej, sj] = segs[j];
                    if (ei == ej) continue;
                    const bool shared = msc.edges[ei].role == CurveRole::saddle_to_unstable &&
                                        msc.edges[ej].role == CurveRole::saddle_to_unstable &&
                                        same_point(si->start.position, sj->start.position, eps) &&
                                        same_point(si->end.position, sj->end.position, eps);
                    if (shared) continue;
                    if (segments_conflict(si->start.position, si->end.position, sj->start.position,
                                          sj->end.position, msc.face_normals[f], eps))
                        fail("curve-crossing",
                             "curves " + std::to_string(ei) + " and " + std::to_string(ej) + " cross in face " +
                                 std::to_string(f),
                             {ei, ej});
                }
        }
    }
    return report;
}

MSGraph to_graph(const MSComplex& msc, bool with_embedding) {
    MSGraph g;
    g.nodes.reserve(msc.vertices.size());
    for (std::uint32_t i = 0; i < msc.vertices.size(); ++i)
        g.nodes.push_back({i, msc.vertices[i].kind, msc.vertices[i].location.position});
    for (const AscendingCurve& c : msc.edges) g.edges.emplace_back(c.origin, c.destination);
    if (with_embedding) {
        g.polylines.emplace();
        for (const AscendingCurve& c : msc.edges) g.polylines->push_back(c.polyline());
    }
    return g;
}

}  // namespace polymorse
