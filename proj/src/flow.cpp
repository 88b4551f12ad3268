#include "polymorse/flow.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace polymorse {
namespace {

SurfacePoint vertex_point(const Polyhedron& poly, VertexId v) {
    return {poly.vertex(v), Carrier::vertex(v), 0.0};
}

SurfacePoint edge_point(const Polyhedron& poly, EdgeId e, const Point3& x) {
    const Edge& ed = poly.edge(e);
    const Point3& a = poly.vertex(ed.vertices[0]);
    const Vec3 ab = poly.vertex(ed.vertices[1]) - a;
    return {x, Carrier::edge(e), dot(x - a, ab) / norm2(ab)};
}

std::size_t vertex_slot(const Polyhedron& poly, FaceId f, VertexId v) {
    const auto& face = poly.face(f);
    const auto it = std::find(face.begin(), face.end(), v);
    if (it == face.end()) throw InternalInconsistency("vertex not on face");
    return static_cast<std::size_t>(it - face.begin());
}

Vec3 face_gradient(const ReferencedPolyhedron& rp, FaceId f, const Point3& q) {
    return (q - rp.face_foot(f)) / rp.height(q);
}

ExtendedGradient zero_gradient() { return {Vec3{}, ExtendedGradient::Source::zero_at_equilibrium, std::nullopt}; }

ExtendedGradient vertex_gradient(const ReferencedPolyhedron& rp, VertexId v) {
    const Polyhedron& poly = rp.polyhedron();
    const VertexTest test = is_vertex_equilibrium(rp, v);
    if (test.finding) throw NonGenericError(*test.finding);
    if (test.unstable) return zero_gradient();

    const Point3& q = poly.vertex(v);
    const double h = rp.height(q);
    const double eps = rp.tolerance().derivative();

    std::optional<FaceId> chosen;
    for (FaceId f : poly.vertex_faces(v)) {
        const Vec3 w = q - rp.face_foot(f);
        if (norm(w) <= rp.tolerance().length()) continue;
        const auto& face = poly.face(f);
        const std::size_t i = vertex_slot(poly, f, v);
        const std::size_t k = face.size();
        const Vec3 next = normalized(poly.vertex(face[(i + 1) % k]) - q);
        const Vec3 prev = normalized(poly.vertex(face[(i + k - 1) % k]) - q);
        const Vec3 wu = normalized(w);
        const Vec3& n = poly.face_plane(f).normal;
        const double margin = std::min(dot(cross(next, wu), n), dot(cross(wu, prev), n));
        if (margin > eps) {
            if (chosen) {
                std::ostringstream msg;
                msg << "vertex " << v << ": faces " << *chosen << " and " << f << " both generate a gradient";
                throw InternalInconsistency(msg.str());
            }
            chosen = f;
        } else if (margin >= -eps) {
            throw NonGenericError(Finding{Finding::Kind::gradient_length_tie, Carrier::vertex(v), margin, Carrier::face(f)});
        }
    }
    if (chosen) return {face_gradient(rp, *chosen, q), ExtendedGradient::Source::vertex_face, Carrier::face(*chosen)};

    const Vec3 radial = q - rp.origin();
    double best = -std::numeric_limits<double>::infinity();
    double second = best;
    EdgeId best_edge = 0;
    Vec3 best_dir;
    for (EdgeId e : poly.vertex_edges(v)) {
        const Vec3 u = normalized(poly.vertex(poly.other_vertex(e, v)) - q);
        const double len = dot(radial, u) / h;
        if (len > best) {
            second = best;
            best = len;
            best_edge = e;
            best_dir = u;
        } else if (len > second) {
            second = len;
        }
    }
    if (best <= eps) throw InternalInconsistency("vertex " + std::to_string(v) + " has no ascending direction");
    if (best - second <= rp.tolerance().gradient_tie())
        throw NonGenericError(Finding{Finding::Kind::gradient_length_tie, Carrier::vertex(v), best - second, std::nullopt});
    return {best * best_dir, ExtendedGradient::Source::vertex_edge, Carrier::edge(best_edge)};
}

struct FaceExit {
    double t = std::numeric_limits<double>::infinity();
    std::size_t slot = 0;
    Point3 point;
    std::optional<VertexId> vertex;
    double vertex_margin = 0.0;
};

class Tracer {
public:
    Tracer(const ReferencedPolyhedron& rp, const Equilibria& eq)
        : rp_(rp), poly_(rp.polyhedron()), eq_(eq), eps_(rp.tolerance().length()),
          budget_(poly_.edge_count() + poly_.face_count()) {}

    AscendingCurve up(std::uint32_t saddle, int k) const {
        const Equilibrium& s = saddle_at(saddle);
        const EdgeId e = s.carrier().id;
        AscendingCurve curve;
        curve.origin = saddle;
        curve.role = CurveRole::saddle_to_unstable;

        VertexId v = poly_.edge(e).vertices[k];
        push(curve.segments, s.location, vertex_point(poly_, v), Carrier::edge(e));
        while (true) {
            if (eq_.unstable_of_vertex[v] != kNone) {
                curve.destination = eq_.unstable_of_vertex[v];
                return curve;
            }
            const ExtendedGradient g = vertex_gradient(rp_, v);
            if (g.source == ExtendedGradient::Source::vertex_edge) {
                const EdgeId next = g.generator->id;
                const VertexId w = poly_.other_vertex(next, v);
                push(curve.segments, vertex_point(poly_, v), vertex_point(poly_, w), Carrier::edge(next));
                v = w;
                continue;
            }
            const FaceId f = g.generator->id;
            const Point3& q = poly_.vertex(v);
            v = walk_up(curve.segments, f, vertex_point(poly_, v),
                        exit_face(f, q, q - rp_.face_foot(f), kNone, v), e);
        }
    }

    AscendingCurve down(std::uint32_t saddle, int k) const {
        const Equilibrium& s = saddle_at(saddle);
        const EdgeId e = s.carrier().id;
        std::vector<CurveSegment> segs;

        FaceId f = poly_.edge(e).faces[k];
        SurfacePoint p = s.location;
        EdgeId entry = e;
        Vec3 w = rp_.face_foot(f) - p.position;
        if (std::abs(dot(w, poly_.edge_line(e).direction)) > eps_)
            throw InternalInconsistency("saddle " + std::to_string(saddle) + ": face foot does not project onto it");

        while (true) {
            if (dot(w, poly_.inward_edge_normal(f, *poly_.edge_slot(f, entry))) <= 0.0)
                throw InternalInconsistency("descent from edge " + std::to_string(entry) + " leaves face " +
                                            std::to_string(f));
            const FaceExit ex = exit_face(f, p.position, w, entry, kNone);
            if (ex.t >= 1.0) {
                if ((ex.t - 1.0) * norm(w) <= eps_)
                    throw NonGenericError(
                        Finding{Finding::Kind::projection_on_face_boundary, Carrier::face(f), (ex.t - 1.0) * norm(w),
                                std::nullopt});
                const std::uint32_t st = eq_.stable_of_face[f];
                if (st == kNone)
                    throw InternalInconsistency("descent reached the foot of face " + std::to_string(f) +
                                                ", which is not a stable point");
                push(segs, eq_.points[st].location, p, Carrier::face(f));
                std::reverse(segs.begin(), segs.end());
                return AscendingCurve{std::move(segs), st, saddle, CurveRole::stable_to_saddle};
            }
            if (ex.vertex) throw_vertex_hit(*ex.vertex, ex.vertex_margin, e);

            const EdgeId hit = poly_.face_edges(f)[ex.slot];
            const SurfacePoint xp = edge_point(poly_, hit, ex.point);
            push(segs, xp, p, Carrier::face(f));
            const EdgeClass& cls = eq_.edge_classes[hit];
            if (cls.kind == EdgeClass::Kind::degenerate) throw_degenerate_edge(hit);
            if (cls.kind != EdgeClass::Kind::crossed || cls.to != f)
                throw InternalInconsistency("descent in face " + std::to_string(f) + " hit edge " +
                                            std::to_string(hit) + ", which does not flow into it");
            f = cls.from;
            p = xp;
            entry = hit;
            w = rp_.face_foot(f) - p.position;
        }
    }

private:
    const Equilibrium& saddle_at(std::uint32_t id) const {
        if (id >= eq_.points.size() || eq_.points[id].kind != EquilibriumKind::saddle)
            throw PreconditionError("equilibrium " + std::to_string(id) + " is not a saddle");
        return eq_.points[id];
    }

    double carrier_distance(const Carrier& c) const {
        return c.kind == Carrier::Kind::face ? rp_.face_distance(c.id) : rp_.edge_distance(c.id);
    }

    void push(std::vector<CurveSegment>& segs, const SurfacePoint& a, const SurfacePoint& b, Carrier c) const {
        if (segs.size() >= budget_)
            throw InternalInconsistency("curve exceeded the step budget of " + std::to_string(budget_) + " segments");
        segs.push_back({a, b, c, carrier_distance(c)});
    }

    [[noreturn]] static void throw_vertex_hit(VertexId v, double margin, EdgeId saddle_edge) {
        throw NonGenericError(Finding{Finding::Kind::curve_hits_vertex, Carrier::vertex(v), margin,
                                      Carrier::edge(saddle_edge)});
    }

    [[noreturn]] static void throw_degenerate_edge(EdgeId e) {
        throw NonGenericError(Finding{Finding::Kind::projection_on_face_boundary, Carrier::edge(e), 0.0, std::nullopt});
    }

    /// First boundary crossing of the ray p + t w, t > 0, inside face f.
    FaceExit exit_face(FaceId f, const Point3& p, const Vec3& w, EdgeId skip_edge, VertexId skip_vertex) const {
        const auto& face = poly_.face(f);
        const auto& edges = poly_.face_edges(f);
        const std::size_t k = face.size();
        FaceExit out;
        for (std::size_t i = 0; i < k; ++i) {
            if (edges[i] == skip_edge) continue;
            if (face[i] == skip_vertex || face[(i + 1) % k] == skip_vertex) continue;
            const Vec3 m = poly_.inward_edge_normal(f, i);
            const double rate = dot(w, m);
            if (rate >= 0.0) continue;
            const double s = std::max(0.0, dot(p - poly_.vertex(face[i]), m));
            const double t = s / -rate;
            if (t < out.t) {
                out.t = t;
                out.slot = i;
            }
        }
        if (!std::isfinite(out.t)) throw InternalInconsistency("ray does not leave face " + std::to_string(f));

        out.point = p + out.t * w;
        const Point3& a = poly_.vertex(face[out.slot]);
        const Point3& b = poly_.vertex(face[(out.slot + 1) % k]);
        const double len = distance(a, b);
        const double tau = dot(out.point - a, (b - a) / len);
        if (tau <= eps_) {
            out.vertex = face[out.slot];
            out.vertex_margin = tau;
        } else if (tau >= len - eps_) {
            out.vertex = face[(out.slot + 1) % k];
            out.vertex_margin = len - tau;
        }
        return out;
    }

    /// Follows face rays from `start` until the curve lands on a followed edge,
    /// then slides to that edge's ascending endpoint, which is returned.
    VertexId walk_up(std::vector<CurveSegment>& segs, FaceId f, SurfacePoint start, FaceExit ex,
                     EdgeId saddle_edge) const {
        while (true) {
            if (ex.vertex) throw_vertex_hit(*ex.vertex, ex.vertex_margin, saddle_edge);
            const EdgeId hit = poly_.face_edges(f)[ex.slot];
            const SurfacePoint xp = edge_point(poly_, hit, ex.point);
            push(segs, start, xp, Carrier::face(f));

            const EdgeClass& cls = eq_.edge_classes[hit];
            if (cls.kind == EdgeClass::Kind::degenerate) throw_degenerate_edge(hit);
            if (cls.kind == EdgeClass::Kind::crossed) {
                if (cls.from != f)
                    throw InternalInconsistency("ascent in face " + std::to_string(f) + " hit edge " +
                                                std::to_string(hit) + ", which flows into it");
                const FaceId g = cls.to;
                const Vec3 w = ex.point - rp_.face_foot(g);
                if (dot(w, poly_.inward_edge_normal(g, *poly_.edge_slot(g, hit))) <= 0.0)
                    throw InternalInconsistency("ascent across edge " + std::to_string(hit) + " does not enter face " +
                                                std::to_string(g));
                ex = exit_face(g, ex.point, w, hit, kNone);
                f = g;
                start = xp;
                continue;
            }

            const Point3 foot = rp_.edge_foot(hit);
            const double gap = distance(ex.point, foot);
            if (eq_.saddle_of_edge[hit] != kNone && gap <= rp_.tolerance().vertex_hit())
                throw NonGenericError(Finding{Finding::Kind::saddle_saddle_connection, Carrier::edge(saddle_edge), gap,
                                              Carrier::edge(hit)});
            const Edge& ed = poly_.edge(hit);
            const double along = dot(ex.point - foot, poly_.edge_line(hit).direction);
            if (std::abs(along) <= eps_)
                throw NonGenericError(
                    Finding{Finding::Kind::projection_at_edge_endpoint, Carrier::edge(hit), along, std::nullopt});
            const VertexId target = along > 0.0 ? ed.vertices[1] : ed.vertices[0];
            push(segs, xp, vertex_point(poly_, target), Carrier::edge(hit));
            return target;
        }
    }

    const ReferencedPolyhedron& rp_;
    const Polyhedron& poly_;
    const Equilibria& eq_;
    double eps_;
    std::size_t budget_;
};

int witness_rank(const NonGenericError& err) {
    switch (err.witness().kind) {
        case Finding::Kind::saddle_saddle_connection: return 0;
        case Finding::Kind::curve_hits_vertex: return 1;
        default: return 2;
    }
}

}  // namespace

std::string_view to_string(ExtendedGradient::Source source) {
    using S = ExtendedGradient::Source;
    switch (source) {
        case S::face_interior: return "face-interior";
        case S::followed_edge: return "followed-edge";
        case S::crossed_edge: return "crossed-edge";
        case S::vertex_face: return "vertex-face";
        case S::vertex_edge: return "vertex-edge";
        case S::zero_at_equilibrium: return "zero-at-equilibrium";
    }
    return "?";
}

std::string_view to_string(CurveRole role) {
    return role == CurveRole::stable_to_saddle ? "stable-to-saddle" : "saddle-to-unstable";
}

ExtendedGradient extended_gradient(const ReferencedPolyhedron& rp, const SurfacePoint& q,
                                   std::span<const EdgeClass> edge_classes) {
    const Polyhedron& poly = rp.polyhedron();
    const double eps = rp.tolerance().length();
    switch (q.carrier.kind) {
        case Carrier::Kind::face: {
            const FaceId f = q.carrier.id;
            if (distance(q.position, rp.face_foot(f)) <= eps) return zero_gradient();
            return {face_gradient(rp, f, q.position), ExtendedGradient::Source::face_interior, Carrier::face(f)};
        }
        case Carrier::Kind::edge: {
            const EdgeId e = q.carrier.id;
            const EdgeClass& cls = edge_classes[e];
            if (cls.kind == EdgeClass::Kind::degenerate)
                throw NonGenericError(
                    Finding{Finding::Kind::projection_on_face_boundary, Carrier::edge(e), 0.0, std::nullopt});
            if (cls.kind == EdgeClass::Kind::crossed)
                return {face_gradient(rp, cls.to, q.position), ExtendedGradient::Source::crossed_edge,
                        Carrier::face(cls.to)};
            const Vec3 u = poly.edge_line(e).direction;
            const double along = dot(q.position - rp.edge_foot(e), u);
            if (std::abs(along) <= eps) return zero_gradient();
            return {(along / rp.height(q.position)) * u, ExtendedGradient::Source::followed_edge, Carrier::edge(e)};
        }
        case Carrier::Kind::vertex: return vertex_gradient(rp, q.carrier.id);
    }
    return zero_gradient();
}

std::vector<Point3> AscendingCurve::polyline() const {
    std::vector<Point3> pts;
    if (segments.empty()) return pts;
    pts.reserve(segments.size() + 1);
    pts.push_back(segments.front().start.position);
    for (const CurveSegment& s : segments) pts.push_back(s.end.position);
    return pts;
}

std::array<AscendingCurve, 2> trace_up_from_saddle(const ReferencedPolyhedron& rp, const Equilibria& eq,
                                                   std::uint32_t saddle) {
    const Tracer tracer(rp, eq);
    return {tracer.up(saddle, 0), tracer.up(saddle, 1)};
}

std::array<AscendingCurve, 2> trace_down_from_saddle(const ReferencedPolyhedron& rp, const Equilibria& eq,
                                                     std::uint32_t saddle) {
    const Tracer tracer(rp, eq);
    return {tracer.down(saddle, 0), tracer.down(saddle, 1)};
}

std::vector<SaddleCurves> trace_all_saddles(const ReferencedPolyhedron& rp, const Equilibria& eq) {
    const Tracer tracer(rp, eq);
    std::vector<SaddleCurves> out;
    std::optional<NonGenericError> failure;
    auto attempt = [&](auto&& fn) {
        try {
            fn();
        } catch (const NonGenericError& err) {
            if (!failure || witness_rank(err) < witness_rank(*failure)) failure = err;
        }
    };
    for (std::uint32_t id = 0; id < eq.points.size(); ++id) {
        if (eq.points[id].kind != EquilibriumKind::saddle) continue;
        SaddleCurves sc;
        sc.saddle = id;
        attempt([&] { sc.down = {tracer.down(id, 0), tracer.down(id, 1)}; });
        attempt([&] { sc.up = {tracer.up(id, 0), tracer.up(id, 1)}; });
        if (!failure) out.push_back(std::move(sc));
    }
    if (failure) throw *failure;
    return out;
}

CurveCheck check_curve(const AscendingCurve& curve, const Point3& origin, std::span<const Point3> face_feet,
                       std::size_t step_budget, double eps) {
    auto fail = [](std::string why) { return CurveCheck{false, std::move(why)}; };
    const auto& segs = curve.segments;
    if (segs.empty()) return fail("empty curve");
    if (segs.size() > step_budget) return fail("more than E + F segments");

    std::set<std::pair<int, std::uint32_t>> seen;
    double last_height = distance(segs.front().start.position, origin);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const CurveSegment& s = segs[i];
        const std::string at = "segment " + std::to_string(i) + ": ";
        if (!seen.emplace(static_cast<int>(s.carrier.kind), s.carrier.id).second) return fail(at + "carrier repeats");
        if (i > 0) {
            const CurveSegment& prev = segs[i - 1];
            if (distance(prev.end.position, s.start.position) > eps) return fail(at + "does not continue the curve");
            if (!(s.carrier_distance > prev.carrier_distance)) return fail(at + "carrier distance does not increase");
        }
        const double h = distance(s.end.position, origin);
        if (!(h > last_height)) return fail(at + "distance from the origin does not increase");
        last_height = h;
        if (s.carrier.kind == Carrier::Kind::face && s.carrier.id < face_feet.size()) {
            const Vec3 along = s.end.position - s.start.position;
            const Vec3 to_foot = face_feet[s.carrier.id] - s.start.position;
            if (norm(cross(along, to_foot)) / norm(along) > eps) return fail(at + "not collinear with the face foot");
        }
    }
    return {};
}

std::vector<Point3> face_feet(const ReferencedPolyhedron& rp) {
    std::vector<Point3> feet;
    feet.reserve(rp.polyhedron().face_count());
    for (FaceId f = 0; f < rp.polyhedron().face_count(); ++f) feet.push_back(rp.face_foot(f));
    return feet;
}

CurveCheck check_curve(const ReferencedPolyhedron& rp, const AscendingCurve& curve) {
    const Polyhedron& poly = rp.polyhedron();
    return check_curve(curve, rp.origin(), face_feet(rp), poly.edge_count() + poly.face_count(),
                       rp.tolerance().length());
}

}  // namespace polymorse
