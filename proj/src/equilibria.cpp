#include "polymorse/equilibria.hpp"

#include <algorithm>
#include <sstream>

namespace polymorse {
namespace {

Point3 face_center(const Polyhedron& poly, FaceId f) {
    Point3 c;
    for (VertexId v : poly.face(f)) c += poly.vertex(v);
    return c / static_cast<double>(poly.face(f).size());
}

}  // namespace

std::string_view to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::stable: return "stable";
        case EquilibriumKind::saddle: return "saddle";
        case EquilibriumKind::unstable: return "unstable";
    }
    return "?";
}

EdgeClassification classify_edge(const ReferencedPolyhedron& rp, EdgeId e) {
    const Polyhedron& poly = rp.polyhedron();
    const Edge& ed = poly.edge(e);
    const Line3 line = poly.edge_line(e);

    EdgeClassification out;
    std::array<Side, 2> side{};
    for (int i = 0; i < 2; ++i) {
        const FaceId f = ed.faces[i];
        const HalfPlaneTest t = classify_halfplane(rp.face_foot(f), poly.face_plane(f), line,
                                                   face_center(poly, f), rp.tolerance());
        side[i] = t.side;
        out.margins[i] = t.margin;
    }

    if (side[0] == Side::on_boundary || side[1] == Side::on_boundary) {
        const int i = side[0] == Side::on_boundary ? 0 : 1;
        out.cls = EdgeClass{EdgeClass::Kind::degenerate, 0, 0};
        out.finding = Finding{Finding::Kind::projection_on_face_boundary, Carrier::edge(e), out.margins[i], std::nullopt};
        return out;
    }
    if (side[0] == Side::inside && side[1] == Side::inside) {
        out.cls = EdgeClass::followed();
    } else if (side[0] == Side::outside && side[1] == Side::outside) {
        std::ostringstream msg;
        msg << "edge " << e << ": both face feet lie outside their half planes (margins " << out.margins[0] << ", "
            << out.margins[1] << ")";
        throw InternalInconsistency(msg.str());
    } else if (side[0] == Side::outside) {
        out.cls = EdgeClass::crossed(ed.faces[1], ed.faces[0]);
    } else {
        out.cls = EdgeClass::crossed(ed.faces[0], ed.faces[1]);
    }
    return out;
}

std::vector<EdgeClass> classify_edges(const ReferencedPolyhedron& rp, std::vector<Finding>* findings) {
    const Polyhedron& poly = rp.polyhedron();
    std::vector<EdgeClass> classes(poly.edge_count());
    for (EdgeId e = 0; e < poly.edge_count(); ++e) {
        EdgeClassification c = classify_edge(rp, e);
        classes[e] = c.cls;
        if (c.finding && findings) findings->push_back(*c.finding);
    }
    return classes;
}

VertexTest is_vertex_equilibrium(const ReferencedPolyhedron& rp, VertexId v) {
    const Polyhedron& poly = rp.polyhedron();
    const Point3& q = poly.vertex(v);
    const Vec3 radial = normalized(q - rp.origin());
    const double eps = rp.tolerance().derivative();

    VertexTest out;
    out.unstable = true;
    double closest = 1.0;
    for (EdgeId e : poly.vertex_edges(v)) {
        const Vec3 dir = normalized(poly.vertex(poly.other_vertex(e, v)) - q);
        const double d = dot(dir, radial);
        out.derivatives.push_back(d);
        if (!(d < -eps)) out.unstable = false;
        closest = std::min(closest, std::abs(d));
    }
    if (closest <= eps) {
        out.unstable = false;
        out.finding = Finding{Finding::Kind::vertex_tangency, Carrier::vertex(v), closest, std::nullopt};
    }
    return out;
}

std::size_t Equilibria::count(EquilibriumKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [kind](const Equilibrium& e) { return e.kind == kind; }));
}

Equilibria find_equilibria(const ReferencedPolyhedron& rp) {
    const Polyhedron& poly = rp.polyhedron();
    const double eps = rp.tolerance().length();

    Equilibria out;
    out.edge_classes = classify_edges(rp, &out.report.findings);
    out.stable_of_face.assign(poly.face_count(), kNone);
    out.saddle_of_edge.assign(poly.edge_count(), kNone);
    out.unstable_of_vertex.assign(poly.vertex_count(), kNone);

    auto add = [&](SurfacePoint sp, EquilibriumKind kind) {
        const auto id = static_cast<std::uint32_t>(out.points.size());
        out.points.push_back(Equilibrium{sp, kind, rp.height(sp.position)});
        return id;
    };

    // Stable: the face foot lies strictly inside its face.
    for (FaceId f = 0; f < poly.face_count(); ++f) {
        const Point3 foot = rp.face_foot(f);
        const auto& face = poly.face(f);
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < face.size(); ++i)
            margin = std::min(margin, dot(foot - poly.vertex(face[i]), poly.inward_edge_normal(f, i)));
        if (margin > eps) {
            out.stable_of_face[f] = add({foot, Carrier::face(f), 0.0}, EquilibriumKind::stable);
        } else if (margin >= -eps) {
            out.report.findings.push_back(
                Finding{Finding::Kind::projection_on_face_boundary, Carrier::face(f), margin, std::nullopt});
        }
    }

    // Saddle: the edge foot lies strictly inside a followed edge.
    for (EdgeId e = 0; e < poly.edge_count(); ++e) {
        if (out.edge_classes[e].kind != EdgeClass::Kind::followed) continue;
        const Edge& ed = poly.edge(e);
        const Point3& a = poly.vertex(ed.vertices[0]);
        const double len = poly.edge_length(e);
        const Point3 foot = rp.edge_foot(e);
        const double s = dot(foot - a, poly.vertex(ed.vertices[1]) - a) / len;
        const double margin = std::min(s, len - s);
        if (margin > eps) {
            out.saddle_of_edge[e] = add({foot, Carrier::edge(e), s / len}, EquilibriumKind::saddle);
        } else if (margin >= -eps) {
            out.report.findings.push_back(
                Finding{Finding::Kind::projection_at_edge_endpoint, Carrier::edge(e), margin, std::nullopt});
        }
    }

    // Unstable: every incident edge descends.
    for (VertexId v = 0; v < poly.vertex_count(); ++v) {
        const VertexTest t = is_vertex_equilibrium(rp, v);
        if (t.finding) out.report.findings.push_back(*t.finding);
        if (t.unstable) out.unstable_of_vertex[v] = add({poly.vertex(v), Carrier::vertex(v), 0.0}, EquilibriumKind::unstable);
    }
    return out;
}

}  // namespace polymorse
