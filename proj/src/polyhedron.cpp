#include "polymorse/polyhedron.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace polymorse {
namespace {

std::uint64_t key(VertexId a, VertexId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

Vec3 newell_normal(const std::vector<Point3>& pts, const std::vector<VertexId>& face) {
    Vec3 n;
    for (std::size_t i = 0; i < face.size(); ++i) {
        const Point3& a = pts[face[i]];
        const Point3& b = pts[face[(i + 1) % face.size()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return n;
}

Point3 face_center(const std::vector<Point3>& pts, const std::vector<VertexId>& face) {
    Point3 c;
    for (VertexId v : face) c += pts[v];
    return c / static_cast<double>(face.size());
}

}  // namespace

Polyhedron Polyhedron::build(std::vector<Point3> vertices, std::vector<std::vector<VertexId>> faces,
                             double relative_epsilon) {
    using K = MeshError::Kind;
    if (vertices.empty() || faces.empty()) throw MeshError(K::empty_input, "mesh has no vertices or faces");
    if (!(relative_epsilon > 0.0)) throw PreconditionError("relative epsilon must be positive");

    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!is_finite(vertices[i]))
            throw MeshError(K::bad_index, "vertex " + std::to_string(i) + " is not finite", i);
    }

    Point3 lo = vertices.front(), hi = vertices.front();
    for (const Point3& p : vertices) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }

    Polyhedron poly;
    poly.diameter_ = distance(lo, hi);
    if (!(poly.diameter_ > 0.0)) throw MeshError(K::empty_input, "mesh has zero extent");
    poly.tolerance_ = TolerancePolicy{relative_epsilon, poly.diameter_};
    const double eps = poly.tolerance_.length();

    std::vector<bool> used(vertices.size(), false);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& face = faces[f];
        if (face.size() < 3)
            throw MeshError(K::degenerate_face, "face " + std::to_string(f) + " has fewer than 3 vertices", f);
        for (std::size_t i = 0; i < face.size(); ++i) {
            if (face[i] >= vertices.size())
                throw MeshError(K::bad_index, "face " + std::to_string(f) + " references a missing vertex", f);
            for (std::size_t j = i + 1; j < face.size(); ++j)
                if (face[i] == face[j])
                    throw MeshError(K::degenerate_face, "face " + std::to_string(f) + " repeats a vertex", f);
            used[face[i]] = true;
        }
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v]) throw MeshError(K::bad_index, "vertex " + std::to_string(v) + " is not used by any face", v);

    // Global orientation: flip everything if the enclosed volume is negative.
    double volume = 0.0;
    for (const auto& face : faces) volume += dot(newell_normal(vertices, face), face_center(vertices, face));
    if (volume < 0.0)
        for (auto& face : faces) std::reverse(face.begin(), face.end());

    // Half-edges.
    std::unordered_map<std::uint64_t, std::pair<FaceId, std::uint32_t>> directed;
    std::map<std::pair<VertexId, VertexId>, int> undirected;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& face = faces[f];
        for (std::size_t i = 0; i < face.size(); ++i) {
            const VertexId a = face[i], b = face[(i + 1) % face.size()];
            ++undirected[{std::min(a, b), std::max(a, b)}];
            if (!directed.emplace(key(a, b), std::pair{static_cast<FaceId>(f), static_cast<std::uint32_t>(i)}).second) {
                const int count = undirected[{std::min(a, b), std::max(a, b)}];
                if (count > 2)
                    throw MeshError(K::non_manifold_edge, "edge " + std::to_string(a) + "-" + std::to_string(b) +
                                                              " has more than two incident faces", f);
                throw MeshError(K::inconsistent_orientation,
                                "face " + std::to_string(f) + " is oriented against its neighbour", f);
            }
        }
    }
    for (const auto& [ab, count] : undirected) {
        if (count > 2)
            throw MeshError(K::non_manifold_edge, "edge " + std::to_string(ab.first) + "-" + std::to_string(ab.second) +
                                                      " has more than two incident faces");
    }
    for (const auto& [k, slot] : directed) {
        const VertexId a = static_cast<VertexId>(k >> 32), b = static_cast<VertexId>(k & 0xffffffffu);
        if (!directed.count(key(b, a)))
            throw MeshError(K::open_surface, "edge " + std::to_string(a) + "-" + std::to_string(b) +
                                                 " has only one incident face", slot.first);
    }

    // Edges, numbered in order of first appearance.
    poly.face_edges_.resize(faces.size());
    std::unordered_map<std::uint64_t, EdgeId> edge_of;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& face = faces[f];
        poly.face_edges_[f].resize(face.size());
        for (std::size_t i = 0; i < face.size(); ++i) {
            const VertexId a = face[i], b = face[(i + 1) % face.size()];
            auto it = edge_of.find(key(std::min(a, b), std::max(a, b)));
            if (it == edge_of.end()) {
                const EdgeId e = static_cast<EdgeId>(poly.edges_.size());
                const FaceId twin = directed.at(key(b, a)).first;
                poly.edges_.push_back(Edge{{a, b}, {static_cast<FaceId>(f), twin}});
                edge_of.emplace(key(std::min(a, b), std::max(a, b)), e);
                poly.face_edges_[f][i] = e;
            } else {
                poly.face_edges_[f][i] = it->second;
            }
        }
    }

    const long euler = static_cast<long>(vertices.size()) - static_cast<long>(poly.edges_.size()) +
                       static_cast<long>(faces.size());
    if (euler != 2)
        throw MeshError(K::not_genus_zero, "Euler characteristic is " + std::to_string(euler) + ", expected 2");

    for (std::size_t e = 0; e < poly.edges_.size(); ++e) {
        const auto& ed = poly.edges_[e];
        if (distance(vertices[ed.vertices[0]], vertices[ed.vertices[1]]) <= eps)
            throw MeshError(K::degenerate_face, "edge " + std::to_string(e) + " has zero length", ed.faces[0]);
    }

    // Planes and planarity.
    poly.planes_.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Vec3 n = newell_normal(vertices, faces[f]);
        if (norm(n) <= eps * eps)
            throw MeshError(K::degenerate_face, "face " + std::to_string(f) + " has zero area", f);
        poly.planes_[f] = Plane::through(face_center(vertices, faces[f]), n);
        for (VertexId v : faces[f]) {
            if (std::abs(poly.planes_[f].signed_distance(vertices[v])) > eps)
                throw MeshError(K::non_planar_face, "face " + std::to_string(f) + " is not planar", f);
        }
    }

    // Convexity: every vertex on or behind every face plane.
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Plane& pl = poly.planes_[f];
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (pl.signed_distance(vertices[v]) > eps) {
                std::ostringstream msg;
                msg << "vertex " << v << " lies in front of face " << f << " by " << pl.signed_distance(vertices[v]);
                throw MeshError(K::non_convex, msg.str(), f);
            }
        }
    }

    // Vertex rings.
    std::vector<std::vector<FaceId>> incident(vertices.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (VertexId v : faces[f]) incident[v].push_back(static_cast<FaceId>(f));
    poly.vertex_faces_.resize(vertices.size());
    poly.vertex_edges_.resize(vertices.size());
    for (VertexId v = 0; v < vertices.size(); ++v) {
        const FaceId start = incident[v].front();
        FaceId f = start;
        do {
            const auto& face = faces[f];
            const auto pos = static_cast<std::size_t>(std::find(face.begin(), face.end(), v) - face.begin());
            const EdgeId e = poly.face_edges_[f][pos];
            poly.vertex_faces_[v].push_back(f);
            poly.vertex_edges_[v].push_back(e);
            const auto& ed = poly.edges_[e];
            f = ed.faces[0] == f ? ed.faces[1] : ed.faces[0];
        } while (f != start && poly.vertex_faces_[v].size() <= incident[v].size());
        if (poly.vertex_faces_[v].size() != incident[v].size())
            throw MeshError(K::non_manifold_edge, "vertex " + std::to_string(v) + " is not a manifold vertex", v);
    }

    poly.vertices_ = std::move(vertices);
    poly.faces_ = std::move(faces);
    return poly;
}

std::optional<EdgeId> Polyhedron::find_edge(VertexId a, VertexId b) const {
    for (EdgeId e : vertex_edges_[a]) {
        const auto& ed = edges_[e];
        if ((ed.vertices[0] == a && ed.vertices[1] == b) || (ed.vertices[0] == b && ed.vertices[1] == a)) return e;
    }
    return std::nullopt;
}

VertexId Polyhedron::other_vertex(EdgeId e, VertexId v) const {
    const auto& ed = edges_[e];
    return ed.vertices[0] == v ? ed.vertices[1] : ed.vertices[0];
}

FaceId Polyhedron::other_face(EdgeId e, FaceId f) const {
    const auto& ed = edges_[e];
    return ed.faces[0] == f ? ed.faces[1] : ed.faces[0];
}

Line3 Polyhedron::edge_line(EdgeId e) const {
    return Line3::through(vertices_[edges_[e].vertices[0]], vertices_[edges_[e].vertices[1]]);
}

double Polyhedron::edge_length(EdgeId e) const {
    return distance(vertices_[edges_[e].vertices[0]], vertices_[edges_[e].vertices[1]]);
}

Vec3 Polyhedron::inward_edge_normal(FaceId f, std::size_t i) const {
    const auto& face = faces_[f];
    const Vec3 along = vertices_[face[(i + 1) % face.size()]] - vertices_[face[i]];
    return normalized(cross(planes_[f].normal, along));
}

std::optional<std::size_t> Polyhedron::edge_slot(FaceId f, EdgeId e) const {
    const auto& fe = face_edges_[f];
    for (std::size_t i = 0; i < fe.size(); ++i)
        if (fe[i] == e) return i;
    return std::nullopt;
}

bool Polyhedron::is_simplicial() const {
    return std::all_of(faces_.begin(), faces_.end(), [](const auto& f) { return f.size() == 3; });
}

double Polyhedron::face_area(FaceId f) const {
    return 0.5 * norm(newell_normal(vertices_, faces_[f]));
}

double Polyhedron::surface_area() const {
    double a = 0.0;
    for (FaceId f = 0; f < faces_.size(); ++f) a += face_area(f);
    return a;
}

Polyhedron triangulate(const Polyhedron& poly) {
    std::vector<std::vector<VertexId>> tris;
    tris.reserve(poly.face_count() * 2);
    for (const auto& face : poly.faces()) {
        const auto lowest = std::min_element(face.begin(), face.end()) - face.begin();
        std::vector<VertexId> cyc(face.size());
        for (std::size_t i = 0; i < face.size(); ++i) cyc[i] = face[(lowest + i) % face.size()];
        for (std::size_t i = 1; i + 1 < cyc.size(); ++i) tris.push_back({cyc[0], cyc[i], cyc[i + 1]});
    }
    const auto verts = poly.vertices();
    return Polyhedron::build({verts.begin(), verts.end()}, std::move(tris), poly.tolerance().relative);
}

Point3 solid_centroid(const Polyhedron& poly) {
    Point3 anchor;
    for (const Point3& p : poly.vertices()) anchor += p;
    anchor /= static_cast<double>(poly.vertex_count());

    double volume = 0.0;
    Vec3 moment;
    for (const auto& face : poly.faces()) {
        const Point3& a = poly.vertex(face[0]);
        for (std::size_t i = 1; i + 1 < face.size(); ++i) {
            const Point3& b = poly.vertex(face[i]);
            const Point3& c = poly.vertex(face[i + 1]);
            const double v = dot(a - anchor, cross(b - anchor, c - anchor)) / 6.0;
            volume += v;
            moment += v * (anchor + a + b + c) / 4.0;
        }
    }
    return moment / volume;
}

Point3 ReferencedPolyhedron::face_foot(FaceId f) const {
    return project_to_plane(origin_, poly_->face_plane(f));
}

double ReferencedPolyhedron::face_distance(FaceId f) const {
    return -poly_->face_plane(f).signed_distance(origin_);
}

Point3 ReferencedPolyhedron::edge_foot(EdgeId e) const {
    return project_to_line(origin_, poly_->edge_line(e));
}

double ReferencedPolyhedron::edge_distance(EdgeId e) const {
    return distance(origin_, edge_foot(e));
}

ReferencedPolyhedron with_reference(std::shared_ptr<const Polyhedron> poly, const Point3& origin,
                                    ReferencedPolyhedron::Provenance prov) {
    const double eps = poly->tolerance().length();
    for (FaceId f = 0; f < poly->face_count(); ++f) {
        const double sd = poly->face_plane(f).signed_distance(origin);
        if (!(sd < -eps)) {
            std::ostringstream msg;
            msg << "reference point " << origin << (std::abs(sd) <= eps ? " lies on face " : " lies outside face ") << f;
            throw MeshError(MeshError::Kind::reference_not_interior, msg.str(), f);
        }
    }
    return ReferencedPolyhedron(std::move(poly), origin, prov);
}

ReferencedPolyhedron with_reference(Polyhedron poly, const Point3& origin) {
    return with_reference(std::make_shared<const Polyhedron>(std::move(poly)), origin);
}

ReferencedPolyhedron with_centroid(Polyhedron poly) {
    const Point3 c = solid_centroid(poly);
    return with_reference(std::make_shared<const Polyhedron>(std::move(poly)), c,
                          ReferencedPolyhedron::Provenance::centroid);
}

SurfacePoint locate(const Polyhedron& poly, const Point3& p) {
    const double eps = poly.tolerance().length();
    std::vector<FaceId> active;
    FaceId nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (FaceId f = 0; f < poly.face_count(); ++f) {
        const double d = std::abs(poly.face_plane(f).signed_distance(p));
        if (d <= eps) active.push_back(f);
        if (d < best) { best = d; nearest = f; }
    }
    if (active.empty()) active.push_back(nearest);
    if (active.size() == 1) return {p, Carrier::face(active[0]), 0.0};

    if (active.size() == 2) {
        for (EdgeId e : poly.face_edges(active[0])) {
            if (poly.other_face(e, active[0]) == active[1]) {
                const auto& ed = poly.edge(e);
                const Point3& a = poly.vertex(ed.vertices[0]);
                const double len = poly.edge_length(e);
                const double s = dot(p - a, poly.vertex(ed.vertices[1]) - a) / len;
                if (s <= eps) return {a, Carrier::vertex(ed.vertices[0]), 0.0};
                if (s >= len - eps) return {poly.vertex(ed.vertices[1]), Carrier::vertex(ed.vertices[1]), 0.0};
                return {p, Carrier::edge(e), s / len};
            }
        }
    }
    // Three or more planes (or two non-adjacent ones): the nearest shared vertex.
    VertexId best_v = poly.face(active[0]).front();
    double best_d = std::numeric_limits<double>::infinity();
    for (FaceId f : active)
        for (VertexId v : poly.face(f)) {
            const double d = distance(poly.vertex(v), p);
            if (d < best_d) { best_d = d; best_v = v; }
        }
    return {poly.vertex(best_v), Carrier::vertex(best_v), 0.0};
}

RadialHit radial_function(const ReferencedPolyhedron& rp, const Vector3& u) {
    const Polyhedron& poly = rp.polyhedron();
    double lambda = std::numeric_limits<double>::infinity();
    for (FaceId f = 0; f < poly.face_count(); ++f) {
        const double along = dot(poly.face_plane(f).normal, u);
        if (along <= 0.0) continue;
        lambda = std::min(lambda, rp.face_distance(f) / along);
    }
    const Point3 p = rp.origin() + lambda * u;
    return {lambda, locate(poly, p)};
}

}  // namespace polymorse
