#pragma once

// Independent sampling helpers for gradient checks. Nothing here calls the
// flow module.

#include <random>
#include <vector>

#include "polymorse/polyhedron.hpp"

namespace polymorse::testing {

/// Uniform point in the triangle (a, b, c).
inline Point3 in_triangle(const Point3& a, const Point3& b, const Point3& c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r1 = u(rng), r2 = u(rng);
    if (r1 + r2 > 1.0) {
        r1 = 1.0 - r1;
        r2 = 1.0 - r2;
    }
    return a + r1 * (b - a) + r2 * (c - a);
}

/// Uniform point in the interior of face f.
inline Point3 in_face(const Polyhedron& p, FaceId f, std::mt19937_64& rng) {
    const auto& face = p.face(f);
    std::vector<double> areas;
    for (std::size_t i = 1; i + 1 < face.size(); ++i)
        areas.push_back(norm(cross(p.vertex(face[i]) - p.vertex(face[0]), p.vertex(face[i + 1]) - p.vertex(face[0]))));
    std::discrete_distribution<std::size_t> pick(areas.begin(), areas.end());
    const std::size_t i = pick(rng) + 1;
    return in_triangle(p.vertex(face[0]), p.vertex(face[i]), p.vertex(face[i + 1]), rng);
}

/// A boundary point on a random face, edge or vertex. Faces are chosen by
/// area; roughly a fifth of the points land on edges and a tenth on vertices.
inline SurfacePoint random_surface_point(const Polyhedron& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double kind = u(rng);
    if (kind < 0.1) {
        const auto v = static_cast<VertexId>(rng() % p.vertex_count());
        return {p.vertex(v), Carrier::vertex(v), 0.0};
    }
    if (kind < 0.3) {
        const auto e = static_cast<EdgeId>(rng() % p.edge_count());
        const double t = 0.02 + 0.96 * u(rng);
        const Point3 a = p.vertex(p.edge(e).vertices[0]), b = p.vertex(p.edge(e).vertices[1]);
        return {a + t * (b - a), Carrier::edge(e), t};
    }
    std::vector<double> areas;
    for (FaceId f = 0; f < p.face_count(); ++f) areas.push_back(p.face_area(f));
    std::discrete_distribution<FaceId> pick(areas.begin(), areas.end());
    const FaceId f = pick(rng);
    return {in_face(p, f, rng), Carrier::face(f), 0.0};
}

/// Faces containing the carrier of q.
inline std::vector<FaceId> incident_faces(const Polyhedron& p, const SurfacePoint& q) {
    switch (q.carrier.kind) {
        case Carrier::Kind::face: return {q.carrier.id};
        case Carrier::Kind::edge: return {p.edge(q.carrier.id).faces[0], p.edge(q.carrier.id).faces[1]};
        case Carrier::Kind::vertex: return p.vertex_faces(q.carrier.id);
    }
    return {};
}

/// Unit tangent directions at q pointing into incident faces, plus the
/// incident edge directions.
inline std::vector<Vec3> tangent_directions(const Polyhedron& p, const SurfacePoint& q, int count,
                                            std::mt19937_64& rng) {
    std::vector<Vec3> dirs;
    const std::vector<FaceId> faces = incident_faces(p, q);
    for (int i = 0; i < count; ++i) {
        const FaceId f = faces[static_cast<std::size_t>(i) % faces.size()];
        const Vec3 d = in_face(p, f, rng) - q.position;
        if (norm(d) > 0.0) dirs.push_back(normalized(d));
    }
    if (q.carrier.kind == Carrier::Kind::edge) {
        const Point3 a = p.vertex(p.edge(q.carrier.id).vertices[0]), b = p.vertex(p.edge(q.carrier.id).vertices[1]);
        dirs.push_back(normalized(b - a));
        dirs.push_back(normalized(a - b));
    } else if (q.carrier.kind == Carrier::Kind::vertex) {
        for (EdgeId e : p.vertex_edges(q.carrier.id))
            dirs.push_back(normalized(p.vertex(p.other_vertex(e, q.carrier.id)) - q.position));
    }
    return dirs;
}

/// One-sided difference quotient of |x - o| from q along the unit tangent t.
inline double directional_fd(const Point3& q, const Vec3& t, const Point3& o, double h) {
    return (distance(q + h * t, o) - distance(q, o)) / h;
}

// Second-order one-sided quotient. The first-order one overestimates by up to
// h (1 - f'^2) / (2 |q - o|), which dwarfs a relative tolerance near equilibria.
inline double directional_fd2(const Point3& q, const Vec3& t, const Point3& o, double h) {
    return (-3.0 * distance(q, o) + 4.0 * distance(q + h * t, o) - distance(q + 2.0 * h * t, o)) / (2.0 * h);
}

// Bound on the first-order quotient's truncation error.
inline double first_order_bias(const Point3& q, const Point3& o, double h) { return h / (2.0 * (distance(q, o) - 2.0 * h)); }

}  // namespace polymorse::testing
