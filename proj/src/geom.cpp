#include "polymorse/geom.hpp"

#include <sstream>

#include "polymorse/errors.hpp"

namespace polymorse {

Plane Plane::through(const Point3& p, const Vector3& normal) {
    const Vec3 n = normalized(normal);
    return {n, dot(n, p)};
}

Line3 Line3::through(const Point3& a, const Point3& b) {
    return {a, normalized(b - a)};
}

Point3 project_to_plane(const Point3& p, const Plane& plane) {
    return p - plane.signed_distance(p) * plane.normal;
}

Point3 project_to_line(const Point3& p, const Line3& line) {
    return line.anchor + dot(p - line.anchor, line.direction) * line.direction;
}

HalfPlaneTest classify_halfplane(const Point3& q, const Plane& plane, const Line3& boundary,
                                 const Point3& witness, const TolerancePolicy& tol) {
    // In-plane unit normal of the boundary line.
    Vec3 side = cross(plane.normal, boundary.direction);
    const double witness_side = dot(witness - boundary.anchor, side);
    if (std::abs(witness_side) <= tol.halfplane()) {
        std::ostringstream msg;
        msg << "half-plane witness " << witness << " lies on the boundary line";
        throw PreconditionError(msg.str());
    }
    if (witness_side < 0.0) side = -side;

    const double margin = dot(q - boundary.anchor, side);
    Side s = Side::on_boundary;
    if (margin > tol.halfplane()) s = Side::inside;
    else if (margin < -tol.halfplane()) s = Side::outside;
    return {s, margin};
}

std::string_view to_string(Carrier::Kind kind) {
    switch (kind) {
        case Carrier::Kind::face: return "face";
        case Carrier::Kind::edge: return "edge";
        case Carrier::Kind::vertex: return "vertex";
    }
    return "?";
}

std::string to_string(const Carrier& c) {
    return std::string(to_string(c.kind)) + " " + std::to_string(c.id);
}

std::string_view to_string(Finding::Kind kind) {
    switch (kind) {
        case Finding::Kind::projection_on_face_boundary: return "projection-on-face-boundary";
        case Finding::Kind::projection_at_edge_endpoint: return "projection-at-edge-endpoint";
        case Finding::Kind::vertex_tangency: return "vertex-tangency";
        case Finding::Kind::gradient_length_tie: return "gradient-length-tie";
        case Finding::Kind::curve_hits_vertex: return "curve-hits-vertex";
        case Finding::Kind::saddle_saddle_connection: return "saddle-saddle-connection";
    }
    return "?";
}

std::string describe(const Finding& f) {
    std::ostringstream os;
    os << to_string(f.kind) << " at " << to_string(f.entity);
    if (f.related) os << " -> " << to_string(*f.related);
    os << " (margin " << f.margin << ")";
    return os.str();
}

std::string_view to_string(MeshError::Kind kind) {
    switch (kind) {
        case MeshError::Kind::empty_input: return "empty-input";
        case MeshError::Kind::bad_index: return "bad-index";
        case MeshError::Kind::degenerate_face: return "degenerate-face";
        case MeshError::Kind::open_surface: return "open-surface";
        case MeshError::Kind::non_manifold_edge: return "non-manifold-edge";
        case MeshError::Kind::inconsistent_orientation: return "inconsistent-orientation";
        case MeshError::Kind::not_genus_zero: return "not-genus-zero";
        case MeshError::Kind::non_planar_face: return "non-planar-face";
        case MeshError::Kind::non_convex: return "non-convex";
        case MeshError::Kind::reference_not_interior: return "reference-not-interior";
        case MeshError::Kind::degenerate_hull: return "degenerate-hull";
    }
    return "?";
}

}  // namespace polymorse
