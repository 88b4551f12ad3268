#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polymorse/errors.hpp"
#include "polymorse/geom.hpp"

namespace polymorse {

inline constexpr double kDefaultRelativeEpsilon = 1e-9;

/// An edge with its two incident faces. faces[0] traverses the edge from
/// vertices[0] to vertices[1]; faces[1] traverses it backwards.
struct Edge {
    std::array<VertexId, 2> vertices{};
    std::array<FaceId, 2> faces{};
};

/// A point on the boundary tagged with the lowest-dimensional entity holding it.
/// For edge carriers `t` is the parameter along the edge from vertices[0].
struct SurfacePoint {
    Point3 position;
    Carrier carrier;
    double t = 0.0;

    friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

/// Closed convex polyhedral surface with faces counterclockwise seen from outside.
/// Immutable once built.
class Polyhedron {
public:
    /// Validates and indexes a mesh. Faces may be given in either global
    /// orientation; they are stored outward-facing. Throws MeshError.
    static Polyhedron build(std::vector<Point3> vertices, std::vector<std::vector<VertexId>> faces,
                            double relative_epsilon = kDefaultRelativeEpsilon);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    std::span<const Point3> vertices() const { return vertices_; }
    const Point3& vertex(VertexId v) const { return vertices_[v]; }

    const std::vector<std::vector<VertexId>>& faces() const { return faces_; }
    const std::vector<VertexId>& face(FaceId f) const { return faces_[f]; }
    const Plane& face_plane(FaceId f) const { return planes_[f]; }
    /// face_edges(f)[i] joins face(f)[i] and face(f)[i + 1].
    const std::vector<EdgeId>& face_edges(FaceId f) const { return face_edges_[f]; }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

    /// Faces around v in cyclic order; vertex_edges(v)[k] is shared by
    /// vertex_faces(v)[k] and vertex_faces(v)[k + 1].
    const std::vector<FaceId>& vertex_faces(VertexId v) const { return vertex_faces_[v]; }
    const std::vector<EdgeId>& vertex_edges(VertexId v) const { return vertex_edges_[v]; }

    VertexId other_vertex(EdgeId e, VertexId v) const;
    FaceId other_face(EdgeId e, FaceId f) const;
    Line3 edge_line(EdgeId e) const;
    double edge_length(EdgeId e) const;
    /// Unit vector in the plane of f, perpendicular to the i-th edge of f and
    /// pointing into the face.
    Vec3 inward_edge_normal(FaceId f, std::size_t i) const;
    /// Position of e within face(f), or nullopt when f does not contain e.
    std::optional<std::size_t> edge_slot(FaceId f, EdgeId e) const;

    double diameter() const { return diameter_; }
    const TolerancePolicy& tolerance() const { return tolerance_; }
    bool is_simplicial() const;
    double surface_area() const;
    double face_area(FaceId f) const;

private:
    Polyhedron() = default;

    std::vector<Point3> vertices_;
    std::vector<std::vector<VertexId>> faces_;
    std::vector<Plane> planes_;
    std::vector<std::vector<EdgeId>> face_edges_;
    std::vector<Edge> edges_;
    std::vector<std::vector<FaceId>> vertex_faces_;
    std::vector<std::vector<EdgeId>> vertex_edges_;
    double diameter_ = 0.0;
    TolerancePolicy tolerance_;
};

/// Fan-triangulates every non-triangular face from its lowest-index vertex.
Polyhedron triangulate(const Polyhedron& poly);

/// Center of mass of the enclosed solid at uniform density.
Point3 solid_centroid(const Polyhedron& poly);

/// A polyhedron with a strictly interior reference point.
class ReferencedPolyhedron {
public:
    enum class Provenance { given, centroid };

    const Polyhedron& polyhedron() const { return *poly_; }
    std::shared_ptr<const Polyhedron> shared_polyhedron() const { return poly_; }
    const Point3& origin() const { return origin_; }
    Provenance provenance() const { return provenance_; }
    const TolerancePolicy& tolerance() const { return poly_->tolerance(); }

    /// Orthogonal projection of the origin onto the plane of f.
    Point3 face_foot(FaceId f) const;
    double face_distance(FaceId f) const;
    /// Orthogonal projection of the origin onto the line of e.
    Point3 edge_foot(EdgeId e) const;
    double edge_distance(EdgeId e) const;
    double height(const Point3& q) const { return distance(q, origin_); }

private:
    friend ReferencedPolyhedron with_reference(std::shared_ptr<const Polyhedron>, const Point3&,
                                               ReferencedPolyhedron::Provenance);
    ReferencedPolyhedron(std::shared_ptr<const Polyhedron> poly, Point3 origin, Provenance prov)
        : poly_(std::move(poly)), origin_(origin), provenance_(prov) {}

    std::shared_ptr<const Polyhedron> poly_;
    Point3 origin_;
    Provenance provenance_;
};

/// Throws MeshError(reference_not_interior) naming the violating face.
ReferencedPolyhedron with_reference(std::shared_ptr<const Polyhedron> poly, const Point3& origin,
                                    ReferencedPolyhedron::Provenance prov =
                                        ReferencedPolyhedron::Provenance::given);
ReferencedPolyhedron with_reference(Polyhedron poly, const Point3& origin);
ReferencedPolyhedron with_centroid(Polyhedron poly);

/// Classifies a boundary point by the faces whose planes pass through it.
SurfacePoint locate(const Polyhedron& poly, const Point3& p);

struct RadialHit {
    double lambda = 0.0;
    SurfacePoint point;
};

/// Distance from the origin to the boundary along the unit direction u,
/// together with the carrier hit.
RadialHit radial_function(const ReferencedPolyhedron& rp, const Vector3& u);

}  // namespace polymorse
