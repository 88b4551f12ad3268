#pragma once

#include <span>
#include <vector>

#include "polymorse/polyhedron.hpp"

namespace polymorse {

struct HullMesh {
    std::vector<Point3> vertices;
    std::vector<std::vector<VertexId>> faces;
};

/// Quickhull over a point set in general position. Returns triangles
/// counterclockwise from outside; interior and near-coplanar points are
/// dropped. Throws MeshError(degenerate_hull) when the points span less than
/// three dimensions.
HullMesh convex_hull(std::span<const Point3> points, double relative_epsilon = kDefaultRelativeEpsilon);

/// Bounded intersection of half spaces {x : dot(n, x) <= offset} with
/// polygonal faces. Planes that do not contribute a face are ignored.
HullMesh halfspace_intersection(std::span<const Plane> planes,
                                double relative_epsilon = kDefaultRelativeEpsilon);

}  // namespace polymorse
