#include "polymorse/fixtures.hpp"

#include <numbers>
#include <random>
#include <vector>

#include "polymorse/hull.hpp"

namespace polymorse {

Polyhedron make_cube(double h) {
    std::vector<Point3> v{{-h, -h, -h}, {h, -h, -h}, {h, h, -h}, {-h, h, -h},
                          {-h, -h, h},  {h, -h, h},  {h, h, h},  {-h, h, h}};
    std::vector<std::vector<VertexId>> f{{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                         {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    return Polyhedron::build(std::move(v), std::move(f));
}

Polyhedron make_tetrahedron() {
    std::vector<Point3> v{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<std::vector<VertexId>> f{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return Polyhedron::build(std::move(v), std::move(f));
}

Polyhedron make_pex() {
    using std::numbers::pi;
    std::vector<Point3> pts;
    pts.push_back({0.0, 0.0, 1.2});
    for (int i = 0; i < 8; ++i) {
        const double a = i * pi / 4.0;
        pts.push_back({std::cos(a), std::sin(a), 1.0});
    }
    const double phi = pi / 20.0;
    for (int i = 0; i < 8; ++i) {
        const double a = i * pi / 4.0 - phi;
        pts.push_back({std::cos(a), std::sin(a), -1.0});
    }
    pts.push_back({0.0, 0.0, -1.2});
    HullMesh hull = convex_hull(pts);
    return Polyhedron::build(std::move(hull.vertices), std::move(hull.faces));
}

Polyhedron make_badguy() {
    using std::numbers::pi;
    const double eps = 0.05;
    const double tilt = pi / 6.0;
    std::vector<Plane> planes;
    // Wedge through the line {(1, t, 0)}, symmetric in z.
    planes.push_back(Plane::through({1, 0, 0}, {std::cos(tilt), 0, std::sin(tilt)}));
    planes.push_back(Plane::through({1, 0, 0}, {std::cos(tilt), 0, -std::sin(tilt)}));
    // Vertical cut through (1 + eps, 0, 0) and q = (1, 1, 0).
    const Plane cut = Plane::through({1 + eps, 0, 0}, {1, eps, 0});
    planes.push_back(cut);
    // Second vertical cut through the point where the face ray from the foot
    // of the origin through q meets it, oriented so the vertical edge there is
    // followed.
    const Point3 q{1, 1, 0};
    const Point3 foot = project_to_plane({0, 0, 0}, cut);
    const Point3 s2 = q + 1.0 * (q - foot) / norm(q - foot);
    const double beta = 75.0 * pi / 180.0;
    planes.push_back(Plane::through(s2, {std::cos(beta), std::sin(beta), 0}));
    // Bounding caps far from the construction.
    planes.push_back(Plane::through({-2, 0, 0}, {-1, 0, 0}));
    planes.push_back(Plane::through({0, -2, 0}, {0, -1, 0}));
    HullMesh mesh = halfspace_intersection(planes);
    return Polyhedron::build(std::move(mesh.vertices), std::move(mesh.faces));
}

Polyhedron make_random_hull(std::size_t n, std::uint64_t seed, const Vec3& axes) {
    if (n < 4) throw PreconditionError("random hull needs at least 4 points");
    constexpr int kRetries = 8;
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
        std::normal_distribution<double> gauss;
        std::vector<Point3> pts;
        pts.reserve(n);
        while (pts.size() < n) {
            const Vec3 g{gauss(rng), gauss(rng), gauss(rng)};
            const double len = norm(g);
            if (len < 1e-12) continue;
            const Vec3 u = g / len;
            pts.push_back({u.x * axes.x, u.y * axes.y, u.z * axes.z});
        }
        try {
            HullMesh hull = convex_hull(pts);
            return Polyhedron::build(std::move(hull.vertices), std::move(hull.faces));
        } catch (const MeshError&) {
            continue;
        }
    }
    throw MeshError(MeshError::Kind::degenerate_hull,
                    "random hull stayed degenerate after " + std::to_string(kRetries) + " samples");
}

}  // namespace polymorse
