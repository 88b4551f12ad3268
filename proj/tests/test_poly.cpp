#include <doctest.h>

#include <numbers>
#include <random>
#include <set>

#include "polymorse/fixtures.hpp"
#include "polymorse/hull.hpp"
#include "polymorse/polyhedron.hpp"

using namespace polymorse;

namespace {

std::vector<Point3> cube_points() {
    return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
}

std::vector<std::vector<VertexId>> cube_faces() {
    return {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
}

MeshError::Kind build_error(std::vector<Point3> v, std::vector<std::vector<VertexId>> f) {
    try {
        Polyhedron::build(std::move(v), std::move(f));
    } catch (const MeshError& e) {
        return e.kind();
    }
    FAIL("mesh was accepted");
    return MeshError::Kind::empty_input;
}

}  // namespace

TEST_CASE("cube builds with consistent incidences") {
    const Polyhedron p = Polyhedron::build(cube_points(), cube_faces());
    CHECK(p.vertex_count() == 8);
    CHECK(p.edge_count() == 12);
    CHECK(p.face_count() == 6);
    CHECK_FALSE(p.is_simplicial());
    CHECK(p.diameter() == doctest::Approx(std::sqrt(3.0)));
    CHECK(p.surface_area() == doctest::Approx(6.0));

    for (EdgeId e = 0; e < p.edge_count(); ++e) {
        const Edge& ed = p.edge(e);
        CHECK(p.edge_length(e) == doctest::Approx(1.0));
        CHECK(ed.faces[0] != ed.faces[1]);
        REQUIRE(p.edge_slot(ed.faces[0], e).has_value());
        REQUIRE(p.edge_slot(ed.faces[1], e).has_value());
        // faces[0] walks the edge forward.
        const auto& f0 = p.face(ed.faces[0]);
        const std::size_t s = *p.edge_slot(ed.faces[0], e);
        CHECK(f0[s] == ed.vertices[0]);
        CHECK(f0[(s + 1) % f0.size()] == ed.vertices[1]);
    }
    for (VertexId v = 0; v < p.vertex_count(); ++v) {
        CHECK(p.vertex_faces(v).size() == 3);
        CHECK(p.vertex_edges(v).size() == 3);
    }
    // Outward normals: the center lies on the negative side of every plane.
    for (FaceId f = 0; f < p.face_count(); ++f) CHECK(p.face_plane(f).signed_distance({0.5, 0.5, 0.5}) == doctest::Approx(-0.5));
}

TEST_CASE("inward edge normals point into the face") {
    const Polyhedron p = Polyhedron::build(cube_points(), cube_faces());
    for (FaceId f = 0; f < p.face_count(); ++f) {
        Point3 c;
        for (VertexId v : p.face(f)) c += p.vertex(v);
        c /= static_cast<double>(p.face(f).size());
        for (std::size_t i = 0; i < p.face(f).size(); ++i) {
            const Vec3 n = p.inward_edge_normal(f, i);
            CHECK(norm(n) == doctest::Approx(1.0));
            CHECK(dot(n, p.face_plane(f).normal) == doctest::Approx(0.0));
            CHECK(dot(c - p.vertex(p.face(f)[i]), n) == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("reversed global orientation is accepted") {
    auto faces = cube_faces();
    for (auto& f : faces) std::reverse(f.begin(), f.end());
    const Polyhedron p = Polyhedron::build(cube_points(), faces);
    for (FaceId f = 0; f < p.face_count(); ++f) CHECK(p.face_plane(f).signed_distance({0.5, 0.5, 0.5}) < 0.0);
}

TEST_CASE("invalid meshes are rejected with a kind") {
    using K = MeshError::Kind;
    CHECK(build_error({}, {}) == K::empty_input);

    auto faces = cube_faces();
    faces.pop_back();
    CHECK(build_error(cube_points(), faces) == K::open_surface);

    faces = cube_faces();
    faces[0] = {0, 3, 2, 9};
    CHECK(build_error(cube_points(), faces) == K::bad_index);

    faces = cube_faces();
    std::reverse(faces[2].begin(), faces[2].end());
    CHECK(build_error(cube_points(), faces) == K::inconsistent_orientation);

    auto pts = cube_points();
    pts[6] = {1.2, 1.2, 1.2};
    CHECK(build_error(pts, cube_faces()) == K::non_planar_face);

    // Triangulated cube with one corner pushed inwards.
    const HullMesh hull = convex_hull(cube_points());
    std::vector<Point3> dented(hull.vertices.begin(), hull.vertices.end());
    for (Point3& q : dented)
        if (q == Point3{1, 1, 1}) q = {0.6, 0.6, 0.6};
    CHECK(build_error(dented, hull.faces) == K::non_convex);

    faces = cube_faces();
    faces[0] = {0, 3, 3, 1};
    CHECK(build_error(cube_points(), faces) == K::degenerate_face);
}

TEST_CASE("reference point must be interior") {
    CHECK_NOTHROW(with_reference(make_cube(), {0.1, 0.2, -0.3}));
    try {
        with_reference(make_cube(), {0.5, 0.0, 0.0});
        FAIL("boundary point accepted");
    } catch (const MeshError& e) {
        CHECK(e.kind() == MeshError::Kind::reference_not_interior);
        CHECK(e.entity().has_value());
    }
    CHECK_THROWS_AS(with_reference(make_cube(), {2.0, 0.0, 0.0}), MeshError);
}

TEST_CASE("centroid of the cube and of a lopsided pyramid") {
    CHECK(distance(solid_centroid(make_cube()), {0, 0, 0}) < 1e-12);

    // Square pyramid of height 3 over [0,2]^2: the centroid sits at height 3/4.
    const Polyhedron pyr = Polyhedron::build({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}, {1, 1, 3}},
                                             {{0, 3, 2, 1}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
    CHECK(distance(solid_centroid(pyr), {1, 1, 0.75}) < 1e-12);
    CHECK(with_centroid(pyr).provenance() == ReferencedPolyhedron::Provenance::centroid);
}

TEST_CASE("feet and distances") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0.1, 0.2, 0.3});
    const Polyhedron& p = rp.polyhedron();
    for (FaceId f = 0; f < p.face_count(); ++f) {
        const Point3 foot = rp.face_foot(f);
        CHECK(std::abs(p.face_plane(f).signed_distance(foot)) < 1e-12);
        CHECK(rp.face_distance(f) == doctest::Approx(distance(foot, rp.origin())));
    }
    for (EdgeId e = 0; e < p.edge_count(); ++e) {
        const Point3 foot = rp.edge_foot(e);
        const Point3 a = p.vertex(p.edge(e).vertices[0]), b = p.vertex(p.edge(e).vertices[1]);
        CHECK(norm(cross(foot - a, b - a)) < 1e-12);
        CHECK(dot(rp.origin() - foot, b - a) == doctest::Approx(0.0));
        CHECK(rp.edge_distance(e) == doctest::Approx(distance(foot, rp.origin())));
    }
}

TEST_CASE("locate picks the lowest-dimensional carrier") {
    const Polyhedron p = make_cube();
    CHECK(locate(p, {0.5, 0.1, -0.2}).carrier.kind == Carrier::Kind::face);
    const SurfacePoint on_edge = locate(p, {0.5, 0.5, 0.1});
    CHECK(on_edge.carrier.kind == Carrier::Kind::edge);
    const Edge& ed = p.edge(on_edge.carrier.id);
    const Point3 a = p.vertex(ed.vertices[0]), b = p.vertex(ed.vertices[1]);
    CHECK(distance(a + on_edge.t * (b - a), {0.5, 0.5, 0.1}) < 1e-12);
    const SurfacePoint corner = locate(p, {0.5, -0.5, 0.5});
    CHECK(corner.carrier.kind == Carrier::Kind::vertex);
    CHECK(p.vertex(corner.carrier.id) == Point3{0.5, -0.5, 0.5});
}

TEST_CASE("radial function matches the analytic cube") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0, 0, 0});
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int i = 0; i < 500; ++i) {
        const Vec3 u = normalized(Vec3{g(rng), g(rng), g(rng)});
        const double expect = 0.5 / std::max({std::abs(u.x), std::abs(u.y), std::abs(u.z)});
        const RadialHit hit = radial_function(rp, u);
        CHECK(hit.lambda == doctest::Approx(expect).epsilon(1e-12));
        CHECK(distance(hit.point.position, expect * u) < 1e-9);
    }
}

TEST_CASE("triangulation preserves the solid") {
    const Polyhedron cube = make_cube();
    const Polyhedron tri = triangulate(cube);
    CHECK(tri.is_simplicial());
    CHECK(tri.face_count() == 12);
    CHECK(tri.edge_count() == 18);
    CHECK(tri.surface_area() == doctest::Approx(cube.surface_area()));
}

TEST_CASE("convex hull of a sphere sample") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<Point3> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(normalized(Vec3{g(rng), g(rng), g(rng)}));
    pts.push_back({0, 0, 0});  // interior, dropped
    const HullMesh h = convex_hull(pts);
    CHECK(h.vertices.size() == 200);
    CHECK(h.faces.size() == 2 * 200 - 4);
    const Polyhedron p = Polyhedron::build(h.vertices, h.faces);
    for (const Point3& q : pts)
        for (FaceId f = 0; f < p.face_count(); ++f) CHECK(p.face_plane(f).signed_distance(q) <= 1e-12);
}

TEST_CASE("half-space intersection rebuilds the cube") {
    std::vector<Plane> planes;
    for (const Vec3& n : {Vec3{1, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}, Vec3{0, 0, -1}})
        planes.push_back(Plane::through(0.5 * n, n));
    const HullMesh h = halfspace_intersection(planes);
    const Polyhedron p = Polyhedron::build(h.vertices, h.faces);
    CHECK(p.vertex_count() == 8);
    CHECK(p.face_count() == 6);
    std::set<std::size_t> sizes;
    for (const auto& f : p.faces()) sizes.insert(f.size());
    CHECK(sizes == std::set<std::size_t>{4});
}

TEST_CASE("fixtures") {
    const Polyhedron tet = make_tetrahedron();
    CHECK(tet.face_count() == 4);
    for (const Point3& v : tet.vertices()) CHECK(norm(v) == doctest::Approx(std::sqrt(3.0)));

    const Polyhedron pex = make_pex();
    CHECK(pex.vertex_count() == 18);
    CHECK(pex.is_simplicial());
    CHECK(pex.vertex_count() - pex.edge_count() + pex.face_count() == 2);

    const Polyhedron r1 = make_random_hull(100, 42), r2 = make_random_hull(100, 42);
    CHECK(r1.vertex_count() == 100);
    CHECK(std::equal(r1.vertices().begin(), r1.vertices().end(), r2.vertices().begin()));
    const Polyhedron ell = make_random_hull(100, 42, {1.0, 0.75, 0.5});
    for (const Point3& v : ell.vertices())
        CHECK(v.x * v.x + v.y * v.y / 0.5625 + v.z * v.z / 0.25 == doctest::Approx(1.0));
}
