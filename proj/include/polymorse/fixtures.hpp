#pragma once

#include <cstdint>

#include "polymorse/polyhedron.hpp"

namespace polymorse {

/// Axis-aligned cube centered at the origin with six quadrilateral faces.
Polyhedron make_cube(double half_extent = 0.5);

/// Regular tetrahedron centered at the origin with circumradius sqrt(3).
Polyhedron make_tetrahedron();

/// Hull of two parallel regular octagons of diameter 2 at z = +1 and z = -1,
/// the lower one rotated clockwise by pi/20, capped by apexes at z = +-1.2.
Polyhedron make_pex();
inline constexpr Point3 kPexReference{0.5, 0.5, 0.5};

/// Truncated wedge with an ascending curve running from the saddle (1,0,0)
/// through the vertex (1,1,0) into a second saddle. Use with kBadguyReference.
Polyhedron make_badguy();
inline constexpr Point3 kBadguyReference{0.0, 0.0, 0.0};

/// Hull of n points drawn uniformly on the unit sphere, then scaled per axis.
/// Deterministic per seed; retries a bounded number of times on a degenerate
/// sample.
Polyhedron make_random_hull(std::size_t n, std::uint64_t seed, const Vec3& axes = {1.0, 1.0, 1.0});

}  // namespace polymorse
