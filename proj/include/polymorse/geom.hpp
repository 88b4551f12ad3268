#pragma once

#include <cmath>
#include <ostream>

namespace polymorse {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    constexpr Vec3& operator/=(double s) { x /= s; y /= s; z /= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a /= s; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec3& v) {
        return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
    }
};

using Point3 = Vec3;
using Vector3 = Vec3;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

/// Unit vector along v. The zero vector maps to itself.
inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    return n > 0.0 ? v / n : v;
}

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Oriented plane {x : dot(normal, x) == offset} with a unit normal.
struct Plane {
    Vector3 normal;
    double offset = 0.0;

    static Plane through(const Point3& p, const Vector3& normal);

    double signed_distance(const Point3& p) const { return dot(normal, p) - offset; }
};

/// Line through an anchor point with a unit direction.
struct Line3 {
    Point3 anchor;
    Vector3 direction;

    static Line3 through(const Point3& a, const Point3& b);
};

/// One relative epsilon, scaled by the mesh bounding-box diameter where a
/// length is needed. Dimensionless quantities (unit-vector dot products,
/// gradient lengths) use the relative epsilon directly.
struct TolerancePolicy {
    double relative = 1e-9;
    double scale = 1.0;

    double length() const { return relative * scale; }
    double point_coincidence() const { return length(); }
    double halfplane() const { return length(); }
    double vertex_hit() const { return length(); }
    double gradient_tie() const { return relative; }
    double derivative() const { return relative; }
};

Point3 project_to_plane(const Point3& p, const Plane& plane);
Point3 project_to_line(const Point3& p, const Line3& line);

enum class Side { inside, outside, on_boundary };

struct HalfPlaneTest {
    Side side = Side::on_boundary;
    /// Signed distance of q from the boundary line, positive on the witness side.
    double margin = 0.0;
};

/// Tests q against the open half plane of `plane` bounded by `boundary` that
/// contains `witness`. Throws PreconditionError when the witness lies within
/// tolerance of the boundary.
HalfPlaneTest classify_halfplane(const Point3& q, const Plane& plane, const Line3& boundary,
                                 const Point3& witness, const TolerancePolicy& tol);

inline Side in_open_halfplane(const Point3& q, const Plane& plane, const Line3& boundary,
                              const Point3& witness, const TolerancePolicy& tol) {
    return classify_halfplane(q, plane, boundary, witness, tol).side;
}

}  // namespace polymorse
