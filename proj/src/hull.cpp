#include "polymorse/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

namespace polymorse {
namespace {

struct HullFace {
    std::array<std::uint32_t, 3> v{};
    Plane plane;
    std::vector<std::uint32_t> outside;
    bool alive = true;
};

std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

class Quickhull {
public:
    Quickhull(std::span<const Point3> pts, double eps) : pts_(pts), eps_(eps) {}

    HullMesh run() {
        seed_simplex();
        std::vector<std::uint32_t> pending;
        for (std::uint32_t f = 0; f < faces_.size(); ++f)
            if (!faces_[f].outside.empty()) pending.push_back(f);

        while (!pending.empty()) {
            const std::uint32_t f = pending.back();
            pending.pop_back();
            if (!faces_[f].alive || faces_[f].outside.empty()) continue;
            const std::uint32_t eye = farthest(f);
            for (std::uint32_t nf : add_point(f, eye))
                if (!faces_[nf].outside.empty()) pending.push_back(nf);
        }
        return collect();
    }

private:
    void seed_simplex() {
        const std::size_t n = pts_.size();
        std::array<std::uint32_t, 6> ext{};
        for (std::uint32_t i = 0; i < n; ++i) {
            const Point3& p = pts_[i];
            if (p.x < pts_[ext[0]].x) ext[0] = i;
            if (p.x > pts_[ext[1]].x) ext[1] = i;
            if (p.y < pts_[ext[2]].y) ext[2] = i;
            if (p.y > pts_[ext[3]].y) ext[3] = i;
            if (p.z < pts_[ext[4]].z) ext[4] = i;
            if (p.z > pts_[ext[5]].z) ext[5] = i;
        }
        std::uint32_t a = ext[0], b = ext[1];
        double best = -1.0;
        for (auto i : ext)
            for (auto j : ext)
                if (double d = distance(pts_[i], pts_[j]); d > best) { best = d; a = i; b = j; }
        if (best <= eps_) degenerate();

        const Vec3 ab = normalized(pts_[b] - pts_[a]);
        std::uint32_t c = a;
        best = -1.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const Vec3 ap = pts_[i] - pts_[a];
            if (double d = norm(ap - dot(ap, ab) * ab); d > best) { best = d; c = i; }
        }
        if (best <= eps_) degenerate();

        const Plane base = Plane::through(pts_[a], cross(pts_[b] - pts_[a], pts_[c] - pts_[a]));
        std::uint32_t d = a;
        best = -1.0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (double s = std::abs(base.signed_distance(pts_[i])); s > best) { best = s; d = i; }
        if (best <= eps_) degenerate();

        if (base.signed_distance(pts_[d]) > 0.0) std::swap(b, c);
        make_face(a, b, c);
        make_face(a, d, b);
        make_face(b, d, c);
        make_face(c, d, a);

        for (std::uint32_t i = 0; i < n; ++i) {
            if (i == a || i == b || i == c || i == d) continue;
            assign(i, {0, 1, 2, 3});
        }
    }

    [[noreturn]] static void degenerate() {
        throw MeshError(MeshError::Kind::degenerate_hull, "point set is coplanar or collinear");
    }

    std::uint32_t make_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        HullFace hf;
        hf.v = {a, b, c};
        hf.plane = Plane::through(pts_[a], cross(pts_[b] - pts_[a], pts_[c] - pts_[a]));
        const auto id = static_cast<std::uint32_t>(faces_.size());
        faces_.push_back(std::move(hf));
        edges_[key(a, b)] = id;
        edges_[key(b, c)] = id;
        edges_[key(c, a)] = id;
        return id;
    }

    void assign(std::uint32_t p, const std::vector<std::uint32_t>& candidates) {
        double best = eps_;
        std::uint32_t target = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t f : candidates) {
            const double d = faces_[f].plane.signed_distance(pts_[p]);
            if (d > best) { best = d; target = f; }
        }
        if (target != std::numeric_limits<std::uint32_t>::max()) faces_[target].outside.push_back(p);
    }

    std::uint32_t farthest(std::uint32_t f) const {
        const HullFace& hf = faces_[f];
        std::uint32_t eye = hf.outside.front();
        double best = -1.0;
        for (std::uint32_t p : hf.outside)
            if (double d = hf.plane.signed_distance(pts_[p]); d > best) { best = d; eye = p; }
        return eye;
    }

    std::vector<std::uint32_t> add_point(std::uint32_t start, std::uint32_t eye) {
        const Point3& e = pts_[eye];
        std::vector<std::uint32_t> visible{start};
        std::vector<char> mark(faces_.size(), 0);
        mark[start] = 1;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> horizon;
        for (std::size_t k = 0; k < visible.size(); ++k) {
            const HullFace& hf = faces_[visible[k]];
            for (int i = 0; i < 3; ++i) {
                const std::uint32_t a = hf.v[i], b = hf.v[(i + 1) % 3];
                const std::uint32_t nb = edges_.at(key(b, a));
                if (mark[nb] == 1) continue;
                if (mark[nb] == 0 && faces_[nb].plane.signed_distance(e) > eps_) {
                    mark[nb] = 1;
                    visible.push_back(nb);
                } else {
                    mark[nb] = 2;
                }
            }
        }
        for (std::uint32_t f : visible) {
            const HullFace& hf = faces_[f];
            for (int i = 0; i < 3; ++i) {
                const std::uint32_t a = hf.v[i], b = hf.v[(i + 1) % 3];
                if (mark[edges_.at(key(b, a))] != 1) horizon.emplace_back(a, b);
            }
        }

        std::vector<std::uint32_t> orphans;
        for (std::uint32_t f : visible) {
            HullFace& hf = faces_[f];
            hf.alive = false;
            for (std::uint32_t p : hf.outside)
                if (p != eye) orphans.push_back(p);
            hf.outside.clear();
            hf.outside.shrink_to_fit();
            for (int i = 0; i < 3; ++i) {
                auto it = edges_.find(key(hf.v[i], hf.v[(i + 1) % 3]));
                if (it != edges_.end() && it->second == f) edges_.erase(it);
            }
        }

        std::vector<std::uint32_t> created;
        created.reserve(horizon.size());
        for (const auto& [a, b] : horizon) created.push_back(make_face(a, b, eye));
        for (std::uint32_t p : orphans) assign(p, created);
        return created;
    }

    HullMesh collect() const {
        HullMesh out;
        std::vector<std::uint32_t> remap(pts_.size(), std::numeric_limits<std::uint32_t>::max());
        for (const HullFace& hf : faces_) {
            if (!hf.alive) continue;
            std::vector<VertexId> tri;
            for (std::uint32_t v : hf.v) {
                if (remap[v] == std::numeric_limits<std::uint32_t>::max()) {
                    remap[v] = static_cast<std::uint32_t>(out.vertices.size());
                    out.vertices.push_back(pts_[v]);
                }
                tri.push_back(remap[v]);
            }
            out.faces.push_back(std::move(tri));
        }
        return out;
    }

    std::span<const Point3> pts_;
    double eps_;
    std::vector<HullFace> faces_;
    std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

double extent(std::span<const Point3> pts) {
    Point3 lo = pts.front(), hi = pts.front();
    for (const Point3& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return distance(lo, hi);
}

}  // namespace

HullMesh convex_hull(std::span<const Point3> points, double relative_epsilon) {
    if (points.size() < 4) throw MeshError(MeshError::Kind::degenerate_hull, "fewer than 4 points");
    return Quickhull(points, relative_epsilon * extent(points)).run();
}

HullMesh halfspace_intersection(std::span<const Plane> planes, double relative_epsilon) {
    const std::size_t m = planes.size();
    double scale = 1.0;
    for (const Plane& pl : planes) scale = std::max(scale, std::abs(pl.offset));
    const double eps = relative_epsilon * scale * 10.0;

    std::vector<Point3> corners;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const Vec3 &n1 = planes[i].normal, &n2 = planes[j].normal, &n3 = planes[k].normal;
                const double det = dot(n1, cross(n2, n3));
                if (std::abs(det) < 1e-12) continue;
                const Point3 p = (planes[i].offset * cross(n2, n3) + planes[j].offset * cross(n3, n1) +
                                  planes[k].offset * cross(n1, n2)) / det;
                const bool feasible = std::all_of(planes.begin(), planes.end(),
                                                  [&](const Plane& pl) { return pl.signed_distance(p) <= eps; });
                if (!feasible) continue;
                const bool known = std::any_of(corners.begin(), corners.end(),
                                               [&](const Point3& q) { return distance(p, q) <= eps; });
                if (!known) corners.push_back(p);
            }

    HullMesh out;
    out.vertices = corners;
    for (const Plane& pl : planes) {
        std::vector<VertexId> on;
        Point3 c;
        for (VertexId v = 0; v < corners.size(); ++v)
            if (std::abs(pl.signed_distance(corners[v])) <= eps) {
                on.push_back(v);
                c += corners[v];
            }
        if (on.size() < 3) continue;
        c /= static_cast<double>(on.size());
        const Vec3 e1 = normalized(corners[on[0]] - c);
        const Vec3 e2 = cross(pl.normal, e1);
        std::sort(on.begin(), on.end(), [&](VertexId a, VertexId b) {
            const Vec3 da = corners[a] - c, db = corners[b] - c;
            return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
        });
        out.faces.push_back(std::move(on));
    }
    if (out.faces.size() < 4) throw MeshError(MeshError::Kind::degenerate_hull, "half spaces do not bound a solid");
    return out;
}

}  // namespace polymorse
