#pragma once

#include <array>
#include <optional>
#include <vector>

#include "polymorse/polyhedron.hpp"

namespace polymorse {

/// Flow behaviour across an edge. Crossed edges carry the face the flow
/// leaves (`from`) and the face it enters (`to`).
struct EdgeClass {
    enum class Kind { followed, crossed, degenerate };
    Kind kind = Kind::degenerate;
    FaceId from = 0;
    FaceId to = 0;

    static EdgeClass followed() { return {Kind::followed, 0, 0}; }
    static EdgeClass crossed(FaceId from, FaceId to) { return {Kind::crossed, from, to}; }

    friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

struct EdgeClassification {
    EdgeClass cls;
    /// Signed in-plane distances of the two face feet from the edge line,
    /// positive on the face side; index matches Edge::faces.
    std::array<double, 2> margins{};
    std::optional<Finding> finding;
};

/// Followed iff both face-plane feet of the origin lie in the open half planes
/// of their faces. Throws InternalInconsistency if both lie outside.
EdgeClassification classify_edge(const ReferencedPolyhedron& rp, EdgeId e);

enum class EquilibriumKind { stable, saddle, unstable };
std::string_view to_string(EquilibriumKind kind);

struct Equilibrium {
    SurfacePoint location;
    EquilibriumKind kind = EquilibriumKind::stable;
    double height = 0.0;

    const Carrier& carrier() const { return location.carrier; }
};

struct NondegeneracyReport {
    enum class Status { generic_candidate, degenerate };
    std::vector<Finding> findings;

    Status status() const { return findings.empty() ? Status::generic_candidate : Status::degenerate; }
    bool degenerate() const { return !findings.empty(); }
};

struct VertexTest {
    bool unstable = false;
    /// <unit edge direction, unit (q - o)> per entry of vertex_edges(v).
    std::vector<double> derivatives;
    std::optional<Finding> finding;
};

/// A vertex is unstable iff every incident edge descends from it.
VertexTest is_vertex_equilibrium(const ReferencedPolyhedron& rp, VertexId v);

inline constexpr std::uint32_t kNone = 0xffffffffu;

/// Equilibria ordered stable (by face), saddle (by edge), unstable (by vertex),
/// together with the edge classes they were derived from.
struct Equilibria {
    std::vector<Equilibrium> points;
    std::vector<EdgeClass> edge_classes;
    NondegeneracyReport report;
    std::vector<std::uint32_t> stable_of_face;
    std::vector<std::uint32_t> saddle_of_edge;
    std::vector<std::uint32_t> unstable_of_vertex;

    std::size_t count(EquilibriumKind kind) const;
    std::size_t stable_count() const { return count(EquilibriumKind::stable); }
    std::size_t saddle_count() const { return count(EquilibriumKind::saddle); }
    std::size_t unstable_count() const { return count(EquilibriumKind::unstable); }
};

std::vector<EdgeClass> classify_edges(const ReferencedPolyhedron& rp, std::vector<Finding>* findings = nullptr);

/// Locates every equilibrium; degeneracy is reported, never thrown.
Equilibria find_equilibria(const ReferencedPolyhedron& rp);

}  // namespace polymorse
