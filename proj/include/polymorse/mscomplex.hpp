#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polymorse/flow.hpp"

namespace polymorse {

/// A quadrilateral region with corners stable, saddle, unstable, saddle in
/// counterclockwise order seen from outside. edges[i] joins corners[i] and
/// corners[i + 1].
struct Cell {
    std::array<std::uint32_t, 4> corners{};
    std::array<std::uint32_t, 4> edges{};
    /// The two unstable-side boundary curves end on a shared edge.
    bool merged = false;

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct MSComplex {
    std::vector<Equilibrium> vertices;
    std::vector<AscendingCurve> edges;
    std::vector<Cell> cells;
    /// Geometry used by validate(); hand-built complexes may leave the face
    /// vectors empty, which skips the checks that need them.
    Point3 origin;
    std::vector<Point3> face_feet;
    std::vector<Vec3> face_normals;
    std::size_t step_budget = 0;
    double length_tolerance = 0.0;

    std::size_t count(EquilibriumKind kind) const;
};

struct StepTimings {
    double steps_1_3_ms = 0.0;
    double steps_4_5_ms = 0.0;

    friend bool operator==(const StepTimings&, const StepTimings&) = default;
};

/// Edge classification, equilibria, curve tracing and cell stitching.
/// Throws NonGenericError on degenerate or non-generic input and
/// InternalInconsistency when the cells do not close.
MSComplex build_ms_complex(const ReferencedPolyhedron& rp, StepTimings* timings = nullptr);

/// Same, reusing equilibria already computed for rp.
MSComplex build_ms_complex(const ReferencedPolyhedron& rp, const Equilibria& eq);

struct ValidationFailure {
    std::string check;
    std::string message;
    std::vector<std::uint32_t> entities;

    friend bool operator==(const ValidationFailure&, const ValidationFailure&) = default;
};

struct ValidationReport {
    std::vector<ValidationFailure> failures;

    bool pass() const { return failures.empty(); }
    bool failed(std::string_view check) const;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Check names: endpoint-rule, saddle-degree, euler, corner-cycle, census,
/// connectivity, curve-monotonicity, curve-crossing.
ValidationReport validate(const MSComplex& msc);

struct MSGraph {
    struct Node {
        std::uint32_t id = 0;
        EquilibriumKind kind = EquilibriumKind::stable;
        Point3 position;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::optional<std::vector<std::vector<Point3>>> polylines;
};

MSGraph to_graph(const MSComplex& msc, bool with_embedding = false);

}  // namespace polymorse
