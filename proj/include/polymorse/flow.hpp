#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "polymorse/equilibria.hpp"

namespace polymorse {

struct ExtendedGradient {
    enum class Source { face_interior, followed_edge, crossed_edge, vertex_face, vertex_edge, zero_at_equilibrium };

    Vector3 vector;
    Source source = Source::zero_at_equilibrium;
    /// Face or edge whose restricted gradient was selected. For crossed edges
    /// this is the face the flow enters.
    std::optional<Carrier> generator;
};

std::string_view to_string(ExtendedGradient::Source source);

/// Maximal-length candidate gradient of the radial distance at q.
/// Throws NonGenericError on a degenerate edge or a length tie at a vertex,
/// InternalInconsistency when two faces qualify at one vertex.
ExtendedGradient extended_gradient(const ReferencedPolyhedron& rp, const SurfacePoint& q,
                                   std::span<const EdgeClass> edge_classes);

struct CurveSegment {
    SurfacePoint start;
    SurfacePoint end;
    /// A face or a followed edge.
    Carrier carrier;
    double carrier_distance = 0.0;

    friend bool operator==(const CurveSegment&, const CurveSegment&) = default;
};

enum class CurveRole { stable_to_saddle, saddle_to_unstable };
std::string_view to_string(CurveRole role);

/// Polyline from origin to destination; origin and destination index
/// Equilibria::points.
struct AscendingCurve {
    std::vector<CurveSegment> segments;
    std::uint32_t origin = kNone;
    std::uint32_t destination = kNone;
    CurveRole role = CurveRole::saddle_to_unstable;

    std::vector<Point3> polyline() const;

    friend bool operator==(const AscendingCurve&, const AscendingCurve&) = default;
};

/// The two curves leaving a saddle, index k heading to edge vertex k.
std::array<AscendingCurve, 2> trace_up_from_saddle(const ReferencedPolyhedron& rp, const Equilibria& eq,
                                                   std::uint32_t saddle);

/// The two curves arriving at a saddle, index k coming from edge face k.
std::array<AscendingCurve, 2> trace_down_from_saddle(const ReferencedPolyhedron& rp, const Equilibria& eq,
                                                     std::uint32_t saddle);

struct SaddleCurves {
    std::uint32_t saddle = kNone;
    std::array<AscendingCurve, 2> down;
    std::array<AscendingCurve, 2> up;
};

/// Traces every saddle in id order. When several saddles fail, the reported
/// witness is a saddle-saddle connection if any, then a vertex hit, then the
/// first failure.
std::vector<SaddleCurves> trace_all_saddles(const ReferencedPolyhedron& rp, const Equilibria& eq);

struct CurveCheck {
    bool ok = true;
    std::string problem;
};

/// Monotone carrier distance, no repeated carrier, monotone distance from o,
/// face segments collinear with the face foot, at most E + F segments.
CurveCheck check_curve(const ReferencedPolyhedron& rp, const AscendingCurve& curve);

std::vector<Point3> face_feet(const ReferencedPolyhedron& rp);

/// Same checks from raw geometry; face_feet may be empty to skip collinearity.
CurveCheck check_curve(const AscendingCurve& curve, const Point3& origin, std::span<const Point3> face_feet,
                       std::size_t step_budget, double length_tolerance);

}  // namespace polymorse
