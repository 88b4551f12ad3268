#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polymorse/mscomplex.hpp"

namespace polymorse {

/// Serializable record of one analysis. Plain data so that a JSON round trip
/// can be compared field by field.
struct AnalysisDocument {
    struct MeshInfo {
        std::string checksum;
        std::size_t vertices = 0;
        std::size_t edges = 0;
        std::size_t faces = 0;
        friend bool operator==(const MeshInfo&, const MeshInfo&) = default;
    };
    struct EdgeClassRecord {
        std::array<VertexId, 2> edge{};
        std::string cls;
        std::optional<FaceId> from;
        std::optional<FaceId> to;
        friend bool operator==(const EdgeClassRecord&, const EdgeClassRecord&) = default;
    };
    struct EquilibriumRecord {
        std::uint32_t id = 0;
        std::string kind;
        Point3 position;
        Carrier carrier;
        double height = 0.0;
        friend bool operator==(const EquilibriumRecord&, const EquilibriumRecord&) = default;
    };
    struct CurveRecord {
        std::uint32_t id = 0;
        std::string role;
        std::uint32_t origin = 0;
        std::uint32_t destination = 0;
        std::vector<Point3> polyline;
        std::vector<Carrier> carriers;
        std::vector<double> carrier_distances;
        friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
    };

    int schema = 1;
    MeshInfo mesh;
    Point3 origin;
    std::string origin_provenance;
    double tolerance = 0.0;
    std::vector<EdgeClassRecord> edge_classes;
    std::vector<EquilibriumRecord> equilibria;
    std::vector<CurveRecord> curves;
    std::vector<Cell> cells;
    ValidationReport validation;
    StepTimings timings;

    friend bool operator==(const AnalysisDocument&, const AnalysisDocument&) = default;
};

AnalysisDocument make_document(const ReferencedPolyhedron& rp, const Equilibria& eq, const MSComplex& msc,
                               const ValidationReport& validation, const StepTimings& timings);

/// Pretty-printed JSON with sorted keys.
std::string to_json(const AnalysisDocument& doc);
/// Throws ParseError on malformed or schema-incompatible input.
AnalysisDocument document_from_json(std::string_view text);

/// Rebuilds the graph, curves and cells recorded in a document; face-level
/// geometry is not stored, so validate() skips the checks that need it.
MSComplex complex_from_document(const AnalysisDocument& doc);

/// Equilibria-only report: census, edge classes and nondegeneracy findings.
std::string equilibria_json(const ReferencedPolyhedron& rp, const Equilibria& eq);

}  // namespace polymorse
