#include "polymorse/document.hpp"

#include <cstdio>

#include <json.hpp>

#include "polymorse/mesh_io.hpp"

namespace polymorse {

using nlohmann::json;

// Field mappings for the schema-1 layout.

static json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

static Point3 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

static json carrier_json(const Carrier& c) { return {{"type", std::string(to_string(c.kind))}, {"id", c.id}}; }

static Carrier carrier_from(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    const auto id = j.at("id").get<std::uint32_t>();
    if (type == "face") return Carrier::face(id);
    if (type == "edge") return Carrier::edge(id);
    if (type == "vertex") return Carrier::vertex(id);
    throw ParseError("unknown carrier type '" + type + "'", 0);
}

static std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

AnalysisDocument make_document(const ReferencedPolyhedron& rp, const Equilibria& eq, const MSComplex& msc,
                               const ValidationReport& validation, const StepTimings& timings) {
    const Polyhedron& poly = rp.polyhedron();
    AnalysisDocument doc;
    doc.mesh = {hex64(mesh_checksum(poly)), poly.vertex_count(), poly.edge_count(), poly.face_count()};
    doc.origin = rp.origin();
    doc.origin_provenance = rp.provenance() == ReferencedPolyhedron::Provenance::centroid ? "centroid" : "given";
    doc.tolerance = rp.tolerance().relative;

    for (EdgeId e = 0; e < poly.edge_count(); ++e) {
        const EdgeClass& c = eq.edge_classes[e];
        AnalysisDocument::EdgeClassRecord r;
        r.edge = poly.edge(e).vertices;
        switch (c.kind) {
            case EdgeClass::Kind::followed: r.cls = "followed"; break;
            case EdgeClass::Kind::crossed:
                r.cls = "crossed";
                r.from = c.from;
                r.to = c.to;
                break;
            case EdgeClass::Kind::degenerate: r.cls = "degenerate"; break;
        }
        doc.edge_classes.push_back(r);
    }
    for (std::uint32_t i = 0; i < eq.points.size(); ++i) {
        const Equilibrium& p = eq.points[i];
        doc.equilibria.push_back({i, std::string(to_string(p.kind)), p.location.position, p.carrier(), p.height});
    }
    for (std::uint32_t i = 0; i < msc.edges.size(); ++i) {
        const AscendingCurve& c = msc.edges[i];
        AnalysisDocument::CurveRecord r{i, std::string(to_string(c.role)), c.origin, c.destination, c.polyline(), {}, {}};
        for (const CurveSegment& s : c.segments) {
            r.carriers.push_back(s.carrier);
            r.carrier_distances.push_back(s.carrier_distance);
        }
        doc.curves.push_back(std::move(r));
    }
    doc.cells = msc.cells;
    doc.validation = validation;
    doc.timings = timings;
    return doc;
}

std::string to_json(const AnalysisDocument& doc) {
    json j;
    j["schema"] = doc.schema;
    j["mesh"] = {{"checksum", doc.mesh.checksum},
                 {"vertices", doc.mesh.vertices},
                 {"edges", doc.mesh.edges},
                 {"faces", doc.mesh.faces}};
    j["origin"] = {{"position", point_json(doc.origin)}, {"provenance", doc.origin_provenance}};
    j["tolerance"] = {{"relative", doc.tolerance}};

    json classes = json::array();
    for (const auto& r : doc.edge_classes) {
        json c = {{"edge", r.edge}, {"class", r.cls}};
        if (r.from) c["from"] = *r.from;
        if (r.to) c["to"] = *r.to;
        classes.push_back(std::move(c));
    }
    j["edge_classes"] = std::move(classes);

    json eqs = json::array();
    for (const auto& r : doc.equilibria)
        eqs.push_back({{"id", r.id},
                       {"kind", r.kind},
                       {"position", point_json(r.position)},
                       {"carrier", carrier_json(r.carrier)},
                       {"height", r.height}});
    j["equilibria"] = std::move(eqs);

    json curves = json::array();
    for (const auto& r : doc.curves) {
        json poly = json::array(), carriers = json::array();
        for (const Point3& p : r.polyline) poly.push_back(point_json(p));
        for (const Carrier& c : r.carriers) carriers.push_back(carrier_json(c));
        curves.push_back({{"id", r.id},
                          {"role", r.role},
                          {"origin", r.origin},
                          {"destination", r.destination},
                          {"polyline", std::move(poly)},
                          {"carriers", std::move(carriers)},
                          {"carrier_distances", r.carrier_distances}});
    }
    j["curves"] = std::move(curves);

    json cells = json::array();
    for (const Cell& c : doc.cells) cells.push_back({{"corners", c.corners}, {"edges", c.edges}, {"merged", c.merged}});
    j["cells"] = std::move(cells);

    json failures = json::array();
    for (const auto& f : doc.validation.failures)
        failures.push_back({{"check", f.check}, {"message", f.message}, {"entities", f.entities}});
    j["validation"] = {{"pass", doc.validation.pass()}, {"failures", std::move(failures)}};
    j["timings_ms"] = {{"steps_1_3", doc.timings.steps_1_3_ms}, {"steps_4_5", doc.timings.steps_4_5_ms}};
    return j.dump(2) + "\n";
}

AnalysisDocument document_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        AnalysisDocument doc;
        doc.schema = j.at("schema").get<int>();
        if (doc.schema != 1) throw ParseError("unsupported schema " + std::to_string(doc.schema), 0);

        const json& m = j.at("mesh");
        doc.mesh = {m.at("checksum").get<std::string>(), m.at("vertices").get<std::size_t>(),
                    m.at("edges").get<std::size_t>(), m.at("faces").get<std::size_t>()};
        doc.origin = point_from(j.at("origin").at("position"));
        doc.origin_provenance = j.at("origin").at("provenance").get<std::string>();
        doc.tolerance = j.at("tolerance").at("relative").get<double>();

        for (const json& c : j.at("edge_classes")) {
            AnalysisDocument::EdgeClassRecord r;
            r.edge = c.at("edge").get<std::array<VertexId, 2>>();
            r.cls = c.at("class").get<std::string>();
            if (c.contains("from")) r.from = c["from"].get<FaceId>();
            if (c.contains("to")) r.to = c["to"].get<FaceId>();
            doc.edge_classes.push_back(r);
        }
        for (const json& e : j.at("equilibria"))
            doc.equilibria.push_back({e.at("id").get<std::uint32_t>(), e.at("kind").get<std::string>(),
                                      point_from(e.at("position")), carrier_from(e.at("carrier")),
                                      e.at("height").get<double>()});
        for (const json& c : j.at("curves")) {
            AnalysisDocument::CurveRecord r;
            r.id = c.at("id").get<std::uint32_t>();
            r.role = c.at("role").get<std::string>();
            r.origin = c.at("origin").get<std::uint32_t>();
            r.destination = c.at("destination").get<std::uint32_t>();
            for (const json& p : c.at("polyline")) r.polyline.push_back(point_from(p));
            for (const json& k : c.at("carriers")) r.carriers.push_back(carrier_from(k));
            r.carrier_distances = c.at("carrier_distances").get<std::vector<double>>();
            doc.curves.push_back(std::move(r));
        }
        for (const json& c : j.at("cells"))
            doc.cells.push_back({c.at("corners").get<std::array<std::uint32_t, 4>>(),
                                 c.at("edges").get<std::array<std::uint32_t, 4>>(), c.at("merged").get<bool>()});
        for (const json& f : j.at("validation").at("failures"))
            doc.validation.failures.push_back({f.at("check").get<std::string>(), f.at("message").get<std::string>(),
                                               f.at("entities").get<std::vector<std::uint32_t>>()});
        doc.timings = {j.at("timings_ms").at("steps_1_3").get<double>(), j.at("timings_ms").at("steps_4_5").get<double>()};
        return doc;
    } catch (const json::exception& err) {
        throw ParseError(std::string("malformed analysis document: ") + err.what(), 0);
    }
}

MSComplex complex_from_document(const AnalysisDocument& doc) {
    MSComplex msc;
    msc.origin = doc.origin;
    for (const auto& r : doc.equilibria) {
        Equilibrium e;
        e.location = {r.position, r.carrier, 0.0};
        e.height = r.height;
        if (r.kind == "stable") e.kind = EquilibriumKind::stable;
        else if (r.kind == "saddle") e.kind = EquilibriumKind::saddle;
        else if (r.kind == "unstable") e.kind = EquilibriumKind::unstable;
        else throw ParseError("unknown equilibrium kind '" + r.kind + "'", 0);
        msc.vertices.push_back(e);
    }
    for (const auto& r : doc.curves) {
        if (r.polyline.size() != r.carriers.size() + 1 || r.carriers.size() != r.carrier_distances.size())
            throw ParseError("curve " + std::to_string(r.id) + " has inconsistent polyline and carriers", 0);
        AscendingCurve c;
        c.origin = r.origin;
        c.destination = r.destination;
        c.role = r.role == "stable-to-saddle" ? CurveRole::stable_to_saddle : CurveRole::saddle_to_unstable;
        for (std::size_t i = 0; i < r.carriers.size(); ++i)
            c.segments.push_back({{r.polyline[i], r.carriers[i], 0.0},
                                  {r.polyline[i + 1], r.carriers[i], 0.0},
                                  r.carriers[i],
                                  r.carrier_distances[i]});
        msc.edges.push_back(std::move(c));
    }
    msc.cells = doc.cells;
    return msc;
}

std::string equilibria_json(const ReferencedPolyhedron& rp, const Equilibria& eq) {
    const AnalysisDocument doc = make_document(rp, eq, MSComplex{}, ValidationReport{}, StepTimings{});
    json j = json::parse(to_json(doc));
    for (const char* key : {"curves", "cells", "validation", "timings_ms"}) j.erase(key);
    j["census"] = {{"stable", eq.stable_count()}, {"saddle", eq.saddle_count()}, {"unstable", eq.unstable_count()}};
    json findings = json::array();
    for (const Finding& f : eq.report.findings) {
        json r = {{"kind", std::string(to_string(f.kind))}, {"entity", carrier_json(f.entity)}, {"margin", f.margin}};
        if (f.related) r["related"] = carrier_json(*f.related);
        findings.push_back(std::move(r));
    }
    j["nondegeneracy"] = {{"status", eq.report.degenerate() ? "degenerate" : "generic-candidate"},
                          {"findings", std::move(findings)}};
    return j.dump(2) + "\n";
}

}  // namespace polymorse
