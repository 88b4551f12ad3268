#include "polymorse/export.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace polymorse {
namespace {

std::ofstream create(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << std::setprecision(17);
    return out;
}

void graph_json(const MSComplex& msc, std::ostream& out) {
    using nlohmann::json;
    json vertices = json::array(), edges = json::array(), cells = json::array();
    for (std::uint32_t i = 0; i < msc.vertices.size(); ++i) {
        const Equilibrium& v = msc.vertices[i];
        const Point3& p = v.location.position;
        vertices.push_back({{"id", i},
                            {"kind", std::string(to_string(v.kind))},
                            {"color", std::string(kind_color(v.kind))},
                            {"position", {p.x, p.y, p.z}}});
    }
    for (std::uint32_t i = 0; i < msc.edges.size(); ++i) {
        const AscendingCurve& c = msc.edges[i];
        edges.push_back(
            {{"id", i}, {"source", c.origin}, {"target", c.destination}, {"role", std::string(to_string(c.role))}});
    }
    for (const Cell& c : msc.cells) cells.push_back({{"corners", c.corners}, {"edges", c.edges}, {"merged", c.merged}});
    json j{{"schema", 1}, {"vertices", vertices}, {"edges", edges}, {"cells", cells}};
    out << j.dump(2) << '\n';
}

void graph_dot(const MSComplex& msc, std::ostream& out) {
    out << "graph morse_smale {\n  node [style=filled, shape=circle];\n";
    for (std::uint32_t i = 0; i < msc.vertices.size(); ++i) {
        const EquilibriumKind k = msc.vertices[i].kind;
        out << "  n" << i << " [class=" << to_string(k) << ", fillcolor=" << kind_color(k) << "];\n";
    }
    for (const AscendingCurve& c : msc.edges)
        out << "  n" << c.origin << " -- n" << c.destination << " [color=" << role_color(c.role) << "];\n";
    out << "}\n";
}

void graph_graphml(const MSComplex& msc, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
           "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"string\"/>\n"
           "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
           "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
           "  <key id=\"z\" for=\"node\" attr.name=\"z\" attr.type=\"double\"/>\n"
           "  <key id=\"role\" for=\"edge\" attr.name=\"role\" attr.type=\"string\"/>\n"
           "  <graph id=\"morse_smale\" edgedefault=\"undirected\">\n";
    for (std::uint32_t i = 0; i < msc.vertices.size(); ++i) {
        const Equilibrium& v = msc.vertices[i];
        const Point3& p = v.location.position;
        out << "    <node id=\"n" << i << "\"><data key=\"kind\">" << to_string(v.kind) << "</data><data key=\"color\">"
            << kind_color(v.kind) << "</data><data key=\"x\">" << p.x << "</data><data key=\"y\">" << p.y
            << "</data><data key=\"z\">" << p.z << "</data></node>\n";
    }
    for (std::uint32_t i = 0; i < msc.edges.size(); ++i) {
        const AscendingCurve& c = msc.edges[i];
        out << "    <edge id=\"e" << i << "\" source=\"n" << c.origin << "\" target=\"n" << c.destination
            << "\"><data key=\"role\">" << to_string(c.role) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void curves_obj(const MSComplex& msc, std::ostream& out) {
    std::size_t base = 1;
    for (std::uint32_t i = 0; i < msc.edges.size(); ++i) {
        const AscendingCurve& c = msc.edges[i];
        const std::vector<Point3> pts = c.polyline();
        out << "o curve_" << i << "\ng " << to_string(c.role) << "\n# color " << role_color(c.role) << '\n';
        for (const Point3& p : pts) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
        out << 'l';
        for (std::size_t k = 0; k < pts.size(); ++k) out << ' ' << base + k;
        out << '\n';
        base += pts.size();
    }
}

void curves_vtk(const MSComplex& msc, std::ostream& out) {
    std::size_t npts = 0, nidx = 0;
    for (const AscendingCurve& c : msc.edges) {
        npts += c.segments.size() + 1;
        nidx += c.segments.size() + 2;
    }
    out << "# vtk DataFile Version 3.0\nisolated ascending curves\nASCII\nDATASET POLYDATA\n";
    out << "POINTS " << npts << " double\n";
    for (const AscendingCurve& c : msc.edges)
        for (const Point3& p : c.polyline()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
    out << "LINES " << msc.edges.size() << ' ' << nidx << '\n';
    std::size_t at = 0;
    for (const AscendingCurve& c : msc.edges) {
        const std::size_t n = c.segments.size() + 1;
        out << n;
        for (std::size_t k = 0; k < n; ++k) out << ' ' << at + k;
        out << '\n';
        at += n;
    }
    out << "CELL_DATA " << msc.edges.size() << "\nSCALARS role int 1\nLOOKUP_TABLE default\n";
    for (const AscendingCurve& c : msc.edges) out << (c.role == CurveRole::stable_to_saddle ? 0 : 1) << '\n';
}

}  // namespace

std::string_view kind_color(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::stable: return "green";
        case EquilibriumKind::saddle: return "blue";
        case EquilibriumKind::unstable: return "red";
    }
    return "black";
}

std::string_view role_color(CurveRole role) { return role == CurveRole::stable_to_saddle ? "green" : "red"; }

void export_graph(const MSComplex& msc, GraphFormat format, std::ostream& out) {
    switch (format) {
        case GraphFormat::json: graph_json(msc, out); break;
        case GraphFormat::dot: graph_dot(msc, out); break;
        case GraphFormat::graphml: graph_graphml(msc, out); break;
    }
}

void export_graph(const MSComplex& msc, GraphFormat format, const std::string& path) {
    std::ofstream out = create(path);
    export_graph(msc, format, out);
}

void export_curves(const MSComplex& msc, CurveFormat format, std::ostream& out) {
    if (format == CurveFormat::vtk) curves_vtk(msc, out);
    else curves_obj(msc, out);
}

void export_curves(const MSComplex& msc, CurveFormat format, const std::string& path) {
    std::ofstream out = create(path);
    export_curves(msc, format, out);
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "json") return GraphFormat::json;
    if (name == "dot") return GraphFormat::dot;
    if (name == "graphml") return GraphFormat::graphml;
    throw PreconditionError("unknown graph format '" + std::string(name) + "'");
}

CurveFormat curve_format_for(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".vtk") == 0 ? CurveFormat::vtk
                                                                               : CurveFormat::obj_polyline;
}

}  // namespace polymorse
