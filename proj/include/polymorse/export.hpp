#pragma once

#include <iosfwd>
#include <string>

#include "polymorse/mscomplex.hpp"

namespace polymorse {

enum class GraphFormat { json, dot, graphml };
enum class CurveFormat { obj_polyline, vtk };

/// Node colors: stable green, saddle blue, unstable red.
std::string_view kind_color(EquilibriumKind kind);
/// Curve colors: stable-to-saddle green, saddle-to-unstable red.
std::string_view role_color(CurveRole role);

void export_graph(const MSComplex& msc, GraphFormat format, std::ostream& out);
void export_graph(const MSComplex& msc, GraphFormat format, const std::string& path);

/// One polyline per isolated curve, tagged with its role.
void export_curves(const MSComplex& msc, CurveFormat format, std::ostream& out);
void export_curves(const MSComplex& msc, CurveFormat format, const std::string& path);

GraphFormat parse_graph_format(std::string_view name);
/// From a file extension: .vtk selects VTK, anything else OBJ polylines.
CurveFormat curve_format_for(const std::string& path);

}  // namespace polymorse
