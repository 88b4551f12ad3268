#pragma once

#include <iosfwd>
#include <string>

#include "polymorse/polyhedron.hpp"

namespace polymorse {

enum class MeshFormat { off, obj };

struct RawMesh {
    std::vector<Point3> vertices;
    std::vector<std::vector<VertexId>> faces;
};

/// Parses without validating. Throws ParseError with a 1-based line number.
RawMesh parse_off(std::istream& in);
/// Only `v` and `f` records are read; `f` tokens may carry /vt/vn suffixes
/// and negative indices relative to the vertices read so far.
RawMesh parse_obj(std::istream& in);

/// Format from the extension; `-` reads OFF from stdin.
Polyhedron load_mesh(const std::string& path, double relative_epsilon = kDefaultRelativeEpsilon);
Polyhedron load_mesh(const std::string& path, MeshFormat format, double relative_epsilon = kDefaultRelativeEpsilon);
Polyhedron read_mesh(std::istream& in, MeshFormat format, double relative_epsilon = kDefaultRelativeEpsilon);

void write_off(std::ostream& out, const Polyhedron& poly);
void write_off(std::ostream& out, const RawMesh& mesh);

/// FNV-1a over the vertex coordinates and face lists.
std::uint64_t mesh_checksum(const Polyhedron& poly);

}  // namespace polymorse
