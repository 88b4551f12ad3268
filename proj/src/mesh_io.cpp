#include "polymorse/mesh_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace polymorse {
namespace {

/// Splits lines into whitespace tokens, dropping comments and blank lines.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    bool next_line(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            for (std::string t; ss >> t;) tokens.push_back(std::move(t));
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::size_t line() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("expected a number, got '" + s + "'", line);
}

long long parse_int(std::string_view s, std::size_t line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
    return v;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return in;
}

}  // namespace

RawMesh parse_off(std::istream& in) {
    TokenReader reader(in);
    std::vector<std::string> tok;
    if (!reader.next_line(tok)) throw ParseError("empty OFF input", 0);

    // The header keyword may share its line with the counts.
    std::size_t at = 0;
    if (tok[0] == "OFF") at = 1;
    else if (tok[0].rfind("OFF", 0) == 0) throw ParseError("unsupported OFF variant '" + tok[0] + "'", reader.line());
    if (at == tok.size()) {
        if (!reader.next_line(tok)) throw ParseError("missing OFF counts", reader.line());
        at = 0;
    }
    if (tok.size() - at < 2) throw ParseError("expected vertex and face counts", reader.line());

    const long long nv = parse_int(tok[at], reader.line());
    const long long nf = parse_int(tok[at + 1], reader.line());
    if (nv < 0 || nf < 0) throw ParseError("negative element count", reader.line());

    RawMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        if (!reader.next_line(tok)) throw ParseError("unexpected end of file in vertex list", reader.line());
        if (tok.size() < 3) throw ParseError("vertex needs three coordinates", reader.line());
        mesh.vertices.push_back({parse_double(tok[0], reader.line()), parse_double(tok[1], reader.line()),
                                 parse_double(tok[2], reader.line())});
    }
    for (long long i = 0; i < nf; ++i) {
        if (!reader.next_line(tok)) throw ParseError("unexpected end of file in face list", reader.line());
        const long long k = parse_int(tok[0], reader.line());
        if (k < 3 || static_cast<std::size_t>(k) + 1 > tok.size())
            throw ParseError("face declares " + tok[0] + " vertices", reader.line());
        std::vector<VertexId> face;
        for (long long j = 1; j <= k; ++j) {
            const long long idx = parse_int(tok[static_cast<std::size_t>(j)], reader.line());
            if (idx < 0 || idx >= nv) throw ParseError("vertex index " + std::to_string(idx) + " out of range", reader.line());
            face.push_back(static_cast<VertexId>(idx));
        }
        mesh.faces.push_back(std::move(face));
    }
    return mesh;
}

RawMesh parse_obj(std::istream& in) {
    TokenReader reader(in);
    std::vector<std::string> tok;
    RawMesh mesh;
    while (reader.next_line(tok)) {
        if (tok[0] == "v") {
            if (tok.size() < 4) throw ParseError("vertex needs three coordinates", reader.line());
            mesh.vertices.push_back({parse_double(tok[1], reader.line()), parse_double(tok[2], reader.line()),
                                     parse_double(tok[3], reader.line())});
        } else if (tok[0] == "f") {
            if (tok.size() < 4) throw ParseError("face needs at least three vertices", reader.line());
            std::vector<VertexId> face;
            for (std::size_t j = 1; j < tok.size(); ++j) {
                const std::string_view t(tok[j]);
                long long idx = parse_int(t.substr(0, t.find('/')), reader.line());
                const auto n = static_cast<long long>(mesh.vertices.size());
                if (idx < 0) idx += n;
                else idx -= 1;
                if (idx < 0 || idx >= n) throw ParseError("vertex reference '" + tok[j] + "' out of range", reader.line());
                face.push_back(static_cast<VertexId>(idx));
            }
            mesh.faces.push_back(std::move(face));
        }
    }
    return mesh;
}

Polyhedron read_mesh(std::istream& in, MeshFormat format, double relative_epsilon) {
    RawMesh mesh = format == MeshFormat::off ? parse_off(in) : parse_obj(in);
    return Polyhedron::build(std::move(mesh.vertices), std::move(mesh.faces), relative_epsilon);
}

Polyhedron load_mesh(const std::string& path, MeshFormat format, double relative_epsilon) {
    if (path == "-") return read_mesh(std::cin, format, relative_epsilon);
    std::ifstream in = open(path);
    return read_mesh(in, format, relative_epsilon);
}

Polyhedron load_mesh(const std::string& path, double relative_epsilon) {
    const auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return load_mesh(path, ext == "obj" ? MeshFormat::obj : MeshFormat::off, relative_epsilon);
}

void write_off(std::ostream& out, const RawMesh& mesh) {
    out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
    out << std::setprecision(17);
    for (const Point3& p : mesh.vertices) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
    for (const auto& f : mesh.faces) {
        out << f.size();
        for (VertexId v : f) out << ' ' << v;
        out << '\n';
    }
}

void write_off(std::ostream& out, const Polyhedron& poly) {
    write_off(out, RawMesh{{poly.vertices().begin(), poly.vertices().end()}, poly.faces()});
}

std::uint64_t mesh_checksum(const Polyhedron& poly) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t word) {
        for (int i = 0; i < 8; ++i) {
            h ^= (word >> (8 * i)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    };
    for (const Point3& p : poly.vertices()) {
        mix(std::bit_cast<std::uint64_t>(p.x));
        mix(std::bit_cast<std::uint64_t>(p.y));
        mix(std::bit_cast<std::uint64_t>(p.z));
    }
    for (const auto& f : poly.faces()) {
        mix(f.size());
        for (VertexId v : f) mix(v);
    }
    return h;
}

}  // namespace polymorse
