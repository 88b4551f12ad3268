#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polymorse {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

/// The face, edge or vertex a surface point or curve segment lies on.
struct Carrier {
    enum class Kind : std::uint8_t { face, edge, vertex };
    Kind kind = Kind::face;
    std::uint32_t id = 0;

    static constexpr Carrier face(FaceId f) { return {Kind::face, f}; }
    static constexpr Carrier edge(EdgeId e) { return {Kind::edge, e}; }
    static constexpr Carrier vertex(VertexId v) { return {Kind::vertex, v}; }

    friend constexpr bool operator==(const Carrier&, const Carrier&) = default;
};

std::string_view to_string(Carrier::Kind kind);
std::string to_string(const Carrier& c);

/// A measured violation of nondegeneracy or genericity.
struct Finding {
    enum class Kind : std::uint8_t {
        projection_on_face_boundary,
        projection_at_edge_endpoint,
        vertex_tangency,
        gradient_length_tie,
        curve_hits_vertex,
        saddle_saddle_connection,
    };
    Kind kind = Kind::projection_on_face_boundary;
    Carrier entity;
    double margin = 0.0;
    /// Second entity for connection-type findings (e.g. the saddle reached).
    std::optional<Carrier> related;

    friend bool operator==(const Finding&, const Finding&) = default;
};

std::string_view to_string(Finding::Kind kind);
std::string describe(const Finding& f);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems with an input mesh or reference point.
class MeshError : public Error {
public:
    enum class Kind {
        empty_input,
        bad_index,
        degenerate_face,
        open_surface,
        non_manifold_edge,
        inconsistent_orientation,
        not_genus_zero,
        non_planar_face,
        non_convex,
        reference_not_interior,
        degenerate_hull,
    };

    MeshError(Kind kind, std::string message, std::optional<std::uint32_t> entity = std::nullopt)
        : Error(std::move(message)), kind_(kind), entity_(entity) {}

    Kind kind() const { return kind_; }
    std::optional<std::uint32_t> entity() const { return entity_; }

private:
    Kind kind_;
    std::optional<std::uint32_t> entity_;
};

std::string_view to_string(MeshError::Kind kind);

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// The input is degenerate or non-generic; carries the offending entity.
class NonGenericError : public Error {
public:
    explicit NonGenericError(Finding witness)
        : Error("non-generic input: " + describe(witness)), witness_(witness) {}
    const Finding& witness() const { return witness_; }

private:
    Finding witness_;
};

/// A state the theory rules out was reached; signals broken convexity or a
/// misconfigured tolerance.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A randomized check could not reach a verdict.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

}  // namespace polymorse
