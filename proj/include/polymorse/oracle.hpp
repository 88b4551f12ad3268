#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polymorse/mscomplex.hpp"

namespace polymorse {

struct OracleOptions {
    std::size_t samples = 10000;
    /// Zero picks a tenth of the sample spacing, capped at a quarter of the
    /// shortest edge.
    double step = 0.0;
    std::uint64_t seed = 1;
    /// Maximum steps per sample; zero picks 50 * diameter / step.
    std::size_t budget = 0;
};

struct OracleSample {
    Point3 position;
    FaceId face = 0;
    /// Unstable equilibrium id, or kNone when ambiguous.
    std::uint32_t destination = kNone;
};

using IdPair = std::pair<std::uint32_t, std::uint32_t>;

struct OracleResult {
    std::vector<OracleSample> samples;
    /// Sample count per unstable equilibrium id.
    std::map<std::uint32_t, std::size_t> census;
    /// Unordered pairs of unstable ids whose basins touch along a curve,
    /// confirmed by bisecting between neighbouring samples.
    std::set<IdPair> adjacency;
    std::size_t ambiguous = 0;
    double spacing = 0.0;
    double step = 0.0;
    Equilibria equilibria;
};

/// Steepest ascent by radially reprojected Euclidean steps until within two
/// steps of an unstable vertex. Returns nullopt when the budget runs out or
/// the gradient vanishes.
std::optional<std::uint32_t> ascend(const ReferencedPolyhedron& rp, const Equilibria& eq, Point3 start, double step,
                                    std::size_t budget);

/// Dense area-weighted sampling of the boundary. Throws InconclusiveError when
/// more than 1% of the samples are ambiguous.
OracleResult oracle_basins(const ReferencedPolyhedron& rp, const OracleOptions& options = {});

struct OracleComparison {
    std::set<IdPair> oracle_adjacency;
    std::set<IdPair> complex_adjacency;
    /// (stable, unstable) pairs reached from rings around each stable point
    /// and from one probe inside each claimed sector, and the pairs sharing a
    /// cell.
    std::set<IdPair> ring_incidences;
    std::set<IdPair> cell_incidences;
    std::size_t curve_adjacent = 0;
    std::size_t located = 0;
    std::size_t unlocated = 0;
    std::size_t disagreements = 0;
    std::vector<std::string> messages;

    bool agrees() const {
        return oracle_adjacency == complex_adjacency && ring_incidences == cell_incidences && disagreements == 0 &&
               unlocated == 0;
    }
};

/// Checks basin adjacency, stable-unstable incidences and the destination of
/// every sample farther than two spacings from a curve against the cells of
/// msc.
OracleComparison compare_with_complex(const ReferencedPolyhedron& rp, const OracleResult& oracle, const MSComplex& msc,
                                      std::size_t ring_samples = 256);

struct OpennessReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double radius = 0.0;
    std::vector<std::size_t> violating_samples;
};

/// Every non-ambiguous sample farther than two spacings from all curves must
/// share its destination with its (at most eight) neighbours within 1.2
/// spacings.
OpennessReport basin_openness(const OracleResult& oracle, const MSComplex& msc);

}  // namespace polymorse
