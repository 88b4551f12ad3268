#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymorse/flow.hpp"

namespace polymorse {

/// Random small perturbation keeping the combinatorics of the face list.
/// Simplicial meshes move every vertex by a uniform offset in [-magnitude,
/// magnitude]^3. Other meshes move each face plane (offset by up to
/// `magnitude`, normal tilted by up to magnitude / diameter) and rebuild the
/// solid from the planes. Throws MeshError when the result is not a valid
/// convex polyhedron with the same face structure.
Polyhedron perturb(const Polyhedron& poly, double magnitude, std::uint64_t seed);

struct ProbeOptions {
    int trials = 20;
    /// Zero selects ten times the length tolerance.
    double magnitude = 0.0;
    std::uint64_t seed = 1;
};

struct GenericityVerdict {
    bool generic = false;
    std::optional<Finding> witness;
    std::string detail;
    int trials_run = 0;
    int trials_discarded = 0;
    std::vector<std::string> discard_reasons;
};

/// Compares the equilibrium census and the saddle origin/destination pairing
/// of rp with perturbed copies. Throws InconclusiveError if every trial is
/// discarded.
GenericityVerdict probe_genericity(const ReferencedPolyhedron& rp, const ProbeOptions& options = {});

}  // namespace polymorse
