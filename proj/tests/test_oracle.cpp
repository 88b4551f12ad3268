#include <doctest.h>

#include <map>

#include "polymorse/fixtures.hpp"
#include "polymorse/oracle.hpp"

using namespace polymorse;

namespace {

std::map<std::uint32_t, double> fractions(const OracleResult& r) {
    std::size_t total = 0;
    for (const auto& [id, n] : r.census) total += n;
    std::map<std::uint32_t, double> out;
    for (const auto& [id, n] : r.census) out[id] = static_cast<double>(n) / static_cast<double>(total);
    return out;
}

}  // namespace

TEST_CASE("ascent ends at the nearby corner") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0, 0, 0});
    const Equilibria eq = find_equilibria(rp);
    const auto id = ascend(rp, eq, {0.5, 0.3, 0.35}, 0.01, 1000);
    REQUIRE(id.has_value());
    CHECK(eq.points[*id].location.position == Point3{0.5, 0.5, 0.5});

    // A stable point has no ascent direction.
    CHECK_FALSE(ascend(rp, eq, {0.5, 0.0, 0.0}, 0.01, 1000).has_value());
}

TEST_CASE("cube basins are eight equal octants") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0, 0, 0});
    const OracleResult r = oracle_basins(rp, {10000, 0.0, 3, 0});
    CHECK(r.samples.size() == 10000);
    CHECK(r.ambiguous <= 100);
    REQUIRE(r.census.size() == 8);
    for (const auto& [id, share] : fractions(r)) CHECK(share == doctest::Approx(0.125).epsilon(0.05));

    // Octant basins: every corner borders the three corners sharing an edge with it.
    CHECK(r.adjacency.size() == 12);
    std::map<std::uint32_t, int> degree;
    for (const auto& [a, b] : r.adjacency) {
        ++degree[a];
        ++degree[b];
        const Point3 pa = r.equilibria.points[a].location.position, pb = r.equilibria.points[b].location.position;
        CHECK(distance(pa, pb) == doctest::Approx(1.0));
    }
    for (const auto& [id, d] : degree) CHECK(d == 3);

    // Destinations match the octant of each sample.
    for (const OracleSample& s : r.samples) {
        if (s.destination == kNone) continue;
        const Point3 c = r.equilibria.points[s.destination].location.position;
        const bool margin_ok = std::abs(s.position.x) > 0.01 && std::abs(s.position.y) > 0.01 && std::abs(s.position.z) > 0.01;
        if (margin_ok) {
            CHECK(c.x * s.position.x > 0.0);
            CHECK(c.y * s.position.y > 0.0);
            CHECK(c.z * s.position.z > 0.0);
        }
    }
}

TEST_CASE("cube oracle agrees with the complex") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0, 0, 0});
    const OracleResult r = oracle_basins(rp, {10000, 0.0, 1, 0});
    const MSComplex msc = build_ms_complex(rp);
    const OracleComparison cmp = compare_with_complex(rp, r, msc);
    for (const auto& m : cmp.messages) MESSAGE(m);
    CHECK(cmp.agrees());
    CHECK(cmp.ring_incidences.size() == 24);
    CHECK(cmp.located > 0);
    const OpennessReport open = basin_openness(r, msc);
    CHECK(open.checked > 0);
    CHECK(open.violations == 0);
}

TEST_CASE("pex basin shares are stable across seeds") {
    const ReferencedPolyhedron rp = with_reference(make_pex(), kPexReference);
    const auto a = fractions(oracle_basins(rp, {10000, 0.0, 1, 0}));
    const auto b = fractions(oracle_basins(rp, {10000, 0.0, 2, 0}));
    REQUIRE(a.size() == b.size());
    for (const auto& [id, share] : a) {
        REQUIRE(b.count(id) == 1);
        CHECK(std::abs(share - b.at(id)) < 0.02);
    }
}

TEST_CASE("oracle is deterministic per seed") {
    const ReferencedPolyhedron rp = with_centroid(make_tetrahedron());
    const OracleResult a = oracle_basins(rp, {2000, 0.0, 5, 0});
    const OracleResult b = oracle_basins(rp, {2000, 0.0, 5, 0});
    CHECK(a.census == b.census);
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.census.size() == 4);
    // Tetrahedron basins: every corner pair shares an edge.
    CHECK(a.adjacency.size() == 6);
}
