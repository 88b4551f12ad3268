#include <doctest.h>

#include <map>
#include <set>

#include "polymorse/fixtures.hpp"
#include "polymorse/mscomplex.hpp"

using namespace polymorse;

namespace {

// Counts cell sides per curve; a quadrangulation of the sphere uses every
// curve exactly twice.
std::map<std::uint32_t, int> side_counts(const MSComplex& msc) {
    std::map<std::uint32_t, int> n;
    for (const Cell& c : msc.cells)
        for (std::uint32_t e : c.edges) ++n[e];
    return n;
}

void check_quadrangulation(const MSComplex& msc) {
    const auto sides = side_counts(msc);
    CHECK(sides.size() == msc.edges.size());
    for (const auto& [e, n] : sides) CHECK_MESSAGE(n == 2, "curve " << e);
    CHECK(4 * msc.cells.size() == 2 * msc.edges.size());
}

}  // namespace

TEST_CASE("cube complex") {
    const ReferencedPolyhedron rp = with_reference(make_cube(), {0, 0, 0});
    StepTimings t;
    const MSComplex msc = build_ms_complex(rp, &t);
    CHECK(msc.vertices.size() == 26);
    CHECK(msc.edges.size() == 48);
    CHECK(msc.cells.size() == 24);
    CHECK(t.steps_1_3_ms >= 0.0);
    CHECK(t.steps_4_5_ms >= 0.0);
    const ValidationReport r = validate(msc);
    CHECK(r.pass());
    check_quadrangulation(msc);
    for (const Cell& c : msc.cells) CHECK_FALSE(c.merged);

    // Each cube cell is the quarter of a face around one corner: the stable
    // corner is the face center, the unstable one a vertex of that face.
    const Polyhedron& p = rp.polyhedron();
    for (const Cell& c : msc.cells) {
        const FaceId f = msc.vertices[c.corners[0]].carrier().id;
        const VertexId v = msc.vertices[c.corners[2]].carrier().id;
        const auto& face = p.face(f);
        CHECK(std::find(face.begin(), face.end(), v) != face.end());
    }
}

TEST_CASE("tetrahedron complex") {
    const MSComplex msc = build_ms_complex(with_centroid(make_tetrahedron()));
    CHECK(msc.vertices.size() == 14);
    CHECK(msc.edges.size() == 24);
    CHECK(msc.cells.size() == 12);
    CHECK(validate(msc).pass());
    check_quadrangulation(msc);
}

TEST_CASE("pex complex") {
    const ReferencedPolyhedron rp = with_reference(make_pex(), kPexReference);
    const MSComplex msc = build_ms_complex(rp);
    const ValidationReport r = validate(msc);
    for (const auto& f : r.failures) MESSAGE(f.check << ": " << f.message);
    CHECK(r.pass());
    check_quadrangulation(msc);
    CHECK(msc.count(EquilibriumKind::stable) + msc.count(EquilibriumKind::unstable) -
              msc.count(EquilibriumKind::saddle) == 2);
}

TEST_CASE("random hull complexes") {
    int built = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const ReferencedPolyhedron rp = with_reference(make_random_hull(100, seed, {1.0, 0.75, 0.5}), {0.03, 0.02, -0.01});
        MSComplex msc;
        try {
            msc = build_ms_complex(rp);
        } catch (const NonGenericError& err) {
            MESSAGE("seed " << seed << ": " << err.what());
            continue;
        }
        ++built;
        const ValidationReport r = validate(msc);
        for (const auto& f : r.failures) MESSAGE("seed " << seed << " " << f.check << ": " << f.message);
        CHECK(r.pass());
        check_quadrangulation(msc);
    }
    CHECK(built >= 8);
}

TEST_CASE("validation catches broken complexes") {
    const MSComplex good = build_ms_complex(with_reference(make_cube(), {0, 0, 0}));
    REQUIRE(validate(good).pass());

    SUBCASE("stable joined to unstable") {
        MSComplex bad = good;
        const auto stable = bad.edges[0].origin;
        std::uint32_t unstable = 0;
        while (bad.vertices[unstable].kind != EquilibriumKind::unstable) ++unstable;
        AscendingCurve c = bad.edges[0];
        c.destination = unstable;
        c.origin = stable;
        bad.edges.push_back(c);
        const ValidationReport r = validate(bad);
        CHECK(r.failed("endpoint-rule"));
        CHECK(r.failed("euler"));
    }
    SUBCASE("saddle of degree three") {
        MSComplex bad = good;
        AscendingCurve extra;
        for (const AscendingCurve& c : bad.edges)
            if (c.role == CurveRole::saddle_to_unstable) {
                extra = c;
                break;
            }
        bad.edges.push_back(extra);
        CHECK(validate(bad).failed("saddle-degree"));
    }
    SUBCASE("census") {
        MSComplex bad = good;
        bad.vertices.push_back(bad.vertices.front());
        const ValidationReport r = validate(bad);
        CHECK(r.failed("census"));
        CHECK(r.failed("connectivity"));
    }
    SUBCASE("corner cycle") {
        MSComplex bad = good;
        std::swap(bad.cells[0].corners[0], bad.cells[0].corners[2]);
        CHECK(validate(bad).failed("corner-cycle"));
    }
    SUBCASE("non-monotone curve") {
        MSComplex bad = good;
        for (CurveSegment& s : bad.edges[0].segments) std::swap(s.start, s.end);
        CHECK(validate(bad).failed("curve-monotonicity"));
    }
}

TEST_CASE("saddle-free complex is valid") {
    MSComplex msc;
    Equilibrium s, u;
    s.kind = EquilibriumKind::stable;
    s.location = {{0, 0, -1}, Carrier::face(0), 0.0};
    u.kind = EquilibriumKind::unstable;
    u.location = {{0, 0, 2}, Carrier::vertex(0), 0.0};
    msc.vertices = {s, u};
    const ValidationReport r = validate(msc);
    for (const auto& f : r.failures) MESSAGE(f.check << ": " << f.message);
    CHECK(r.pass());
    CHECK(to_graph(msc).edges.empty());
}

TEST_CASE("graph view") {
    const MSComplex msc = build_ms_complex(with_reference(make_cube(), {0, 0, 0}));
    const MSGraph g = to_graph(msc);
    CHECK(g.nodes.size() == 26);
    CHECK(g.edges.size() == 48);
    CHECK_FALSE(g.polylines.has_value());
    std::map<EquilibriumKind, int> kinds;
    for (const auto& n : g.nodes) ++kinds[n.kind];
    CHECK(kinds[EquilibriumKind::stable] == 6);
    CHECK(kinds[EquilibriumKind::saddle] == 12);
    CHECK(kinds[EquilibriumKind::unstable] == 8);

    const MSGraph emb = to_graph(msc, true);
    REQUIRE(emb.polylines.has_value());
    CHECK(emb.polylines->size() == 48);
    for (const auto& line : *emb.polylines) CHECK(line.size() >= 2);
}

TEST_CASE("non-generic input is rejected") {
    CHECK_THROWS_AS(build_ms_complex(with_reference(make_badguy(), kBadguyReference)), NonGenericError);
}
