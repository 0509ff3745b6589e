#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thurston/periodic.hpp"

#include <set>

using namespace thurston;

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

Integer weight_sum(const std::vector<FixedPointRecord>& recs) {
    Integer s = 0;
    for (const auto& r : recs) s += r.weight;
    return s;
}

} // namespace

TEST_CASE("candidate tile counts follow the class identity") {
    Engine e22{generate_checkerboard(2, 2)};
    CHECK(fixed_candidate_tiles(e22, 1).size() == 4); // d + deg on curve = 4 + 0
    Engine e33{generate_checkerboard(3, 3)};
    CHECK(fixed_candidate_tiles(e33, 1).size() == 10); // 9 + 1
    for (int n = 1; n <= 3; ++n) {
        long long expect = pow_ll(4, n) + pow_ll(0, n);
        CHECK((long long)fixed_candidate_tiles(e22, n).size() == expect);
    }
    for (int n = 1; n <= 2; ++n) {
        long long expect = pow_ll(9, n) + pow_ll(1, n);
        CHECK((long long)fixed_candidate_tiles(e33, n).size() == expect);
    }
}

TEST_CASE("wb and bw tiles are never candidates") {
    Engine eng{generate_checkerboard(3, 3)};
    auto cands = fixed_candidate_tiles(eng, 1);
    const CellComplex& cx = eng.level(1);
    std::set<std::int32_t> ids;
    for (const auto& c : cands) ids.insert(c.cell.id);
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        bool candidate = cx.tiles[t].color == Color(cx.tiles[t].parent0.id);
        CHECK(candidate == (ids.count((std::int32_t)t) > 0));
    }
}

TEST_CASE("locating fixed points: nesting, fixity and boundary dedup") {
    Engine eng{generate_checkerboard(2, 2)};
    auto cands = fixed_candidate_tiles(eng, 1);
    std::set<PointAddress> points;
    for (const auto& t : cands) {
        PointAddress p = locate_fixed_point(eng, t, 4);
        CHECK(p.depth() == 4);
        // fixed: one application equals the address truncated one level
        CHECK(apply_map(eng, p) == p.truncated(3));
        points.insert(p);
    }
    // the two candidates touching the fixed corner resolve to the same vertex
    CHECK(points.size() == 3);
    int vertex_points = 0;
    for (const auto& p : points)
        if (p.is_vertex_point()) vertex_points++;
    CHECK(vertex_points == 1);
}

TEST_CASE("interior fixed points keep all-tile addresses") {
    Engine eng{generate_checkerboard(2, 2)};
    auto recs = enumerate_fixed_points(eng, 1, 6);
    for (const auto& r : recs) {
        if (r.locus == FixedLocus::tile_interior) {
            CHECK(r.address.all_tiles());
            CHECK(r.witness.size() == 1);
        }
        if (r.locus == FixedLocus::vertex) CHECK(r.address.is_vertex_point());
    }
}

TEST_CASE("circle analysis matches the curve degree identity") {
    Engine e22{generate_checkerboard(2, 2)};
    CircleAnalysis a22 = circle_analysis(e22);
    CHECK(a22.degree_on_curve == 0);
    CHECK(a22.preserve_count() - a22.reverse_count() == -1);

    Engine e33{generate_checkerboard(3, 3)};
    CircleAnalysis a33 = circle_analysis(e33);
    CHECK(a33.degree_on_curve == 1);
    CHECK(a33.preserve_count() - a33.reverse_count() == 0);
    CHECK(a33.fixed_sites.size() == 8); // 4 corners + 4 edge points

    Engine eb{generate_barycentric()};
    CircleAnalysis ab = circle_analysis(eb);
    CHECK(ab.degree_on_curve == 0);
    CHECK(ab.preserve_count() - ab.reverse_count() == -1);
    bool has_fold = false;
    for (const auto& s : ab.fixed_sites)
        if (s.orientation == SiteOrientation::fold) has_fold = true;
    CHECK(has_fold); // the fixed corner is critical and folds the curve there
}

TEST_CASE("circle analysis of iterates") {
    Engine e22{generate_checkerboard(2, 2)};
    for (int n = 1; n <= 3; ++n) {
        CircleAnalysis a = circle_analysis(e22, n);
        CHECK(a.degree_on_curve == 0);
        CHECK(a.preserve_count() - a.reverse_count() == a.degree_on_curve - 1);
    }
    Engine e33{generate_checkerboard(3, 3)};
    for (int n = 1; n <= 2; ++n) {
        CircleAnalysis a = circle_analysis(e33, n);
        CHECK(a.degree_on_curve == 1);
        CHECK(a.preserve_count() - a.reverse_count() == 0);
    }
}

TEST_CASE("weighted fixed point counts hit 1 + d^n") {
    Engine e22{generate_checkerboard(2, 2)};
    for (int n = 1; n <= 3; ++n) {
        auto recs = enumerate_fixed_points(e22, n, 0);
        CHECK(weight_sum(recs) == 1 + ipow(4, (unsigned)n));
        CHECK((long long)recs.size() <= 2 * pow_ll(4, n));
        for (const auto& r : recs) CHECK(r.weight == 1); // no periodic criticals
        std::set<PointAddress> dedup;
        for (const auto& r : recs) dedup.insert(r.address);
        CHECK(dedup.size() == recs.size());
    }
    Engine eb{generate_barycentric()};
    auto recs = enumerate_fixed_points(eb, 1, 4);
    CHECK(weight_sum(recs) == 7);
    CHECK(recs.size() == 6);
}

TEST_CASE("fixed points of iterates are closed under the map") {
    Engine eng{generate_checkerboard(2, 2)};
    auto recs = enumerate_fixed_points(eng, 2, 6);
    for (const auto& r : recs) {
        PointAddress q = apply_map(eng, apply_map(eng, r.address));
        CHECK(q == r.address.truncated(r.address.depth() - 2));
    }
}

TEST_CASE("preperiodic census counts are exact") {
    Engine eng{generate_checkerboard(2, 2)};
    auto c01 = preperiodic_census(eng, 0, 1, 0);
    CHECK(c01.s == 5);
    auto c12 = preperiodic_census(eng, 1, 2, 0);
    CHECK(c12.s == 20);
    CHECK(c12.s_tilde <= c12.s);
    CHECK((long long)c12.points.size() == (long long)c12.s_tilde.convert_to<long long>());
    // weighted census hits d^n + d^m across a small sweep
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m < n; ++m) {
            auto c = preperiodic_census(eng, m, n, 0);
            CHECK(c.s == ipow(4, (unsigned)n) + ipow(4, (unsigned)m));
        }
}

TEST_CASE("weighted multiplicities appear once preimages hit critical points") {
    Engine eng{generate_checkerboard(2, 2)};
    auto c = preperiodic_census(eng, 2, 3, 0);
    CHECK(c.s == 64 + 16);
    CHECK(c.s_tilde < c.s); // some branches pass through degree-2 vertices
}

TEST_CASE("moebius counts against direct exact-period enumeration") {
    Engine eng{generate_checkerboard(2, 2)};
    CHECK(moebius_period_count(eng, 1) == 5);
    CHECK(moebius_period_count(eng, 2) == 12);
    CHECK(moebius_period_count(eng, 3) == 60);
    for (int n = 1; n <= 3; ++n)
        CHECK(moebius_period_count(eng, n) == exact_period_count(eng, n));
    // partitioning fixed points of f^2 by exact period
    CHECK(moebius_period_count(eng, 1) + moebius_period_count(eng, 2) == 17);
    // and of f^4: periods 1, 2 and 4
    CHECK(exact_period_count(eng, 1) + exact_period_count(eng, 2) + exact_period_count(eng, 4) ==
          1 + 256);
}

TEST_CASE("moebius requires no periodic critical points") {
    Engine eb{generate_barycentric()};
    CHECK_THROWS_AS(moebius_period_count(eb, 2), PeriodicCriticalPresent);
}

TEST_CASE("expansion failure surfaces as an error") {
    EngineOptions opts;
    opts.max_level = 5;
    Engine capped{generate_checkerboard(1, 2), opts};
    CHECK_THROWS_AS(establish_expansion(capped, 1), ExpansionNotEstablished);
    CHECK_THROWS_AS(enumerate_fixed_points(capped, 1, 4), ExpansionNotEstablished);
}
