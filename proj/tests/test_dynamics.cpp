#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thurston/dynamics.hpp"

#include <set>

using namespace thurston;

TEST_CASE("vertex addresses of 0-vertices stay put and map by labels") {
    Engine eng{generate_checkerboard(2, 2)};
    PointAddress p = vertex_address(eng, {0, vertex_cell(1)}, 3);
    CHECK(p.depth() == 3);
    for (int k = 0; k <= 3; ++k) CHECK(p.cell_at(eng, k).cell.dim == 0);
    // one application moves the point to its label vertex, one level shallower
    PointAddress q = apply_map(eng, p);
    CHECK(q.depth() == 2);
    int label = eng.rule().vertex_label0(1);
    CHECK(q.cell_at(eng, 0).cell == vertex_cell(label));
}

TEST_CASE("applying the map decreases depth by exactly one and exhausts") {
    Engine eng{generate_checkerboard(2, 2)};
    PointAddress p = PointAddress::from_cell(eng, {2, tile_cell(5)});
    CHECK(p.depth() == 2);
    CHECK(apply_map(eng, p).depth() == 1);
    PointAddress z{tile_cell(0)};
    CHECK_THROWS_AS(apply_map(eng, z), DepthExhausted);
}

TEST_CASE("generic preimages: d branches of weight one, disjoint at level 1") {
    Engine eng{generate_checkerboard(2, 2)};
    PointAddress p{tile_cell(0)}; // generic point of the white 0-tile
    auto pre = preimages(eng, p);
    CHECK(pre.size() == 4);
    std::set<Cell> level1;
    for (const auto& wp : pre) {
        CHECK(wp.weight == 1);
        CHECK(wp.address.depth() == 1);
        CHECK(wp.address.all_tiles());
        level1.insert(wp.address.cell_at(eng, 1).cell);
        CHECK(apply_map(eng, wp.address) == p);
    }
    CHECK(level1.size() == 4);
}

TEST_CASE("preimage weights always sum to the degree") {
    for (auto gen : {generate_checkerboard(2, 2), generate_checkerboard(3, 3),
                     generate_barycentric()}) {
        Engine eng{gen};
        const int d = eng.rule().d;
        // tile, edge and vertex anchors
        std::vector<PointAddress> points;
        points.push_back(PointAddress{tile_cell(0)});
        points.push_back(PointAddress{tile_cell(1)});
        points.push_back(PointAddress{edge_cell(0)});
        for (int k = 0; k < eng.rule().m; ++k)
            points.push_back(vertex_address(eng, {0, vertex_cell(k)}, 1));
        for (const auto& p : points) {
            long long sum = 0;
            for (const auto& wp : preimages(eng, p)) sum += wp.weight;
            CHECK(sum == d);
        }
    }
}

TEST_CASE("iterated preimage counts grow without bound") {
    Engine eng{generate_checkerboard(2, 2)};
    // start at a fixed 0-vertex so branching is initially slow
    PointAddress p = vertex_address(eng, {0, vertex_cell(0)}, 0);
    std::size_t last = 1;
    std::vector<PointAddress> frontier{p};
    for (int i = 1; i <= 4; ++i) {
        std::vector<PointAddress> next;
        for (const auto& q : frontier)
            for (auto& wp : preimages(eng, q)) next.push_back(std::move(wp.address));
        CHECK(next.size() >= last);
        last = next.size();
        frontier = std::move(next);
    }
    CHECK(last > 1);
}

TEST_CASE("critical vertex addresses descend through their vertex") {
    Engine eng{generate_checkerboard(2, 2)};
    // find a critical level-1 vertex and follow it down
    const CellComplex& one = eng.level(1);
    std::int32_t crit = -1;
    for (std::size_t v = 0; v < one.vertices.size(); ++v)
        if ((int)one.vertex_tiles()[v].size() == 4 && one.vertices[v].parent0.dim == 1)
            crit = (std::int32_t)v;
    REQUIRE(crit >= 0);
    PointAddress p = vertex_address(eng, {1, vertex_cell(crit)}, 4);
    CHECK(p.cell_at(eng, 0).cell.dim == 1); // sits inside a 0-edge
    for (int k = 1; k <= 4; ++k) CHECK(p.cell_at(eng, k).cell.dim == 0);
}

TEST_CASE("distinct vertices have disjoint minimal cells at their level") {
    Engine eng{generate_checkerboard(2, 2)};
    PointAddress a = vertex_address(eng, {0, vertex_cell(0)}, 2);
    PointAddress b = vertex_address(eng, {0, vertex_cell(1)}, 2);
    CHECK(a != b);
    CHECK(a.cell_at(eng, 2) != b.cell_at(eng, 2));
}

TEST_CASE("orbit degrees multiply") {
    Engine engb{generate_barycentric()};
    // 0-vertex 0 is a fixed critical point of degree 2
    PointAddress v0 = vertex_address(engb, {0, vertex_cell(0)}, 4);
    for (int n = 1; n <= 4; ++n)
        CHECK(local_degree_along_orbit(engb, v0, n) == (1LL << n));
    PointAddress generic{tile_cell(0)};
    auto pre = preimages(engb, generic);
    CHECK(local_degree_along_orbit(engb, pre[0].address, 1) == pre[0].weight);
    CHECK_THROWS_AS(local_degree_along_orbit(engb, v0, 9), DepthExhausted);
}

TEST_CASE("orbit degree equals the flower count at the vertex level") {
    for (auto gen : {generate_checkerboard(2, 2), generate_barycentric()}) {
        Engine eng{gen};
        for (int n = 1; n <= 3; ++n) {
            const CellComplex& cx = eng.level(n);
            for (std::size_t v = 0; v < cx.vertices.size(); ++v) {
                PointAddress p = PointAddress::from_cell(eng, {n, vertex_cell((std::int32_t)v)});
                CHECK(local_degree_along_orbit(eng, p, n) ==
                      local_degree_at(eng, {n, vertex_cell((std::int32_t)v)}));
            }
        }
    }
}

TEST_CASE("multiplicativity across split orbits") {
    Engine eng{generate_checkerboard(3, 3)};
    const CellComplex& cx = eng.level(3);
    for (std::size_t v = 0; v < cx.vertices.size(); v += 7) {
        PointAddress p = PointAddress::from_cell(eng, {3, vertex_cell((std::int32_t)v)});
        long long full = local_degree_along_orbit(eng, p, 3);
        long long head = local_degree_along_orbit(eng, p, 1);
        long long tail = local_degree_along_orbit(eng, apply_map(eng, p), 2);
        CHECK(full == head * tail);
    }
}

TEST_CASE("critical analysis of the boards") {
    Engine e22{generate_checkerboard(2, 2)};
    CriticalReport r22 = analyze_critical(e22);
    CHECK(r22.critical_vertices.size() == 6);
    for (const auto& cv : r22.critical_vertices) CHECK(cv.degree == 2);
    CHECK_FALSE(r22.has_periodic_critical);
    CHECK(r22.kappa == 1);

    Engine eb{generate_barycentric()};
    CriticalReport rb = analyze_critical(eb);
    long long rh = 0;
    for (const auto& cv : rb.critical_vertices) rh += cv.degree - 1;
    CHECK(rh == 2 * eb.rule().d - 2);
    CHECK(rb.has_periodic_critical);
    CHECK(rb.kappa == 1); // the periodic critical point is fixed
    // 0-vertex 0 is fixed; 1 and 2 fall onto it
    CHECK(rb.preperiod[0] == 0);
    CHECK(rb.period[0] == 1);
    CHECK(rb.preperiod[1] == 1);
    CHECK(rb.preperiod[2] == 1);
}
