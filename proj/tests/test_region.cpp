#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cmh/region.hpp"

using namespace cmh;

namespace {

HostInstance blank(int d) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    return inst;
}

// Boundary cycle of a simply-connected face set with no pinch vertices:
// XOR of per-face boundary edges, then a degree-2 walk.
std::vector<GridVertex> trace_boundary(const std::set<FaceCoord>& faces) {
    std::map<std::pair<GridVertex, GridVertex>, int> edges;
    auto add = [&](GridVertex a, GridVertex b) {
        if (b < a) std::swap(a, b);
        edges[{a, b}] ^= 1;
    };
    for (auto [fr, fc] : faces) {
        add({fr, fc}, {fr, fc + 1});
        add({fr + 1, fc}, {fr + 1, fc + 1});
        add({fr, fc}, {fr + 1, fc});
        add({fr, fc + 1}, {fr + 1, fc + 1});
    }
    std::map<GridVertex, std::vector<GridVertex>> adj;
    for (const auto& [e, live] : edges)
        if (live) {
            adj[e.first].push_back(e.second);
            adj[e.second].push_back(e.first);
        }
    std::vector<GridVertex> cyc;
    GridVertex start = adj.begin()->first;
    GridVertex prev = start, cur = start;
    do {
        cyc.push_back(cur);
        auto& nb = adj[cur];
        GridVertex nxt = (cyc.size() == 1 || nb[0] != prev) ? nb[0] : nb[1];
        prev = cur;
        cur = nxt;
    } while (cur != start);
    return cyc;
}

// Histogram polygon over base row `base`, columns [c0, c0+width), column
// heights h[c] >= 1: a guaranteed-simple rectilinear cycle of known area.
std::vector<GridVertex> histogram_cycle(int base, int c0, const std::vector<int>& h) {
    std::set<FaceCoord> faces;
    for (int i = 0; i < int(h.size()); ++i)
        for (int r = base - h[i]; r < base; ++r) faces.insert({r, c0 + i});
    return trace_boundary(faces);
}

} // namespace

TEST_CASE("single face boundary") {
    HostInstance inst = blank(4);
    Region r = cycle_interior(inst, rectangle_cycle(0, 0, 1, 1));
    CHECK(r.faces.size() == 1);
    CHECK(r.faces.count({0, 0}) == 1);
    CHECK(r.grid_vertices.empty());
    CHECK(r.boundary_vertices.size() == 4);
}

TEST_CASE("3x3 vertex sub-grid perimeter") {
    HostInstance inst = blank(6);
    Region r = cycle_interior(inst, rectangle_cycle(1, 1, 3, 3));
    CHECK(r.faces.size() == 4);
    CHECK(r.grid_vertices.size() == 1);
    CHECK(r.grid_vertices.count({2, 2}) == 1);
}

TEST_CASE("rejects bad cycles") {
    HostInstance inst = blank(4);
    CHECK_THROWS(cycle_interior(inst, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK_THROWS(cycle_interior(inst, {{0, 0}, {0, 2}, {1, 2}, {1, 0}})); // jumps
    std::vector<GridVertex> pinched = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK_THROWS(cycle_interior(inst, pinched));
}

TEST_CASE("random histogram cycles match the area oracle") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 8 + int(rng() % 8);
        HostInstance inst = blank(d);
        int w = 2 + int(rng() % 4);
        int c0 = int(rng() % std::uint64_t(d - w));
        int base = d - 1 - int(rng() % 2);
        std::vector<int> h(w);
        long long area = 0;
        for (int& x : h) {
            x = 1 + int(rng() % std::uint64_t(base - 1));
            area += x;
        }
        auto cyc = histogram_cycle(base, c0, h);
        Region r = cycle_interior(inst, cyc);
        CHECK((long long)r.faces.size() == area);
        CHECK(rectilinear_enclosed_area(cyc) == area);
    }
}

TEST_CASE("region color queries") {
    HostInstance inst = blank(5);
    inst.q = 3;
    Bridge b;
    b.id = "b0";
    b.face_row = 1;
    b.face_col = 1;
    b.colors.insert(1);
    b.colors.insert(2);
    inst.bridges.push_back(b);
    inst.vertex_colors[{2, 2}].insert(3);

    Region empty;
    CHECK(region_colors(inst, empty).empty());

    Region r = cycle_interior(inst, rectangle_cycle(1, 1, 3, 3));
    ColorSet cs = region_colors(inst, r);
    CHECK(cs.contains(1));
    CHECK(cs.contains(2));
    CHECK(cs.contains(3));
    CHECK(cs.count() == 3);

    // boundary vertex colors only count for compass-style queries
    inst.vertex_colors[{1, 1}].insert(3);
    inst.vertex_colors[{1, 2}] = ColorSet();
    inst.vertex_colors[{1, 2}].insert(2);
    Region r2 = cycle_interior(inst, rectangle_cycle(2, 3, 4, 4));
    CHECK(region_colors(inst, r2, false).empty());
    CHECK(region_colors(inst, r2, true).empty()); // no colored vertex on that cycle

    Region r3 = cycle_interior(inst, rectangle_cycle(1, 1, 2, 2));
    CHECK(region_colors(inst, r3, false).count() == 2); // the bridge alone
    CHECK(region_colors(inst, r3, true).contains(3));   // corner (1,1) joins in
    CHECK(region_colors(inst, r3, true).count() == 3);
}

// Membership-scan oracle: region_colors equals a brute-force union over all
// instance elements filtered by membership.
TEST_CASE("random regions agree with the membership scan") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 6 + int(rng() % 6);
        HostInstance inst = gen_random(d, 4, 0.5, 0.5, rng());
        for (int i = 0; i < 6; ++i) {
            GridVertex v{int(rng() % std::uint64_t(d)), int(rng() % std::uint64_t(d))};
            inst.vertex_colors[v].insert(1 + int(rng() % 4));
        }
        int r0 = int(rng() % std::uint64_t(d - 2)), c0 = int(rng() % std::uint64_t(d - 2));
        int r1 = r0 + 1 + int(rng() % std::uint64_t(d - 1 - r0));
        int c1 = c0 + 1 + int(rng() % std::uint64_t(d - 1 - c0));
        Region r = cycle_interior(inst, rectangle_cycle(r0, c0, r1, c1));

        ColorSet expect;
        for (const Bridge& b : inst.bridges)
            if (r.faces.count({b.face_row, b.face_col})) expect |= b.colors;
        for (const auto& [v, cs] : inst.vertex_colors)
            if (r.grid_vertices.count(v)) expect |= cs;
        CHECK(region_colors(inst, r) == expect);

        ColorSet expect_b = expect;
        for (const auto& [v, cs] : inst.vertex_colors)
            if (r.boundary_vertices.count(v)) expect_b |= cs;
        CHECK(region_colors(inst, r, true) == expect_b);
    }
}
