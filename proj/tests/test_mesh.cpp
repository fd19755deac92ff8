#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmh/mesh.hpp"

using namespace cmh;

namespace {
HostInstance blank(int d) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    return inst;
}
} // namespace

TEST_CASE("base mesh of a small host") {
    HostInstance inst = blank(2);
    Mesh m = base_mesh(inst);
    CHECK(m.n() == 2);
    CHECK(m.m() == 2);
    CHECK(m.horizontals[0].size() == 2);
    CHECK(mesh_validate(m).ok);

    HostInstance inst2;
    inst2.d_r = 5;
    inst2.d_c = 7;
    Mesh m2 = base_mesh(inst2);
    CHECK(m2.n() == 5);
    CHECK(m2.m() == 7);
    for (auto& h : m2.horizontals) CHECK(h.size() == 7);
    for (auto& v : m2.verticals) CHECK(v.size() == 5);
    CHECK(mesh_validate(m2).ok);
}

TEST_CASE("validator flags broken meshes") {
    Mesh m = base_mesh(blank(4));

    SUBCASE("shared vertex between horizontals") {
        m.horizontals[1] = m.horizontals[0];
        MeshVerdict v = mesh_validate(m);
        CHECK_FALSE(v.ok);
        CHECK(v.violation.find("horizontals not disjoint") != std::string::npos);
    }
    SUBCASE("non-grid edge") {
        m.horizontals[1].erase(m.horizontals[1].begin() + 1); // leaves a jump
        MeshVerdict v = mesh_validate(m);
        CHECK_FALSE(v.ok);
    }
    SUBCASE("horizontal missing a vertical") {
        m.horizontals[1].pop_back(); // no longer reaches vertical 3
        MeshVerdict v = mesh_validate(m);
        CHECK_FALSE(v.ok);
    }
    SUBCASE("vertex reuse within one path") {
        m.horizontals[1].push_back(m.horizontals[1][2]);
        MeshVerdict v = mesh_validate(m);
        CHECK_FALSE(v.ok);
    }
}

TEST_CASE("woven crossings must be single runs") {
    // A horizontal that dips down into the next row and back violates
    // disjointness with that row; the validator names some axiom.
    Mesh m = base_mesh(blank(5));
    m.horizontals[0] = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 3}, {0, 4}};
    MeshVerdict v = mesh_validate(m);
    CHECK_FALSE(v.ok);
}

TEST_CASE("mesh text format round trip") {
    Mesh m = base_mesh(blank(3));
    std::string text = write_mesh(m);
    Mesh back = parse_mesh(text, 3, 3);
    CHECK(back.n() == m.n());
    CHECK(back.m() == m.m());
    CHECK(back.horizontals == m.horizontals);
    CHECK(back.verticals == m.verticals);
    CHECK(write_mesh(back) == text);
}

TEST_CASE("mesh parser rejects garbage") {
    CHECK_THROWS_AS(parse_mesh("", 3, 3), ParseError);
    CHECK_THROWS_AS(parse_mesh("mesh 2 2\nh 5: (0,0)\n", 3, 3), ParseError);
    CHECK_THROWS_AS(parse_mesh("mesh 2 2\nh 0: (9,9)\n", 3, 3), ParseError);
    CHECK_THROWS_AS(parse_mesh("bogus\n", 3, 3), ParseError);
}

TEST_CASE("perimeter of a base mesh") {
    Mesh m = base_mesh(blank(4));
    auto cyc = mesh_perimeter(m);
    CHECK(cyc.size() == 12); // 4*(4-1)
    HostInstance inst = blank(4);
    Region r = cycle_interior(inst, cyc);
    CHECK(r.faces.size() == 9);
    CHECK(r.grid_vertices.size() == 4);
}
