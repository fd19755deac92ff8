#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmh/bounds.hpp"
#include "cmh/rainbow.hpp"

using namespace cmh;

namespace {

MeshWindow full_window(const HostInstance& inst) {
    return MeshWindow{0, inst.d_r - 1, 0, inst.d_c - 1};
}

ColorSet cell_palette(const HostInstance& inst, const std::vector<GridVertex>& cycle) {
    return region_colors(inst, cycle_interior(inst, cycle), true);
}

} // namespace

TEST_CASE("colourless host yields a plain valid mesh with empty collections") {
    const int n = 4, m = 4, q = 0;
    const int d = int(bound_rainbow(n, m, q));
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    RainbowMesh out = build_rainbow_mesh(inst, full_window(inst), n, m, q);
    CHECK(out.mesh.n() == n);
    CHECK(out.mesh.m() == m);
    MeshVerdict v = mesh_validate(out.mesh);
    INFO(v.violation);
    CHECK(v.ok);
    CHECK(out.captures == 0);
    REQUIRE(out.middleRowCells.size() == m - 1);
    for (int k = 0; k < m - 1; ++k) {
        CHECK(out.collected[k].empty());
        CHECK(cell_palette(inst, out.middleRowCells[k]).empty());
    }
}

TEST_CASE("all-coloured host at the bound fills every middle-row cell") {
    const int n = 4, m = 4, q = 1;
    const int d = int(bound_rainbow(n, m, q));
    HostInstance inst = gen_all_colored(d, q);
    RainbowMesh out = build_rainbow_mesh(inst, full_window(inst), n, m, q);
    MeshVerdict v = mesh_validate(out.mesh);
    INFO(v.violation);
    CHECK(v.ok);
    CHECK(out.captures == m - 1); // one full-palette tile per cell
    CHECK(out.captures <= q * (m - 1));
    for (int k = 0; k < m - 1; ++k) {
        CHECK(out.collected[k] == ColorSet::full(q));
        CHECK(cell_palette(inst, out.middleRowCells[k]) == ColorSet::full(q));
    }

    RainbowMesh again = build_rainbow_mesh(inst, full_window(inst), n, m, q);
    CHECK(again.trace == out.trace);
}

TEST_CASE("benign sub-bound host still weaves a rainbow middle row") {
    // The pipeline shape for a uniform 4-mesh on a small all-coloured host.
    const int n = 8, m = 12, q = 2, d = 150;
    HostInstance inst = gen_all_colored(d, q);
    RainbowMesh out = build_rainbow_mesh(inst, full_window(inst), n, m, q);
    CHECK(out.mesh.n() == n);
    CHECK(out.mesh.m() == m);
    MeshVerdict v = mesh_validate(out.mesh);
    INFO(v.violation);
    CHECK(v.ok);
    CHECK(out.captures == m - 1);
    for (int k = 0; k < m - 1; ++k)
        CHECK(cell_palette(inst, out.middleRowCells[k]) == ColorSet::full(q));
}

TEST_CASE("adversarial hosts never crash and capture within budget") {
    const int n = 4, m = 4, q = 1;
    const int d = int(bound_rainbow(n, m, q));
    for (auto mode : {AdversarialMode::PerimeterHeavy, AdversarialMode::BufferStripe,
                      AdversarialMode::SingleTile}) {
        HostInstance inst = gen_adversarial(d, q, mode, 9);
        RainbowMesh out = build_rainbow_mesh(inst, full_window(inst), n, m, q);
        MeshVerdict v = mesh_validate(out.mesh);
        INFO(v.violation);
        CHECK(v.ok);
        CHECK(out.captures <= q * (m - 1));
        // Whatever was collected really lies inside the claimed cell.
        for (int k = 0; k < m - 1; ++k)
            CHECK(out.collected[k].subset_of(cell_palette(inst, out.middleRowCells[k])));
    }
}
