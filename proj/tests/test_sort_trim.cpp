#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cmh/bounds.hpp"
#include "cmh/sort_trim.hpp"

using namespace cmh;

namespace {

MeshWindow full_window(const HostInstance& inst) {
    return MeshWindow{0, inst.d_r - 1, 0, inst.d_c - 1};
}

// The lemma's four checkable conclusions, recomputed from raw regions.
void check_conclusions(const HostInstance& inst, const SortTrimOutput& out) {
    const SortTrimParams& pr = out.params;
    CHECK(out.packing.size() >= out.colors.count() * (pr.r - 1) + pr.x);
    for (const PaddedStrip& ps : out.packing.strips) {
        CHECK(ps.strip.breadth() >= 2 * (out.colors.count() + 1) * pr.p + pr.b);
        CHECK(strip_colors(inst, ps.strip).subset_of(out.colors));
    }
    for (int c : out.colors.members()) {
        int cores = 0;
        for (const PaddedStrip& ps : out.packing.strips) {
            Strip core = ps.strip;
            core.lo = ps.core_lo();
            core.hi = ps.core_hi();
            if (strip_colors(inst, core).contains(c)) ++cores;
        }
        CHECK(cores >= pr.r);
    }
    CHECK(out.sort_rounds <= pr.q + 1);
    CHECK(out.trim_rounds <= pr.q + 1);
}

} // namespace

TEST_CASE("colourless host yields exactly x bare strips") {
    for (int p : {0, 2})
        for (int x : {1, 2}) {
            const int b = 2, r = 2;
            const int d = int(bound_lemma31(0, r, p, b, x));
            HostInstance inst;
            inst.d_r = inst.d_c = d;
            SortTrimOutput out = sort_and_trim(inst, full_window(inst), Orientation::Column, 0, r, p, b, x);
            CHECK(out.colors.empty());
            CHECK(out.packing.size() == x);
            CHECK(out.packing.strips[0].strip.breadth() == 2 * p + b);
            CHECK(out.trace.empty());
            check_conclusions(inst, out);
        }
}

TEST_CASE("all-coloured host keeps the whole palette") {
    const int q = 2, r = 2, p = 1, b = 2, x = 1;
    const int d = int(bound_lemma31(q, r, p, b, x));
    HostInstance inst = gen_all_colored(d, q);
    SortTrimOutput out = sort_and_trim(inst, full_window(inst), Orientation::Row, q, r, p, b, x);
    CHECK(out.colors == ColorSet::full(q));
    CHECK(out.discarded.empty());
    CHECK(out.packing.size() == q * (r - 1) + x);
    CHECK(out.sort_rounds == 1);
    CHECK(out.trim_rounds == 1);
    check_conclusions(inst, out);
}

TEST_CASE("single concentrated colour patch gets discarded at r=2") {
    const int q = 1, r = 2, p = 1, b = 2, x = 1;
    const int d = int(bound_lemma31(q, r, p, b, x));
    HostInstance inst = gen_adversarial(d, q, AdversarialMode::SingleTile, 5);
    SortTrimOutput out = sort_and_trim(inst, full_window(inst), Orientation::Column, q, r, p, b, x);
    CHECK(out.colors.empty());
    CHECK(out.discarded.contains(1));
    CHECK(out.packing.size() == x);
    check_conclusions(inst, out);
}

TEST_CASE("window below the minimum packing reports the shortfall") {
    HostInstance inst;
    inst.d_r = inst.d_c = 5;
    inst.q = 0;
    CHECK_THROWS_AS(sort_and_trim(inst, full_window(inst), Orientation::Column, 0, 2, 2, 2, 1),
                    InsufficientMesh);
    try {
        sort_and_trim(inst, full_window(inst), Orientation::Column, 0, 2, 2, 2, 1);
    } catch (const InsufficientMesh& e) {
        CHECK(e.stage == "initial packing");
        CHECK(e.required == 6);
        CHECK(e.available == 5);
    }
}

TEST_CASE("fuzzed exact-bound runs satisfy every conclusion and are deterministic") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = int(rng() % 4), r = 2 + int(rng() % 2), p = int(rng() % 3);
        const int b = 2 + int(rng() % 2), x = 1 + int(rng() % 2);
        const int d = int(bound_lemma31(q, r, p, b, x));
        const std::uint64_t seed = rng();
        HostInstance inst = gen_random(d, q, 0.4, 0.5, seed);
        Orientation o = (trial % 2) ? Orientation::Row : Orientation::Column;
        SortTrimOutput out = sort_and_trim(inst, full_window(inst), o, q, r, p, b, x);
        CHECK(out.params.r == r); // exact bound: no capping
        check_conclusions(inst, out);

        SortTrimOutput again = sort_and_trim(inst, full_window(inst), o, q, r, p, b, x);
        CHECK(again.trace == out.trace);
        CHECK(again.colors == out.colors);
        CHECK(again.packing.size() == out.packing.size());

        // Discarded colours are gone from every surviving strip.
        for (const PaddedStrip& ps : out.packing.strips)
            CHECK((strip_colors(inst, ps.strip) & out.discarded).empty());
    }
}

TEST_CASE("opportunistic sub-bound runs still produce padded packings") {
    const int q = 2, r = 8, p = 3, b = 2, x = 2;
    HostInstance inst = gen_all_colored(40, q); // far below the full bound (320)
    SortTrimOutput out = sort_and_trim(inst, full_window(inst), Orientation::Column, q, r, p, b, x);
    CHECK(out.params.r == 5);                      // threshold capped to the strip supply
    CHECK(out.packing.size() == 40 / (2 * p + b)); // five minimum-breadth strips
    CHECK(out.colors == ColorSet::full(q));        // benign host keeps all colours
    for (const PaddedStrip& ps : out.packing.strips) {
        CHECK(ps.strip.breadth() == 2 * p + b);
        CHECK(strip_colors(inst, ps.strip).subset_of(out.colors));
    }
    for (int c : out.colors.members()) {
        int cores = 0;
        for (const PaddedStrip& ps : out.packing.strips) {
            Strip core = ps.strip;
            core.lo = ps.core_lo();
            core.hi = ps.core_hi();
            if (strip_colors(inst, core).contains(c)) ++cores;
        }
        CHECK(cores >= out.params.r);
    }
}

TEST_CASE("rectangle palettes agree with the region oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 8 + int(rng() % 8);
        HostInstance inst = gen_random(d, 4, 0.5, 0.5, rng());
        for (int i = 0; i < 4; ++i) {
            GridVertex v{int(rng() % std::uint64_t(d)), int(rng() % std::uint64_t(d))};
            inst.vertex_colors[v].insert(1 + int(rng() % 4));
        }
        int r0 = int(rng() % std::uint64_t(d - 2)), c0 = int(rng() % std::uint64_t(d - 2));
        int r1 = r0 + 1 + int(rng() % std::uint64_t(d - 1 - r0));
        int c1 = c0 + 1 + int(rng() % std::uint64_t(d - 1 - c0));
        Region reg = cycle_interior(inst, rectangle_cycle(r0, c0, r1, c1));
        CHECK(rect_colors(inst, r0, c0, r1, c1, false) == region_colors(inst, reg, false));
        CHECK(rect_colors(inst, r0, c0, r1, c1, true) == region_colors(inst, reg, true));
    }
}
