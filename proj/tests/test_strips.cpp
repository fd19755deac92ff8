#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cmh/strips.hpp"

using namespace cmh;

namespace {

HostInstance blank(int d) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    return inst;
}

MeshWindow full_window(int d) { return MeshWindow{0, d - 1, 0, d - 1}; }

Strip column_strip(const MeshWindow& w, int lo, int hi) {
    return Strip{w, Orientation::Column, lo, hi};
}
Strip row_strip(const MeshWindow& w, int lo, int hi) { return Strip{w, Orientation::Row, lo, hi}; }

// Evenly packed column packing over the window: count strips of breadth
// `breadth` starting at the left edge.
StripPacking make_packing(const MeshWindow& w, Orientation o, int count, int breadth, int p, int b) {
    StripPacking pk;
    pk.window = w;
    pk.orient = o;
    pk.p = p;
    pk.b = b;
    for (int i = 0; i < count; ++i) {
        int lo = (o == Orientation::Column ? w.col_lo : w.row_lo) + i * breadth;
        Strip s{w, o, lo, lo + breadth - 1};
        pk.strips.push_back(pad(s, p, b));
    }
    return pk;
}

} // namespace

TEST_CASE("strip regions") {
    const int d = 8;
    HostInstance inst = blank(d);
    MeshWindow w = full_window(d);

    SUBCASE("full-window strip covers every face") {
        Strip s = column_strip(w, 0, d - 1);
        Region r = strip_region(inst, s);
        CHECK(r.faces.size() == std::size_t((d - 1) * (d - 1)));
    }
    SUBCASE("breadth-2 column strip is one face column") {
        Strip s = column_strip(w, 3, 4);
        Region r = strip_region(inst, s);
        CHECK(r.faces.size() == std::size_t(d - 1));
        for (auto [fr, fc] : r.faces) CHECK(fc == 3);
    }
    SUBCASE("strip colors match a direct compass query") {
        HostInstance colored = gen_random(d, 3, 0.6, 0.6, 3);
        for (int lo = 0; lo + 1 < d; lo += 2) {
            Strip s = column_strip(w, lo, lo + 1);
            Region direct = cycle_interior(colored, strip_boundary_cycle(s));
            CHECK(strip_colors(colored, s) == region_colors(colored, direct, true));
        }
    }
}

TEST_CASE("padding arithmetic") {
    MeshWindow w = full_window(12);
    Strip s = column_strip(w, 2, 8); // breadth 7
    PaddedStrip ps = pad(s, 1, 2);
    CHECK(ps.core_lo() == 3);
    CHECK(ps.core_hi() == 7);
    CHECK(ps.core_breadth() == 5); // 7 - 2*1

    PaddedStrip exact = pad(column_strip(w, 0, 5), 2, 2); // breadth 6 = 2k+b
    CHECK(exact.core_breadth() == 2);

    PaddedStrip identity = pad(s, 0, 2);
    CHECK(identity.core_lo() == s.lo);
    CHECK(identity.core_hi() == s.hi);

    CHECK_THROWS(pad(column_strip(w, 0, 4), 2, 2)); // breadth 5 < 6
}

TEST_CASE("trimming") {
    MeshWindow w = full_window(30);

    SUBCASE("p=0 is the identity") {
        StripPacking pk = make_packing(w, Orientation::Column, 3, 6, 0, 2);
        StripPacking t = trim(pk);
        for (int i = 0; i < 3; ++i) {
            CHECK(t.strips[i].strip.lo == pk.strips[i].strip.lo);
            CHECK(t.strips[i].strip.hi == pk.strips[i].strip.hi);
        }
    }
    SUBCASE("single strip of breadth 2p+b trims to b") {
        StripPacking pk = make_packing(w, Orientation::Row, 1, 8, 3, 2);
        StripPacking t = trim(pk);
        CHECK(t.strips[0].strip.breadth() == 2);
    }
    SUBCASE("two trims drop 2p1+2p2 and keep the count") {
        StripPacking pk = make_packing(w, Orientation::Column, 2, 14, 3, 2);
        StripPacking t1 = trim(pk);
        CHECK(t1.size() == 2);
        for (auto& ps : t1.strips) CHECK(ps.strip.breadth() == 8);
        for (auto& ps : t1.strips) ps.p = 2;
        t1.p = 2;
        StripPacking t2 = trim(t1);
        for (auto& ps : t2.strips) CHECK(ps.strip.breadth() == 4); // 14 - 2*3 - 2*2
    }
}

TEST_CASE("cropping windows") {
    MeshWindow w{0, 20, 0, 20};

    SUBCASE("full-span packing leaves the window unchanged") {
        StripPacking pk = make_packing(w, Orientation::Column, 3, 7, 1, 2);
        CHECK(crop(w, pk) == w);
    }
    SUBCASE("single strip crops to its frame") {
        StripPacking pk;
        pk.window = w;
        pk.orient = Orientation::Column;
        pk.strips.push_back(pad(column_strip(w, 3, 6), 1, 2));
        MeshWindow c = crop(w, pk);
        CHECK(c.col_lo == 3);
        CHECK(c.col_hi == 6);
        CHECK(c.row_lo == 0);
        CHECK(c.row_hi == 20);
    }
    SUBCASE("crop commutes and is idempotent") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            int clo = int(rng() % 5), chi = 20 - int(rng() % 5);
            int rlo = int(rng() % 5), rhi = 20 - int(rng() % 5);
            StripPacking pc;
            pc.window = w;
            pc.orient = Orientation::Column;
            pc.strips.push_back(pad(column_strip(w, clo, clo + 3), 1, 2));
            pc.strips.push_back(pad(column_strip(w, chi - 3, chi), 1, 2));
            StripPacking pr;
            pr.window = w;
            pr.orient = Orientation::Row;
            pr.strips.push_back(pad(row_strip(w, rlo, rlo + 3), 1, 2));
            pr.strips.push_back(pad(row_strip(w, rhi - 3, rhi), 1, 2));

            MeshWindow a = crop(crop(w, pc), pr);
            MeshWindow b = crop(crop(w, pr), pc);
            CHECK(a == b);
            CHECK(crop(a, with_window(pc, a)) == a); // idempotent
        }
    }
}

TEST_CASE("lifting") {
    MeshWindow outer{0, 20, 0, 20};
    MeshWindow inner{2, 15, 3, 14};
    HostInstance inst = blank(21);
    StripPacking pk = make_packing(inner, Orientation::Column, 2, 5, 1, 2);
    StripPacking lifted = lift(outer, pk);
    CHECK(lifted.size() == pk.size());
    for (int i = 0; i < pk.size(); ++i) {
        CHECK(lifted.strips[i].strip.lo == pk.strips[i].strip.lo);
        CHECK(lifted.strips[i].strip.breadth() == pk.strips[i].strip.breadth());
        // lifted strips regain the full window extent
        Region small = strip_region(inst, pk.strips[i].strip);
        Region big = strip_region(inst, lifted.strips[i].strip);
        for (const FaceCoord& f : small.faces) CHECK(big.faces.count(f) == 1);
        CHECK(big.faces.size() > small.faces.size());
    }
    // lifting over the same window is the identity
    StripPacking same = lift(inner, pk);
    CHECK(same.strips[0].strip.window == inner);
}

TEST_CASE("tiles") {
    const int d = 40;
    HostInstance inst = blank(d);
    MeshWindow w = full_window(d);
    PaddedStrip row = pad(row_strip(w, 10, 19), 3, 2); // p=3

    SUBCASE("one crossing strip gives one tile") {
        StripPacking pkZ = make_packing(w, Orientation::Column, 1, 10, 3, 2);
        auto ts = tiles(inst, pkZ, row, 3);
        CHECK(ts.size() == 1);
        CHECK(ts[0].kind == TileKind::ZTile);
    }
    SUBCASE("three crossing strips give five alternating tiles") {
        StripPacking pkZ = make_packing(w, Orientation::Column, 3, 10, 3, 2);
        auto ts = tiles(inst, pkZ, row, 3);
        REQUIRE(ts.size() == 5);
        for (int i = 0; i < 5; ++i)
            CHECK(ts[i].kind == (i % 2 == 0 ? TileKind::ZTile : TileKind::BetweenTile));
    }
    SUBCASE("tiles avoid every buffer region") {
        StripPacking pkZ = make_packing(w, Orientation::Column, 3, 10, 3, 2);
        auto ts = tiles(inst, pkZ, row, 3);
        std::vector<Region> buffers;
        for (const PaddedStrip& Z : pkZ.strips) {
            Strip lb = Z.strip, rb = Z.strip;
            lb.hi = Z.strip.lo + Z.p - 1;
            rb.lo = Z.strip.hi - Z.p + 1;
            buffers.push_back(strip_region(inst, lb));
            buffers.push_back(strip_region(inst, rb));
        }
        Strip lb = row.strip, rb = row.strip;
        lb.hi = row.strip.lo + row.p - 1;
        rb.lo = row.strip.hi - row.p + 1;
        buffers.push_back(strip_region(inst, lb));
        buffers.push_back(strip_region(inst, rb));
        for (const Tile& t : ts)
            for (const Region& buf : buffers) {
                Region common = region_intersection(t.region, buf);
                CHECK(common.faces.empty());
            }
    }
    SUBCASE("face-count identity between the extremal frames") {
        // Tile faces plus buffer faces of the crossing packing tile the full
        // band between the innermost buffer paths of the strip and the
        // extremal frame lines of the packing.
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 100; ++trial) {
            int p = 1 + int(rng() % 3);
            int bb = 2 + int(rng() % 2);
            int zcount = 1 + int(rng() % 4);
            int zbreadth = 2 * p + bb + int(rng() % 3);
            int sbreadth = 2 * p + bb + int(rng() % 3);
            if (zcount * (zbreadth + 1) > d || sbreadth + 2 > d) continue;
            StripPacking pkZ;
            pkZ.window = w;
            pkZ.orient = Orientation::Column;
            pkZ.p = p;
            pkZ.b = bb;
            int at = int(rng() % 3);
            for (int i = 0; i < zcount; ++i) {
                pkZ.strips.push_back(pad(column_strip(w, at, at + zbreadth - 1), p, bb));
                at += zbreadth + int(rng() % 3);
            }
            if (at >= d) continue;
            int slo = int(rng() % std::uint64_t(d - sbreadth));
            PaddedStrip s = pad(row_strip(w, slo, slo + sbreadth - 1), p, bb);
            auto ts = tiles(inst, pkZ, s, p);

            std::set<FaceCoord> covered;
            for (const Tile& t : ts)
                for (const FaceCoord& f : t.region.faces) CHECK(covered.insert(f).second);
            const int sL = s.strip.lo + s.p - 1, sR = s.strip.hi - s.p + 1;
            for (const PaddedStrip& Z : pkZ.strips)
                for (int fr = sL; fr < sR; ++fr) {
                    for (int fc = Z.strip.lo; fc < Z.strip.lo + p - 1; ++fc)
                        CHECK(covered.insert({fr, fc}).second);
                    for (int fc = Z.strip.hi - p + 1; fc < Z.strip.hi; ++fc)
                        CHECK(covered.insert({fr, fc}).second);
                }
            // the covered set is exactly the band
            std::size_t expect = 0;
            for (int fr = sL; fr < sR; ++fr)
                for (int fc = pkZ.strips.front().strip.lo; fc < pkZ.strips.back().strip.hi; ++fc)
                    ++expect;
            CHECK(covered.size() == expect);
        }
    }
}

TEST_CASE("boundary region unions the extremal strips") {
    const int d = 25;
    HostInstance inst = blank(d);
    MeshWindow w = full_window(d);
    StripPacking pc = make_packing(w, Orientation::Column, 3, 6, 1, 2);
    StripPacking pr = make_packing(w, Orientation::Row, 3, 6, 1, 2);
    Region b = boundary_strips(inst, pc, pr);
    Region expect;
    expect = region_union(expect, strip_region(inst, pc.strips[0].strip));
    expect = region_union(expect, strip_region(inst, pc.strips[2].strip));
    expect = region_union(expect, strip_region(inst, pr.strips[0].strip));
    expect = region_union(expect, strip_region(inst, pr.strips[2].strip));
    CHECK(b.faces == expect.faces);

    // with a single strip per packing, B covers both full strips
    StripPacking pc1 = make_packing(w, Orientation::Column, 1, 6, 1, 2);
    StripPacking pr1 = make_packing(w, Orientation::Row, 1, 6, 1, 2);
    Region b1 = boundary_strips(inst, pc1, pr1);
    Region u = region_union(strip_region(inst, pc1.strips[0].strip),
                            strip_region(inst, pr1.strips[0].strip));
    CHECK(b1.faces == u.faces);
}
