#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cmh/mesh.hpp"
#include "cmh/region.hpp"

namespace cmh {

enum class Orientation { Column, Row };

inline const char* orientation_name(Orientation o) {
    return o == Orientation::Column ? "column" : "row";
}

// Axis-aligned submesh of the base grid: inclusive grid-line index ranges.
struct MeshWindow {
    int row_lo = 0, row_hi = 0;
    int col_lo = 0, col_hi = 0;

    int rows() const { return row_hi - row_lo + 1; }
    int cols() const { return col_hi - col_lo + 1; }
    bool valid() const { return rows() >= 2 && cols() >= 2; }
    bool operator==(const MeshWindow& o) const {
        return row_lo == o.row_lo && row_hi == o.row_hi && col_lo == o.col_lo && col_hi == o.col_hi;
    }
};

// Frame = contiguous run [lo, hi] of base verticals (column strip) or base
// horizontals (row strip), spanning the full extent of its window.
struct Strip {
    MeshWindow window;
    Orientation orient = Orientation::Column;
    int lo = 0, hi = 0; // absolute base-grid line indices

    int breadth() const { return hi - lo + 1; }
};

struct PaddedStrip {
    Strip strip;
    int p = 0;

    int core_lo() const { return strip.lo + p; }
    int core_hi() const { return strip.hi - p; }
    int core_breadth() const { return core_hi() - core_lo() + 1; }
};

struct StripPacking {
    MeshWindow window;
    Orientation orient = Orientation::Column;
    int p = 0, b = 0;
    std::vector<PaddedStrip> strips; // left-to-right (columns) / top-to-bottom (rows)

    bool empty() const { return strips.empty(); }
    int size() const { return int(strips.size()); }
};

inline std::vector<GridVertex> strip_boundary_cycle(const Strip& s) {
    if (s.orient == Orientation::Column)
        return rectangle_cycle(s.window.row_lo, s.lo, s.window.row_hi, s.hi);
    return rectangle_cycle(s.lo, s.window.col_lo, s.hi, s.window.col_hi);
}

// Interior-plus-boundary region of an axis-aligned rectangle, built without
// a flood fill. Matches cycle_interior(rectangle_cycle(...)) exactly.
inline Region rect_region(int r0, int c0, int r1, int c1) {
    Region out;
    for (int fr = r0; fr < r1; ++fr)
        for (int fc = c0; fc < c1; ++fc) out.faces.insert({fr, fc});
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) {
            const bool inner = r > r0 && r < r1 && c > c0 && c < c1;
            (inner ? out.grid_vertices : out.boundary_vertices).insert({r, c});
        }
    return out;
}

// Compass of the frame boundary; boundary vertices kept separately so both
// compass and interior color queries are possible.
inline Region strip_region(const HostInstance& inst, const Strip& s) {
    (void)inst;
    if (s.orient == Orientation::Column)
        return rect_region(s.window.row_lo, s.lo, s.window.row_hi, s.hi);
    return rect_region(s.lo, s.window.col_lo, s.hi, s.window.col_hi);
}

inline PaddedStrip pad(const Strip& s, int k, int b) {
    if (s.breadth() < 2 * k + b)
        throw std::invalid_argument("pad: breadth " + std::to_string(s.breadth()) +
                                    " below 2k+b = " + std::to_string(2 * k + b));
    return PaddedStrip{s, k};
}

// Replace each strip by its p-core; the result is an un-padded packing of
// breadth reduced by exactly 2p.
inline StripPacking trim(const StripPacking& pk) {
    StripPacking out;
    out.window = pk.window;
    out.orient = pk.orient;
    out.p = 0;
    out.b = pk.b;
    for (const PaddedStrip& ps : pk.strips) {
        if (ps.core_breadth() < 2) throw std::invalid_argument("trim: core too narrow to be a strip");
        Strip core = ps.strip;
        core.lo = ps.core_lo();
        core.hi = ps.core_hi();
        out.strips.push_back(PaddedStrip{core, 0});
    }
    return out;
}

// Smallest submesh containing every frame path of the packing: the window
// shrinks along the packing direction only.
inline MeshWindow crop(const MeshWindow& w, const StripPacking& pk) {
    if (pk.empty()) throw std::invalid_argument("crop: empty packing");
    MeshWindow out = w;
    if (pk.orient == Orientation::Column) {
        out.col_lo = pk.strips.front().strip.lo;
        out.col_hi = pk.strips.back().strip.hi;
    } else {
        out.row_lo = pk.strips.front().strip.lo;
        out.row_hi = pk.strips.back().strip.hi;
    }
    return out;
}

// Reinterpret a packing over another window; frame indices are absolute so
// only the window changes.
inline StripPacking with_window(const StripPacking& pk, const MeshWindow& w) {
    StripPacking out = pk;
    out.window = w;
    for (PaddedStrip& ps : out.strips) ps.strip.window = w;
    return out;
}

inline StripPacking lift(const MeshWindow& outer, const StripPacking& pk) {
    return with_window(pk, outer);
}

// Palette of the axis-aligned rectangle of grid lines [r0,r1] x [c0,c1]:
// all enclosed faces, interior vertices, and (for compass-style queries)
// the bounding cycle. Equivalent to region_colors over cycle_interior of
// rectangle_cycle but scans the sparse instance elements instead.
inline ColorSet rect_colors(const HostInstance& inst, int r0, int c0, int r1, int c1,
                            bool include_boundary) {
    ColorSet cs;
    for (const Bridge& br : inst.bridges)
        if (br.face_row >= r0 && br.face_row < r1 && br.face_col >= c0 && br.face_col < c1)
            cs |= br.colors;
    for (const auto& [v, vc] : inst.vertex_colors) {
        if (v.row < r0 || v.row > r1 || v.col < c0 || v.col > c1) continue;
        const bool inner = v.row > r0 && v.row < r1 && v.col > c0 && v.col < c1;
        if (inner || include_boundary) cs |= vc;
    }
    return cs;
}

// Palette of a strip: the compass includes the boundary cycle.
inline ColorSet strip_colors(const HostInstance& inst, const Strip& s) {
    if (s.orient == Orientation::Column)
        return rect_colors(inst, s.window.row_lo, s.lo, s.window.row_hi, s.hi, true);
    return rect_colors(inst, s.lo, s.window.col_lo, s.hi, s.window.col_hi, true);
}

// --- region set algebra ----------------------------------------------------

// Fold boundary vertices into the plain vertex set (compass as a region).
inline Region flatten(const Region& r) {
    Region out;
    out.faces = r.faces;
    out.grid_vertices = r.grid_vertices;
    out.grid_vertices.insert(r.boundary_vertices.begin(), r.boundary_vertices.end());
    return out;
}

inline Region region_union(const Region& a, const Region& b) {
    Region out = flatten(a);
    Region fb = flatten(b);
    out.faces.insert(fb.faces.begin(), fb.faces.end());
    out.grid_vertices.insert(fb.grid_vertices.begin(), fb.grid_vertices.end());
    return out;
}

inline Region region_intersection(const Region& a, const Region& b) {
    Region fa = flatten(a), fb = flatten(b), out;
    for (const FaceCoord& f : fa.faces)
        if (fb.faces.count(f)) out.faces.insert(f);
    for (const GridVertex& v : fa.grid_vertices)
        if (fb.grid_vertices.count(v)) out.grid_vertices.insert(v);
    return out;
}

inline Region region_difference(const Region& a, const Region& b) {
    Region fa = flatten(a), fb = flatten(b), out;
    for (const FaceCoord& f : fa.faces)
        if (!fb.faces.count(f)) out.faces.insert(f);
    for (const GridVertex& v : fa.grid_vertices)
        if (!fb.grid_vertices.count(v)) out.grid_vertices.insert(v);
    return out;
}

// --- tiles ------------------------------------------------------------------

enum class TileKind { ZTile, BetweenTile };

struct Tile {
    TileKind kind = TileKind::ZTile;
    int z1 = 0;              // index into the crossing packing
    int z2 = 0;              // second index for between-tiles
    std::vector<GridVertex> cycle;
    Region region;           // interior of the cycle
};

// All tiles of the padded strip `s` with respect to the crossing packing
// `pkZ` (padding k): |pkZ| strip-tiles interleaved with |pkZ|-1 between-
// tiles, left to right. The strip-tile of Z sits between the innermost
// buffer paths of Z; a between-tile sits between the outermost facing
// buffer paths of two consecutive strips.
inline std::vector<Tile> tiles(const HostInstance& inst, const StripPacking& pkZ,
                               const PaddedStrip& s, int k) {
    if (pkZ.empty()) throw std::invalid_argument("tiles: empty packing");
    if (pkZ.orient == s.strip.orient) throw std::invalid_argument("tiles: orientations must differ");
    if (k < 1 || s.p < 1) throw std::invalid_argument("tiles: needs nonempty buffers on both sides");

    // Innermost buffer lines of s.
    const int sL = s.strip.lo + s.p - 1;
    const int sR = s.strip.hi - s.p + 1;

    auto make = [&](TileKind kind, int a, int b, int lineL, int lineR) {
        Tile t;
        t.kind = kind;
        t.z1 = a;
        t.z2 = b;
        if (s.strip.orient == Orientation::Row) {
            t.cycle = rectangle_cycle(sL, lineL, sR, lineR);
            t.region = rect_region(sL, lineL, sR, lineR);
        } else {
            t.cycle = rectangle_cycle(lineL, sL, lineR, sR);
            t.region = rect_region(lineL, sL, lineR, sR);
        }
        (void)inst;
        return t;
    };

    std::vector<Tile> out;
    for (int z = 0; z < pkZ.size(); ++z) {
        const PaddedStrip& Z = pkZ.strips[z];
        if (Z.p < 1) throw std::invalid_argument("tiles: crossing strip has no buffer");
        out.push_back(make(TileKind::ZTile, z, z, Z.strip.lo + k - 1, Z.strip.hi - k + 1));
        if (z + 1 < pkZ.size()) {
            const PaddedStrip& Z2 = pkZ.strips[z + 1];
            out.push_back(make(TileKind::BetweenTile, z, z + 1, Z.strip.hi, Z2.strip.lo));
        }
    }
    return out; // emitted in order: Z-tile, between, Z-tile, ...
}

// Union of the extremal strips of both packings.
inline Region boundary_strips(const HostInstance& inst, const StripPacking& pkC,
                              const StripPacking& pkR) {
    if (pkC.empty() || pkR.empty()) throw std::invalid_argument("boundary_strips: empty packing");
    Region out;
    auto add = [&](const Strip& s) { out = region_union(out, strip_region(inst, s)); };
    add(pkC.strips.front().strip);
    add(pkC.strips.back().strip);
    add(pkR.strips.front().strip);
    add(pkR.strips.back().strip);
    return out;
}

} // namespace cmh
