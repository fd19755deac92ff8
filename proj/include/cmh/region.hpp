#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmh/instance.hpp"

namespace cmh {

using FaceCoord = std::pair<int, int>; // (face_row, face_col)

// Combinatorial compass/interior of a cycle: enclosed faces plus enclosed
// grid vertices. boundary_vertices carries the bounding cycle when known, so
// compass-style color queries can include it.
struct Region {
    std::set<FaceCoord> faces;
    std::set<GridVertex> grid_vertices;
    std::set<GridVertex> boundary_vertices;
};

namespace detail {

struct EdgeKey {
    GridVertex a, b; // normalized a < b
    bool operator<(const EdgeKey& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

inline EdgeKey edge_key(GridVertex u, GridVertex v) {
    if (v < u) std::swap(u, v);
    return EdgeKey{u, v};
}

inline bool grid_adjacent(const GridVertex& u, const GridVertex& v) {
    int dr = u.row - v.row, dc = u.col - v.col;
    return (dr * dr + dc * dc) == 1;
}

} // namespace detail

// Interior of a simple rectilinear closed curve given as a vertex cycle
// (first vertex not repeated at the end). Flood fill over the face dual,
// blocked by cycle edges, seeded from the outer face; enclosed = unreached.
inline Region cycle_interior(const HostInstance& inst, const std::vector<GridVertex>& cycle) {
    if (cycle.size() < 4) throw std::invalid_argument("cycle too short");
    std::set<GridVertex> on_cycle;
    std::set<detail::EdgeKey> cycle_edges;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const GridVertex& u = cycle[i];
        const GridVertex& v = cycle[(i + 1) % cycle.size()];
        if (!inst.vertex_in_range(u)) throw std::invalid_argument("cycle vertex out of range");
        if (!detail::grid_adjacent(u, v)) throw std::invalid_argument("cycle not edge-connected");
        if (!on_cycle.insert(u).second) throw std::invalid_argument("cycle not simple");
        cycle_edges.insert(detail::edge_key(u, v));
    }

    // Face dual padded by one ring; cell (i,j) with i in [-1, d_r-1] is face
    // (i,j); the pad ring represents the outer face.
    const int fr_lo = -1, fr_hi = inst.d_r - 1;
    const int fc_lo = -1, fc_hi = inst.d_c - 1;
    const int rows = fr_hi - fr_lo + 1, cols = fc_hi - fc_lo + 1;
    std::vector<char> outside(std::size_t(rows) * cols, 0);
    auto idx = [&](int fr, int fc) { return std::size_t(fr - fr_lo) * cols + (fc - fc_lo); };

    std::vector<FaceCoord> stack;
    stack.push_back({fr_lo, fc_lo});
    outside[idx(fr_lo, fc_lo)] = 1;
    while (!stack.empty()) {
        auto [fr, fc] = stack.back();
        stack.pop_back();
        // Neighbors across the four sides; a shared side is blocked when the
        // corresponding grid edge lies on the cycle.
        struct Step {
            int dfr, dfc;
            GridVertex eu, ev;
        };
        const Step steps[4] = {
            {-1, 0, {fr, fc}, {fr, fc + 1}},         // top side
            {+1, 0, {fr + 1, fc}, {fr + 1, fc + 1}}, // bottom side
            {0, -1, {fr, fc}, {fr + 1, fc}},         // left side
            {0, +1, {fr, fc + 1}, {fr + 1, fc + 1}}, // right side
        };
        for (const Step& s : steps) {
            int nr = fr + s.dfr, nc = fc + s.dfc;
            if (nr < fr_lo || nr > fr_hi || nc < fc_lo || nc > fc_hi) continue;
            if (outside[idx(nr, nc)]) continue;
            if (cycle_edges.count(detail::edge_key(s.eu, s.ev))) continue;
            outside[idx(nr, nc)] = 1;
            stack.push_back({nr, nc});
        }
    }

    Region out;
    out.boundary_vertices = on_cycle;
    for (int fr = 0; fr < inst.d_r - 1; ++fr)
        for (int fc = 0; fc < inst.d_c - 1; ++fc)
            if (!outside[idx(fr, fc)]) out.faces.insert({fr, fc});
    // A vertex off the cycle is strictly inside iff some incident face is
    // enclosed (for a simple curve the incident faces then all are).
    for (int r = 0; r < inst.d_r; ++r)
        for (int c = 0; c < inst.d_c; ++c) {
            GridVertex v{r, c};
            if (on_cycle.count(v)) continue;
            bool inside = false;
            for (int dfr = -1; dfr <= 0 && !inside; ++dfr)
                for (int dfc = -1; dfc <= 0 && !inside; ++dfc) {
                    int fr = r + dfr, fc = c + dfc;
                    if (inst.face_in_range(fr, fc) && out.faces.count({fr, fc})) inside = true;
                }
            if (inside) out.grid_vertices.insert(v);
        }
    return out;
}

// Signed-area oracle companion: number of enclosed unit faces of a
// rectilinear simple cycle, by the shoelace formula.
inline long long rectilinear_enclosed_area(const std::vector<GridVertex>& cycle) {
    long long twice = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const GridVertex& u = cycle[i];
        const GridVertex& v = cycle[(i + 1) % cycle.size()];
        twice += (long long)u.col * v.row - (long long)v.col * u.row;
    }
    return std::abs(twice) / 2;
}

inline ColorSet region_colors(const HostInstance& inst, const Region& r,
                              bool include_boundary_vertices = false) {
    ColorSet out;
    for (const Bridge& b : inst.bridges)
        if (r.faces.count({b.face_row, b.face_col})) out |= b.colors;
    for (const GridVertex& v : r.grid_vertices) {
        auto it = inst.vertex_colors.find(v);
        if (it != inst.vertex_colors.end()) out |= it->second;
    }
    if (include_boundary_vertices)
        for (const GridVertex& v : r.boundary_vertices) {
            auto it = inst.vertex_colors.find(v);
            if (it != inst.vertex_colors.end()) out |= it->second;
        }
    return out;
}

// Axis-aligned rectangle boundary cycle over grid rows [r0,r1], cols [c0,c1].
inline std::vector<GridVertex> rectangle_cycle(int r0, int c0, int r1, int c1) {
    std::vector<GridVertex> cyc;
    for (int c = c0; c < c1; ++c) cyc.push_back({r0, c});
    for (int r = r0; r < r1; ++r) cyc.push_back({r, c1});
    for (int c = c1; c > c0; --c) cyc.push_back({r1, c});
    for (int r = r1; r > r0; --r) cyc.push_back({r, c0});
    return cyc;
}

} // namespace cmh
