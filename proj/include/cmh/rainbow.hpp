#pragma once

#include <stdexcept>

#include "cmh/confine.hpp"

namespace cmh {

struct RainbowMesh {
    Mesh mesh;                                         // n x m, woven
    std::vector<std::vector<GridVertex>> middleRowCells; // m-1 bounding cycles
    std::vector<ColorSet> collected;                   // I_1..I_{m-1}
    Trace trace;
    int captures = 0;
};

namespace detail {

// One tile routed into a cell: paths on the far side of `cell` swing around
// the tile rectangle so it lands between tracked paths cell and cell+1.
struct CapturePlan {
    int cell = 0;              // 1-based cell index in [1, m-1]
    int top = 0, bottom = 0;   // tile rectangle grid lines
    int left = 0, right = 0;
};

struct PathBuilder {
    std::vector<GridVertex> v;

    void start(int row, int col) { v.push_back({row, col}); }

    // Straight axis-aligned segment from the current end; end inclusive.
    void to(int row, int col) {
        GridVertex c = v.back();
        if (c.row == row && c.col == col) return;
        if (c.row == row) {
            const int step = col > c.col ? 1 : -1;
            for (int x = c.col + step;; x += step) {
                v.push_back({row, x});
                if (x == col) break;
            }
        } else if (c.col == col) {
            const int step = row > c.row ? 1 : -1;
            for (int y = c.row + step;; y += step) {
                v.push_back({y, col});
                if (y == row) break;
            }
        } else {
            throw std::logic_error("path segment is not axis-aligned");
        }
    }
};

inline void tile_bounds(const Tile& t, CapturePlan& cap) {
    cap.top = cap.bottom = t.cycle.front().row;
    cap.left = cap.right = t.cycle.front().col;
    for (const GridVertex& u : t.cycle) {
        cap.top = std::min(cap.top, u.row);
        cap.bottom = std::max(cap.bottom, u.row);
        cap.left = std::min(cap.left, u.col);
        cap.right = std::max(cap.right, u.col);
    }
}

} // namespace detail

// Sweeps m tracked paths bottom-left to top-right through the confined
// packings: up the ascent lanes of each column strip, down the right buffer
// into the corridor, and so on. Every tile met on the way is captured into
// the first middle-row cell whose collected set still misses one of its
// colours; the (n/2 x m)-meshes M_B and M_T anchor the bottom and top. All
// detour bands fit inside the buffers because p >= max(n/2+m, 2m).
inline RainbowMesh build_rainbow_mesh(const HostInstance& inst, const MeshWindow& w, int n, int m,
                                      int q) {
    if (n < 2 || m < 2 || n % 2 != 0 || m % 2 != 0)
        throw std::invalid_argument("build_rainbow_mesh: n and m must be even and >= 2");
    const int r = q * (m - 2) + 1;
    const int p = std::max(n / 2 + m, 2 * m);
    const int b = 2;

    ConfinedTiles conf = confine_to_tiles(inst, w, q, r, p, b);
    const StripPacking& packC = conf.packs.packC;
    const StripPacking& packR = conf.packs.packR;
    const int blocks = packC.size();
    const int u_top = conf.packs.window.row_lo;
    const int v_bot = conf.packs.window.row_hi;

    RainbowMesh out;
    out.trace = conf.packs.trace;
    out.collected.assign(m - 1, ColorSet{});

    // Capture sweep in path order: block ascents bottom to top, corridor
    // descents top to bottom. Decisions are global, shared by all paths.
    std::vector<std::vector<detail::CapturePlan>> ascent_caps(blocks), corridor_caps(blocks);
    auto consider = [&](const Tile& t, std::vector<detail::CapturePlan>& into) {
        const ColorSet cs = tile_colors(inst, t);
        for (int k = 1; k <= m - 1; ++k) {
            if (cs.subset_of(out.collected[k - 1])) continue;
            detail::CapturePlan cap;
            cap.cell = k;
            detail::tile_bounds(t, cap);
            out.collected[k - 1] |= cs;
            out.trace.push_back("CAPTURE tile=" + std::to_string(cap.top) + "," +
                                std::to_string(cap.left) + "," + std::to_string(cap.bottom) + "," +
                                std::to_string(cap.right) + " cell=" + std::to_string(k));
            ++out.captures;
            into.push_back(cap);
            return;
        }
    };
    for (int i = 0; i < blocks; ++i) {
        std::vector<Tile> ts = tiles(inst, packR, packC.strips[i], p);
        for (auto it = ts.rbegin(); it != ts.rend(); ++it) consider(*it, ascent_caps[i]);
        if (i + 1 < blocks) {
            for (int j = 0; j < packR.size(); ++j)
                for (const Tile& t : tiles(inst, packC, packR.strips[j], p))
                    if (t.kind == TileKind::BetweenTile && t.z1 == i)
                        consider(t, corridor_caps[i]);
        }
    }
    if (out.captures > q * (m - 1))
        throw std::logic_error("capture budget q(m-1) exceeded");

    // Route the m paths. Path h (1-based) ascends lane a_i+m+h-1 of every
    // block and descends lane b_i-h+1 of every corridor; captures jog it
    // around the tile when it runs on the far side of the target cell.
    auto lane = [&](int i, int h) { return packC.strips[i].strip.lo + m + h - 1; };
    auto down_lane = [&](int i, int h) { return packC.strips[i].strip.hi - h + 1; };

    std::set<GridVertex> used;
    std::vector<std::vector<GridVertex>> paths;
    for (int h = 1; h <= m; ++h) {
        detail::PathBuilder pb;
        pb.start(v_bot, lane(0, h));
        for (int i = 0; i < blocks; ++i) {
            for (const detail::CapturePlan& cap : ascent_caps[i]) {
                if (h < cap.cell + 1) continue;
                const int jog = cap.bottom + (h - cap.cell);
                const int det = cap.right + (h - cap.cell) - 1;
                const int ret = cap.top - (h - cap.cell);
                pb.to(jog, lane(i, h));
                pb.to(jog, det);
                pb.to(ret, det);
                pb.to(ret, lane(i, h));
            }
            if (i + 1 == blocks) {
                pb.to(u_top, lane(i, h)); // straight through the M_T rows
                break;
            }
            pb.to(u_top + h - 1, lane(i, h));
            pb.to(u_top + h - 1, down_lane(i, h));
            for (const detail::CapturePlan& cap : corridor_caps[i]) {
                if (h > cap.cell) continue;
                const int jog = cap.top - 1 - (cap.cell - h);
                const int det = cap.right + (cap.cell - h);
                const int ret = cap.bottom + 1 + (cap.cell - h);
                pb.to(jog, down_lane(i, h));
                pb.to(jog, det);
                pb.to(ret, det);
                pb.to(ret, down_lane(i, h));
            }
            pb.to(v_bot - m + h, down_lane(i, h));
            pb.to(v_bot - m + h, lane(i + 1, h));
        }
        for (const GridVertex& u : pb.v)
            if (!used.insert(u).second)
                throw std::logic_error("tracked paths collide at (" + std::to_string(u.row) + "," +
                                       std::to_string(u.col) + ")");
        paths.push_back(std::move(pb.v));
    }

    out.mesh.d_r = inst.d_r;
    out.mesh.d_c = inst.d_c;
    for (int t = 0; t < n / 2; ++t) { // M_T rows, top block lanes
        detail::PathBuilder pb;
        pb.start(u_top + t, lane(blocks - 1, 1));
        pb.to(u_top + t, lane(blocks - 1, m));
        out.mesh.horizontals.push_back(std::move(pb.v));
    }
    for (int t = 0; t < n / 2; ++t) { // M_B rows, first block lanes
        detail::PathBuilder pb;
        pb.start(v_bot - n / 2 + 1 + t, lane(0, 1));
        pb.to(v_bot - n / 2 + 1 + t, lane(0, m));
        out.mesh.horizontals.push_back(std::move(pb.v));
    }
    for (std::vector<GridVertex>& path : paths) {
        std::reverse(path.begin(), path.end()); // store top to bottom
        out.mesh.verticals.push_back(std::move(path));
    }

    for (int k = 1; k <= m - 1; ++k)
        out.middleRowCells.push_back(mesh_cell_cycle(out.mesh, n / 2 - 1, k - 1));
    return out;
}

} // namespace cmh
