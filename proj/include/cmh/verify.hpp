#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmh/confine.hpp"
#include "cmh/rainbow.hpp"
#include "cmh/wall.hpp"

namespace cmh {

struct Verdict {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> violations; // (property, witness)

    void add(const std::string& property, const std::string& witness) {
        ok = false;
        violations.emplace_back(property, witness);
    }
};

inline std::string write_verdict(Verdict v) {
    if (v.ok) return "OK\n";
    std::sort(v.violations.begin(), v.violations.end());
    std::ostringstream os;
    for (const auto& [p, w] : v.violations) os << "VIOLATION " << p << ' ' << w << '\n';
    return os.str();
}

namespace detail {

inline ColorSet cycle_palette(const HostInstance& inst, const std::vector<GridVertex>& cycle,
                              bool include_boundary) {
    return region_colors(inst, cycle_interior(inst, cycle), include_boundary);
}

inline std::string missing_str(const ColorSet& want, const ColorSet& have) {
    return "missing " + (want - have).to_string();
}

} // namespace detail

// Per-cell uniformity: every cell interior carries exactly the compass
// palette. Equivalent to the all-cycles formulation because any cycle's
// interior is a union of cell interiors and palettes are union-monotone.
inline Verdict verify_uniform(const HostInstance& inst, const Mesh& mesh) {
    Verdict v;
    const ColorSet compass = detail::cycle_palette(inst, mesh_perimeter(mesh), true);
    for (int i = 0; i + 1 < mesh.n(); ++i)
        for (int j = 0; j + 1 < mesh.m(); ++j) {
            const ColorSet pal = detail::cycle_palette(inst, mesh_cell_cycle(mesh, i, j), true);
            if (pal != compass)
                v.add("uniform-cell", "cell " + std::to_string(i) + "," + std::to_string(j) + " " +
                                          detail::missing_str(compass, pal) + " extra " +
                                          (pal - compass).to_string());
        }
    return v;
}

// Brute-force cross-check of verify_uniform on small meshes: walks every
// edge-connected cell subset (holes filled, since a cycle encloses them
// too) and compares the composed interior palette with the compass.
inline Verdict verify_uniform_cycles(const HostInstance& inst, const Mesh& mesh) {
    const int rows = mesh.n() - 1, cols = mesh.m() - 1, cells = rows * cols;
    if (cells > 20) throw std::invalid_argument("verify_uniform_cycles: too many cells");
    std::vector<ColorSet> pal(cells);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            pal[i * cols + j] = detail::cycle_palette(inst, mesh_cell_cycle(mesh, i, j), true);
    const ColorSet compass = detail::cycle_palette(inst, mesh_perimeter(mesh), true);

    auto connected = [&](unsigned mask) {
        int seed = __builtin_ctz(mask);
        unsigned seen = 1u << seed;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            const int ci = c / cols, cj = c % cols;
            for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                const int ni = ci + di, nj = cj + dj;
                if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
                const int n = ni * cols + nj;
                if ((mask >> n & 1u) && !(seen >> n & 1u)) {
                    seen |= 1u << n;
                    stack.push_back(n);
                }
            }
        }
        return seen == mask;
    };
    auto filled = [&](unsigned mask) {
        // Complement cells reachable from the border stay outside; the rest
        // are holes and belong to the enclosing cycle's interior.
        unsigned outside = 0;
        std::vector<int> stack;
        for (int c = 0; c < cells; ++c) {
            const int ci = c / cols, cj = c % cols;
            const bool border = ci == 0 || ci == rows - 1 || cj == 0 || cj == cols - 1;
            if (border && !(mask >> c & 1u)) {
                outside |= 1u << c;
                stack.push_back(c);
            }
        }
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            const int ci = c / cols, cj = c % cols;
            for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                const int ni = ci + di, nj = cj + dj;
                if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
                const int n = ni * cols + nj;
                if (!(mask >> n & 1u) && !(outside >> n & 1u)) {
                    outside |= 1u << n;
                    stack.push_back(n);
                }
            }
        }
        return (~outside) & ((1u << cells) - 1u);
    };

    Verdict v;
    for (unsigned mask = 1; mask < (1u << cells); ++mask) {
        if (!connected(mask)) continue;
        ColorSet u;
        unsigned full = filled(mask);
        for (int c = 0; c < cells; ++c)
            if (full >> c & 1u) u |= pal[c];
        if (u != compass)
            v.add("uniform-cycle",
                  "cells mask=" + std::to_string(mask) + " " + detail::missing_str(compass, u));
    }
    return v;
}

inline Verdict verify_rainbow_row(const HostInstance& inst, const RainbowMesh& rm) {
    Verdict v;
    const ColorSet compass = detail::cycle_palette(inst, mesh_perimeter(rm.mesh), true);
    for (int k = 0; k < int(rm.middleRowCells.size()); ++k) {
        const ColorSet pal = detail::cycle_palette(inst, rm.middleRowCells[k], true);
        if (pal != compass)
            v.add("rainbow-cell",
                  "cell " + std::to_string(k) + " " + detail::missing_str(compass, pal));
    }
    return v;
}

// Homogeneity: I is the compass palette (so no compass element carries a
// colour outside I by construction) and every brick interior must offer all
// of I through its bridges. A 1-wall has no bricks.
inline Verdict verify_homogeneous_wall(const HostInstance& inst, const Wall& w) {
    Verdict v;
    const ColorSet I = detail::cycle_palette(inst, mesh_perimeter(w.mesh), true);
    if (w.k < 2) return v;
    for (int i = 0; i + 1 < w.mesh.n(); ++i)
        for (int j = 0; j + 1 < w.mesh.m(); ++j) {
            const ColorSet pal = detail::cycle_palette(inst, mesh_cell_cycle(w.mesh, i, j), false);
            if (!I.subset_of(pal))
                v.add("wall-brick", "brick " + std::to_string(i) + "," + std::to_string(j) + " " +
                                        detail::missing_str(I, pal));
        }
    return v;
}

namespace detail {

// Max number of vertex-disjoint grid paths between vertex sets A and B,
// stopping once `need` paths are found. Unit vertex capacities via node
// splitting; BFS augmentation, fine at <= 400 grid vertices.
inline int disjoint_path_count(int d_r, int d_c, const std::set<GridVertex>& A,
                               const std::set<GridVertex>& B, int need) {
    const int N = d_r * d_c;
    const int S = 2 * N, T = 2 * N + 1, V = 2 * N + 2;
    std::vector<std::map<int, int>> cap(V);
    auto idx = [&](const GridVertex& u) { return u.row * d_c + u.col; };
    for (int r = 0; r < d_r; ++r)
        for (int c = 0; c < d_c; ++c) {
            const int v = r * d_c + c;
            cap[2 * v][2 * v + 1] = 1;
            if (r + 1 < d_r) {
                cap[2 * v + 1][2 * (v + d_c)] = 1;
                cap[2 * (v + d_c) + 1][2 * v] = 1;
            }
            if (c + 1 < d_c) {
                cap[2 * v + 1][2 * (v + 1)] = 1;
                cap[2 * (v + 1) + 1][2 * v] = 1;
            }
        }
    for (const GridVertex& u : A) cap[S][2 * idx(u)] = 1;
    for (const GridVertex& u : B) cap[2 * idx(u) + 1][T] = 1;

    int flow = 0;
    while (flow < need) {
        std::vector<int> prev(V, -1);
        prev[S] = S;
        std::queue<int> q;
        q.push(S);
        while (!q.empty() && prev[T] < 0) {
            int u = q.front();
            q.pop();
            for (const auto& [w, c] : cap[u])
                if (c > 0 && prev[w] < 0) {
                    prev[w] = u;
                    q.push(w);
                }
        }
        if (prev[T] < 0) break;
        for (int u = T; u != S; u = prev[u]) {
            cap[prev[u]][u] -= 1;
            cap[u][prev[u]] += 1;
        }
        ++flow;
    }
    return flow;
}

} // namespace detail

// Truncation witness: for every horizontal/vertical pair of the new mesh,
// the union of the two paths meets at least min(n', m') pairwise distinct
// paths of the old mesh, either family counting. On tiny hosts a
// unit-capacity flow additionally certifies that many vertex-disjoint paths
// between each such union and each old horizontal/vertical union.
inline Verdict verify_tangle_truncation(const Mesh& oldMesh, const Mesh& newMesh) {
    Verdict v;
    const int need = std::min(newMesh.n(), newMesh.m());
    const std::map<GridVertex, int> oh = detail::family_owner(oldMesh.horizontals);
    const std::map<GridVertex, int> ov = detail::family_owner(oldMesh.verticals);

    // Old path ids met by each new path; verticals offset past horizontals.
    auto met = [&](const std::vector<GridVertex>& path) {
        std::set<int> ids;
        for (const GridVertex& u : path) {
            auto ih = oh.find(u);
            if (ih != oh.end()) ids.insert(ih->second);
            auto iv = ov.find(u);
            if (iv != ov.end()) ids.insert(oldMesh.n() + iv->second);
        }
        return ids;
    };
    std::vector<std::set<int>> hmet(newMesh.n()), vmet(newMesh.m());
    for (int i = 0; i < newMesh.n(); ++i) hmet[i] = met(newMesh.horizontals[i]);
    for (int j = 0; j < newMesh.m(); ++j) vmet[j] = met(newMesh.verticals[j]);
    for (int i = 0; i < newMesh.n(); ++i)
        for (int j = 0; j < newMesh.m(); ++j) {
            std::set<int> u = hmet[i];
            u.insert(vmet[j].begin(), vmet[j].end());
            if (int(u.size()) < need)
                v.add("tangle-criterion", "h" + std::to_string(i) + "+v" + std::to_string(j) +
                                              " meets " + std::to_string(u.size()) +
                                              " old paths, needs " + std::to_string(need));
        }

    if (1LL * oldMesh.d_r * oldMesh.d_c <= 400) {
        auto pair_set = [](const std::vector<GridVertex>& a, const std::vector<GridVertex>& b) {
            std::set<GridVertex> s(a.begin(), a.end());
            s.insert(b.begin(), b.end());
            return s;
        };
        for (int i = 0; i < newMesh.n(); ++i)
            for (int j = 0; j < newMesh.m(); ++j) {
                const std::set<GridVertex> S =
                    pair_set(newMesh.horizontals[i], newMesh.verticals[j]);
                for (int a = 0; a < oldMesh.n(); ++a)
                    for (int b = 0; b < oldMesh.m(); ++b) {
                        const std::set<GridVertex> T =
                            pair_set(oldMesh.horizontals[a], oldMesh.verticals[b]);
                        const int got = detail::disjoint_path_count(oldMesh.d_r, oldMesh.d_c, S,
                                                                    T, need);
                        if (got < need)
                            v.add("tangle-flow",
                                  "new h" + std::to_string(i) + "+v" + std::to_string(j) +
                                      " old h" + std::to_string(a) + "+v" + std::to_string(b) +
                                      " flow " + std::to_string(got) + ", needs " +
                                      std::to_string(need));
                    }
            }
    }
    return v;
}

// --- lemma output conclusions, recomputed from raw regions -----------------

inline Verdict verify_lemma_output(const HostInstance& inst, const SortTrimOutput& out) {
    Verdict v;
    const StripPacking& pk = out.packing;
    const SortTrimParams& P = out.params;
    if (pk.size() < out.colors.count() * (P.r - 1) + P.x)
        v.add("packing-size", "have " + std::to_string(pk.size()) + ", need " +
                                  std::to_string(out.colors.count() * (P.r - 1) + P.x));
    int prev_hi = -1;
    const bool col = pk.orient == Orientation::Column;
    const int wlo = col ? pk.window.col_lo : pk.window.row_lo;
    const int whi = col ? pk.window.col_hi : pk.window.row_hi;
    for (int i = 0; i < pk.size(); ++i) {
        const PaddedStrip& ps = pk.strips[i];
        if (ps.strip.breadth() < 2 * (out.colors.count() + 1) * P.p + P.b)
            v.add("strip-breadth", "strip " + std::to_string(i) + " breadth " +
                                       std::to_string(ps.strip.breadth()));
        if (ps.strip.lo <= prev_hi || ps.strip.lo < wlo || ps.strip.hi > whi)
            v.add("strip-frames", "strip " + std::to_string(i) + " overlaps or leaves window");
        prev_hi = ps.strip.hi;
        if (!strip_colors(inst, ps.strip).subset_of(out.colors))
            v.add("strip-palette", "strip " + std::to_string(i) + " carries " +
                                       (strip_colors(inst, ps.strip) - out.colors).to_string());
    }
    for (int c : out.colors.members()) {
        int count = 0;
        for (const PaddedStrip& ps : pk.strips) {
            Strip core = ps.strip;
            core.lo = ps.core_lo();
            core.hi = ps.core_hi();
            if (strip_colors(inst, core).contains(c)) ++count;
        }
        if (count < P.r)
            v.add("core-abundance", "colour " + std::to_string(c) + " in " +
                                        std::to_string(count) + " cores, needs " +
                                        std::to_string(P.r));
    }
    return v;
}

inline Verdict verify_lemma_output(const HostInstance& inst, const MeshWindow& w, int q, int r,
                                   const BalancedPackings& out) {
    Verdict v;
    if (out.packC.empty() || out.packR.empty()) {
        v.add("packing-size", "empty family");
        return v;
    }
    const Region B = boundary_strips(inst, out.packC, out.packR);
    auto family = [&](const StripPacking& pk, const ColorSet& I_X, const ColorSet& I_Y, int r_fam,
                      const char* name) {
        if (pk.size() < I_X.count() * (r - 1) + 2 * I_Y.count() + 1)
            v.add("packing-size", std::string(name) + " has " + std::to_string(pk.size()));
        for (int i = 0; i < pk.size(); ++i)
            if (!strip_colors(inst, pk.strips[i].strip).subset_of(I_X))
                v.add("strip-palette", std::string(name) + " strip " + std::to_string(i));
        const int threshold = std::min(r_fam, std::max(0, pk.size() - 2));
        for (int c : I_X.members()) {
            int count = 0;
            for (const PaddedStrip& ps : pk.strips)
                if (detail::core_minus_boundary(inst, ps, B).contains(c)) ++count;
            if (count < threshold)
                v.add("core-abundance", std::string(name) + " colour " + std::to_string(c) +
                                            " in " + std::to_string(count) + " cores");
        }
    };
    family(out.packC, out.I_C, out.I_R, out.r_C, "columns");
    family(out.packR, out.I_R, out.I_C, out.r_R, "rows");
    if (!region_colors(inst, B, true).subset_of(out.I_C | out.I_R))
        v.add("boundary-palette", "shared boundary leaves I_C | I_R");
    if (out.rounds > 2 * q)
        v.add("round-budget", std::to_string(out.rounds) + " rounds, cap " + std::to_string(2 * q));
    if (!(out.window == crop(crop(w, out.packC), out.packR)))
        v.add("window", "not the double crop of the input window");
    return v;
}

inline Verdict verify_lemma_output(const HostInstance& inst, const ConfinedTiles& out) {
    Verdict v;
    if (out.packs.packC.empty() || out.packs.packR.empty()) {
        v.add("packing-size", "empty family");
        return v;
    }
    std::vector<int> expected = (out.packs.I_C | out.packs.I_R).members();
    if (int(out.certificates.size()) != int(expected.size()))
        v.add("certificate-cover", "have " + std::to_string(out.certificates.size()) +
                                       " certificates for " + std::to_string(expected.size()) +
                                       " colours");
    for (std::size_t n = 0; n < out.certificates.size(); ++n) {
        const TileCertificate& cert = out.certificates[n];
        const std::string tag = "colour " + std::to_string(cert.color);
        if (n < expected.size() && cert.color != expected[n])
            v.add("certificate-cover", tag + " out of order");
        if (int(cert.strips.size()) < out.r || cert.strips.size() != cert.tiles.size())
            v.add("witness-count", tag + " has " + std::to_string(cert.strips.size()) +
                                       " witnesses, needs " + std::to_string(out.r));
        const StripPacking& own =
            cert.family == Orientation::Column ? out.packs.packC : out.packs.packR;
        const StripPacking& other =
            cert.family == Orientation::Column ? out.packs.packR : out.packs.packC;
        for (std::size_t k = 0; k < cert.strips.size() && k < cert.tiles.size(); ++k) {
            if (k > 0 && cert.strips[k] <= cert.strips[k - 1])
                v.add("witness-strips", tag + " not ascending");
            if (cert.strips[k] < 0 || cert.strips[k] >= own.size()) {
                v.add("witness-strips", tag + " strip index out of range");
                continue;
            }
            bool listed = false;
            for (const Tile& t : tiles(inst, other, own.strips[cert.strips[k]], own.p))
                if (t.cycle == cert.tiles[k].cycle) listed = true;
            if (!listed) v.add("witness-tile", tag + " witness " + std::to_string(k) + " unlisted");
            if (!tile_colors(inst, cert.tiles[k]).contains(cert.color))
                v.add("witness-tile", tag + " witness " + std::to_string(k) + " colourless");
        }
    }
    for (int i = 0; i < out.packs.packC.size(); ++i)
        if (!strip_colors(inst, out.packs.packC.strips[i].strip).subset_of(out.packs.I_C))
            v.add("strip-palette", "columns strip " + std::to_string(i));
    for (int i = 0; i < out.packs.packR.size(); ++i)
        if (!strip_colors(inst, out.packs.packR.strips[i].strip).subset_of(out.packs.I_R))
            v.add("strip-palette", "rows strip " + std::to_string(i));
    return v;
}

} // namespace cmh
