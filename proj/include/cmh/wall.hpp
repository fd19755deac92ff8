#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "cmh/fold.hpp"

namespace cmh {

// A wall kept in mesh form: `mesh` holds its horizontal paths and its
// degree-3 zigzag verticals; `k` is the wall order. A 1-wall is stored as
// the 2x2 mesh of its perimeter and has no bricks.
struct Wall {
    Mesh mesh;
    int k = 0;
};

namespace detail {

inline std::map<GridVertex, int> family_owner(const std::vector<std::vector<GridVertex>>& fam) {
    std::map<GridVertex, int> own;
    for (int i = 0; i < int(fam.size()); ++i)
        for (const GridVertex& u : fam[i]) own[u] = i;
    return own;
}

// Subpath of `p` from its first vertex owned by `first` to its last vertex
// owned by `last` in the given owner map.
inline std::vector<GridVertex> clip_path(const std::vector<GridVertex>& p,
                                         const std::map<GridVertex, int>& owner, int first,
                                         int last) {
    int a = -1, b = -1;
    for (int i = 0; i < int(p.size()); ++i) {
        auto it = owner.find(p[i]);
        if (it == owner.end()) continue;
        if (it->second == first && a < 0) a = i;
        if (it->second == last) b = i;
    }
    if (a < 0 || b < 0 || a > b) throw std::logic_error("wall: path misses its clip marks");
    return std::vector<GridVertex>(p.begin() + a, p.begin() + b + 1);
}

} // namespace detail

// Extracts a 3k-wall from a uniform 6k-mesh. Consecutive vertical pairs are
// merged into one zigzag per pair: the left vertical serves the odd row
// intervals, the right one the even intervals, joined by jogs along the
// horizontals. Only the first 3k horizontals are kept, clipped to the
// zigzags' span. Jogs make vertical/horizontal crossings contiguous runs,
// which the mesh axioms allow.
inline Wall mesh_to_wall(const Mesh& m, int k) {
    if (k < 1) throw std::invalid_argument("mesh_to_wall: k must be >= 1");
    const int ell = 6 * k, kw = 3 * k;
    if (m.n() != ell || m.m() != ell)
        throw std::invalid_argument("mesh_to_wall: mesh must be (6k x 6k)");

    const std::map<GridVertex, int> hown = detail::family_owner(m.horizontals);
    const std::map<GridVertex, int> vown = detail::family_owner(m.verticals);

    Wall w;
    w.k = kw;
    w.mesh.d_r = m.d_r;
    w.mesh.d_c = m.d_c;

    for (int a = 0; a + 1 < ell; a += 2) {
        std::vector<GridVertex> zig;
        zig.push_back(m.verticals[a].front());
        for (int j = 0; j + 1 < kw; ++j) {
            const int v = j % 2 == 0 ? a : a + 1;
            detail::extend_to(zig, m.verticals[v], hown, j + 1);
            if (j + 2 < kw) detail::extend_to(zig, m.horizontals[j + 1], vown, v == a ? a + 1 : a);
        }
        w.mesh.verticals.push_back(std::move(zig));
    }

    const std::map<GridVertex, int> wown = detail::family_owner(w.mesh.verticals);
    for (int j = 0; j < kw; ++j)
        w.mesh.horizontals.push_back(
            detail::clip_path(m.horizontals[j], wown, 0, int(w.mesh.verticals.size()) - 1));
    return w;
}

// Keeps every third horizontal and vertical of a 3k-wall, clipping the
// survivors to one another. The k=1 selection would be a single path per
// family, so the degenerate case keeps paths 1 and 3 instead: the resulting
// 2x2 mesh is exactly the 1-wall's perimeter and has no bricks.
inline Wall select_homogeneous_wall(const Wall& w) {
    if (w.k % 3 != 0) throw std::invalid_argument("select_homogeneous_wall: needs a 3k-wall");
    const int k = w.k / 3;
    std::vector<int> sel;
    if (k == 1) {
        sel = {0, 2};
    } else {
        for (int i = 0; i < w.k; i += 3) sel.push_back(i);
    }

    const std::map<GridVertex, int> hown = detail::family_owner(w.mesh.horizontals);
    Wall out;
    out.k = k;
    out.mesh.d_r = w.mesh.d_r;
    out.mesh.d_c = w.mesh.d_c;
    for (int i : sel)
        out.mesh.verticals.push_back(
            detail::clip_path(w.mesh.verticals[i], hown, sel.front(), sel.back()));

    const std::map<GridVertex, int> vown = detail::family_owner(out.mesh.verticals);
    for (int i : sel)
        out.mesh.horizontals.push_back(
            detail::clip_path(w.mesh.horizontals[i], vown, 0, int(sel.size()) - 1));
    return out;
}

} // namespace cmh
