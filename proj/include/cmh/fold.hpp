#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmh/mesh.hpp"

namespace cmh {

namespace detail {

inline int path_position(const std::vector<GridVertex>& p, const GridVertex& u) {
    for (int i = 0; i < int(p.size()); ++i)
        if (p[i] == u) return i;
    throw std::logic_error("fold: endpoint left its carrier path");
}

// Walk along `carrier` from the last vertex of `vp` until the first vertex
// owned by path `target` of the other family, appending every vertex passed.
// The crossing is a single contiguous run, so exactly one direction finds it;
// a no-op if the endpoint already sits on the target. Returns the hit vertex.
inline GridVertex extend_to(std::vector<GridVertex>& vp, const std::vector<GridVertex>& carrier,
                            const std::map<GridVertex, int>& owner, int target) {
    const int i0 = path_position(carrier, vp.back());
    auto on = [&](int i) {
        auto it = owner.find(carrier[i]);
        return it != owner.end() && it->second == target;
    };
    if (on(i0)) return carrier[i0];
    for (int dir : {1, -1})
        for (int i = i0 + dir; i >= 0 && i < int(carrier.size()); i += dir)
            if (on(i)) {
                for (int t = i0 + dir; t != i + dir; t += dir) vp.push_back(carrier[t]);
                return carrier[i];
            }
    throw std::logic_error("fold: carrier never meets path " + std::to_string(target));
}

} // namespace detail

// Folds a (2n x n^2-n) host mesh into an n-mesh whose rows all live on the
// two middle horizontals. The first n verticals between the middle rows form
// the starting (2 x n)-mesh; each of the n-2 folds consumes the next block of
// n verticals, alternating a pass above the upper middle row with a pass
// below the lower one. Every cell of the result encloses a full cell of the
// host's middle row, which is what makes a rainbow middle row spread to all
// cells. Row k of the output is crossed k-th along each snaking vertical, so
// rows alternate between the two middle lines: lower, upper, lower, ...
inline Mesh fold_to_uniform(const Mesh& rainbow, int n) {
    if (n < 2) throw std::invalid_argument("fold_to_uniform: n must be >= 2");
    if (rainbow.n() != 2 * n || rainbow.m() != n * n - n)
        throw std::invalid_argument("fold_to_uniform: host mesh must be (2n x n^2-n)");
    const int rowA = n - 1; // upper middle horizontal
    const int rowB = n;     // lower middle horizontal; fixed endpoints live here

    std::map<GridVertex, int> hown, vown;
    for (int i = 0; i < rainbow.n(); ++i)
        for (const GridVertex& u : rainbow.horizontals[i]) hown[u] = i;
    for (int j = 0; j < rainbow.m(); ++j)
        for (const GridVertex& u : rainbow.verticals[j]) vown[u] = j;

    // Initial segments: verticals 0..n-1 between the two middle rows.
    std::vector<std::vector<GridVertex>> vp(n);
    std::vector<GridVertex> botHit(n), topHit(n);
    for (int j = 0; j < n; ++j) {
        const std::vector<GridVertex>& P = rainbow.verticals[j];
        int s = 0;
        while (s < int(P.size()) && !(hown.count(P[s]) && hown.at(P[s]) == rowB)) ++s;
        if (s == int(P.size())) throw std::logic_error("fold: vertical misses the lower middle row");
        vp[j].push_back(P[s]);
        botHit[j] = P[s];
        topHit[j] = detail::extend_to(vp[j], P, hown, rowA);
    }

    struct RowSpec {
        int line;        // which middle horizontal hosts the row
        GridVertex a, b; // crossing with vertical 0 resp. vertical n-1
    };
    std::vector<RowSpec> rows;
    rows.push_back({rowB, botHit[0], botHit[n - 1]});
    rows.push_back({rowA, topHit[0], topHit[n - 1]});

    for (int i = 3; i <= n; ++i) {
        std::vector<GridVertex> land(n);
        if (i % 2 == 1) {
            // Fold over: up the previous block's vertical to horizontal j,
            // across, and down the mirrored vertical of the next block.
            for (int j = 0; j < n; ++j) {
                detail::extend_to(vp[j], rainbow.verticals[(i - 3) * n + j], hown, j);
                const int down = (i - 2) * n + (n - 1 - j);
                detail::extend_to(vp[j], rainbow.horizontals[j], vown, down);
                land[j] = detail::extend_to(vp[j], rainbow.verticals[down], hown, rowB);
            }
            rows.push_back({rowB, land[0], land[n - 1]});
        } else {
            // Fold under: the mirror image below the lower middle row.
            for (int j = 0; j < n; ++j) {
                detail::extend_to(vp[j], rainbow.verticals[(i - 3) * n + (n - 1 - j)], hown, n + j);
                const int up = (i - 2) * n + j;
                detail::extend_to(vp[j], rainbow.horizontals[n + j], vown, up);
                land[j] = detail::extend_to(vp[j], rainbow.verticals[up], hown, rowA);
            }
            rows.push_back({rowA, land[0], land[n - 1]});
        }
    }

    Mesh out;
    out.d_r = rainbow.d_r;
    out.d_c = rainbow.d_c;
    for (const RowSpec& rs : rows) {
        const std::vector<GridVertex>& Q = rainbow.horizontals[rs.line];
        const int a = detail::path_position(Q, rs.a);
        const int b = detail::path_position(Q, rs.b);
        const int dir = a <= b ? 1 : -1;
        std::vector<GridVertex> row;
        for (int t = a; t != b + dir; t += dir) row.push_back(Q[t]);
        out.horizontals.push_back(std::move(row));
    }
    out.verticals = std::move(vp);
    return out;
}

} // namespace cmh
