#pragma once

#include <algorithm>
#include <stdexcept>

#include "cmh/rebalance.hpp"

namespace cmh {

// One colour's witnesses: distinct strips of `family`, each with a tile of
// its own tile list (w.r.t. the other family) carrying the colour.
struct TileCertificate {
    int color = 0;
    Orientation family = Orientation::Column;
    std::vector<int> strips; // indices into that family's packing
    std::vector<Tile> tiles; // parallel: the witness tile per strip
};

struct ConfinedTiles {
    BalancedPackings packs;
    std::vector<TileCertificate> certificates; // ascending colour
    int r = 0; // requested witness count per colour
};

inline ColorSet tile_colors(const HostInstance& inst, const Tile& t) {
    int r0 = t.cycle.front().row, r1 = r0, c0 = t.cycle.front().col, c1 = c0;
    for (const GridVertex& u : t.cycle) {
        r0 = std::min(r0, u.row);
        r1 = std::max(r1, u.row);
        c0 = std::min(c0, u.col);
        c1 = std::max(c1, u.col);
    }
    return rect_colors(inst, r0, c0, r1, c1, true);
}

// Pushes every colour of I_C | I_R into tiles: a colour shared by both index
// sets is processed by removing rows until the colour is forced out of every
// remaining core/core intersection on >= r columns; a private colour cannot
// meet the crossing family at all, so its core occurrences already sit in
// tiles. Certificates are rebuilt from scratch at the end.
inline ConfinedTiles confine_to_tiles(const HostInstance& inst, const MeshWindow& w, int q, int r,
                                      int p, int b) {
    if (r < 1) throw std::invalid_argument("confine_to_tiles: r must be >= 1");
    if (p < 1) throw std::invalid_argument("confine_to_tiles: p must be >= 1 for tiles to exist");

    ConfinedTiles out;
    out.r = r;
    out.packs = crop_and_rebalance(inst, w, q, int(r_hat(q, r)), p, b);
    BalancedPackings& P = out.packs;

    auto core_core = [&](const PaddedStrip& col, const PaddedStrip& row) {
        return rect_colors(inst, row.core_lo(), col.core_lo(), row.core_hi(), col.core_hi(), true);
    };

    for (int i : (P.I_C & P.I_R).members()) {
        const int nc = P.packC.size(), nr = P.packR.size();
        if (nc < 3 || nr < 3) break; // no non-extremal strips to work with

        // Already confined: r non-extremal columns with a tile carrying i.
        int witnesses = 0;
        for (int c = 1; c < nc - 1 && witnesses < r; ++c)
            for (const Tile& t : tiles(inst, P.packR, P.packC.strips[c], p))
                if (tile_colors(inst, t).contains(i)) {
                    ++witnesses;
                    break;
                }
        if (witnesses >= r) continue;

        // Greedy maximal matching of non-extremal column/row pairs whose
        // core intersection carries i.
        const Region B = boundary_strips(inst, P.packC, P.packR);
        std::vector<int> pairC, pairR;
        std::vector<char> usedR(nr, 0);
        for (int c = 1; c < nc - 1; ++c) {
            if (!detail::core_minus_boundary(inst, P.packC.strips[c], B).contains(i)) continue;
            for (int rr = 1; rr < nr - 1; ++rr) {
                if (usedR[rr]) continue;
                if (core_core(P.packC.strips[c], P.packR.strips[rr]).contains(i)) {
                    pairC.push_back(c);
                    pairR.push_back(rr);
                    usedR[rr] = 1;
                    break;
                }
            }
        }
        const int ell = int(pairR.size());

        if (ell >= r) {
            // Removing the r matched rows merges each matched intersection
            // into a between-tile of its column.
            std::vector<int> removal(pairR.begin(), pairR.begin() + r);
            std::sort(removal.rbegin(), removal.rend());
            for (int idx : removal) {
                out.packs.trace.push_back("DISCARD-STRIP " + std::to_string(idx) + " stage=confine");
                P.packR.strips.erase(P.packR.strips.begin() + idx);
            }
            continue;
        }
        if (ell == 0) continue; // nothing to remove and too few tiles: best effort

        // Pigeonhole: unmatched carrier columns all meet matched rows; some
        // matched row serves enough of them that removing it alone confines
        // i on r columns.
        std::vector<int> count(ell, 0);
        for (int c = 1; c < nc - 1; ++c) {
            if (std::find(pairC.begin(), pairC.end(), c) != pairC.end()) continue;
            if (!detail::core_minus_boundary(inst, P.packC.strips[c], B).contains(i)) continue;
            for (int j = 0; j < ell; ++j)
                if (core_core(P.packC.strips[c], P.packR.strips[pairR[j]]).contains(i)) ++count[j];
        }
        int best = 0;
        for (int j = 1; j < ell; ++j)
            if (count[j] > count[best]) best = j;
        if (count[best] + 1 < r) continue; // sub-bound shortfall: leave i unconfined
        out.packs.trace.push_back("DISCARD-STRIP " + std::to_string(pairR[best]) +
                                  " stage=confine");
        P.packR.strips.erase(P.packR.strips.begin() + pairR[best]);
    }

    // Certificates by direct scan, keeping the richer direction per colour.
    for (int i : (P.I_C | P.I_R).members()) {
        TileCertificate cert;
        cert.color = i;
        for (Orientation o : {Orientation::Column, Orientation::Row}) {
            const StripPacking& own = o == Orientation::Column ? P.packC : P.packR;
            const StripPacking& other = o == Orientation::Column ? P.packR : P.packC;
            if (own.empty() || other.empty()) continue;
            TileCertificate cand;
            cand.color = i;
            cand.family = o;
            for (int s = 0; s < own.size(); ++s)
                for (const Tile& t : tiles(inst, other, own.strips[s], p))
                    if (tile_colors(inst, t).contains(i)) {
                        cand.strips.push_back(s);
                        cand.tiles.push_back(t);
                        break;
                    }
            if (cand.strips.size() > cert.strips.size()) cert = cand;
        }
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

} // namespace cmh
