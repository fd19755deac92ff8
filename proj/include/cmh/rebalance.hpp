#pragma once

#include <stdexcept>

#include "cmh/bounds.hpp"
#include "cmh/sort_trim.hpp"

namespace cmh {

struct BalancedPackings {
    ColorSet I_C, I_R;
    StripPacking packC, packR;
    MeshWindow window; // the doubly-cropped submesh both packings live in
    Trace trace;
    int rounds = 0;     // colour-removal rounds taken, at most 2q
    int r_C = 0, r_R = 0; // effective abundance thresholds per family
};

namespace detail {

// Palette of the p-core of `ps` with the four extremal strips removed.
inline ColorSet core_minus_boundary(const HostInstance& inst, const PaddedStrip& ps,
                                    const Region& boundary) {
    Strip core = ps.strip;
    core.lo = ps.core_lo();
    core.hi = ps.core_hi();
    Region rest = region_difference(strip_region(inst, core), boundary);
    return region_colors(inst, rest, true);
}

} // namespace detail

// Two padded packings, one per orientation, over a common doubly-cropped
// window, each colour of each index set certified in >= r cores away from
// the four extremal strips. A failing colour costs the other family its two
// extremal strips and is then dropped through the sort/trim machinery; the
// index sets shrink every round, so at most 2q rounds occur.
inline BalancedPackings crop_and_rebalance(const HostInstance& inst, const MeshWindow& w, int q,
                                           int r, int p, int b) {
    // The hypothesis affords q(r-1)+4q+1 full-breadth strips per direction.
    // Starting with x = 4q+1 spends that in full: every colour-removal round
    // costs its family at most r+1 strips (the two extremal strips may carry
    // the colour in their cores yet never count as witnesses) against a
    // requirement that only drops by r-1, and the spare 2 per colour covers
    // exactly that. Below the bound we fall back to best effort with x = 1.
    const long long need = bound_lemma32(q, r, p, b);
    const bool strictC = w.cols() >= need;
    const bool strictR = w.rows() >= need;
    const int xC = strictC ? 4 * q + 1 : 1;
    const int xR = strictR ? 4 * q + 1 : 1;
    SortTrimOutput colsOut = sort_and_trim(inst, w, Orientation::Column, q, r, p, b, xC);
    SortTrimOutput rowsOut = sort_and_trim(inst, w, Orientation::Row, q, r, p, b, xR);

    BalancedPackings out;
    out.I_C = colsOut.colors;
    out.I_R = rowsOut.colors;
    out.packC = colsOut.packing;
    out.packR = rowsOut.packing;
    out.r_C = colsOut.params.r;
    out.r_R = rowsOut.params.r;
    out.trace = colsOut.trace;
    out.trace.insert(out.trace.end(), rowsOut.trace.begin(), rowsOut.trace.end());

    for (;;) {
        out.window = crop(crop(w, out.packC), out.packR);
        out.packC = with_window(out.packC, out.window);
        out.packR = with_window(out.packR, out.window);

        // Core property: every colour of I_X reaches r_X cores that survive
        // removing the boundary strips. The threshold never exceeds the
        // number of non-extremal strips of the family.
        int bad_color = 0;
        bool bad_in_cols = true;
        if (!out.I_C.empty() || !out.I_R.empty()) {
            const Region boundary = boundary_strips(inst, out.packC, out.packR);
            auto first_failure = [&](const StripPacking& pk, const ColorSet& I, int r_fam) {
                const int threshold = std::min(r_fam, std::max(0, pk.size() - 2));
                std::vector<ColorSet> pal(pk.size());
                for (int i = 0; i < pk.size(); ++i)
                    pal[i] = detail::core_minus_boundary(inst, pk.strips[i], boundary);
                for (int c : I.members()) {
                    int count = 0;
                    for (const ColorSet& cs : pal)
                        if (cs.contains(c)) ++count;
                    if (count < threshold) return c;
                }
                return 0;
            };
            bad_color = first_failure(out.packC, out.I_C, out.r_C);
            if (bad_color == 0) {
                bad_color = first_failure(out.packR, out.I_R, out.r_R);
                bad_in_cols = false;
            }
        }
        if (bad_color == 0) return out;

        if (++out.rounds > 2 * q) throw std::logic_error("rebalance round bound 2q exceeded");

        StripPacking& packX = bad_in_cols ? out.packC : out.packR;
        StripPacking& packY = bad_in_cols ? out.packR : out.packC;
        ColorSet& I_X = bad_in_cols ? out.I_C : out.I_R;
        ColorSet& I_Y = bad_in_cols ? out.I_R : out.I_C;

        // The other family pays with its extremal strips, then everything is
        // re-cropped to the shrunken window.
        if (packY.size() < 3) throw InsufficientMesh("rebalance", 3, packY.size());
        out.trace.push_back("DISCARD-STRIP " + std::to_string(packY.size() - 1) +
                            " stage=rebalance");
        out.trace.push_back("DISCARD-STRIP 0 stage=rebalance");
        packY.strips.pop_back();
        packY.strips.erase(packY.strips.begin());
        MeshWindow shrunk = crop(out.window, packY);
        packX = with_window(packX, shrunk);
        packY = with_window(packY, shrunk);

        // Drop the failing colour the way Trim does: discard the few strips
        // whose cores still carry it, then shed one padding layer so the
        // surviving palettes retreat to their cores. The sort/trim rerun
        // then restores abundance for what remains.
        out.trace.push_back("DISCARD-COLOR " + std::to_string(bad_color) + " stage=rebalance");
        {
            std::vector<PaddedStrip> kept;
            for (int i = 0; i < packX.size(); ++i) {
                Strip core = packX.strips[i].strip;
                core.lo = packX.strips[i].core_lo();
                core.hi = packX.strips[i].core_hi();
                if (strip_colors(inst, core).contains(bad_color)) {
                    out.trace.push_back("DISCARD-STRIP " + std::to_string(i) + " stage=rebalance");
                } else {
                    kept.push_back(packX.strips[i]);
                }
            }
            packX.strips = std::move(kept);
            for (PaddedStrip& ps : packX.strips) {
                const int trimmed = ps.strip.breadth() - 2 * p;
                if (trimmed < 2 * p + b) throw InsufficientMesh("rebalance trim", 2 * p + b, trimmed);
                ps.strip.lo += p;
                ps.strip.hi -= p;
            }
            if (p > 0) out.trace.push_back("TRIM p=" + std::to_string(p));
        }
        I_X.erase(bad_color);

        const int n_X = I_X.count(), n_Y = I_Y.count();
        const bool strictX = bad_in_cols ? strictC : strictR;
        const bool strictY = bad_in_cols ? strictR : strictC;
        SortTrimOutput rerunX = sort_trim_run(inst, packX, q, bad_in_cols ? out.r_C : out.r_R,
                                              strictX ? 2 * n_Y + 1 : 1, I_X);
        SortTrimOutput rerunY = sort_trim_run(inst, packY, q, bad_in_cols ? out.r_R : out.r_C,
                                              strictY ? 2 * n_X + 1 : 1, I_Y);
        I_X = rerunX.colors;
        I_Y = rerunY.colors;
        packX = rerunX.packing;
        packY = rerunY.packing;
        out.trace.insert(out.trace.end(), rerunX.trace.begin(), rerunX.trace.end());
        out.trace.insert(out.trace.end(), rerunY.trace.begin(), rerunY.trace.end());
    }
}

} // namespace cmh
