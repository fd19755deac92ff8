#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cmh/strips.hpp"
#include "cmh/trace.hpp"

namespace cmh {

struct SortTrimParams {
    int q = 0, r = 0, p = 0, b = 0, x = 1;
};

struct SortTrimOutput {
    ColorSet colors;      // the surviving index set I
    StripPacking packing; // (p,b)-padded, colors confined to I
    Trace trace;
    int sort_rounds = 0;
    int trim_rounds = 0;
    SortTrimParams params; // effective values enforced (r may be capped below the request)
    ColorSet discarded;
};

namespace detail {

// Palette of each base line (and of each face band between consecutive
// lines) restricted to the window, along one axis. Strip palettes are then
// O(breadth) unions instead of region scans; strips always span the full
// window in the cross direction and include their boundary cycle.
struct LinePalettes {
    int lo = 0;
    std::vector<ColorSet> vert;
    std::vector<ColorSet> face;

    ColorSet range(int a, int b) const {
        ColorSet cs;
        for (int l = a; l <= b; ++l) cs |= vert[l - lo];
        for (int l = a; l < b; ++l) cs |= face[l - lo];
        return cs;
    }
};

inline LinePalettes line_palettes(const HostInstance& inst, const MeshWindow& w, Orientation o) {
    const bool col = o == Orientation::Column;
    LinePalettes lp;
    lp.lo = col ? w.col_lo : w.row_lo;
    const int hi = col ? w.col_hi : w.row_hi;
    const int aclo = col ? w.row_lo : w.col_lo;
    const int achi = col ? w.row_hi : w.col_hi;
    lp.vert.assign(hi - lp.lo + 1, {});
    lp.face.assign(hi - lp.lo + 1, {});
    for (const auto& [v, cs] : inst.vertex_colors) {
        const int along = col ? v.col : v.row, across = col ? v.row : v.col;
        if (along < lp.lo || along > hi || across < aclo || across > achi) continue;
        lp.vert[along - lp.lo] |= cs;
    }
    for (const Bridge& br : inst.bridges) {
        const int along = col ? br.face_col : br.face_row;
        const int across = col ? br.face_row : br.face_col;
        if (along < lp.lo || along >= hi || across < aclo || across >= achi) continue;
        lp.face[along - lp.lo] |= br.colors;
    }
    return lp;
}

} // namespace detail

// The Sort/Trim alternation over a prescribed packing. `allowed` restricts
// the colours under consideration; strips are judged by their palettes
// masked to the current index set. Both round counters stay within q+1.
inline SortTrimOutput sort_trim_run(const HostInstance& inst, StripPacking pk, int q, int r,
                                    int x, const ColorSet& allowed) {
    SortTrimOutput out;
    out.params = SortTrimParams{q, r, pk.p, pk.b, x};
    const detail::LinePalettes lp = detail::line_palettes(inst, pk.window, pk.orient);
    ColorSet I = allowed;
    const int p = pk.p;

    auto discard_strips = [&](const std::vector<ColorSet>& pal, int colour, const char* stage) {
        std::vector<PaddedStrip> kept;
        for (int i = 0; i < pk.size(); ++i) {
            if (pal[i].contains(colour)) {
                out.trace.push_back("DISCARD-STRIP " + std::to_string(i) + " stage=" + stage);
            } else {
                kept.push_back(pk.strips[i]);
            }
        }
        pk.strips = std::move(kept);
    };

    for (;;) {
        // Sort: repeatedly discard the smallest colour present in < r strips
        // together with the strips that carry it.
        if (++out.sort_rounds > q + 1) throw std::logic_error("sort round bound q+1 exceeded");
        for (;;) {
            if (I.empty()) {
                // Colourless endgame: the first x strips suffice.
                if (pk.size() < x) throw InsufficientMesh("sort", x, pk.size());
                pk.strips.resize(x);
                out.colors = I;
                out.packing = pk;
                return out;
            }
            std::vector<ColorSet> pal(pk.size());
            for (int i = 0; i < pk.size(); ++i)
                pal[i] = lp.range(pk.strips[i].strip.lo, pk.strips[i].strip.hi) & I;
            int victim = 0;
            for (int c : I.members()) {
                int count = 0;
                for (const ColorSet& cs : pal)
                    if (cs.contains(c)) ++count;
                if (count < r) {
                    victim = c;
                    break;
                }
            }
            if (victim == 0) break;
            out.trace.push_back("DISCARD-COLOR " + std::to_string(victim) + " stage=sort");
            discard_strips(pal, victim, "sort");
            I.erase(victim);
            out.discarded.insert(victim);
        }

        // Trim check: every surviving colour must reach >= r cores; otherwise
        // drop the smallest failing colour, its core-carrying strips, and
        // shed one padding layer from every survivor.
        if (out.trim_rounds + 1 > q + 1) throw std::logic_error("trim round bound q+1 exceeded");
        ++out.trim_rounds;
        std::vector<ColorSet> core_pal(pk.size());
        for (int i = 0; i < pk.size(); ++i) {
            const PaddedStrip& ps = pk.strips[i];
            core_pal[i] = lp.range(ps.core_lo(), ps.core_hi()) & I;
        }
        int victim = 0;
        for (int c : I.members()) {
            int count = 0;
            for (const ColorSet& cs : core_pal)
                if (cs.contains(c)) ++count;
            if (count < r) {
                victim = c;
                break;
            }
        }
        if (victim == 0) break; // all colours abundant in cores: done

        out.trace.push_back("DISCARD-COLOR " + std::to_string(victim) + " stage=trim");
        discard_strips(core_pal, victim, "trim");
        for (PaddedStrip& ps : pk.strips) {
            const int trimmed = ps.strip.breadth() - 2 * p;
            if (trimmed < 2 * p + pk.b)
                throw InsufficientMesh("trim", 2 * p + pk.b, trimmed);
            ps.strip.lo += p;
            ps.strip.hi -= p;
        }
        out.trace.push_back("TRIM p=" + std::to_string(p));
        I.erase(victim);
        out.discarded.insert(victim);
    }

    out.colors = I;
    out.packing = pk;
    return out;
}

// Initial packing: as many strips of breadth 2(q+1)p+b as the lemma asks
// for when the window affords them; otherwise as many minimum-breadth
// strips as fit (strip count is what downstream supply needs), with the
// abundance threshold capped to the strip count.
inline StripPacking initial_strip_packing(const MeshWindow& w, Orientation o, int q, int r, int p,
                                          int b, int x, int& r_eff) {
    const long long extent = o == Orientation::Column ? w.cols() : w.rows();
    const long long full = 2LL * (q + 1) * p + b;
    const long long want = 1LL * q * (r - 1) + x;
    long long breadth, count;
    if (extent >= want * full) {
        breadth = full;
        count = want;
        r_eff = r;
    } else {
        breadth = 2LL * p + b;
        if (extent < breadth * x) throw InsufficientMesh("initial packing", breadth * x, extent);
        count = std::min(want, extent / breadth);
        r_eff = int(std::min<long long>(r, count));
    }

    StripPacking pk;
    pk.window = w;
    pk.orient = o;
    pk.p = p;
    pk.b = b;
    const int base = o == Orientation::Column ? w.col_lo : w.row_lo;
    for (long long i = 0; i < count; ++i) {
        Strip s;
        s.window = w;
        s.orient = o;
        s.lo = int(base + i * breadth);
        s.hi = int(s.lo + breadth - 1);
        pk.strips.push_back(pad(s, p, b));
    }
    return pk;
}

inline SortTrimOutput sort_and_trim(const HostInstance& inst, const MeshWindow& w, Orientation o,
                                    int q, int r, int p, int b, int x) {
    if (x < 1) throw std::invalid_argument("sort_and_trim: x must be >= 1");
    if (b < 1 || (p > 0 && b < 2))
        throw std::invalid_argument("sort_and_trim: b must be >= 2 when p > 0");
    if (q < 0 || r < 0 || p < 0) throw std::invalid_argument("sort_and_trim: negative parameter");
    int r_eff = r;
    StripPacking pk = initial_strip_packing(w, o, q, r, p, b, x, r_eff);
    return sort_trim_run(inst, pk, q, r_eff, x, ColorSet::full(q));
}

} // namespace cmh
