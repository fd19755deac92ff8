#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmh/color_set.hpp"

namespace cmh {

struct GridVertex {
    int row = 0;
    int col = 0;

    bool operator==(const GridVertex& o) const { return row == o.row && col == o.col; }
    bool operator!=(const GridVertex& o) const { return !(*this == o); }
    bool operator<(const GridVertex& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
};

// A connected subgraph attached strictly inside one base-grid face; only its
// palette matters downstream.
struct Bridge {
    std::string id;
    int face_row = 0;
    int face_col = 0;
    ColorSet colors;
};

struct HostInstance {
    int d_r = 2;
    int d_c = 2;
    int q = 0;
    std::map<GridVertex, ColorSet> vertex_colors; // absent key means empty set
    std::vector<Bridge> bridges;

    bool face_in_range(int fr, int fc) const {
        return fr >= 0 && fr < d_r - 1 && fc >= 0 && fc < d_c - 1;
    }
    bool vertex_in_range(const GridVertex& v) const {
        return v.row >= 0 && v.row < d_r && v.col >= 0 && v.col < d_c;
    }
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int ln, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(col) +
                             ": " + msg),
          line(ln),
          column(col) {}
};

namespace detail {

inline ColorSet parse_color_braces(const std::string& tok, int q, int line) {
    if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
        throw ParseError(line, 1, "expected {c1,c2,...}, got '" + tok + "'");
    ColorSet out;
    std::string inner = tok.substr(1, tok.size() - 2);
    if (inner.empty()) return out;
    std::istringstream is(inner);
    std::string piece;
    int prev = 0;
    while (std::getline(is, piece, ',')) {
        std::size_t pos = 0;
        int c;
        try {
            c = std::stoi(piece, &pos);
        } catch (...) {
            throw ParseError(line, 1, "bad color token '" + piece + "'");
        }
        if (pos != piece.size()) throw ParseError(line, 1, "bad color token '" + piece + "'");
        if (c < 1 || c > q)
            throw ParseError(line, 1,
                             "color " + std::to_string(c) + " outside [1," + std::to_string(q) + "]");
        if (c <= prev) throw ParseError(line, 1, "colors must be strictly increasing");
        prev = c;
        out.insert(c);
    }
    return out;
}

} // namespace detail

inline HostInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    HostInstance inst;
    bool have_magic = false, have_dims = false;

    auto next_meaningful = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (line[first] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string cur;
    while (next_meaningful(cur)) {
        std::istringstream ls(cur);
        std::string kw;
        ls >> kw;
        if (!have_magic) {
            int ver = -1;
            if (kw != "cmi" || !(ls >> ver) || ver != 1)
                throw ParseError(lineno, 1, "expected header 'cmi 1'");
            have_magic = true;
            continue;
        }
        if (!have_dims) {
            if (kw != "dims") throw ParseError(lineno, 1, "expected 'dims <d_r> <d_c> <q>'");
            if (!(ls >> inst.d_r >> inst.d_c >> inst.q))
                throw ParseError(lineno, 1, "malformed dims line");
            if (inst.d_r < 2 || inst.d_c < 2) throw ParseError(lineno, 1, "dims must be >= 2");
            if (inst.q < 0) throw ParseError(lineno, 1, "q must be >= 0");
            if (inst.q > ColorSet::max_colors)
                throw ParseError(lineno, 1, "q exceeds cap " + std::to_string(ColorSet::max_colors));
            have_dims = true;
            continue;
        }
        if (kw == "vertexcolor") {
            GridVertex v;
            std::string braces;
            if (!(ls >> v.row >> v.col >> braces))
                throw ParseError(lineno, 1, "malformed vertexcolor line");
            if (!inst.vertex_in_range(v))
                throw ParseError(lineno, 1, "vertex coordinates out of range");
            if (inst.vertex_colors.count(v))
                throw ParseError(lineno, 1, "duplicate vertexcolor entry");
            ColorSet cs = detail::parse_color_braces(braces, inst.q, lineno);
            inst.vertex_colors[v] = cs;
        } else if (kw == "bridge") {
            Bridge b;
            std::string braces;
            if (!(ls >> b.id >> b.face_row >> b.face_col >> braces))
                throw ParseError(lineno, 1, "malformed bridge line");
            if (!inst.face_in_range(b.face_row, b.face_col))
                throw ParseError(lineno, 1, "bridge face out of range");
            for (const Bridge& prev : inst.bridges)
                if (prev.id == b.id) throw ParseError(lineno, 1, "duplicate bridge id '" + b.id + "'");
            b.colors = detail::parse_color_braces(braces, inst.q, lineno);
            inst.bridges.push_back(std::move(b));
        } else {
            throw ParseError(lineno, 1, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_magic) throw ParseError(lineno, 1, "missing 'cmi 1' header");
    if (!have_dims) throw ParseError(lineno, 1, "missing dims line");
    return inst;
}

// Canonical form: dims first, vertex colors row-major, bridges sorted by id.
inline std::string write_instance(const HostInstance& inst) {
    std::ostringstream os;
    os << "cmi 1\n";
    os << "dims " << inst.d_r << ' ' << inst.d_c << ' ' << inst.q << '\n';
    for (const auto& [v, cs] : inst.vertex_colors) {
        if (cs.empty()) continue;
        os << "vertexcolor " << v.row << ' ' << v.col << ' ' << cs.to_string() << '\n';
    }
    std::vector<const Bridge*> order;
    order.reserve(inst.bridges.size());
    for (const Bridge& b : inst.bridges) order.push_back(&b);
    std::sort(order.begin(), order.end(),
              [](const Bridge* a, const Bridge* b) { return a->id < b->id; });
    for (const Bridge* b : order)
        os << "bridge " << b->id << ' ' << b->face_row << ' ' << b->face_col << ' '
           << b->colors.to_string() << '\n';
    return os.str();
}

namespace detail {

// Stable uniform draw in [0,1); avoids distribution-object portability quirks.
inline double unit_draw(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Ids zero-padded so lexicographic id order equals creation order.
inline std::string bridge_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "b%06d", n);
    return buf;
}

} // namespace detail

inline HostInstance gen_random(int d, int q, double face_density, double palette_density,
                               std::uint64_t seed) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    inst.q = q;
    std::mt19937_64 rng(seed);
    int next_id = 0;
    for (int fr = 0; fr < d - 1; ++fr)
        for (int fc = 0; fc < d - 1; ++fc) {
            if (detail::unit_draw(rng) >= face_density) continue;
            Bridge b;
            b.id = detail::bridge_id(next_id++);
            b.face_row = fr;
            b.face_col = fc;
            for (int c = 1; c <= q; ++c)
                if (detail::unit_draw(rng) < palette_density) b.colors.insert(c);
            inst.bridges.push_back(std::move(b));
        }
    return inst;
}

// Every face carries the full palette; the benign extreme.
inline HostInstance gen_all_colored(int d, int q) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    inst.q = q;
    int next_id = 0;
    for (int fr = 0; fr < d - 1; ++fr)
        for (int fc = 0; fc < d - 1; ++fc) {
            Bridge b;
            b.id = detail::bridge_id(next_id++);
            b.face_row = fr;
            b.face_col = fc;
            b.colors = ColorSet::full(q);
            inst.bridges.push_back(std::move(b));
        }
    return inst;
}

enum class AdversarialMode { PerimeterHeavy, BufferStripe, SingleTile };

inline std::optional<AdversarialMode> adversarial_mode_from_string(const std::string& s) {
    if (s == "perimeter-heavy") return AdversarialMode::PerimeterHeavy;
    if (s == "buffer-stripe") return AdversarialMode::BufferStripe;
    if (s == "single-tile") return AdversarialMode::SingleTile;
    return std::nullopt;
}

inline HostInstance gen_adversarial(int d, int q, AdversarialMode mode, std::uint64_t seed) {
    HostInstance inst;
    inst.d_r = inst.d_c = d;
    inst.q = q;
    std::mt19937_64 rng(seed);
    int next_id = 0;
    const int faces = d - 1;
    switch (mode) {
    case AdversarialMode::PerimeterHeavy: {
        const int rings = (d + 9) / 10;
        for (int fr = 0; fr < faces; ++fr)
            for (int fc = 0; fc < faces; ++fc) {
                int ring = std::min(std::min(fr, fc), std::min(faces - 1 - fr, faces - 1 - fc));
                if (ring >= rings) continue;
                if (detail::unit_draw(rng) >= 0.5) continue;
                Bridge b;
                b.id = detail::bridge_id(next_id++);
                b.face_row = fr;
                b.face_col = fc;
                for (int c = 1; c <= q; ++c)
                    if (detail::unit_draw(rng) < 0.5) b.colors.insert(c);
                if (b.colors.empty() && q > 0) b.colors.insert(1 + int(rng() % std::uint64_t(q)));
                inst.bridges.push_back(std::move(b));
            }
        break;
    }
    case AdversarialMode::BufferStripe: {
        // One thin vertical stripe of faces per color, pairwise disjoint.
        if (q > 0 && faces >= q) {
            int stride = faces / q;
            int width = std::max(1, stride / 3);
            for (int c = 1; c <= q; ++c) {
                int start = (c - 1) * stride;
                for (int fc = start; fc < start + width && fc < faces; ++fc)
                    for (int fr = 0; fr < faces; ++fr) {
                        Bridge b;
                        b.id = detail::bridge_id(next_id++);
                        b.face_row = fr;
                        b.face_col = fc;
                        b.colors.insert(c);
                        inst.bridges.push_back(std::move(b));
                    }
            }
        }
        break;
    }
    case AdversarialMode::SingleTile: {
        if (q > 0) {
            int fr = int(rng() % std::uint64_t(faces));
            int fc = int(rng() % std::uint64_t(faces));
            Bridge b;
            b.id = detail::bridge_id(next_id++);
            b.face_row = fr;
            b.face_col = fc;
            b.colors.insert(1);
            inst.bridges.push_back(std::move(b));
        }
        break;
    }
    }
    return inst;
}

} // namespace cmh
