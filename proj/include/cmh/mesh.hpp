#pragma once

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmh/instance.hpp"
#include "cmh/region.hpp"

namespace cmh {

// Ordered horizontal and vertical path systems inside a host. Every edge of
// every path is a base-grid edge; crossings obey the mesh axioms (validator
// below).
struct Mesh {
    int d_r = 0; // host dims recorded for range checks
    int d_c = 0;
    std::vector<std::vector<GridVertex>> horizontals;
    std::vector<std::vector<GridVertex>> verticals;

    int n() const { return int(horizontals.size()); }
    int m() const { return int(verticals.size()); }
};

inline Mesh base_mesh(const HostInstance& inst) {
    Mesh mesh;
    mesh.d_r = inst.d_r;
    mesh.d_c = inst.d_c;
    mesh.horizontals.resize(inst.d_r);
    mesh.verticals.resize(inst.d_c);
    for (int r = 0; r < inst.d_r; ++r)
        for (int c = 0; c < inst.d_c; ++c) mesh.horizontals[r].push_back({r, c});
    for (int c = 0; c < inst.d_c; ++c)
        for (int r = 0; r < inst.d_r; ++r) mesh.verticals[c].push_back({r, c});
    return mesh;
}

struct MeshVerdict {
    bool ok = true;
    std::string violation; // first violated axiom with witness indices
};

namespace detail {

inline bool is_grid_path(const std::vector<GridVertex>& p, int d_r, int d_c, std::string& why) {
    if (p.empty()) {
        why = "empty path";
        return false;
    }
    std::set<GridVertex> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].row < 0 || p[i].row >= d_r || p[i].col < 0 || p[i].col >= d_c) {
            why = "vertex out of range";
            return false;
        }
        if (!seen.insert(p[i]).second) {
            why = "repeated vertex";
            return false;
        }
        if (i > 0 && !grid_adjacent(p[i - 1], p[i])) {
            why = "non-grid edge";
            return false;
        }
    }
    return true;
}

} // namespace detail

// Checks the four mesh axioms; reports the first violation.
inline MeshVerdict mesh_validate(const Mesh& mesh) {
    MeshVerdict v;
    auto fail = [&](const std::string& msg) {
        v.ok = false;
        v.violation = msg;
        return v;
    };
    const int n = mesh.n(), m = mesh.m();
    if (n < 2 || m < 2) return fail("mesh needs at least 2 horizontals and 2 verticals");

    std::string why;
    for (int i = 0; i < n; ++i)
        if (!detail::is_grid_path(mesh.horizontals[i], mesh.d_r, mesh.d_c, why))
            return fail("horizontal " + std::to_string(i) + ": " + why);
    for (int j = 0; j < m; ++j)
        if (!detail::is_grid_path(mesh.verticals[j], mesh.d_r, mesh.d_c, why))
            return fail("vertical " + std::to_string(j) + ": " + why);

    // Pairwise disjointness within each family.
    {
        std::map<GridVertex, int> owner;
        for (int i = 0; i < n; ++i)
            for (const GridVertex& u : mesh.horizontals[i]) {
                auto [it, fresh] = owner.insert({u, i});
                if (!fresh)
                    return fail("horizontals not disjoint: " + std::to_string(it->second) + " and " +
                                std::to_string(i));
            }
    }
    std::map<GridVertex, int> vert_owner;
    for (int j = 0; j < m; ++j)
        for (const GridVertex& u : mesh.verticals[j]) {
            auto [it, fresh] = vert_owner.insert({u, j});
            if (!fresh)
                return fail("verticals not disjoint: " + std::to_string(it->second) + " and " +
                            std::to_string(j));
        }

    // Each crossing induces a path: common vertices form one contiguous run
    // along the horizontal, and the horizontal meets verticals in index
    // order starting at 0 and ending at m-1. Symmetric check for verticals.
    auto crossing_check = [&](const std::vector<std::vector<GridVertex>>& family,
                              const std::map<GridVertex, int>& other_owner, int other_count,
                              const char* fname, const char* oname) -> bool {
        for (int i = 0; i < int(family.size()); ++i) {
            std::vector<int> hits; // other-family index per position, -1 if none
            for (const GridVertex& u : family[i]) {
                auto it = other_owner.find(u);
                hits.push_back(it == other_owner.end() ? -1 : it->second);
            }
            int last = -1;
            std::set<int> done;
            for (int h : hits) {
                if (h < 0) continue;
                if (h == last) continue;
                if (done.count(h)) {
                    v = fail(std::string(fname) + " " + std::to_string(i) + " meets " + oname + " " +
                             std::to_string(h) + " in two runs (crossing not a path)");
                    return false;
                }
                if (h != last + 1) {
                    v = fail(std::string(fname) + " " + std::to_string(i) + " meets " + oname +
                             " out of order (" + std::to_string(h) + " after " +
                             std::to_string(last) + ")");
                    return false;
                }
                done.insert(h);
                last = h;
            }
            if (int(done.size()) != other_count) {
                v = fail(std::string(fname) + " " + std::to_string(i) + " misses some " + oname);
                return false;
            }
        }
        return true;
    };
    std::map<GridVertex, int> horiz_owner;
    for (int i = 0; i < n; ++i)
        for (const GridVertex& u : mesh.horizontals[i]) horiz_owner[u] = i;

    if (!crossing_check(mesh.horizontals, vert_owner, m, "horizontal", "vertical")) return v;
    if (!crossing_check(mesh.verticals, horiz_owner, n, "vertical", "horizontal")) return v;

    // Endpoints: horizontals run from vertical 0 to vertical m-1, verticals
    // from horizontal 0 to horizontal n-1.
    for (int i = 0; i < n; ++i) {
        auto f = vert_owner.find(mesh.horizontals[i].front());
        auto b = vert_owner.find(mesh.horizontals[i].back());
        if (f == vert_owner.end() || f->second != 0)
            return fail("horizontal " + std::to_string(i) + " does not start on vertical 0");
        if (b == vert_owner.end() || b->second != m - 1)
            return fail("horizontal " + std::to_string(i) + " does not end on vertical " +
                        std::to_string(m - 1));
    }
    for (int j = 0; j < m; ++j) {
        auto f = horiz_owner.find(mesh.verticals[j].front());
        auto b = horiz_owner.find(mesh.verticals[j].back());
        if (f == horiz_owner.end() || f->second != 0)
            return fail("vertical " + std::to_string(j) + " does not start on horizontal 0");
        if (b == horiz_owner.end() || b->second != n - 1)
            return fail("vertical " + std::to_string(j) + " does not end on horizontal " +
                        std::to_string(n - 1));
    }
    return v;
}

inline std::string write_mesh(const Mesh& mesh) {
    std::ostringstream os;
    os << "mesh " << mesh.n() << ' ' << mesh.m() << '\n';
    for (int i = 0; i < mesh.n(); ++i) {
        os << "h " << i << ':';
        for (const GridVertex& u : mesh.horizontals[i]) os << " (" << u.row << ',' << u.col << ')';
        os << '\n';
    }
    for (int j = 0; j < mesh.m(); ++j) {
        os << "v " << j << ':';
        for (const GridVertex& u : mesh.verticals[j]) os << " (" << u.row << ',' << u.col << ')';
        os << '\n';
    }
    return os.str();
}

inline Mesh parse_mesh(const std::string& text, int d_r, int d_c) {
    std::istringstream in(text);
    std::string line;
    Mesh mesh;
    mesh.d_r = d_r;
    mesh.d_c = d_c;
    int n = -1, m = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "mesh") {
            if (!(ls >> n >> m) || n < 1 || m < 1)
                throw ParseError(lineno, 1, "malformed mesh header");
            mesh.horizontals.resize(n);
            mesh.verticals.resize(m);
            continue;
        }
        if (kw != "h" && kw != "v") throw ParseError(lineno, 1, "unknown keyword '" + kw + "'");
        if (n < 0) throw ParseError(lineno, 1, "path line before mesh header");
        int index;
        char colon;
        if (!(ls >> index >> colon) || colon != ':')
            throw ParseError(lineno, 1, "malformed path line");
        std::vector<GridVertex>* target = nullptr;
        if (kw == "h") {
            if (index < 0 || index >= n) throw ParseError(lineno, 1, "horizontal index out of range");
            target = &mesh.horizontals[index];
        } else {
            if (index < 0 || index >= m) throw ParseError(lineno, 1, "vertical index out of range");
            target = &mesh.verticals[index];
        }
        std::string tok;
        while (ls >> tok) {
            int r, c;
            if (std::sscanf(tok.c_str(), "(%d,%d)", &r, &c) != 2)
                throw ParseError(lineno, 1, "bad vertex token '" + tok + "'");
            if (r < 0 || r >= d_r || c < 0 || c >= d_c)
                throw ParseError(lineno, 1, "vertex out of host range");
            target->push_back({r, c});
        }
    }
    if (n < 0) throw ParseError(lineno, 1, "missing mesh header");
    return mesh;
}

namespace detail {

// Unique cycle in the union of two horizontal and two vertical mesh paths:
// prune dangling tails, then walk. Pairwise crossings being single
// contiguous runs makes the union's cycle space one-dimensional, so the
// remainder is always one plain cycle.
inline std::vector<GridVertex> unique_cycle(const std::vector<GridVertex>& h1,
                                            const std::vector<GridVertex>& h2,
                                            const std::vector<GridVertex>& v1,
                                            const std::vector<GridVertex>& v2) {
    std::map<GridVertex, std::set<GridVertex>> adj;
    auto add_path = [&](const std::vector<GridVertex>& p) {
        for (std::size_t t = 1; t < p.size(); ++t) {
            adj[p[t - 1]].insert(p[t]);
            adj[p[t]].insert(p[t - 1]);
        }
    };
    add_path(h1);
    add_path(h2);
    add_path(v1);
    add_path(v2);

    // Shave dangling tails until only the cycle remains.
    std::vector<GridVertex> prune;
    for (const auto& [u, nb] : adj)
        if (nb.size() <= 1) prune.push_back(u);
    while (!prune.empty()) {
        GridVertex u = prune.back();
        prune.pop_back();
        auto it = adj.find(u);
        if (it == adj.end()) continue;
        for (const GridVertex& w : it->second) {
            auto& nb = adj[w];
            nb.erase(u);
            if (nb.size() == 1) prune.push_back(w);
        }
        adj.erase(it);
    }
    if (adj.empty()) throw std::logic_error("unique_cycle: no cycle remains");
    for (const auto& [u, nb] : adj)
        if (nb.size() != 2) throw std::logic_error("unique_cycle: remainder is not a plain cycle");

    std::vector<GridVertex> cyc;
    GridVertex start = adj.begin()->first;
    GridVertex prev = start, cur = *adj[start].begin();
    cyc.push_back(start);
    while (cur != start) {
        cyc.push_back(cur);
        const auto& nb = adj[cur];
        GridVertex nxt = *nb.begin() == prev ? *std::next(nb.begin()) : *nb.begin();
        prev = cur;
        cur = nxt;
    }
    if (cyc.size() != adj.size()) throw std::logic_error("unique_cycle: disconnected remainder");
    return cyc;
}

} // namespace detail

// Bounding cycle of the cell between horizontals i, i+1 and verticals j,
// j+1.
inline std::vector<GridVertex> mesh_cell_cycle(const Mesh& mesh, int i, int j) {
    if (i < 0 || i + 1 >= mesh.n() || j < 0 || j + 1 >= mesh.m())
        throw std::invalid_argument("mesh_cell_cycle: cell out of range");
    return detail::unique_cycle(mesh.horizontals[i], mesh.horizontals[i + 1], mesh.verticals[j],
                                mesh.verticals[j + 1]);
}

// Perimeter of a mesh as a closed vertex cycle, for compass queries.
inline std::vector<GridVertex> mesh_perimeter(const Mesh& mesh) {
    return detail::unique_cycle(mesh.horizontals.front(), mesh.horizontals.back(),
                                mesh.verticals.front(), mesh.verticals.back());
}

} // namespace cmh
