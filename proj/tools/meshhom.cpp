// meshhom: generate colorful-mesh instances, run the homogenization
// pipelines, verify outputs, evaluate bounds, render SVG diagnostics.
// Exit codes: 0 success, 1 verified-negative/insufficient, 2 usage/input
// error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmh/bounds.hpp"
#include "cmh/pipeline.hpp"

using namespace cmh;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("short write to '" + path + "'");
}

Mesh load_mesh(const std::string& path, const HostInstance& inst) {
    Mesh m = parse_mesh(slurp(path), inst.d_r, inst.d_c);
    for (const auto& fam : {m.horizontals, m.verticals})
        for (const auto& p : fam)
            for (const GridVertex& u : p)
                if (!inst.vertex_in_range(u))
                    throw InputError("mesh vertex (" + std::to_string(u.row) + "," +
                                     std::to_string(u.col) + ") out of the instance grid");
    return m;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(int d, int q, const std::string& mode, std::uint64_t seed, double face_density,
                 double palette_density, const std::string& out) {
    if (d < 2) throw InputError("--size must be >= 2");
    if (q < 0 || q > ColorSet::max_colors)
        throw InputError("--colors must be in [0, " + std::to_string(ColorSet::max_colors) + "]");
    HostInstance inst;
    if (mode == "random")
        inst = gen_random(d, q, face_density, palette_density, seed);
    else if (mode == "all-colored")
        inst = gen_all_colored(d, q);
    else if (auto am = adversarial_mode_from_string(mode))
        inst = gen_adversarial(d, q, *am, seed);
    else
        throw InputError("unknown --mode '" + mode + "'");
    spit(out, write_instance(inst));
    return 0;
}

// --- homogenize -------------------------------------------------------------

void report_stats(const PipelineResult& res) {
    for (const StageStat& s : res.stats)
        std::cerr << "stage " << s.stage << " size=" << s.size << " ms=" << s.ms << '\n';
    std::ostringstream discarded;
    for (const std::string& line : res.trace)
        if (line.rfind("DISCARD-COLOR ", 0) == 0) discarded << ' ' << line.substr(14);
    std::cerr << "discarded-colors" << (discarded.str().empty() ? " none" : discarded.str())
              << '\n';
}

int cmd_homogenize(const std::string& in, int wall_k, int mesh_ell, const std::string& trace_path,
                   const std::string& out) {
    const HostInstance inst = parse_instance(slurp(in));
    PipelineResult res =
        wall_k > 0 ? homogeneous_wall(inst, wall_k) : uniform_mesh(inst, mesh_ell);
    report_stats(res);
    if (!trace_path.empty()) {
        std::ostringstream os;
        for (const std::string& line : res.trace) os << line << '\n';
        spit(trace_path, os.str());
    }
    if (!res.success) {
        std::cout << "INSUFFICIENT " << res.stage << " required=" << res.required
                  << " available=" << res.available << '\n';
        return kExitNegative;
    }
    std::string text = wall_k > 0 ? "# wall k=" + std::to_string(res.wall.k) + '\n' +
                                        write_mesh(res.wall.mesh)
                                  : write_mesh(res.mesh);
    spit(out, text);
    return 0;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const std::string& in, const std::string& mesh_path, const std::string& suite) {
    const HostInstance inst = parse_instance(slurp(in));
    const Mesh mesh = load_mesh(mesh_path, inst);
    Verdict v;
    if (suite == "uniform") {
        v = verify_uniform(inst, mesh);
    } else if (suite == "rainbow") {
        if (mesh.n() % 2 != 0) throw InputError("rainbow suite needs an even path count");
        RainbowMesh rm;
        rm.mesh = mesh;
        for (int j = 0; j + 1 < mesh.m(); ++j)
            rm.middleRowCells.push_back(mesh_cell_cycle(mesh, mesh.n() / 2 - 1, j));
        v = verify_rainbow_row(inst, rm);
    } else if (suite == "wall") {
        if (mesh.n() != mesh.m()) throw InputError("wall suite needs a square mesh");
        v = verify_homogeneous_wall(inst, Wall{mesh, mesh.n()});
    } else if (suite.rfind("tangle:", 0) == 0) {
        const Mesh oldMesh = load_mesh(suite.substr(7), inst);
        v = verify_tangle_truncation(oldMesh, mesh);
    } else {
        throw InputError("unknown --suite '" + suite + "'");
    }
    const MeshVerdict mv = mesh_validate(mesh);
    if (!mv.ok) v.add("mesh-shape", mv.violation);
    std::cout << write_verdict(v);
    return v.ok ? 0 : kExitNegative;
}

// --- bounds -----------------------------------------------------------------

int cmd_bounds(int q, int k, const std::string& lemma, const std::vector<long long>& args) {
    if (lemma.empty()) {
        const long long composed = bound_main(q, k), printed = printed_polynomial(q, k);
        std::cout << "composed " << composed << '\n'
                  << "printed " << printed << '\n'
                  << "difference " << composed - printed << '\n';
        return 0;
    }
    auto want = [&](std::size_t n, const char* usage) {
        if (args.size() != n) throw InputError(std::string("--lemma ") + lemma + " needs " + usage);
    };
    long long v = 0;
    if (lemma == "31") {
        want(5, "q r p b x");
        v = bound_lemma31(args[0], args[1], args[2], args[3], args[4]);
    } else if (lemma == "33") {
        want(4, "q p b r");
        v = bound_lemma33(args[0], args[1], args[2], args[3]);
    } else if (lemma == "rainbow") {
        want(3, "n m q");
        v = bound_rainbow(args[0], args[1], args[2]);
    } else if (lemma == "uniform") {
        want(2, "ell q");
        v = bound_uniform(args[0], args[1]);
    } else {
        throw InputError("unknown --lemma '" + lemma + "'");
    }
    std::cout << v << '\n';
    return 0;
}

// --- render -----------------------------------------------------------------

// Overlay file: one directive per line.
//   strip <column|row> <lo> <hi> <p>   shaded frame with p-buffers
//   tile <r0> <c0> <r1> <c1>           outlined rectangle
struct Overlay {
    struct StripSpec {
        Orientation orient;
        int lo, hi, p;
    };
    struct TileSpec {
        int r0, c0, r1, c1;
    };
    std::vector<StripSpec> strips;
    std::vector<TileSpec> tiles;
};

Overlay parse_overlay(const std::string& text) {
    Overlay ov;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "strip") {
            std::string o;
            Overlay::StripSpec s{};
            if (!(ls >> o >> s.lo >> s.hi >> s.p) || (o != "column" && o != "row"))
                throw InputError("overlay line " + std::to_string(lineno) + ": bad strip");
            s.orient = o == "column" ? Orientation::Column : Orientation::Row;
            ov.strips.push_back(s);
        } else if (kw == "tile") {
            Overlay::TileSpec t{};
            if (!(ls >> t.r0 >> t.c0 >> t.r1 >> t.c1))
                throw InputError("overlay line " + std::to_string(lineno) + ": bad tile");
            ov.tiles.push_back(t);
        } else {
            throw InputError("overlay line " + std::to_string(lineno) + ": unknown keyword");
        }
    }
    return ov;
}

int cmd_render(const std::string& in, const std::string& mesh_path, const std::string& pack_path,
               const std::string& out) {
    const HostInstance inst = parse_instance(slurp(in));
    const int S = 24, M = 24; // even scale keeps all coordinates integral
    auto X = [&](int c) { return M + c * S; };
    auto Y = [&](int r) { return M + r * S; };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << 2 * M + (inst.d_c - 1) * S << "\" height=\"" << 2 * M + (inst.d_r - 1) * S << "\">\n";

    // Shaded strips under everything else; buffers lighter than cores.
    if (!pack_path.empty()) {
        const Overlay ov = parse_overlay(slurp(pack_path));
        auto rect = [&](int r0, int c0, int r1, int c1, const char* fill) {
            os << "<rect x=\"" << X(c0) << "\" y=\"" << Y(r0) << "\" width=\"" << (c1 - c0) * S
               << "\" height=\"" << (r1 - r0) * S << "\" fill=\"" << fill << "\"/>\n";
        };
        for (const auto& s : ov.strips) {
            const bool col = s.orient == Orientation::Column;
            const int lo = s.lo, hi = s.hi, clo = s.lo + s.p, chi = s.hi - s.p;
            const int r_max = inst.d_r - 1, c_max = inst.d_c - 1;
            if (col) {
                rect(0, lo, r_max, hi, "#fdf0d5");
                if (chi >= clo) rect(0, clo, r_max, chi, "#f5c97b");
            } else {
                rect(lo, 0, hi, c_max, "#fdf0d5");
                if (chi >= clo) rect(clo, 0, chi, c_max, "#f5c97b");
            }
        }
        for (const auto& t : ov.tiles)
            os << "<rect x=\"" << X(t.c0) << "\" y=\"" << Y(t.r0) << "\" width=\""
               << (t.c1 - t.c0) * S << "\" height=\"" << (t.r1 - t.r0) * S
               << "\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"2\"/>\n";
    }

    // Base grid in gray, one circle per grid vertex.
    for (int r = 0; r < inst.d_r; ++r)
        os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(r) << "\" x2=\"" << X(inst.d_c - 1)
           << "\" y2=\"" << Y(r) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (int c = 0; c < inst.d_c; ++c)
        os << "<line x1=\"" << X(c) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(c) << "\" y2=\""
           << Y(inst.d_r - 1) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (int r = 0; r < inst.d_r; ++r)
        for (int c = 0; c < inst.d_c; ++c)
            os << "<circle cx=\"" << X(c) << "\" cy=\"" << Y(r)
               << "\" r=\"2\" fill=\"#999999\"/>\n";

    // Face colors as text glyphs at face centers (bridges), and at vertices.
    auto glyph = [&](int x, int y, const ColorSet& cs) {
        if (cs.empty()) return;
        os << "<text x=\"" << x << "\" y=\"" << y
           << "\" font-size=\"8\" text-anchor=\"middle\" fill=\"#205080\">";
        bool first = true;
        for (int c : cs.members()) {
            os << (first ? "" : ",") << c;
            first = false;
        }
        os << "</text>\n";
    };
    for (const Bridge& b : inst.bridges)
        glyph(X(b.face_col) + S / 2, Y(b.face_row) + S / 2, b.colors);
    for (const auto& [u, cs] : inst.vertex_colors) glyph(X(u.col), Y(u.row) - 4, cs);

    // Mesh paths stroked on top: horizontals blue, verticals dark red.
    if (!mesh_path.empty()) {
        const Mesh mesh = load_mesh(mesh_path, inst);
        auto stroke = [&](const std::vector<GridVertex>& p, const char* color) {
            os << "<polyline fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < p.size(); ++i)
                os << (i ? " " : "") << X(p[i].col) << ',' << Y(p[i].row);
            os << "\"/>\n";
        };
        for (const auto& p : mesh.horizontals) stroke(p, "#1f6fb2");
        for (const auto& p : mesh.verticals) stroke(p, "#7a1fb2");
    }

    os << "</svg>\n";
    spit(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"colorful-mesh homogenization toolkit"};
    app.require_subcommand(1);

    // generate
    int g_size = 0, g_colors = 0;
    std::string g_mode = "random", g_out;
    std::uint64_t g_seed = 1;
    double g_face = 0.3, g_palette = 0.5;
    auto* gen = app.add_subcommand("generate", "write a random instance");
    gen->add_option("--size", g_size, "grid side d")->required();
    gen->add_option("--colors", g_colors, "palette size q");
    gen->add_option("--mode", g_mode,
                    "random | all-colored | perimeter-heavy | buffer-stripe | single-tile");
    gen->add_option("--seed", g_seed, "RNG seed");
    gen->add_option("--face-density", g_face, "bridge probability per face (random mode)");
    gen->add_option("--palette-density", g_palette, "colour probability per bridge (random mode)");
    gen->add_option("--out", g_out, "output path (stdout if omitted)");

    // homogenize
    std::string h_in, h_trace, h_out;
    int h_wall = 0, h_mesh = 0;
    auto* hom = app.add_subcommand("homogenize", "run the wall or mesh pipeline");
    hom->add_option("--in", h_in, "instance file")->required();
    auto* optw = hom->add_option("--target-wall", h_wall, "wall parameter k");
    auto* optm = hom->add_option("--target-mesh", h_mesh, "mesh side ell");
    optw->excludes(optm);
    hom->add_option("--trace", h_trace, "write the decision trace here");
    hom->add_option("--out", h_out, "output path (stdout if omitted)");

    // verify
    std::string v_in, v_mesh, v_suite;
    auto* ver = app.add_subcommand("verify", "run an oracle suite on a mesh");
    ver->add_option("--in", v_in, "instance file")->required();
    ver->add_option("--mesh", v_mesh, "mesh file")->required();
    ver->add_option("--suite", v_suite, "uniform | rainbow | wall | tangle:<oldmesh>")->required();

    // bounds
    int b_q = 0, b_k = 0;
    std::string b_lemma;
    std::vector<long long> b_args;
    auto* bnd = app.add_subcommand("bounds", "evaluate the bound ledger");
    auto* optq = bnd->add_option("--q", b_q, "palette size");
    auto* optk = bnd->add_option("--k", b_k, "wall parameter");
    auto* optl = bnd->add_option("--lemma", b_lemma, "31 | 33 | rainbow | uniform");
    bnd->add_option("args", b_args, "lemma arguments");
    optl->excludes(optq)->excludes(optk);

    // render
    std::string r_in, r_mesh, r_pack, r_out;
    auto* ren = app.add_subcommand("render", "emit an SVG diagnostic");
    ren->add_option("--in", r_in, "instance file")->required();
    ren->add_option("--mesh", r_mesh, "mesh file to stroke");
    ren->add_option("--packings", r_pack, "strip/tile overlay file");
    ren->add_option("--out", r_out, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(g_size, g_colors, g_mode, g_seed, g_face, g_palette, g_out);
        if (hom->parsed()) {
            if ((h_wall > 0) == (h_mesh > 0))
                throw InputError("need exactly one of --target-wall / --target-mesh");
            return cmd_homogenize(h_in, h_wall, h_mesh, h_trace, h_out);
        }
        if (ver->parsed()) return cmd_verify(v_in, v_mesh, v_suite);
        if (bnd->parsed()) {
            if (b_lemma.empty() && (!*optq || !*optk))
                throw InputError("need --q and --k, or --lemma");
            return cmd_bounds(b_q, b_k, b_lemma, b_args);
        }
        if (ren->parsed()) return cmd_render(r_in, r_mesh, r_pack, r_out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
