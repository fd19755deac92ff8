#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "cmh/verify.hpp"

namespace cmh {

struct StageStat {
    std::string stage;
    long long size = 0; // stage-specific: strip counts, path counts, captures
    double ms = 0;      // wall time, excluded from traces to keep runs comparable
};

// Success carries a uniform mesh and, for the wall pipeline, the extracted
// wall. Failure names the starving stage with the missing quantity; both
// host-size shortfalls and verifier rejections of sub-bound best-effort
// output surface here.
struct PipelineResult {
    bool success = false;
    Mesh mesh;
    Wall wall;
    bool has_wall = false;
    std::string stage;
    long long required = 0, available = 0;
    std::vector<StageStat> stats;
    Trace trace;
};

namespace detail {

class StageTimer {
  public:
    explicit StageTimer(PipelineResult& res, std::string stage)
        : res_(res), stage_(std::move(stage)), t0_(std::chrono::steady_clock::now()) {}
    void done(long long size) {
        const auto dt = std::chrono::steady_clock::now() - t0_;
        res_.stats.push_back(
            {stage_, size, std::chrono::duration<double, std::milli>(dt).count()});
    }

  private:
    PipelineResult& res_;
    std::string stage_;
    std::chrono::steady_clock::time_point t0_;
};

inline PipelineResult insufficient(PipelineResult res, const InsufficientMesh& e) {
    res.success = false;
    res.stage = e.stage;
    res.required = e.required;
    res.available = e.available;
    return res;
}

} // namespace detail

// Rainbow weave plus fold. Success only after the rainbow-row and
// per-cell uniformity oracles accept, so a sub-bound best effort can never
// return an unverified mesh.
inline PipelineResult uniform_mesh(const HostInstance& inst, int ell) {
    if (ell < 2) throw std::invalid_argument("uniform_mesh: ell must be >= 2");
    PipelineResult res;
    const MeshWindow w{0, inst.d_r - 1, 0, inst.d_c - 1};
    const int n = 2 * ell, m = ell * ell - ell;
    try {
        detail::StageTimer t_rb(res, "rainbow");
        RainbowMesh rb = build_rainbow_mesh(inst, w, n, m, inst.q);
        res.trace = rb.trace;
        t_rb.done(rb.captures);

        detail::StageTimer t_vr(res, "rainbow verify");
        const Verdict vr = verify_rainbow_row(inst, rb);
        t_vr.done(int(rb.middleRowCells.size()));
        if (!vr.ok)
            throw InsufficientMesh("rainbow capture", m - 1,
                                   m - 1 - (long long)vr.violations.size());

        detail::StageTimer t_f(res, "fold");
        res.mesh = fold_to_uniform(rb.mesh, ell);
        t_f.done(ell);

        detail::StageTimer t_vu(res, "uniform verify");
        const Verdict vu = verify_uniform(inst, res.mesh);
        const MeshVerdict mv = mesh_validate(res.mesh);
        t_vu.done(1LL * (ell - 1) * (ell - 1));
        if (!mv.ok) throw std::logic_error("uniform_mesh: invalid fold output: " + mv.violation);
        if (!vu.ok)
            throw InsufficientMesh("uniformity", 1LL * (ell - 1) * (ell - 1),
                                   1LL * (ell - 1) * (ell - 1) - (long long)vu.violations.size());
        res.success = true;
    } catch (const InsufficientMesh& e) {
        return detail::insufficient(std::move(res), e);
    }
    return res;
}

inline PipelineResult homogeneous_wall(const HostInstance& inst, int k) {
    if (k < 1) throw std::invalid_argument("homogeneous_wall: k must be >= 1");
    PipelineResult res = uniform_mesh(inst, 6 * k);
    if (!res.success) return res;
    try {
        detail::StageTimer t_w(res, "wall");
        const Wall big = mesh_to_wall(res.mesh, k);
        res.wall = select_homogeneous_wall(big);
        res.has_wall = true;
        t_w.done(res.wall.k);

        detail::StageTimer t_v(res, "wall verify");
        const MeshVerdict mb = mesh_validate(big.mesh);
        const MeshVerdict mw = mesh_validate(res.wall.mesh);
        const Verdict vh = verify_homogeneous_wall(inst, res.wall);
        t_v.done(1LL * (res.wall.k - 1) * (res.wall.k - 1));
        if (!mb.ok || !mw.ok)
            throw std::logic_error("homogeneous_wall: invalid wall: " +
                                   (mb.ok ? mw.violation : mb.violation));
        if (!vh.ok) throw InsufficientMesh("homogeneity", 0, -(long long)vh.violations.size());
    } catch (const InsufficientMesh& e) {
        return detail::insufficient(std::move(res), e);
    }
    return res;
}

} // namespace cmh
