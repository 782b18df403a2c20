#include "fmw/beta.hpp"

#include <algorithm>

#include <stdexcept>
#include <string>

namespace fmw {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// split a boundary point along some of its zero edges
struct fm_split {
    nested_tree skeleton;
    std::vector<fm_point> fragments;  // by skeleton vertex id
};

fm_split split_at(const fm_point& base, const std::set<int>& cutset) {
    auto cut = cut_edges(base.tree, cutset);
    fm_split out;
    out.skeleton = cut.skeleton;
    out.fragments.resize(cut.skeleton.num_vertices());
    for (int s = 0; s < cut.skeleton.num_vertices(); ++s) {
        fm_point f;
        f.n = base.n;
        f.rho0 = base.rho0;
        f.tree = cut.fragment[s];
        f.vertex_config.resize(f.tree.num_vertices());
        f.edge_u.assign(f.tree.num_vertices(), 0.0);
        for (int x = 0; x < f.tree.num_vertices(); ++x) {
            int orig = cut.fragment_vertex_map[s][x];
            f.vertex_config[x] = base.vertex_config[orig];
            if (x != nested_tree::root) f.edge_u[x] = base.edge_u[orig];
        }
        out.fragments[s] = std::move(f);
    }
    return out;
}

std::set<int> zero_edges(const fm_point& p) {
    std::set<int> z;
    for (int e = 1; e < p.tree.num_vertices(); ++e)
        if (p.edge_u[e] == 0.0) z.insert(e);
    return z;
}

} // namespace

w_point beta_scale_branch(double t, const fm_point& base) {
    if (!(t >= 0.0 && t <= 1.0)) fail("beta_scale_branch: t must lie in [0,1]");
    return w_single(collar_apply(2.0 * t, base));
}

w_point beta_fragment_plain(const fm_point& x) { return w_single(x); }

w_point beta_fragment_scaled(double s, const fm_point& z, double t) {
    if (!(s >= 0.0 && s <= 1.0)) fail("beta_fragment_scaled: s must lie in [0,1]");
    return w_single(collar_apply(s * t, z));
}

w_point beta_fragment_extended(double s, const fm_point& z, double t) {
    if (!(s >= 1.0 && s <= 2.0)) fail("beta_fragment_extended: s must lie in [1,2]");
    return collar_extend(s + t - 1.0, z);
}

w_point beta_fragment(const fm_point& x, double t) {
    auto ci = collar_invert(x);
    if (!ci) return beta_fragment_plain(x);
    if (ci->t <= 1.0) return beta_fragment_scaled(ci->t, ci->base, t);
    return beta_fragment_extended(ci->t, ci->base, t);
}

w_point beta_graft_branch_split(double t, const fm_point& base, const std::set<int>& skeleton_edges) {
    if (!(t >= 1.0 && t <= 2.0)) fail("beta_graft_branch: t must lie in [1,2]");
    if (skeleton_edges.empty()) fail("beta_graft_branch: need at least one skeleton edge");
    for (int e : skeleton_edges)
        if (e < 1 || e >= base.tree.num_vertices() || base.edge_u[e] != 0.0)
            fail("beta_graft_branch: skeleton edges must be zero edges of the base");

    auto split = split_at(base, skeleton_edges);
    std::vector<w_point> parts(split.skeleton.num_vertices());
    for (int s = 0; s < split.skeleton.num_vertices(); ++s)
        parts[s] = beta_fragment(split.fragments[s], t);
    return compose(split.skeleton, parts, t - 1.0);
}

w_point beta_graft_branch(double t, const fm_point& base) {
    return beta_graft_branch_split(t, base, zero_edges(base));
}

w_point beta(const fm_point& p) {
    validate(p);
    auto ci = collar_invert(p);
    if (!ci) return w_single(p);
    if (ci->t <= 1.0) return beta_scale_branch(ci->t, ci->base);
    return beta_graft_branch(ci->t, ci->base);
}

// Both branches agree at t = 2 up to the zero-length-edge identification,
// but the canonical forms differ: just above 2 the branch grafts edges of
// length t - 2.  Reconstructed collar times carry a few ulps of rounding, so
// dispatching on the raw comparison would let a boundary label (time exactly
// 2) leak stray 1e-16-length edges.  Times within the snap band are treated
// as the branch point itself; the band is far above compounded rounding and
// far below every comparison tolerance in use.
constexpr double seam_snap = 1e-12;

w_point collar_extend(double t, const fm_point& x) {
    if (!(t >= 0.0 && t <= 3.0)) fail("collar_extend: t must lie in [0,3]");
    if (!on_boundary(x)) fail("collar_extend: point must lie on the boundary");
    if (t <= 2.0 + seam_snap) return w_single(collar_apply(std::min(t, 2.0), x));
    return beta(collar_apply(t - 1.0, x));
}

fm_point beta_inverse(const w_point& w) {
    validate(w);
    if (w.tree.is_corolla()) {
        const fm_point& y = w.label[0];
        auto ci = collar_invert(y);
        if (!ci) return y;
        return collar_apply(ci->t / 2.0, ci->base);
    }

    const double t = *max_length(w) + 1.0;
    auto cut = cut_max_edges(w);
    std::vector<fm_point> fragments(cut.skeleton.num_vertices());
    for (int s = 0; s < cut.skeleton.num_vertices(); ++s) {
        const w_point& part = cut.parts[s];
        if (part.tree.is_corolla()) {
            const fm_point& g = part.label[0];
            auto ci = collar_invert(g);
            if (!ci)
                fragments[s] = g;  // plain
            else if (ci->t <= t)
                fragments[s] = collar_apply(ci->t / t, ci->base);  // scaled: s = tau/t
            else
                fragments[s] = collar_apply(ci->t - t + 1.0, ci->base);  // extended, collar range
        } else {
            // extended through beta at smaller arity: part = beta(c(s+t-2, z))
            fm_point inner = beta_inverse(part);
            auto ci = collar_invert(inner);
            if (!ci) fail("beta_inverse: inner point lost its collar coordinates");
            fragments[s] = collar_apply(ci->t - t + 2.0, ci->base);
        }
    }
    fm_point base = compose(cut.skeleton, fragments);
    return collar_apply(t, base);
}

} // namespace fmw
