#include "fmw/w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace fmw {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}

void validate(const w_point& w) {
    if (w.tree.empty()) fail("w_point: empty tree");
    if (w.n < 1) fail("w_point: dimension must be >= 1");
    if ((int)w.label.size() != w.tree.num_vertices()) fail("w_point: one label per vertex required");
    if ((int)w.length.size() != w.tree.num_vertices()) fail("w_point: edge data size mismatch");
    for (int v = 0; v < w.tree.num_vertices(); ++v) {
        const auto& lab = w.label[v];
        if (lab.arity() != w.tree.valence(v)) fail("w_point: label arity must equal valence");
        if (lab.n != w.n || lab.rho0 != w.rho0) fail("w_point: label disagrees on n or rho0");
        validate(lab);
    }
    for (int e = 1; e < w.tree.num_vertices(); ++e)
        if (!(w.length[e] > 0.0 && w.length[e] <= 1.0)) fail("w_point: edge-length-out-of-range");
}

w_point w_single(const fm_point& p) {
    w_point w;
    w.n = p.n;
    w.rho0 = p.rho0;
    w.tree = nested_tree::corolla(p.arity());
    w.label = {p};
    w.length = {0.0};
    return w;
}

w_point make_w_point(const nested_tree& tree, const std::vector<fm_point>& labels,
                     const std::vector<double>& lengths) {
    if (tree.empty()) fail("make_w_point: empty tree");
    if ((int)labels.size() != tree.num_vertices() || (int)lengths.size() != tree.num_vertices())
        fail("make_w_point: labels/lengths must cover every vertex");
    for (int e = 1; e < tree.num_vertices(); ++e)
        if (!(lengths[e] >= 0.0 && lengths[e] <= 1.0)) fail("make_w_point: edge-length-out-of-range");

    // cut at the positive edges; each zero-connected piece composes into one label
    std::set<int> positive;
    for (int e = 1; e < tree.num_vertices(); ++e)
        if (lengths[e] > 0.0) positive.insert(e);

    w_point w;
    w.n = labels[0].n;
    w.rho0 = labels[0].rho0;
    if ((int)positive.size() == tree.num_edges()) {
        w.tree = tree;
        w.label = labels;
        w.length = lengths;
        validate(w);
        return w;
    }

    auto cut = cut_edges(tree, positive);
    w.tree = cut.skeleton;
    w.label.resize(w.tree.num_vertices());
    w.length.assign(w.tree.num_vertices(), 0.0);
    for (int s = 0; s < w.tree.num_vertices(); ++s) {
        std::vector<fm_point> piece_labels(cut.fragment[s].num_vertices());
        for (int x = 0; x < cut.fragment[s].num_vertices(); ++x)
            piece_labels[x] = labels[cut.fragment_vertex_map[s][x]];
        w.label[s] = compose(cut.fragment[s], piece_labels);
        if (s != nested_tree::root) w.length[s] = lengths[cut.skeleton_edge_map[s]];
    }
    validate(w);
    return w;
}

w_point compose(const nested_tree& t, const std::vector<w_point>& parts, double edge_length) {
    if (t.empty()) fail("compose: empty tree");
    if ((int)parts.size() != t.num_vertices()) fail("compose: one part per vertex required");
    if (!(edge_length >= 0.0 && edge_length <= 1.0)) fail("compose: edge-length-out-of-range");
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (parts[v].arity() != t.valence(v)) fail("compose: part arity must equal valence");
        if (parts[v].n != parts[0].n || parts[v].rho0 != parts[0].rho0)
            fail("compose: parts disagree on n or rho0");
    }

    std::vector<nested_tree> locals(t.num_vertices());
    for (int v = 0; v < t.num_vertices(); ++v) locals[v] = parts[v].tree;
    auto sp = splice(t, locals);

    std::vector<fm_point> labels(sp.tree.num_vertices());
    std::vector<double> lengths(sp.tree.num_vertices(), 0.0);
    for (int v = 0; v < t.num_vertices(); ++v) {
        for (int x = 0; x < parts[v].tree.num_vertices(); ++x) {
            int id = sp.local_vertex_map[v][x];
            labels[id] = parts[v].label[x];
            if (x != nested_tree::root) lengths[id] = parts[v].length[x];
        }
    }
    for (int wv = 1; wv < t.num_vertices(); ++wv) lengths[sp.host_edge_map[wv]] = edge_length;
    return make_w_point(sp.tree, labels, lengths);
}

w_point compose_at(const w_point& a, int leaf, const w_point& b) {
    if (leaf < 1 || leaf > a.arity()) fail("compose_at: leaf index out of range");
    std::vector<int> child(b.arity());
    for (int j = 0; j < b.arity(); ++j) child[j] = leaf + j;
    nested_tree t = one_edge_tree(a.arity() + b.arity() - 1, child);
    return compose(t, {a, b});
}

std::optional<double> max_length(const w_point& w) {
    if (w.tree.num_edges() == 0) return std::nullopt;
    double m = 0;
    for (int e = 1; e < w.tree.num_vertices(); ++e) m = std::max(m, w.length[e]);
    return m;
}

w_cut cut_max_edges(const w_point& w) {
    auto ml = max_length(w);
    if (!ml) fail("cut_max_edges: point has no internal edge");
    std::set<int> cut;
    for (int e = 1; e < w.tree.num_vertices(); ++e)
        if (w.length[e] == *ml) cut.insert(e);
    auto c = cut_edges(w.tree, cut);

    w_cut out;
    out.skeleton = c.skeleton;
    out.parts.resize(c.skeleton.num_vertices());
    for (int s = 0; s < c.skeleton.num_vertices(); ++s) {
        w_point part;
        part.n = w.n;
        part.rho0 = w.rho0;
        part.tree = c.fragment[s];
        part.label.resize(part.tree.num_vertices());
        part.length.assign(part.tree.num_vertices(), 0.0);
        for (int x = 0; x < part.tree.num_vertices(); ++x) {
            int orig = c.fragment_vertex_map[s][x];
            part.label[x] = w.label[orig];
            if (x != nested_tree::root) part.length[x] = w.length[orig];
        }
        out.parts[s] = std::move(part);
    }
    return out;
}

w_point act(const group_element& g, const w_point& w) {
    if (g.sigma.size() != w.arity()) fail("act: permutation size must equal arity");
    auto rel = permute_leaves(g.sigma, w.tree);
    w_point out;
    out.n = w.n;
    out.rho0 = w.rho0;
    out.tree = std::move(rel.tree);
    out.label.resize(w.tree.num_vertices());
    out.length.assign(w.tree.num_vertices(), 0.0);
    for (int v = 0; v < w.tree.num_vertices(); ++v) {
        group_element slot_g{permutation(rel.slot_perm[v]), g.q};
        out.label[rel.vertex_map[v]] = fmw::act(slot_g, w.label[v]);
        if (v != nested_tree::root) out.length[rel.vertex_map[v]] = w.length[v];
    }
    return out;
}

double w_approx_error(const w_point& a, const w_point& b) {
    if (a.n != b.n || a.arity() != b.arity() || a.rho0 != b.rho0)
        fail("w_approx_eq: parameter mismatch");
    if (!(a.tree == b.tree)) return std::numeric_limits<double>::infinity();
    double err = 0;
    for (int e = 1; e < a.tree.num_vertices(); ++e)
        err = std::max(err, std::abs(a.length[e] - b.length[e]));
    for (int v = 0; v < a.tree.num_vertices(); ++v)
        err = std::max(err, approx_error(a.label[v], b.label[v]));
    return err;
}

} // namespace fmw
