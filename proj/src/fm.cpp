#include "fmw/fm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace fmw {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// distance from point j of cfg to its nearest other point
double separation(const normalized_config& cfg, int j) {
    double s = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.count(); ++i)
        if (i != j) s = std::min(s, geom::dist(cfg.point(i), cfg.point(j)));
    return s;
}

} // namespace

std::optional<double> min_u(const fm_point& p) {
    if (p.tree.num_edges() == 0) return std::nullopt;
    double m = 1.0;
    for (int e = 1; e < p.tree.num_vertices(); ++e) m = std::min(m, p.edge_u[e]);
    return m;
}

bool on_boundary(const fm_point& p) {
    for (int e = 1; e < p.tree.num_vertices(); ++e)
        if (p.edge_u[e] == 0.0) return true;
    return false;
}

void validate(const fm_point& p) {
    if (p.tree.empty()) fail("fm_point: empty tree");
    if (p.arity() < 2) fail("fm_point: arity must be >= 2");
    if (p.n < 1) fail("fm_point: dimension must be >= 1");
    if (!(p.rho0 > 0.0 && p.rho0 < 0.125)) fail("fm_point: rho0 out of range");
    if ((int)p.vertex_config.size() != p.tree.num_vertices()) fail("fm_point: one config per vertex required");
    if ((int)p.edge_u.size() != p.tree.num_vertices()) fail("fm_point: edge data size mismatch");
    for (int v = 0; v < p.tree.num_vertices(); ++v) {
        const auto& cfg = p.vertex_config[v];
        if (cfg.dim() != p.n) fail("fm_point: config dimension mismatch");
        if (cfg.count() != p.tree.valence(v)) fail("fm_point: config size must equal valence");
        validate(cfg);
        if (!is_cluster_free(cfg, p.rho0)) fail("fm_point: vertex-config-not-cluster-free");
    }
    for (int e = 1; e < p.tree.num_vertices(); ++e)
        if (!(p.edge_u[e] >= 0.0 && p.edge_u[e] < 1.0)) fail("fm_point: edge-u-out-of-range");
}

fm_point interior_point(const normalized_config& x, double rho0) {
    validate(x);
    if (!is_cluster_free(x, rho0)) fail("interior_point: config not cluster-free");
    fm_point p;
    p.n = x.dim();
    p.rho0 = rho0;
    p.tree = nested_tree::corolla(x.count());
    p.vertex_config = {x};
    p.edge_u = {0.0};
    return p;
}

fm_point compose(const nested_tree& t, const std::vector<fm_point>& labels) {
    if (t.empty()) fail("compose: empty tree");
    if ((int)labels.size() != t.num_vertices()) fail("compose: one label per vertex required");
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (labels[v].arity() != t.valence(v)) fail("compose: label arity must equal valence");
        if (labels[v].n != labels[0].n || labels[v].rho0 != labels[0].rho0)
            fail("compose: labels disagree on n or rho0");
    }

    std::vector<nested_tree> locals(t.num_vertices());
    for (int v = 0; v < t.num_vertices(); ++v) locals[v] = labels[v].tree;
    auto sp = splice(t, locals);

    fm_point out;
    out.n = labels[0].n;
    out.rho0 = labels[0].rho0;
    out.tree = std::move(sp.tree);
    out.vertex_config.resize(out.tree.num_vertices());
    out.edge_u.assign(out.tree.num_vertices(), 0.0);
    for (int v = 0; v < t.num_vertices(); ++v) {
        const auto& lab = labels[v];
        for (int x = 0; x < lab.tree.num_vertices(); ++x) {
            int id = sp.local_vertex_map[v][x];
            out.vertex_config[id] = lab.vertex_config[x];
            if (x != nested_tree::root) out.edge_u[id] = lab.edge_u[x];
        }
    }
    for (int w = 1; w < t.num_vertices(); ++w) out.edge_u[sp.host_edge_map[w]] = 0.0;
    return out;
}

fm_point compose_at(const fm_point& a, int leaf, const fm_point& b) {
    if (leaf < 1 || leaf > a.arity()) fail("compose_at: leaf index out of range");
    std::vector<int> child(b.arity());
    for (int j = 0; j < b.arity(); ++j) child[j] = leaf + j;
    nested_tree t = one_edge_tree(a.arity() + b.arity() - 1, child);
    // root vertex of the one-edge tree is 0, its child is 1
    return compose(t, {a, b});
}

namespace {

// configuration of the leaves below v, points by ascending global label
normalized_config realize_rec(const fm_point& p, int v) {
    const auto& cfg = p.vertex_config[v];
    const auto& ch = p.tree.children(v);
    bool all_leaves = true;
    for (const auto& c : ch) all_leaves = all_leaves && c.is_leaf();
    if (all_leaves) return cfg;  // nothing to insert; already normalized

    std::vector<std::pair<int, std::vector<double>>> placed;
    for (int j = 0; j < (int)ch.size(); ++j) {
        auto base = cfg.point(j);
        if (ch[j].is_leaf()) {
            placed.emplace_back(ch[j].leaf, std::vector<double>(base.begin(), base.end()));
            continue;
        }
        int w = ch[j].vertex;
        normalized_config sub = realize_rec(p, w);
        double s = p.rho0 * p.edge_u[w] * separation(cfg, j);
        auto leaves = p.tree.leaves_under(w);
        for (int i = 0; i < sub.count(); ++i) {
            std::vector<double> q(p.n);
            auto sp = sub.point(i);
            for (int d = 0; d < p.n; ++d) q[d] = base[d] + s * sp[d];
            placed.emplace_back(leaves[i], std::move(q));
        }
    }
    std::sort(placed.begin(), placed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> flat;
    flat.reserve(placed.size() * p.n);
    for (auto& [label, q] : placed) flat.insert(flat.end(), q.begin(), q.end());
    return normalize(p.n, flat);
}

} // namespace

normalized_config realize(const fm_point& p) {
    validate(p);
    for (int e = 1; e < p.tree.num_vertices(); ++e)
        if (p.edge_u[e] <= 0.0) fail("realize: boundary point has no honest configuration");
    return realize_rec(p, nested_tree::root);
}

namespace {

struct decompose_state {
    int n;
    double rho0;
    tree_builder tb;
    std::map<int, normalized_config> cfg_of;  // staged vertex -> config
    std::map<int, double> u_of;               // staged vertex -> parent edge u
};

// `idx` are global point indices (0-based, ascending); `flat` is indexed by
// position within idx.  Returns the staged vertex for this group.
int decompose_rec(decompose_state& st, const std::vector<int>& idx, const std::vector<double>& flat) {
    auto x = normalize(st.n, flat);
    auto clusters = detect_clusters(x, st.rho0);

    int v = st.tb.add_vertex();
    if (clusters.empty()) {
        for (int g : idx) st.tb.add_leaf(v, g + 1);
        st.cfg_of.emplace(v, std::move(x));
        return v;
    }

    // slots: clusters plus the remaining singletons, ordered by least index
    std::vector<char> clustered(idx.size(), 0);
    for (const auto& c : clusters)
        for (int i : c) clustered[i] = 1;
    struct slot {
        int key;                 // least global index in the slot
        int cluster = -1;        // index into clusters, or -1 for a singleton
        int position = -1;       // position within idx for singletons
    };
    std::vector<slot> slots;
    for (size_t c = 0; c < clusters.size(); ++c) slots.push_back({idx[clusters[c][0]], (int)c, -1});
    for (size_t i = 0; i < idx.size(); ++i)
        if (!clustered[i]) slots.push_back({idx[i], -1, (int)i});
    std::sort(slots.begin(), slots.end(), [](const slot& a, const slot& b) { return a.key < b.key; });

    // parent tuple: cluster centroids and singleton points, in slot order
    std::vector<double> parent_flat;
    std::vector<double> spread(slots.size(), 0.0);  // maxnorm of cluster around centroid
    for (size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].cluster < 0) {
            auto p = x.point(slots[s].position);
            parent_flat.insert(parent_flat.end(), p.begin(), p.end());
            continue;
        }
        const auto& c = clusters[slots[s].cluster];
        std::vector<double> cent(st.n, 0.0);
        for (int i : c)
            for (int d = 0; d < st.n; ++d) cent[d] += x.point(i)[d];
        for (int d = 0; d < st.n; ++d) cent[d] /= c.size();
        for (int i : c) spread[s] = std::max(spread[s], geom::dist(x.point(i), {cent.data(), (size_t)st.n}));
        parent_flat.insert(parent_flat.end(), cent.begin(), cent.end());
    }
    auto parent = normalize_with_info(st.n, parent_flat);

    for (size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].cluster < 0) {
            st.tb.add_leaf(v, slots[s].key + 1);
            continue;
        }
        const auto& c = clusters[slots[s].cluster];
        std::vector<int> sub_idx;
        std::vector<double> sub_flat;
        for (int i : c) {
            sub_idx.push_back(idx[i]);
            auto p = x.point(i);
            sub_flat.insert(sub_flat.end(), p.begin(), p.end());
        }
        int w = decompose_rec(st, sub_idx, sub_flat);
        st.tb.add_child(v, w);
        double s_obs = spread[s] / parent.scale;
        st.u_of[w] = s_obs / (st.rho0 * separation(parent.cfg, (int)s));
    }
    st.cfg_of.emplace(v, std::move(parent.cfg));
    return v;
}

} // namespace

fm_point decompose(int n, const std::vector<double>& flat, double rho0) {
    if (n < 1) fail("decompose: dimension must be >= 1");
    if (flat.size() % n != 0 || flat.size() / n < 2) fail("decompose: needs at least 2 points");
    decompose_state st{n, rho0, {}, {}, {}};
    const int k = (int)(flat.size() / n);
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    int root = decompose_rec(st, idx, flat);
    auto built = st.tb.build(root);

    fm_point p;
    p.n = n;
    p.rho0 = rho0;
    p.tree = std::move(built.tree);
    p.vertex_config.resize(p.tree.num_vertices());
    p.edge_u.assign(p.tree.num_vertices(), 0.0);
    for (auto& [staged, cfg] : st.cfg_of) p.vertex_config[built.vertex_map[staged]] = std::move(cfg);
    for (auto& [staged, u] : st.u_of) p.edge_u[built.vertex_map[staged]] = u;
    validate(p);
    return p;
}

nested_tree stratum_of(const fm_point& p) {
    std::set<int> zero;
    for (int e = 1; e < p.tree.num_vertices(); ++e)
        if (p.edge_u[e] == 0.0) zero.insert(e);
    return cut_edges(p.tree, zero).skeleton;
}

fm_point act(const group_element& g, const fm_point& p) {
    if (g.sigma.size() != p.arity()) fail("act: permutation size must equal arity");
    if (g.q.n != p.n) fail("act: matrix dimension mismatch");
    if (!is_orthogonal(g.q)) fail("act: matrix not orthogonal");

    auto rel = permute_leaves(g.sigma, p.tree);
    fm_point out;
    out.n = p.n;
    out.rho0 = p.rho0;
    out.tree = std::move(rel.tree);
    out.vertex_config.resize(p.tree.num_vertices());
    out.edge_u.assign(p.tree.num_vertices(), 0.0);
    for (int v = 0; v < p.tree.num_vertices(); ++v) {
        group_element slot_g{permutation(rel.slot_perm[v]), g.q};
        out.vertex_config[rel.vertex_map[v]] = fmw::act(slot_g, p.vertex_config[v]);
        if (v != nested_tree::root) out.edge_u[rel.vertex_map[v]] = p.edge_u[v];
    }
    return out;
}

double approx_error(const fm_point& a, const fm_point& b) {
    if (a.n != b.n || a.arity() != b.arity() || a.rho0 != b.rho0)
        fail("approx_eq: parameter mismatch");
    if (!(a.tree == b.tree)) return std::numeric_limits<double>::infinity();
    double err = 0;
    for (int v = 0; v < a.tree.num_vertices(); ++v)
        err = std::max(err, config_dist(a.vertex_config[v], b.vertex_config[v]));
    for (int e = 1; e < a.tree.num_vertices(); ++e)
        err = std::max(err, std::abs(a.edge_u[e] - b.edge_u[e]));
    return err;
}

} // namespace fmw
