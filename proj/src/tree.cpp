#include "fmw/tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace fmw {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string subtree_key_rec(const nested_tree& t, int v) {
    std::string s = "[";
    bool first = true;
    for (const auto& c : t.children(v)) {
        if (!first) s += ',';
        first = false;
        if (c.is_leaf())
            s += std::to_string(c.leaf);
        else
            s += subtree_key_rec(t, c.vertex);
    }
    s += ']';
    return s;
}

} // namespace

std::vector<int> nested_tree::leaves_under(int v) const {
    std::vector<int> out;
    std::function<void(int)> rec = [&](int u) {
        for (const auto& c : children_[u]) {
            if (c.is_leaf())
                out.push_back(c.leaf);
            else
                rec(c.vertex);
        }
    };
    rec(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::string nested_tree::subtree_key(int v) const { return subtree_key_rec(*this, v); }

nested_tree nested_tree::corolla(int k) {
    if (k < 2) fail("corolla: arity must be at least 2");
    tree_builder tb;
    int v = tb.add_vertex();
    for (int i = 1; i <= k; ++i) tb.add_leaf(v, i);
    return tb.build(v).tree;
}

tree_builder::built tree_builder::build(int root_vertex) const {
    const int v_count = (int)ch_.size();
    if (root_vertex < 0 || root_vertex >= v_count) fail("tree: root vertex out of range");

    std::vector<int> indeg(v_count, 0);
    std::vector<int> labels;
    for (const auto& list : ch_) {
        if ((int)list.size() < 2) fail("tree: every vertex needs at least 2 children");
        for (const auto& c : list) {
            if (c.leaf > 0) {
                labels.push_back(c.leaf);
            } else {
                if (c.vertex < 0 || c.vertex >= v_count) fail("tree: child vertex out of range");
                ++indeg[c.vertex];
            }
        }
    }
    if (indeg[root_vertex] != 0) fail("tree: root must not be a child");
    for (int v = 0; v < v_count; ++v)
        if (v != root_vertex && indeg[v] != 1) fail("tree: every non-root vertex needs exactly one parent");

    const int k = (int)labels.size();
    std::sort(labels.begin(), labels.end());
    for (int i = 0; i < k; ++i)
        if (labels[i] != i + 1) fail("tree: leaf labels must be exactly 1..k");

    // min leaf below each staged vertex; also detects cycles / unreachable parts
    std::vector<int> minleaf(v_count, 0), state(v_count, 0);
    std::function<int(int)> scan = [&](int v) -> int {
        if (state[v] == 1) fail("tree: cycle detected");
        if (state[v] == 2) return minleaf[v];
        state[v] = 1;
        int m = k + 1;
        for (const auto& c : ch_[v])
            m = std::min(m, c.leaf > 0 ? c.leaf : scan(c.vertex));
        state[v] = 2;
        minleaf[v] = m;
        return m;
    };
    scan(root_vertex);
    for (int v = 0; v < v_count; ++v)
        if (state[v] != 2) fail("tree: vertex not reachable from root");

    // canonical child order: by minimum leaf below the child
    std::vector<std::vector<tchild>> sorted(v_count);
    for (int v = 0; v < v_count; ++v) {
        sorted[v] = ch_[v];
        std::sort(sorted[v].begin(), sorted[v].end(), [&](const tchild& a, const tchild& b) {
            int ka = a.leaf > 0 ? a.leaf : minleaf[a.vertex];
            int kb = b.leaf > 0 ? b.leaf : minleaf[b.vertex];
            return ka < kb;
        });
    }

    // preorder numbering
    std::vector<int> vmap(v_count, -1);
    std::vector<int> order;  // canonical id -> staged id
    order.reserve(v_count);
    std::function<void(int)> number = [&](int v) {
        vmap[v] = (int)order.size();
        order.push_back(v);
        for (const auto& c : sorted[v])
            if (c.leaf == 0) number(c.vertex);
    };
    number(root_vertex);

    nested_tree t;
    t.arity_ = k;
    t.children_.resize(v_count);
    t.parent_.assign(v_count, -1);
    t.slot_.assign(v_count, -1);
    t.min_leaf_.assign(v_count, 0);
    for (int id = 0; id < v_count; ++id) {
        int v = order[id];
        t.min_leaf_[id] = minleaf[v];
        auto& out = t.children_[id];
        out.reserve(sorted[v].size());
        for (int s = 0; s < (int)sorted[v].size(); ++s) {
            const auto& c = sorted[v][s];
            if (c.leaf > 0) {
                out.push_back({c.leaf, -1});
            } else {
                int cid = vmap[c.vertex];
                out.push_back({0, cid});
                t.parent_[cid] = id;
                t.slot_[cid] = s;
            }
        }
    }
    t.key_ = subtree_key_rec(t, 0);
    return {std::move(t), std::move(vmap)};
}

graft_result graft(const nested_tree& host, int leaf, const nested_tree& scion) {
    if (host.empty() || scion.empty()) fail("graft: empty tree");
    if (leaf < 1 || leaf > host.arity()) fail("graft: leaf index out of range");
    const int k2 = scion.arity();
    const int vh = host.num_vertices();

    tree_builder tb;
    for (int v = 0; v < vh + scion.num_vertices(); ++v) tb.add_vertex();
    for (int v = 0; v < vh; ++v) {
        for (const auto& c : host.children(v)) {
            if (c.is_leaf()) {
                if (c.leaf < leaf)
                    tb.add_leaf(v, c.leaf);
                else if (c.leaf == leaf)
                    tb.add_child(v, vh + nested_tree::root);
                else
                    tb.add_leaf(v, c.leaf + k2 - 1);
            } else {
                tb.add_child(v, c.vertex);
            }
        }
    }
    for (int v = 0; v < scion.num_vertices(); ++v) {
        for (const auto& c : scion.children(v)) {
            if (c.is_leaf())
                tb.add_leaf(vh + v, leaf + c.leaf - 1);
            else
                tb.add_child(vh + v, vh + c.vertex);
        }
    }

    auto built = tb.build(nested_tree::root);
    graft_result r;
    r.tree = std::move(built.tree);
    r.graft_edge = built.vertex_map[vh + nested_tree::root];
    r.host_vertex_map.assign(built.vertex_map.begin(), built.vertex_map.begin() + vh);
    r.scion_vertex_map.assign(built.vertex_map.begin() + vh, built.vertex_map.end());
    return r;
}

relabel_result permute_leaves(const permutation& sigma, const nested_tree& t) {
    if (t.empty()) fail("permute_leaves: empty tree");
    if (sigma.size() != t.arity()) fail("permute_leaves: permutation size must equal arity");

    tree_builder tb;
    for (int v = 0; v < t.num_vertices(); ++v) tb.add_vertex();
    for (int v = 0; v < t.num_vertices(); ++v) {
        for (const auto& c : t.children(v)) {
            if (c.is_leaf())
                tb.add_leaf(v, sigma.map1(c.leaf));
            else
                tb.add_child(v, c.vertex);
        }
    }
    auto built = tb.build(nested_tree::root);

    // minimum relabelled leaf below each old vertex
    std::vector<int> new_min(t.num_vertices(), 0);
    for (int v = t.num_vertices() - 1; v >= 0; --v) {
        int m = t.arity() + 1;
        for (const auto& c : t.children(v))
            m = std::min(m, c.is_leaf() ? sigma.map1(c.leaf) : new_min[c.vertex]);
        new_min[v] = m;  // children have larger preorder ids, already done
    }

    relabel_result r;
    r.tree = std::move(built.tree);
    r.vertex_map = std::move(built.vertex_map);
    r.slot_perm.resize(t.num_vertices());
    for (int v = 0; v < t.num_vertices(); ++v) {
        const auto& ch = t.children(v);
        std::vector<int> keys(ch.size());
        for (int j = 0; j < (int)ch.size(); ++j)
            keys[j] = ch[j].is_leaf() ? sigma.map1(ch[j].leaf) : new_min[ch[j].vertex];
        std::vector<int> idx(ch.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[a] < keys[b]; });
        r.slot_perm[v].resize(ch.size());
        for (int rank = 0; rank < (int)idx.size(); ++rank) r.slot_perm[v][idx[rank]] = rank;
    }
    return r;
}

namespace {

struct shape {
    int leaf = 0;
    std::vector<shape> kids;
};

// all partitions of idx into >= 2 blocks, via restricted growth strings
void partitions(const std::vector<int>& items, std::vector<std::vector<std::vector<int>>>& out) {
    const int n = (int)items.size();
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxb) {
        if (i == n) {
            if (maxb + 1 < 2) return;
            std::vector<std::vector<int>> blocks(maxb + 1);
            for (int j = 0; j < n; ++j) blocks[a[j]].push_back(items[j]);
            out.push_back(std::move(blocks));
            return;
        }
        for (int b = 0; b <= maxb + 1; ++b) {
            a[i] = b;
            rec(i + 1, std::max(maxb, b));
        }
    };
    a[0] = 0;
    rec(1, 0);
}

void shapes_on(const std::vector<int>& labels, std::vector<shape>& out) {
    std::vector<std::vector<std::vector<int>>> parts;
    partitions(labels, parts);
    for (const auto& blocks : parts) {
        // per-block alternatives
        std::vector<std::vector<shape>> opts(blocks.size());
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].size() == 1) {
                opts[b].push_back(shape{blocks[b][0], {}});
            } else {
                shapes_on(blocks[b], opts[b]);
            }
        }
        std::vector<int> pick(blocks.size(), 0);
        std::function<void(size_t, shape&)> fill = [&](size_t b, shape& node) {
            if (b == blocks.size()) {
                out.push_back(node);
                return;
            }
            for (const auto& choice : opts[b]) {
                node.kids.push_back(choice);
                fill(b + 1, node);
                node.kids.pop_back();
            }
        };
        shape node;
        fill(0, node);
    }
}

void stage_shape(tree_builder& tb, const shape& s, int v) {
    for (const auto& kid : s.kids) {
        if (kid.kids.empty()) {
            tb.add_leaf(v, kid.leaf);
        } else {
            int w = tb.add_vertex();
            tb.add_child(v, w);
            stage_shape(tb, kid, w);
        }
    }
}

} // namespace

std::vector<nested_tree> enumerate_trees(int k) {
    if (k < 2 || k > 8) fail("enumerate_trees: arity must be in 2..8");
    std::vector<int> labels(k);
    std::iota(labels.begin(), labels.end(), 1);
    std::vector<shape> shapes;
    shapes_on(labels, shapes);

    std::vector<nested_tree> out;
    out.reserve(shapes.size());
    for (const auto& s : shapes) {
        tree_builder tb;
        int r = tb.add_vertex();
        stage_shape(tb, s, r);
        out.push_back(tb.build(r).tree);
    }
    std::sort(out.begin(), out.end(), [](const nested_tree& a, const nested_tree& b) {
        if (a.num_edges() != b.num_edges()) return a.num_edges() < b.num_edges();
        return a.key() < b.key();
    });
    return out;
}

nested_tree one_edge_tree(int k, const std::vector<int>& child_leaves) {
    if ((int)child_leaves.size() < 2 || (int)child_leaves.size() > k - 1)
        fail("one_edge_tree: child leaf set must be a proper subset of size >= 2");
    std::vector<char> inside(k + 1, 0);
    for (int l : child_leaves) {
        if (l < 1 || l > k || inside[l]) fail("one_edge_tree: bad leaf subset");
        inside[l] = 1;
    }
    tree_builder tb;
    int r = tb.add_vertex();
    int c = tb.add_vertex();
    tb.add_child(r, c);
    for (int l = 1; l <= k; ++l) {
        if (inside[l])
            tb.add_leaf(c, l);
        else
            tb.add_leaf(r, l);
    }
    return tb.build(r).tree;
}

splice_result splice(const nested_tree& host, const std::vector<nested_tree>& locals) {
    if (host.empty()) fail("splice: empty host");
    if ((int)locals.size() != host.num_vertices()) fail("splice: one local tree per host vertex required");
    for (int v = 0; v < host.num_vertices(); ++v)
        if (locals[v].empty() || locals[v].arity() != host.valence(v))
            fail("splice: local tree arity must equal host valence");

    tree_builder tb;
    std::vector<int> offset(host.num_vertices());
    int next = 0;
    for (int v = 0; v < host.num_vertices(); ++v) {
        offset[v] = next;
        for (int x = 0; x < locals[v].num_vertices(); ++x) tb.add_vertex();
        next += locals[v].num_vertices();
    }
    for (int v = 0; v < host.num_vertices(); ++v) {
        const auto& slots = host.children(v);
        for (int x = 0; x < locals[v].num_vertices(); ++x) {
            for (const auto& c : locals[v].children(x)) {
                if (!c.is_leaf()) {
                    tb.add_child(offset[v] + x, offset[v] + c.vertex);
                    continue;
                }
                const auto& slot = slots[c.leaf - 1];
                if (slot.is_leaf())
                    tb.add_leaf(offset[v] + x, slot.leaf);
                else
                    tb.add_child(offset[v] + x, offset[slot.vertex] + nested_tree::root);
            }
        }
    }
    auto built = tb.build(offset[nested_tree::root] + nested_tree::root);

    splice_result r;
    r.tree = std::move(built.tree);
    r.local_vertex_map.resize(host.num_vertices());
    for (int v = 0; v < host.num_vertices(); ++v) {
        r.local_vertex_map[v].resize(locals[v].num_vertices());
        for (int x = 0; x < locals[v].num_vertices(); ++x)
            r.local_vertex_map[v][x] = built.vertex_map[offset[v] + x];
    }
    r.host_edge_map.assign(host.num_vertices(), -1);
    for (int v = 1; v < host.num_vertices(); ++v)
        r.host_edge_map[v] = built.vertex_map[offset[v] + nested_tree::root];
    return r;
}

cut_result cut_edges(const nested_tree& t, const std::set<int>& cut) {
    if (t.empty()) fail("cut_edges: empty tree");
    for (int e : cut)
        if (e < 1 || e >= t.num_vertices()) fail("cut_edges: edge id out of range");

    const int nv = t.num_vertices();
    // vertex ids are preorder, so a parent precedes its children
    std::vector<int> piece_of(nv, -1);
    std::vector<int> piece_root;  // piece id -> original root vertex of the piece
    for (int v = 0; v < nv; ++v) {
        if (v == nested_tree::root || cut.count(v)) {
            piece_of[v] = (int)piece_root.size();
            piece_root.push_back(v);
        } else {
            piece_of[v] = piece_of[t.parent(v)];
        }
    }
    const int np = (int)piece_root.size();

    // skeleton: one vertex per piece
    tree_builder sk;
    for (int p = 0; p < np; ++p) sk.add_vertex();
    for (int v = 0; v < nv; ++v) {
        for (const auto& c : t.children(v)) {
            if (c.is_leaf())
                sk.add_leaf(piece_of[v], c.leaf);
            else if (cut.count(c.vertex))
                sk.add_child(piece_of[v], piece_of[c.vertex]);
        }
    }
    auto skel = sk.build(piece_of[nested_tree::root]);

    cut_result r;
    r.skeleton = std::move(skel.tree);
    r.fragment.resize(np);
    r.fragment_vertex_map.resize(np);
    r.skeleton_edge_map.assign(np, -1);
    for (int p = 0; p < np; ++p) {
        int s = skel.vertex_map[p];
        if (piece_root[p] != nested_tree::root) r.skeleton_edge_map[s] = piece_root[p];
    }

    // fragments: each piece keeps its shape; slots become local leaves
    for (int p = 0; p < np; ++p) {
        std::vector<int> members;  // original vertex ids, increasing
        for (int v = 0; v < nv; ++v)
            if (piece_of[v] == p) members.push_back(v);
        std::vector<int> staged(nv, -1);
        tree_builder fb;
        for (size_t i = 0; i < members.size(); ++i) staged[members[i]] = fb.add_vertex();

        // slot keys: min global leaf of each slot, sorted, give local labels
        std::vector<int> keys;
        for (int v : members)
            for (const auto& c : t.children(v)) {
                if (c.is_leaf())
                    keys.push_back(c.leaf);
                else if (cut.count(c.vertex))
                    keys.push_back(t.min_leaf(c.vertex));
            }
        std::sort(keys.begin(), keys.end());
        auto local_label = [&](int key) {
            return (int)(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin()) + 1;
        };
        for (int v : members) {
            for (const auto& c : t.children(v)) {
                if (c.is_leaf())
                    fb.add_leaf(staged[v], local_label(c.leaf));
                else if (cut.count(c.vertex))
                    fb.add_leaf(staged[v], local_label(t.min_leaf(c.vertex)));
                else
                    fb.add_child(staged[v], staged[c.vertex]);
            }
        }
        auto frag = fb.build(staged[piece_root[p]]);
        int s = skel.vertex_map[p];
        r.fragment[s] = std::move(frag.tree);
        r.fragment_vertex_map[s].resize(members.size());
        for (size_t i = 0; i < members.size(); ++i)
            r.fragment_vertex_map[s][frag.vertex_map[staged[members[i]]]] = members[i];
    }
    return r;
}

} // namespace fmw
