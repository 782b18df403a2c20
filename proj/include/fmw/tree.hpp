#pragma once

#include <set>
#include <string>
#include <vector>

#include "fmw/perm.hpp"

namespace fmw {

// Rooted trees with leaves labelled 1..k in which every vertex has at least
// two children.  They index the boundary strata of the compactified
// configuration spaces and the cells of the W-construction.
//
// Representation invariant: trees are stored in canonical (unplanar) form.
//   - children of every vertex are sorted by the minimum leaf label below
//     them, so two planar presentations of the same tree compare equal;
//   - vertices are numbered in DFS preorder of that ordering (root = 0),
//     so equal trees have identical arrays;
//   - an internal edge is identified with its child vertex (every non-root
//     vertex has exactly one parent edge), giving edge ids 1..V-1.
class nested_tree {
public:
    struct child_ref {
        int leaf = 0;     // leaf label in 1..k, or 0 if this child is a vertex
        int vertex = -1;  // child vertex id, or -1 if this child is a leaf
        bool is_leaf() const { return leaf > 0; }
        friend bool operator==(const child_ref&, const child_ref&) = default;
    };

    nested_tree() = default;  // empty, invalid; assign before use
    static nested_tree corolla(int k);

    bool empty() const { return children_.empty(); }
    int arity() const { return arity_; }
    int num_vertices() const { return (int)children_.size(); }
    int num_edges() const { return num_vertices() - 1; }  // l(T)
    bool is_corolla() const { return num_vertices() == 1; }

    static constexpr int root = 0;
    const std::vector<child_ref>& children(int v) const { return children_[v]; }
    int valence(int v) const { return (int)children_[v].size(); }
    int parent(int v) const { return parent_[v]; }          // -1 for the root
    int slot_in_parent(int v) const { return slot_[v]; }
    int min_leaf(int v) const { return min_leaf_[v]; }
    std::vector<int> leaves_under(int v) const;             // ascending labels

    // canonical serialization, e.g. "[[1,2],3]"; doubles as the JSON form
    const std::string& key() const { return key_; }
    std::string subtree_key(int v) const;

    friend bool operator==(const nested_tree& a, const nested_tree& b) { return a.key_ == b.key_; }
    friend bool operator<(const nested_tree& a, const nested_tree& b) { return a.key_ < b.key_; }

private:
    friend class tree_builder;
    int arity_ = 0;
    std::vector<std::vector<child_ref>> children_;
    std::vector<int> parent_;
    std::vector<int> slot_;
    std::vector<int> min_leaf_;
    std::string key_;
};

// Assembles a tree from scratch; build() canonicalizes and reports where each
// staged vertex ended up, so callers can transport per-vertex data.
class tree_builder {
public:
    int add_vertex() {
        ch_.emplace_back();
        return (int)ch_.size() - 1;
    }
    void add_leaf(int v, int label) { ch_[v].push_back({label, -1}); }
    void add_child(int v, int child_vertex) { ch_[v].push_back({0, child_vertex}); }

    struct built {
        nested_tree tree;
        std::vector<int> vertex_map;  // staged vertex id -> canonical vertex id
    };
    built build(int root_vertex) const;

private:
    struct tchild {
        int leaf;
        int vertex;
    };
    std::vector<std::vector<tchild>> ch_;
};

// operadic graft: leaf i of host is replaced by the root of scion; scion's
// leaves are renumbered i..i+k2-1 and host leaves above i shift up by k2-1.
struct graft_result {
    nested_tree tree;
    int graft_edge = -1;               // child-vertex id of the new edge
    std::vector<int> host_vertex_map;  // host vertex id -> result id
    std::vector<int> scion_vertex_map; // scion vertex id -> result id
};
graft_result graft(const nested_tree& host, int leaf, const nested_tree& scion);

// relabel leaf i as sigma(i); shape unchanged, canonical order may shuffle
struct relabel_result {
    nested_tree tree;
    std::vector<int> vertex_map;              // old vertex id -> new vertex id
    std::vector<std::vector<int>> slot_perm;  // per old vertex: old slot -> new slot
};
relabel_result permute_leaves(const permutation& sigma, const nested_tree& t);

// all isomorphism classes of nested trees on k labelled leaves, 2 <= k <= 8,
// in a deterministic order (by edge count, then key)
std::vector<nested_tree> enumerate_trees(int k);

// the unique tree with one internal edge whose child vertex carries exactly
// the given leaves (2 <= |child_leaves| <= k-1)
nested_tree one_edge_tree(int k, const std::vector<int>& child_leaves);

// Replace every vertex v of host by the tree locals[v] (arity == valence(v)):
// leaf j of locals[v] takes over the j-th child of v in canonical order.
// Host edges survive as edges from a local root into a local leaf position.
struct splice_result {
    nested_tree tree;
    std::vector<std::vector<int>> local_vertex_map;  // [host v][local vertex] -> result id
    std::vector<int> host_edge_map;                  // host child-vertex -> result child-vertex
};
splice_result splice(const nested_tree& host, const std::vector<nested_tree>& locals);

// Cut the given edges (identified by child vertex id).  The connected pieces
// of what remains become the vertices of a skeleton tree on the same k
// leaves; each piece keeps its own shape as a "fragment" whose local leaves
// (1..valence) stand for the piece's slots, numbered by increasing minimum
// global leaf.  splice(skeleton, fragments) restores the original tree.
struct cut_result {
    nested_tree skeleton;
    std::vector<nested_tree> fragment;                // per skeleton vertex
    std::vector<std::vector<int>> fragment_vertex_map;  // [skel v][frag vertex] -> original vertex
    std::vector<int> skeleton_edge_map;               // skel child-vertex -> original child-vertex
};
cut_result cut_edges(const nested_tree& t, const std::set<int>& cut);

} // namespace fmw
