#pragma once

#include <optional>
#include <vector>

#include "fmw/fm.hpp"

namespace fmw {

// A point of the W-construction: a nested tree with a normal-form label of
// matching arity at each vertex and a length in (0,1] on each internal edge.
// Canonical form contains no zero-length edge; such an edge is collapsed by
// composing the labels of its endpoints (labels may sit on the boundary).
// A single-vertex point is the inclusion of the underlying space.
struct w_point {
    int n = 0;
    double rho0 = 0;
    nested_tree tree;
    std::vector<fm_point> label;  // by vertex id, arity == valence
    std::vector<double> length;   // by child vertex id; [0] unused

    int arity() const { return tree.arity(); }
};

void validate(const w_point& w);

w_point w_single(const fm_point& p);

// accepts lengths in [0,1] and collapses the zero ones; idempotent
w_point make_w_point(const nested_tree& tree, const std::vector<fm_point>& labels,
                     const std::vector<double>& lengths);

// graft the parts along T; the edges of T get the given length (1 by
// default, matching operadic composition), part edges keep theirs
w_point compose(const nested_tree& t, const std::vector<w_point>& parts, double edge_length = 1.0);

w_point compose_at(const w_point& a, int leaf, const w_point& b);

// empty for single-vertex points
std::optional<double> max_length(const w_point& w);

// remove every edge attaining the maximum length; the pieces keep their
// labels and lengths, and compose(skeleton, parts, max) restores the input
struct w_cut {
    nested_tree skeleton;
    std::vector<w_point> parts;  // by skeleton vertex id
};
w_cut cut_max_edges(const w_point& w);

w_point act(const group_element& g, const w_point& w);

// largest deviation between corresponding lengths and labels; +inf when the
// canonical trees differ; throws on n/k/rho0 mismatch
double w_approx_error(const w_point& a, const w_point& b);

inline bool w_approx_eq(const w_point& a, const w_point& b, double tau) {
    return w_approx_error(a, b) <= tau;
}

} // namespace fmw
