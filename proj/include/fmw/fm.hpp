#pragma once

#include <optional>
#include <vector>

#include "fmw/config.hpp"
#include "fmw/tree.hpp"

namespace fmw {

// A point of the compactified configuration space in stratified normal form:
// a nested tree, a cluster-free configuration per vertex, and a scale
// parameter u in [0,1) per internal edge.  u = 0 marks an infinitesimal
// cluster (a genuine boundary direction); u -> 1 is the dissolution seam
// where the edge collapses into its parent configuration.
//
// The points of vertex_config[v] correspond to the children of v in their
// canonical (min-leaf) order.  Edge data is indexed by the child vertex.
struct fm_point {
    int n = 0;
    double rho0 = 0;
    nested_tree tree;
    std::vector<normalized_config> vertex_config;  // by vertex id
    std::vector<double> edge_u;                    // by child vertex id; [0] unused

    int arity() const { return tree.arity(); }
};

// smallest edge parameter; empty for a corolla
std::optional<double> min_u(const fm_point& p);
// some u is exactly 0
bool on_boundary(const fm_point& p);

// throws std::invalid_argument naming the violated invariant
void validate(const fm_point& p);

// inclusion of the open stratum: requires a cluster-free configuration
fm_point interior_point(const normalized_config& x, double rho0);

// operad composition along T: splices each label's tree into T; the edges of
// T itself acquire u = 0, label-internal edges keep their parameters
fm_point compose(const nested_tree& t, const std::vector<fm_point>& labels);

// composition at a single leaf (labels of the resulting one-edge tree get
// block-renumbered: b's leaves become i..i+k2-1)
fm_point compose_at(const fm_point& a, int leaf, const fm_point& b);

// flatten an interior normal form (all u > 0) into an honest configuration
normalized_config realize(const fm_point& p);

// inverse chart: detect clusters level by level and recover tree, vertex
// configurations, and edge parameters from raw coordinates
fm_point decompose(int n, const std::vector<double>& flat_points, double rho0);

// collapse all edges with u > 0; codimension of the stratum = edges left
nested_tree stratum_of(const fm_point& p);

fm_point act(const group_element& g, const fm_point& p);

// largest deviation between corresponding configs (config_dist) and edge
// parameters; +inf when the canonical trees differ; throws on n/k/rho0
// mismatch
double approx_error(const fm_point& a, const fm_point& b);

inline bool approx_eq(const fm_point& a, const fm_point& b, double tau) {
    return approx_error(a, b) <= tau;
}

} // namespace fmw
