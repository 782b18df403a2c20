#pragma once

#include <span>
#include <vector>

#include "fmw/perm.hpp"

namespace fmw {

// n x n orthogonal matrix, row-major
struct ortho_matrix {
    int n = 0;
    std::vector<double> a;

    static ortho_matrix identity(int n);
    double at(int i, int j) const { return a[i * n + j]; }
    void apply(std::span<const double> x, std::span<double> out) const;
    ortho_matrix transpose() const;
    // max |Q^T Q - I|
    double orthogonality_defect() const;
};

ortho_matrix multiply(const ortho_matrix& p, const ortho_matrix& q);
bool is_orthogonal(const ortho_matrix& q, double tol = 1e-10);

// an element of Sigma_m x O(n)
struct group_element {
    permutation sigma;
    ortho_matrix q;
};

group_element group_identity(int n, int m);
// (g * h) acts as g after h
group_element group_multiply(const group_element& g, const group_element& h);

// m >= 2 labelled points in R^n with centroid 0 and max norm 1, pairwise
// distinct: a section of the quotient by translations and positive dilations
class normalized_config {
public:
    normalized_config() = default;

    int dim() const { return n_; }
    int count() const { return m_; }
    std::span<const double> point(int i) const { return {pts_.data() + (size_t)i * n_, (size_t)n_}; }
    const std::vector<double>& data() const { return pts_; }

    // trusts the caller; validate() is the guard
    static normalized_config unchecked(int n, std::vector<double> flat);

private:
    int n_ = 0, m_ = 0;
    std::vector<double> pts_;
};

// throws std::invalid_argument naming the violated invariant
void validate(const normalized_config& x, double tol = 1e-12);

// center to the mean, scale the largest norm to 1
normalized_config normalize(int n, const std::vector<double>& flat_points);

// same, keeping the affine data of the applied map p -> (p - center)/scale
struct normalize_info {
    normalized_config cfg;
    std::vector<double> center;
    double scale = 0;
};
normalize_info normalize_with_info(int n, const std::vector<double>& flat_points);

normalized_config act(const group_element& g, const normalized_config& x);

// max over i of |x_i - y_i|
double config_dist(const normalized_config& x, const normalized_config& y);

// (p2 - p1)/|p2 - p1| for a 2-point config
std::vector<double> sphere_param(const normalized_config& x);

// Single-linkage merge nodes (each a sorted index set, sizes 2..m, the full
// set last).  Merge order is deterministic: smallest linkage distance first,
// ties by the smallest member indices of the two clusters.
std::vector<std::vector<int>> linkage_nodes(const normalized_config& x);

// Proper dendrogram subsets S, |S| >= 2, with
//   maxnorm(S - centroid(S)) < rho0 * dist(centroid(S), nearest point outside S),
// reduced to the maximal ones.  Empty result == cluster-free.
std::vector<std::vector<int>> detect_clusters(const normalized_config& x, double rho0);

bool is_cluster_free(const normalized_config& x, double rho0);

namespace geom {
double dist(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
} // namespace geom

} // namespace fmw
