// Acceptance suite: runs every required property at its pinned tolerance and
// prints one PASS/FAIL line per criterion.  Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "fmw/beta.hpp"
#include "fmw/io.hpp"
#include "fmw/sample.hpp"
#include "tree_oracle.hpp"

using namespace fmw;

namespace {

constexpr double rho0 = 1.0 / 16.0;

struct tally {
    long passed = 0;
    long failed = 0;
    double max_err = 0;

    void count(bool ok, double err = 0.0) {
        if (std::isfinite(err)) max_err = std::max(max_err, err);
        (ok ? passed : failed)++;
    }
};

int g_failures = 0;

void report(int idx, const std::string& name, const tally& t) {
    bool ok = t.failed == 0 && t.passed > 0;
    if (!ok) ++g_failures;
    std::printf("%s  %2d. %s (%ld checks, max error %.3g)\n", ok ? "PASS" : "FAIL", idx,
                name.c_str(), t.passed + t.failed, t.max_err);
    std::fflush(stdout);
}

fm_point regional_sample(rng& r, int n, int k, int trial) {
    if (k == 2) return sample_fm(r, n, k, rho0, region::interior);
    switch (trial % 3) {
        case 0: return sample_fm(r, n, k, rho0, region::interior);
        case 1: return sample_fm(r, n, k, rho0, region::collar);
        default: return sample_fm(r, n, k, rho0, region::boundary);
    }
}

fm_point boundary_sample(rng& r, int n, int k) {
    auto p = sample_fm_free(r, n, k, rho0);
    if (p.tree.num_edges() == 0) return sample_fm(r, n, k, rho0, region::boundary);
    if (!on_boundary(p)) p.edge_u[1 + r.below(p.tree.num_edges())] = 0.0;
    return p;
}

// 1. isomorphism round trip, both directions, 1e-9
void criterion_roundtrip() {
    tally t;
    for (int n = 1; n <= 3; ++n)
        for (int k = 2; k <= 5; ++k) {
            rng r(1000 + 10 * n + k);
            for (int trial = 0; trial < 1000; ++trial) {
                auto p = regional_sample(r, n, k, trial);
                double e1 = approx_error(beta_inverse(beta(p)), p);
                t.count(e1 <= 1e-9, e1);

                auto w = sample_w(r, n, k, rho0);
                double e2 = w_approx_error(beta(beta_inverse(w)), w);
                t.count(e2 <= 1e-9, e2);
            }
        }
    report(1, "isomorphism round trip at 1e-9, n in 1..3, k in 2..5", t);
}

// 2. operad morphism at 1e-10, grafted length exactly 1
void criterion_morphism() {
    tally t;
    for (int n = 1; n <= 3; ++n)
        for (int k1 = 2; k1 <= 3; ++k1)
            for (int k2 = 2; k2 <= 3; ++k2) {
                rng r(2000 + 100 * n + 10 * k1 + k2);
                int kk = k1 + k2 - 1;
                for (int trial = 0; trial < 500; ++trial) {
                    auto x = regional_sample(r, n, k1, trial);
                    auto xbar = regional_sample(r, n, k2, trial + 1);
                    // a random one-edge tree with a child of valence k2
                    std::vector<int> pool(kk);
                    for (int i = 0; i < kk; ++i) pool[i] = i + 1;
                    for (int i = kk - 1; i > 0; --i) std::swap(pool[i], pool[r.below(i + 1)]);
                    std::vector<int> child(pool.begin(), pool.begin() + k2);
                    std::sort(child.begin(), child.end());
                    auto tree = one_edge_tree(kk, child);

                    auto lhs = beta(compose(tree, {x, xbar}));
                    auto rhs = compose(tree, {beta(x), beta(xbar)});
                    double e = w_approx_error(lhs, rhs);
                    bool unit = false;
                    for (int ed = 1; ed < lhs.tree.num_vertices(); ++ed)
                        if (lhs.tree.leaves_under(ed) == child) unit = lhs.length[ed] == 1.0;
                    t.count(e <= 1e-10 && unit, e);
                }
            }
    report(2, "operad morphism at 1e-10 with unit grafted length", t);
}

// 3. equivariance of beta, composition, and collar at 1e-10
void criterion_equivariance() {
    tally t;
    rng r(3000);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + r.below(3), k = 3 + r.below(3);
        auto p = regional_sample(r, n, k, trial);
        auto g = random_group(r, n, k);

        double e1 = w_approx_error(beta(act(g, p)), act(g, beta(p)));
        t.count(e1 <= 1e-10, e1);

        auto tree = random_tree(r, k, true);
        std::vector<fm_point> labels(tree.num_vertices());
        std::vector<w_point> parts(tree.num_vertices());
        for (int v = 0; v < tree.num_vertices(); ++v) {
            labels[v] = regional_sample(r, n, tree.valence(v), trial);
            parts[v] = w_single(regional_sample(r, n, tree.valence(v), trial + 1));
        }
        auto rel = permute_leaves(g.sigma, tree);
        std::vector<fm_point> moved(tree.num_vertices());
        std::vector<w_point> moved_parts(tree.num_vertices());
        for (int v = 0; v < tree.num_vertices(); ++v) {
            group_element gv{permutation(rel.slot_perm[v]), g.q};
            moved[rel.vertex_map[v]] = act(gv, labels[v]);
            moved_parts[rel.vertex_map[v]] = act(gv, parts[v]);
        }
        double e2 = approx_error(act(g, compose(tree, labels)), compose(rel.tree, moved));
        t.count(e2 <= 1e-10, e2);
        double e3 = w_approx_error(act(g, compose(tree, parts)), compose(rel.tree, moved_parts));
        t.count(e3 <= 1e-10, e3);

        auto x = boundary_sample(r, n, k);
        double tc = r.unif(0.0, 2.0);
        double e4 = approx_error(collar_apply(tc, act(g, x)), act(g, collar_apply(tc, x)));
        t.count(e4 <= 1e-10, e4);
    }
    report(3, "equivariance of beta, compositions, and collar at 1e-10", t);
}

// 4. collar exactness
void criterion_collar() {
    tally t;
    rng r(4000);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + r.below(3), k = 3 + r.below(3);
        auto x = boundary_sample(r, n, k);

        double e0 = approx_error(collar_apply(2.0, x), x);
        t.count(e0 <= 1e-15, e0);

        double tc = r.unif(0.0, 2.0);
        auto ci = collar_invert(collar_apply(tc, x));
        if (!ci) {
            t.count(false);
        } else {
            double e1 = std::max(std::abs(ci->t - tc), approx_error(ci->base, x));
            t.count(e1 <= 1e-12, e1);
        }

        auto free_pt = sample_fm_free(r, n, k, rho0);
        auto m = min_u(free_pt);
        bool member = m.has_value() && *m <= 0.5;
        t.count(collar_invert(free_pt).has_value() == member);
    }
    report(4, "collar exactness: identity at 2 (1e-15), inversion (1e-12), membership", t);
}

// 5. seam continuity
void criterion_seams() {
    tally t;
    rng r(5000);
    const double eps = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + r.below(3), k = 3 + r.below(2);
        auto w = boundary_sample(r, n, k);
        double tc = r.unif(1.0, 2.0);

        double e0 = w_approx_error(beta_scale_branch(0.0, w), w_single(collar_apply(0.0, w)));
        t.count(e0 <= 1e-12, e0);

        double e1 = w_approx_error(beta_scale_branch(1.0, w), beta_graft_branch(1.0, w));
        t.count(e1 <= 1e-12, e1);

        auto x0 = collar_apply(0.0, w);
        auto ci = collar_invert(x0);
        double e2 = ci ? w_approx_error(beta_fragment_plain(x0),
                                        beta_fragment_scaled(ci->t, ci->base, tc))
                       : std::numeric_limits<double>::infinity();
        t.count(e2 <= 1e-12, e2);

        double e3 =
            w_approx_error(beta_fragment_scaled(1.0, w, tc), beta_fragment_extended(1.0, w, tc));
        t.count(e3 <= 1e-12, e3);

        // epsilon probes across the collar seams, measured through realization
        auto gap = [](const w_point& a, const w_point& b) {
            return config_dist(realize(beta_inverse(a)), realize(beta_inverse(b)));
        };
        auto wb = sample_fm(r, n, k, rho0, region::boundary);
        double p1 = gap(beta(collar_apply(1.0 - eps, wb)), beta(collar_apply(1.0 + eps, wb)));
        t.count(p1 < 1e-4, p1);

        auto inside = collar_apply(0.0, wb);
        for (int e = 1; e < inside.tree.num_vertices(); ++e)
            inside.edge_u[e] = std::min(inside.edge_u[e] + eps, 1.0 - 1e-12);
        double p0 = gap(beta(collar_apply(eps, wb)), beta(inside));
        t.count(p0 < 1e-4, p0);
    }

    // fragment seams s = 0, 1 probed on 4-leaf points with an arity-3 fragment
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + r.below(3);
        auto t4 = one_edge_tree(4, {1, 2, 3});
        auto frag = compose(one_edge_tree(3, {1, 2}),
                            {interior_point(random_config(r, n, 2, rho0), rho0),
                             interior_point(random_config(r, n, 2, rho0), rho0)});
        auto outer = interior_point(random_config(r, n, 2, rho0), rho0);
        double tc = r.unif(1.2, 1.8);
        auto probe = [&](double u) {
            auto f = frag;
            f.edge_u[1] = u;
            return beta(collar_apply(tc, compose(t4, {outer, f})));
        };
        for (double pivot : {0.25, 0.5}) {
            double d = config_dist(realize(beta_inverse(probe(pivot - eps))),
                                   realize(beta_inverse(probe(pivot + eps))));
            t.count(d < 1e-4, d);
        }
    }
    report(5, "seam agreement at 1e-12 and eps-probes under 1e-4", t);
}

// 6. max-length law at 1e-12
void criterion_max_length() {
    tally t;
    rng r(6000);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + r.below(3), k = 3 + r.below(3);
        auto w = boundary_sample(r, n, k);
        double tc = r.unif(1.0, 2.0);
        if (tc == 1.0) tc = 1.5;
        auto out = beta(collar_apply(tc, w));
        auto ml = max_length(out);
        double e = ml ? std::abs(*ml - (tc - 1.0)) : std::numeric_limits<double>::infinity();
        t.count(e <= 1e-12, e);
    }
    report(6, "max edge length of beta(c(t,w)) equals t-1 at 1e-12", t);
}

// 7. stratification counts against the independent oracle
void criterion_strata() {
    tally t;
    t.count(tree_count_oracle(2) == 1 && (int64_t)enumerate_trees(2).size() == 1);
    t.count(tree_count_oracle(3) == 4 && (int64_t)enumerate_trees(3).size() == 4);
    t.count(tree_count_oracle(4) == 26 && (int64_t)enumerate_trees(4).size() == 26);
    for (int k = 5; k <= 6; ++k)
        t.count((int64_t)enumerate_trees(k).size() == tree_count_oracle(k));
    int codim1 = 0;
    for (const auto& tr : enumerate_trees(3))
        if (tr.num_edges() == 1) ++codim1;
    t.count(codim1 == 3);
    report(7, "stratum counts match the generating-function oracle; 3 faces at k=3", t);
}

// 8. chart round trip at 1e-10
void criterion_chart() {
    tally t;
    rng r(8000);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + r.below(3), k = 3 + r.below(3);
        auto p = sample_fm_chart(r, n, k, rho0);
        double e1 = approx_error(decompose(n, realize(p).data(), rho0), p);
        t.count(e1 <= 1e-10, e1);

        std::vector<double> pts((size_t)n * k);
        for (double& v : pts) v = r.gaussian();
        normalized_config x;
        try {
            x = normalize(n, pts);
        } catch (const std::invalid_argument&) {
            t.count(true);
            continue;
        }
        double e2 = config_dist(realize(decompose(n, x.data(), rho0)), x);
        t.count(e2 <= 1e-10, e2);
    }
    report(8, "chart round trips at 1e-10", t);
}

// 9. the 2-point base case
void criterion_base_case() {
    tally t;
    rng r(9000);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + r.below(3);
        auto p = sample_fm(r, n, 2, rho0, region::interior);
        auto w = beta(p);
        t.count(w.tree.is_corolla() && approx_error(w.label[0], p) == 0.0 &&
                approx_error(beta_inverse(w), p) == 0.0);

        auto v = sphere_param(p.vertex_config[0]);
        double e = std::abs(geom::norm(v) - 1.0);
        t.count(e <= 1e-12, e);

        group_element swap{permutation::transposition(2, 0, 1), ortho_matrix::identity(n)};
        auto nv = sphere_param(act(swap, p.vertex_config[0]));
        bool antipodal = true;
        for (int d = 0; d < n; ++d) antipodal = antipodal && nv[d] == -v[d];
        t.count(antipodal);
    }
    report(9, "arity-2 base case: identity, unit sphere parameter, antipodal action", t);
}

// 10. freeness of the symmetric group action
void criterion_freeness() {
    tally t;
    for (int k = 2; k <= 4; ++k) {
        std::vector<int> base(k);
        for (int i = 0; i < k; ++i) base[i] = i;
        std::vector<permutation> perms;
        std::vector<int> images = base;
        std::sort(images.begin(), images.end());
        do {
            permutation s{std::vector<int>(images)};
            if (!s.is_identity()) perms.push_back(s);
        } while (std::next_permutation(images.begin(), images.end()));

        rng r(10000 + k);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 1 + r.below(3);
            auto p = regional_sample(r, n, k, trial);
            for (const auto& s : perms) {
                group_element g{s, ortho_matrix::identity(n)};
                double d = approx_error(act(g, p), p);
                t.count(d > 1e-6);
            }
        }
    }
    report(10, "the symmetric group acts freely (distance > 1e-6)", t);
}

} // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    criterion_roundtrip();
    criterion_morphism();
    criterion_equivariance();
    criterion_collar();
    criterion_seams();
    criterion_max_length();
    criterion_strata();
    criterion_chart();
    criterion_base_case();
    criterion_freeness();
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::printf("%d of 10 criteria failed in %.1f s\n", g_failures, elapsed.count());
    return g_failures;
}
