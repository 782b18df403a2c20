#include "fmw/sample.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fmw/collar.hpp"

namespace fmw {

double rng::gaussian() {
    double u1 = 1.0 - unif01();  // (0,1]
    double u2 = unif01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

permutation rng::perm(int k) {
    std::vector<int> im(k);
    for (int i = 0; i < k; ++i) im[i] = i;
    for (int i = k - 1; i > 0; --i) std::swap(im[i], im[below(i + 1)]);
    return permutation(std::move(im));
}

ortho_matrix random_orthogonal(rng& r, int n) {
    while (true) {
        // gram-schmidt on gaussian columns
        std::vector<std::vector<double>> cols(n, std::vector<double>(n));
        for (auto& c : cols)
            for (double& v : c) v = r.gaussian();
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < i; ++j) {
                double dot = 0;
                for (int d = 0; d < n; ++d) dot += cols[i][d] * cols[j][d];
                for (int d = 0; d < n; ++d) cols[i][d] -= dot * cols[j][d];
            }
            double nn = 0;
            for (double v : cols[i]) nn += v * v;
            nn = std::sqrt(nn);
            if (nn < 1e-8) {
                ok = false;
                break;
            }
            for (double& v : cols[i]) v /= nn;
        }
        if (!ok) continue;
        if (r.unif01() < 0.5)  // cover both components of O(n)
            for (int d = 0; d < n; ++d) cols[0][d] = -cols[0][d];
        ortho_matrix q;
        q.n = n;
        q.a.resize((size_t)n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q.a[(size_t)i * n + j] = cols[j][i];
        return q;
    }
}

group_element random_group(rng& r, int n, int m) { return {r.perm(m), random_orthogonal(r, n)}; }

normalized_config random_config(rng& r, int n, int m, double rho0) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<double> pts((size_t)n * m);
        for (double& v : pts) v = r.gaussian();
        normalized_config cfg;
        try {
            cfg = normalize(n, pts);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (is_cluster_free(cfg, rho0)) return cfg;
    }
    throw std::runtime_error("random_config: rejection sampling failed");
}

nested_tree random_tree(rng& r, int k, bool require_non_corolla) {
    static std::map<int, std::vector<nested_tree>> table;
    static std::mutex mtx;
    const std::vector<nested_tree>* trees;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = table.find(k);
        if (it == table.end()) it = table.emplace(k, enumerate_trees(k)).first;
        trees = &it->second;
    }
    if (require_non_corolla && trees->size() < 2)
        throw std::invalid_argument("random_tree: no non-corolla tree at this arity");
    // trees are sorted by edge count, so index 0 is the corolla
    int lo = require_non_corolla ? 1 : 0;
    return (*trees)[lo + r.below((int)trees->size() - lo)];
}

fm_point sample_fm(rng& r, int n, int k, double rho0, region reg) {
    if (k < 2) throw std::invalid_argument("sample_fm: arity must be >= 2");
    if (reg != region::interior && k == 2)
        throw std::invalid_argument("sample_fm: no boundary strata at arity 2");
    switch (reg) {
        case region::interior:
            return interior_point(random_config(r, n, k, rho0), rho0);
        case region::boundary: {
            nested_tree t = random_tree(r, k, true);
            std::vector<fm_point> labels(t.num_vertices());
            for (int v = 0; v < t.num_vertices(); ++v) {
                int a = t.valence(v);
                region sub = region::interior;
                if (a >= 3) {
                    int roll = r.below(4);
                    if (roll == 2) sub = region::collar;
                    if (roll == 3) sub = region::boundary;
                }
                labels[v] = sample_fm(r, n, a, rho0, sub);
            }
            return compose(t, labels);
        }
        case region::collar:
            return collar_apply(r.unif(0.0, 2.0), sample_fm(r, n, k, rho0, region::boundary));
    }
    throw std::invalid_argument("sample_fm: unsupported region");
}

fm_point sample_fm(int n, int k, uint64_t seed, region reg, double rho0) {
    rng r(seed);
    return sample_fm(r, n, k, rho0, reg);
}

fm_point sample_fm_free(rng& r, int n, int k, double rho0) {
    nested_tree t = random_tree(r, k, false);
    fm_point p;
    p.n = n;
    p.rho0 = rho0;
    p.tree = t;
    p.vertex_config.resize(t.num_vertices());
    p.edge_u.assign(t.num_vertices(), 0.0);
    for (int v = 0; v < t.num_vertices(); ++v)
        p.vertex_config[v] = random_config(r, n, t.valence(v), rho0);
    for (int e = 1; e < t.num_vertices(); ++e)
        p.edge_u[e] = r.below(4) == 0 ? 0.0 : r.unif(0.02, 0.97);
    return p;
}

fm_point sample_fm_chart(rng& r, int n, int k, double rho0) {
    auto p = sample_fm_free(r, n, k, rho0);
    for (int e = 1; e < p.tree.num_vertices(); ++e) p.edge_u[e] = r.unif(0.2, 0.9);
    return p;
}

w_point sample_w(rng& r, int n, int k, double rho0) {
    nested_tree t = random_tree(r, k, false);
    w_point w;
    w.n = n;
    w.rho0 = rho0;
    w.tree = t;
    w.label.resize(t.num_vertices());
    w.length.assign(t.num_vertices(), 0.0);
    for (int v = 0; v < t.num_vertices(); ++v)
        w.label[v] = sample_fm_free(r, n, t.valence(v), rho0);
    for (int e = 1; e < t.num_vertices(); ++e)
        w.length[e] = r.below(4) == 0 ? 1.0 : r.unif(0.02, 1.0);
    return w;
}

} // namespace fmw
