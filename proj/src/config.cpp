#include "fmw/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fmw {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}

namespace geom {

double dist(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(std::span<const double> a) {
    double s = 0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

} // namespace geom

ortho_matrix ortho_matrix::identity(int n) {
    ortho_matrix q;
    q.n = n;
    q.a.assign((size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i) q.a[(size_t)i * n + i] = 1.0;
    return q;
}

void ortho_matrix::apply(std::span<const double> x, std::span<double> out) const {
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += at(i, j) * x[j];
        out[i] = s;
    }
}

ortho_matrix ortho_matrix::transpose() const {
    ortho_matrix t;
    t.n = n;
    t.a.resize(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.a[(size_t)j * n + i] = at(i, j);
    return t;
}

double ortho_matrix::orthogonality_defect() const {
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int r = 0; r < n; ++r) s += at(r, i) * at(r, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

ortho_matrix multiply(const ortho_matrix& p, const ortho_matrix& q) {
    if (p.n != q.n) fail("ortho_matrix: dimension mismatch");
    ortho_matrix r;
    r.n = p.n;
    r.a.assign((size_t)p.n * p.n, 0.0);
    for (int i = 0; i < p.n; ++i)
        for (int r2 = 0; r2 < p.n; ++r2) {
            double v = p.at(i, r2);
            for (int j = 0; j < p.n; ++j) r.a[(size_t)i * p.n + j] += v * q.at(r2, j);
        }
    return r;
}

bool is_orthogonal(const ortho_matrix& q, double tol) {
    return q.n >= 1 && (int)q.a.size() == q.n * q.n && q.orthogonality_defect() <= tol;
}

group_element group_identity(int n, int m) {
    return {permutation::identity(m), ortho_matrix::identity(n)};
}

group_element group_multiply(const group_element& g, const group_element& h) {
    return {compose(g.sigma, h.sigma), multiply(g.q, h.q)};
}

normalized_config normalized_config::unchecked(int n, std::vector<double> flat) {
    normalized_config c;
    c.n_ = n;
    c.m_ = n > 0 ? (int)(flat.size() / n) : 0;
    c.pts_ = std::move(flat);
    return c;
}

void validate(const normalized_config& x, double tol) {
    if (x.dim() < 1) fail("config: dimension must be >= 1");
    if (x.count() < 2) fail("config: needs at least 2 points");
    if ((int)x.data().size() != x.dim() * x.count()) fail("config: malformed point data");
    std::vector<double> cent(x.dim(), 0.0);
    double maxn = 0;
    for (int i = 0; i < x.count(); ++i) {
        auto p = x.point(i);
        for (int j = 0; j < x.dim(); ++j) cent[j] += p[j];
        maxn = std::max(maxn, geom::norm(p));
    }
    for (int j = 0; j < x.dim(); ++j)
        if (std::abs(cent[j] / x.count()) > tol) fail("config: centroid-not-zero");
    if (std::abs(maxn - 1.0) > tol) fail("config: max-norm-not-one");
    for (int i = 0; i < x.count(); ++i)
        for (int j = i + 1; j < x.count(); ++j)
            if (geom::dist(x.point(i), x.point(j)) == 0.0) fail("config: coincident-points");
}

normalize_info normalize_with_info(int n, const std::vector<double>& flat) {
    if (n < 1) fail("normalize: dimension must be >= 1");
    if (flat.size() % n != 0) fail("normalize: malformed point data");
    const int m = (int)(flat.size() / n);
    if (m < 2) fail("normalize: needs at least 2 points");

    // one centering pass; writes the applied center and scale
    auto pass = [&](std::vector<double>& pts, std::vector<double>& c, double& s) {
        c.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) c[j] += pts[(size_t)i * n + j];
        for (int j = 0; j < n; ++j) c[j] /= m;
        s = 0;
        for (int i = 0; i < m; ++i) {
            double nn = 0;
            for (int j = 0; j < n; ++j) {
                double v = pts[(size_t)i * n + j] - c[j];
                pts[(size_t)i * n + j] = v;
                nn += v * v;
            }
            s = std::max(s, std::sqrt(nn));
        }
        if (s == 0.0) fail("normalize: coincident-points");
        for (double& v : pts) v /= s;
    };

    // a tightly clustered input amplifies the centering round-off by 1/scale,
    // so run a second pass on the order-one output; composed map is
    // p -> (p - (c1 + s1 c2)) / (s1 s2)
    std::vector<double> out = flat;
    std::vector<double> c1, c2;
    double s1 = 0, s2 = 0;
    pass(out, c1, s1);
    pass(out, c2, s2);
    std::vector<double> cent(n);
    for (int j = 0; j < n; ++j) cent[j] = c1[j] + s1 * c2[j];

    auto cfg = normalized_config::unchecked(n, std::move(out));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (geom::dist(cfg.point(i), cfg.point(j)) == 0.0) fail("normalize: coincident-points");
    return {std::move(cfg), std::move(cent), s1 * s2};
}

normalized_config normalize(int n, const std::vector<double>& flat) {
    return normalize_with_info(n, flat).cfg;
}

normalized_config act(const group_element& g, const normalized_config& x) {
    if (g.sigma.size() != x.count()) fail("act: permutation size must equal point count");
    if (g.q.n != x.dim()) fail("act: matrix dimension must equal config dimension");
    if (!is_orthogonal(g.q)) fail("act: matrix not orthogonal");
    permutation inv = g.sigma.inverse();
    std::vector<double> out((size_t)x.count() * x.dim());
    for (int i = 0; i < x.count(); ++i)
        g.q.apply(x.point(inv(i)), {out.data() + (size_t)i * x.dim(), (size_t)x.dim()});
    return normalized_config::unchecked(x.dim(), std::move(out));
}

double config_dist(const normalized_config& x, const normalized_config& y) {
    if (x.dim() != y.dim() || x.count() != y.count()) fail("config_dist: shape mismatch");
    double d = 0;
    for (int i = 0; i < x.count(); ++i) d = std::max(d, geom::dist(x.point(i), y.point(i)));
    return d;
}

std::vector<double> sphere_param(const normalized_config& x) {
    if (x.count() != 2) fail("sphere_param: config must have exactly 2 points");
    std::vector<double> u(x.dim());
    auto p1 = x.point(0), p2 = x.point(1);
    for (int j = 0; j < x.dim(); ++j) u[j] = p2[j] - p1[j];
    double nn = geom::norm(u);
    for (double& v : u) v /= nn;
    return u;
}

std::vector<std::vector<int>> linkage_nodes(const normalized_config& x) {
    const int m = x.count();
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < m; ++i) clusters.push_back({i});
    std::vector<std::vector<int>> nodes;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        size_t ba = 0, bb = 1;
        for (size_t a = 0; a < clusters.size(); ++a)
            for (size_t b = a + 1; b < clusters.size(); ++b) {
                double d = std::numeric_limits<double>::infinity();
                for (int i : clusters[a])
                    for (int j : clusters[b]) d = std::min(d, geom::dist(x.point(i), x.point(j)));
                if (d < best) {
                    best = d;
                    ba = a;
                    bb = b;
                }
            }
        std::vector<int> merged = clusters[ba];
        merged.insert(merged.end(), clusters[bb].begin(), clusters[bb].end());
        std::sort(merged.begin(), merged.end());
        clusters.erase(clusters.begin() + bb);
        clusters.erase(clusters.begin() + ba);
        clusters.push_back(merged);
        std::sort(clusters.begin(), clusters.end());
        nodes.push_back(std::move(merged));
    }
    return nodes;
}

namespace {

// maxnorm(S - cent) < rho0 * dist(cent, nearest point outside S)
bool passes_cluster_test(const normalized_config& x, const std::vector<int>& s, double rho0) {
    const int n = x.dim();
    std::vector<double> cent(n, 0.0);
    for (int i : s)
        for (int j = 0; j < n; ++j) cent[j] += x.point(i)[j];
    for (int j = 0; j < n; ++j) cent[j] /= s.size();
    double spread = 0;
    for (int i : s) spread = std::max(spread, geom::dist(x.point(i), cent));
    std::vector<char> inside(x.count(), 0);
    for (int i : s) inside[i] = 1;
    double outside = std::numeric_limits<double>::infinity();
    for (int i = 0; i < x.count(); ++i)
        if (!inside[i]) outside = std::min(outside, geom::dist(x.point(i), cent));
    return spread < rho0 * outside;
}

void check_rho0(double rho0) {
    if (!(rho0 > 0.0 && rho0 < 0.125)) fail("cluster test: rho0 must lie in (0, 1/8)");
}

} // namespace

std::vector<std::vector<int>> detect_clusters(const normalized_config& x, double rho0) {
    check_rho0(rho0);
    auto nodes = linkage_nodes(x);
    std::vector<std::vector<int>> passing;
    for (auto& s : nodes)
        if ((int)s.size() < x.count() && passes_cluster_test(x, s, rho0)) passing.push_back(std::move(s));
    // dendrogram nodes are laminar; keep the maximal passing ones
    std::vector<std::vector<int>> maximal;
    for (size_t i = 0; i < passing.size(); ++i) {
        bool covered = false;
        for (size_t j = 0; j < passing.size() && !covered; ++j) {
            if (i == j || passing[j].size() < passing[i].size()) continue;
            covered = std::includes(passing[j].begin(), passing[j].end(), passing[i].begin(),
                                    passing[i].end()) &&
                      passing[j].size() > passing[i].size();
        }
        if (!covered) maximal.push_back(passing[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

bool is_cluster_free(const normalized_config& x, double rho0) {
    check_rho0(rho0);
    auto nodes = linkage_nodes(x);
    for (const auto& s : nodes)
        if ((int)s.size() < x.count() && passes_cluster_test(x, s, rho0)) return false;
    return true;
}

} // namespace fmw
