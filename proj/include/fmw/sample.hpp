#pragma once

#include <cstdint>
#include <random>

#include "fmw/fm.hpp"
#include "fmw/w.hpp"

namespace fmw {

inline constexpr double default_rho0 = 1.0 / 16.0;

// Deterministic random source.  Raw draws come from std::mt19937_64 (fully
// specified by the standard); all derived values are computed here rather
// than through std distributions, so identical seeds give identical streams
// on every platform.
class rng {
public:
    explicit rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    double unif01() { return (double)(next() >> 11) * 0x1.0p-53; }  // [0,1)
    double unif(double a, double b) { return a + (b - a) * unif01(); }
    double gaussian();
    int below(int m) { return (int)(next() % (uint64_t)m); }
    permutation perm(int k);

private:
    std::mt19937_64 eng_;
};

ortho_matrix random_orthogonal(rng& r, int n);
group_element random_group(rng& r, int n, int m);

// cluster-free configuration by rejection from gaussian draws
normalized_config random_config(rng& r, int n, int m, double rho0);

nested_tree random_tree(rng& r, int k, bool require_non_corolla);

enum class region { interior, collar, boundary };

// interior: a cluster-free corolla point.  boundary: composition of sampled
// labels along a random non-corolla tree (some u = 0).  collar: a boundary
// sample pushed inward at a random time t in [0,2).
fm_point sample_fm(rng& r, int n, int k, double rho0, region reg);
fm_point sample_fm(int n, int k, uint64_t seed, region reg, double rho0 = default_rho0);

// unconstrained valid point: random tree, configurations, and edge
// parameters mixing exact zeros with values spread over (0,1)
fm_point sample_fm_free(rng& r, int n, int k, double rho0);

// interior point conditioned for chart probes: u in [0.2, 0.9], where
// inserted clusters are always detectable (u < 1 - rho0 with margin) and the
// insertion scales keep the recovered data well above rounding noise
fm_point sample_fm_chart(rng& r, int n, int k, double rho0);

// random tree with arbitrary labels and lengths in (0,1], some exactly 1
w_point sample_w(rng& r, int n, int k, double rho0);

} // namespace fmw
