#include "fmw/collar.hpp"

#include <stdexcept>

namespace fmw {

fm_point collar_apply(double t, const fm_point& x) {
    if (!(t >= 0.0 && t <= 2.0)) throw std::invalid_argument("collar_apply: t must lie in [0,2]");
    if (!on_boundary(x)) throw std::invalid_argument("collar_apply: point must lie on the boundary");
    fm_point y = x;
    const double f = 0.5 + t / 4.0;
    for (int e = 1; e < y.tree.num_vertices(); ++e) y.edge_u[e] = 1.0 - f * (1.0 - y.edge_u[e]);
    return y;
}

std::optional<collar_coords> collar_invert(const fm_point& y) {
    auto m = min_u(y);
    if (!m || *m > 0.5) return std::nullopt;
    collar_coords c;
    c.t = 2.0 - 4.0 * *m;
    c.base = y;
    for (int e = 1; e < y.tree.num_vertices(); ++e) {
        double u = y.edge_u[e];
        c.base.edge_u[e] = (u == *m) ? 0.0 : (u - *m) / (1.0 - *m);
    }
    return c;
}

} // namespace fmw
