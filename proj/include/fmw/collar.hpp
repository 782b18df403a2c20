#pragma once

#include <optional>

#include "fmw/fm.hpp"

namespace fmw {

// Equivariant collar of the boundary, parametrised over [0,2] with the
// boundary at t = 2.  In edge coordinates it rescales every edge at once:
//     u' = 1 - (1/2 + t/4) (1 - u)
// so zero edges move to 1/2 - t/4 and the map is the identity at t = 2.
fm_point collar_apply(double t, const fm_point& x);

struct collar_coords {
    double t = 0;
    fm_point base;  // on the boundary: zero u on every edge attaining the min
};

// Exact inverse.  A point lies in the collar image iff it has an internal
// edge with u <= 1/2; then t = 2 - 4*min(u), edges attaining the min drop to
// 0 and the rest rescale as u -> (u - m)/(1 - m).
std::optional<collar_coords> collar_invert(const fm_point& y);

} // namespace fmw
