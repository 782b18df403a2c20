#pragma once

#include <set>

#include "fmw/collar.hpp"
#include "fmw/w.hpp"

namespace fmw {

// The isomorphism onto the W-construction, built by induction on arity.
// Piecewise in the collar time t of the input:
//   - no collar coordinates (min u > 1/2, or no edges): the point embeds as a
//     single vertex;
//   - t in [0,1]: single vertex labelled with the collar time doubled;
//   - t in [1,2]: the boundary base splits along its zero edges into interior
//     fragments; each fragment becomes a subtree (see beta_fragment) and the
//     subtrees are grafted along the skeleton with edges of length t-1.
w_point beta(const fm_point& p);

// Exact inverse: cut at the edges of maximum length, undo the fragment cases,
// recompose, and re-apply the collar.
fm_point beta_inverse(const w_point& w);

// Extension of the collar through the W-construction, over [0,3]:
// the collar itself on [0,2], beta after the collar on [2,3].
w_point collar_extend(double t, const fm_point& x);

// The individual branches, exposed so the seam agreements at t = 0, 1 and
// s = 0, 1 can be probed directly.
w_point beta_scale_branch(double t, const fm_point& base);  // t in [0,1]
w_point beta_graft_branch(double t, const fm_point& base);  // t in [1,2]
// same, but splitting along a chosen nonempty subset of the zero edges;
// equality with beta_graft_branch is the decomposition-independence property
w_point beta_graft_branch_split(double t, const fm_point& base, const std::set<int>& skeleton_edges);

// fragment dispatch inside the graft branch, by the fragment's own collar
// time s: none -> plain, s in [0,1] -> scaled, s in (1,2] -> extended
w_point beta_fragment(const fm_point& x, double t);
w_point beta_fragment_plain(const fm_point& x);
w_point beta_fragment_scaled(double s, const fm_point& z, double t);
w_point beta_fragment_extended(double s, const fm_point& z, double t);

} // namespace fmw
