#pragma once

#include <vector>

#include "psc/decorated_graph.hpp"

namespace psc::paths {

// Open walks are corner sequences; loops are cyclic corner sequences without
// a repeated closing entry.

bool hop_is_l(const DecoratedGraph& g, int a, int b);

// Every hop is an edge and the first and last hops are l-edges.
bool is_valid(const DecoratedGraph& g, const std::vector<int>& corners);

// Interior vertices whose two incident hops are both l-edges.
int n_ll(const DecoratedGraph& g, const std::vector<int>& corners);
int n_ll_loop(const DecoratedGraph& g, const std::vector<int>& loop);

// Rewrites anti-wedges (apex between opposite corners, taken clockwise) to
// their ccw mirror and three-edge diamond runs to the single l-edge.
// Returns r = +-1 with compile(new) == r * compile(old) and
// wk(new) == r * wk(old).
int canonicalize(const DecoratedGraph& g, std::vector<int>& corners);

// Corner walk for a qubit route. Open lines take explicit endpoint corners
// (unpaired sigma corners); loops take a cyclic qubit sequence. Intra-diamond
// routes are shortest, with ties broken toward ccw wedges.
std::vector<int> lift_line(const DecoratedGraph& g, int corner_a, int corner_b,
                           const std::vector<int>& via_qubit_indices);
std::vector<int> lift_loop(const DecoratedGraph& g, const std::vector<int>& qubit_cycle);

std::vector<int> reversed(const std::vector<int>& corners);

struct Deformation {
  std::vector<int> corners;
  int predicted_wk_ratio;  // wk(old) == ratio * wk(new)
};

// Slide the walk across one face: the maximal arc of the walk lying on the
// face boundary is replaced by the complementary arc.
Deformation deform_across_face(const DecoratedGraph& g, const std::vector<int>& corners,
                               int face);

// Sigma corners strictly inside a simple closed corner loop (geometric).
int enclosed_sigma(const DecoratedGraph& g, const std::vector<int>& loop);

// Equivalence sign of two open lines with shared endpoints: the product over
// sigma corners of the winding parity of the closed curve (gamma followed by
// gamma-prime reversed). Sigma corners on the curve are skipped.
int line_ratio(const DecoratedGraph& g, const std::vector<int>& gamma,
               const std::vector<int>& gamma_prime);

}  // namespace psc::paths
