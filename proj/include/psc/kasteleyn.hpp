#pragma once

#include <cstdint>
#include <vector>

#include "psc/decorated_graph.hpp"

namespace psc {

// An arrow per decorated edge. rev[e] == 0 means the arrow runs from
// edge_corners(e).first to .second, rev[e] == 1 the other way.
struct Orientation {
  std::vector<uint8_t> rev;
};

namespace kasteleyn {

int arrow_tail(const DecoratedGraph& g, const Orientation& o, int edge_id);
int arrow_head(const DecoratedGraph& g, const Orientation& o, int edge_id);

// Number of boundary edges directed against the ccw traversal of a face.
int face_cw_count(const DecoratedGraph& g, const Orientation& o, int face);

// True iff every interior face (diamonds included) has odd cw count.
bool check(const DecoratedGraph& g, const Orientation& o);

// Construct an admissible orientation (primal spanning tree, then fix faces
// leaf-to-root along the dual tree rooted at the outer face).
Orientation find(const DecoratedGraph& g);

// Flip all arrows at one corner. Preserves admissibility.
void gauge_flip(const DecoratedGraph& g, Orientation& o, int corner);

// Product over the walk: -1 per hop against an arrow, +1 along it.
int wk(const DecoratedGraph& g, const Orientation& o, const std::vector<int>& corners);

// Transport an orientation across a surgery: surviving edges (same corner
// pair) keep their arrows, fresh edges are oriented to restore admissibility.
Orientation carry(const DecoratedGraph& old_g, const Orientation& old_o,
                  const DecoratedGraph& new_g);

}  // namespace kasteleyn
}  // namespace psc
