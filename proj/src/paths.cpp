#include "psc/paths.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "psc/error.hpp"
#include "psc/geometry.hpp"

namespace psc::paths {

bool hop_is_l(const DecoratedGraph& g, int a, int b) {
  int e = g.edge_between(a, b);
  require(e >= 0, ErrorCode::InvalidPath, "walk hops over a non-edge");
  return g.is_l_edge(e);
}

bool is_valid(const DecoratedGraph& g, const std::vector<int>& corners) {
  if (corners.size() < 2) return false;
  for (size_t i = 0; i + 1 < corners.size(); ++i)
    if (g.edge_between(corners[i], corners[i + 1]) < 0) return false;
  return hop_is_l(g, corners[0], corners[1]) &&
         hop_is_l(g, corners[corners.size() - 2], corners.back());
}

int n_ll(const DecoratedGraph& g, const std::vector<int>& corners) {
  int n = 0;
  for (size_t i = 1; i + 1 < corners.size(); ++i)
    if (hop_is_l(g, corners[i - 1], corners[i]) && hop_is_l(g, corners[i], corners[i + 1])) ++n;
  return n;
}

int n_ll_loop(const DecoratedGraph& g, const std::vector<int>& loop) {
  int m = (int)loop.size();
  int n = 0;
  for (int i = 0; i < m; ++i)
    if (hop_is_l(g, loop[(i + m - 1) % m], loop[i]) && hop_is_l(g, loop[i], loop[(i + 1) % m]))
      ++n;
  return n;
}

int canonicalize(const DecoratedGraph& g, std::vector<int>& corners) {
  (void)g;  // rewrites are intra-diamond, pure corner arithmetic
  // Shrink three-edge diamond runs (simple arcs only); operator and wk keep.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 3 < corners.size(); ++i) {
      int a = corners[i], b = corners[i + 1], c = corners[i + 2], d = corners[i + 3];
      if (a / 4 != b / 4 || a / 4 != c / 4 || a / 4 != d / 4) continue;
      if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
      corners.erase(corners.begin() + i + 1, corners.begin() + i + 3);
      changed = true;
      break;
    }
  }
  // Flip clockwise wedges; each flip negates both the operator and wk.
  int sign = 1;
  for (size_t i = 1; i + 1 < corners.size(); ++i) {
    int a = corners[i - 1], b = corners[i], c = corners[i + 1];
    if (a / 4 != b / 4 || b / 4 != c / 4) continue;
    if ((c % 4 - a % 4 + 4) % 4 != 2) continue;
    if (b % 4 == (a % 4 + 3) % 4) {
      corners[i] = 4 * (a / 4) + (a % 4 + 1) % 4;
      sign = -sign;
    }
  }
  return sign;
}

namespace {

// Slot of diamond q paired into diamond r.
int slot_toward(const DecoratedGraph& g, int q, int r) {
  for (int k = 0; k < 4; ++k) {
    int p = g.link_of(4 * q + k);
    if (p >= 0 && p / 4 == r) return 4 * q + k;
  }
  fail(ErrorCode::InvalidPath, "route hops over a non-edge");
}

// Shortest intra-diamond route from corner a to corner b, appended after a.
void route_within(std::vector<int>& out, int a, int b) {
  int q = a / 4, ka = a % 4, kb = b % 4;
  int d = (kb - ka + 4) % 4;
  require(d != 0, ErrorCode::InvalidPath, "degenerate intra-diamond route");
  if (d == 2) out.push_back(4 * q + (ka + 1) % 4);  // ccw wedge
  out.push_back(b);
}

}  // namespace

std::vector<int> lift_line(const DecoratedGraph& g, int corner_a, int corner_b,
                           const std::vector<int>& via_qubit_indices) {
  require(g.link_of(corner_a) < 0 && g.link_of(corner_b) < 0, ErrorCode::InvalidPath,
          "line endpoints must be unpaired corners");
  require(corner_a != corner_b, ErrorCode::InvalidPath, "line endpoints coincide");
  std::vector<int> route{corner_a / 4};
  for (int q : via_qubit_indices) route.push_back(q);
  route.push_back(corner_b / 4);

  std::vector<int> corners{corner_a};
  for (size_t i = 0; i + 1 < route.size(); ++i) {
    if (route[i] == route[i + 1]) {
      require(route.size() == 2, ErrorCode::InvalidPath, "route revisits a diamond");
      break;
    }
    int exit = slot_toward(g, route[i], route[i + 1]);
    if (corners.back() != exit) route_within(corners, corners.back(), exit);
    corners.push_back(g.link_of(exit));
  }
  if (corners.back() != corner_b) route_within(corners, corners.back(), corner_b);
  require(is_valid(g, corners), ErrorCode::InvalidPath, "lifted line is not valid");
  return corners;
}

std::vector<int> lift_loop(const DecoratedGraph& g, const std::vector<int>& qubit_cycle) {
  int m = (int)qubit_cycle.size();
  require(m >= 3, ErrorCode::NotALoop, "qubit cycle too short");
  std::vector<int> corners;
  for (int i = 0; i < m; ++i) {
    int prev = qubit_cycle[(i + m - 1) % m];
    int next = qubit_cycle[(i + 1) % m];
    int entry = g.link_of(slot_toward(g, prev, qubit_cycle[i]));
    int exit = slot_toward(g, qubit_cycle[i], next);
    require(entry / 4 == qubit_cycle[i] && entry != exit, ErrorCode::InvalidPath,
            "degenerate loop route");
    corners.push_back(entry);
    std::vector<int> seg{entry};
    route_within(seg, entry, exit);
    corners.insert(corners.end(), seg.begin() + 1, seg.end());
  }
  return corners;
}

std::vector<int> reversed(const std::vector<int>& corners) {
  return {corners.rbegin(), corners.rend()};
}

Deformation deform_across_face(const DecoratedGraph& g, const std::vector<int>& corners,
                               int face) {
  require(!g.faces()[face].outer, ErrorCode::SegmentNotOnFace,
          "cannot deform across the outer face");
  const auto& F = g.faces()[face].corners;
  int m = (int)F.size();
  std::map<int, int> pos;
  for (int i = 0; i < m; ++i) {
    require(pos.insert({F[i], i}).second, ErrorCode::SegmentNotOnFace,
            "face visits a corner twice");
  }
  // Longest run of consecutive hops that follow the face cycle either way.
  int best_i = -1, best_j = -1, best_dir = 0;
  for (size_t i = 0; i + 1 < corners.size(); ++i) {
    auto it = pos.find(corners[i]);
    if (it == pos.end()) continue;
    for (int dir : {1, -1}) {
      size_t j = i;
      int p = it->second;
      while (j + 1 < corners.size()) {
        auto jt = pos.find(corners[j + 1]);
        if (jt == pos.end() || jt->second != (p + dir + m) % m) break;
        p = jt->second;
        ++j;
      }
      if ((int)(j - i) > best_j - best_i) {
        best_i = (int)i;
        best_j = (int)j;
        best_dir = dir;
      }
    }
  }
  require(best_j > best_i && best_i >= 0, ErrorCode::SegmentNotOnFace,
          "walk has no arc on that face");
  require(best_j - best_i < m, ErrorCode::NotALoop, "walk wraps the whole face");

  std::vector<int> arc_new{corners[best_i]};
  int p = pos.at(corners[best_i]);
  while (arc_new.back() != corners[best_j]) {
    p = (p - best_dir + m) % m;
    arc_new.push_back(F[p]);
  }
  Deformation d;
  d.corners.assign(corners.begin(), corners.begin() + best_i);
  d.corners.insert(d.corners.end(), arc_new.begin(), arc_new.end());
  d.corners.insert(d.corners.end(), corners.begin() + best_j + 1, corners.end());
  int verts_old = best_j - best_i + 1;
  int verts_new = (int)arc_new.size();
  d.predicted_wk_ratio = (best_dir == 1) ? ((verts_new - 2) % 2 ? -1 : 1)
                                         : ((verts_old - 2) % 2 ? -1 : 1);
  return d;
}

int enclosed_sigma(const DecoratedGraph& g, const std::vector<int>& loop) {
  std::set<int> seen(loop.begin(), loop.end());
  require(seen.size() == loop.size(), ErrorCode::NonSimpleLoop, "loop repeats a corner");
  std::vector<Vec2> poly;
  for (int c : loop) poly.push_back(g.corner_pos(c));
  int n = 0;
  for (int s : g.sigmas()) {
    if (seen.count(s)) continue;
    bool on = false;
    int w = winding_number(poly, g.corner_pos(s), &on);
    if (!on && w != 0) ++n;
  }
  return n;
}

int line_ratio(const DecoratedGraph& g, const std::vector<int>& gamma,
               const std::vector<int>& gamma_prime) {
  require(gamma.size() >= 2 && gamma_prime.size() >= 2, ErrorCode::InvalidPath, "line too short");
  require(gamma.front() == gamma_prime.front() && gamma.back() == gamma_prime.back(),
          ErrorCode::EndpointMismatch, "lines do not share endpoints");
  std::vector<Vec2> poly;
  for (int c : gamma) poly.push_back(g.corner_pos(c));
  for (size_t i = gamma_prime.size() - 1; i >= 1; --i)
    poly.push_back(g.corner_pos(gamma_prime[i - 1]));
  poly.pop_back();  // shared start appears once
  int prod = 1;
  for (int s : g.sigmas()) {
    bool on = false;
    int w = winding_number(poly, g.corner_pos(s), &on);
    if (on) continue;
    if (w & 1) prod = -prod;
  }
  return prod;
}

}  // namespace psc::paths
