#include "psc/kasteleyn.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "psc/error.hpp"

namespace psc::kasteleyn {

int arrow_tail(const DecoratedGraph& g, const Orientation& o, int edge_id) {
  auto [a, b] = g.edge_corners(edge_id);
  return o.rev[edge_id] ? b : a;
}

int arrow_head(const DecoratedGraph& g, const Orientation& o, int edge_id) {
  auto [a, b] = g.edge_corners(edge_id);
  return o.rev[edge_id] ? a : b;
}

int face_cw_count(const DecoratedGraph& g, const Orientation& o, int face) {
  const auto& cyc = g.faces()[face].corners;
  int m = (int)cyc.size();
  int cw = 0;
  for (int i = 0; i < m; ++i) {
    int u = cyc[i], v = cyc[(i + 1) % m];
    int e = g.edge_between(u, v);
    require(e >= 0, ErrorCode::ValidationFailed, "face edge missing");
    if (arrow_tail(g, o, e) == v) ++cw;
  }
  return cw;
}

bool check(const DecoratedGraph& g, const Orientation& o) {
  if ((int)o.rev.size() != g.num_edges()) return false;
  for (int f = 0; f < (int)g.faces().size(); ++f) {
    if (g.faces()[f].outer) continue;
    if (face_cw_count(g, o, f) % 2 == 0) return false;
  }
  return true;
}

Orientation find(const DecoratedGraph& g) {
  int nc = g.num_corners();
  int ne = g.num_edges();

  // Primal spanning tree over corners.
  std::vector<uint8_t> in_tree(ne, 0);
  {
    std::vector<int> seen(nc, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    while (!bfs.empty()) {
      int c = bfs.front();
      bfs.pop();
      int q = c / 4, k = c % 4;
      int nb[3] = {4 * q + (k + 3) % 4, 4 * q + (k + 1) % 4, g.link_of(c)};
      for (int w : nb) {
        if (w < 0 || seen[w]) continue;
        seen[w] = 1;
        in_tree[g.edge_between(c, w)] = 1;
        bfs.push(w);
      }
    }
  }

  Orientation o;
  o.rev.assign(ne, 0);

  // Dual tree over faces via the non-tree edges, rooted at the outer face.
  int nf = (int)g.faces().size();
  std::vector<std::vector<std::pair<int, int>>> dual(nf);  // face -> (face, edge)
  for (int e = 0; e < ne; ++e) {
    if (in_tree[e]) continue;
    auto [a, b] = g.edge_corners(e);
    int f1 = g.face_at(a, b), f2 = g.face_at(b, a);
    require(f1 != f2, ErrorCode::ValidationFailed, "non-tree edge is a bridge");
    dual[f1].push_back({f2, e});
    dual[f2].push_back({f1, e});
  }
  std::vector<int> parent_edge(nf, -1), order;
  std::vector<int> seen(nf, 0);
  std::queue<int> bfs;
  bfs.push(g.outer_face());
  seen[g.outer_face()] = 1;
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop();
    order.push_back(f);
    for (auto [f2, e] : dual[f]) {
      if (seen[f2]) continue;
      seen[f2] = 1;
      parent_edge[f2] = e;
      bfs.push(f2);
    }
  }
  require((int)order.size() == nf, ErrorCode::ValidationFailed, "dual graph disconnected");

  // Leaf-to-root: the parent edge is the last free arrow on each face.
  for (int i = nf - 1; i >= 1; --i) {
    int f = order[i];
    int e = parent_edge[f];
    o.rev[e] = 0;
    if (face_cw_count(g, o, f) % 2 == 0) o.rev[e] = 1;
  }
  require(check(g, o), ErrorCode::ValidationFailed, "orientation construction failed");
  return o;
}

void gauge_flip(const DecoratedGraph& g, Orientation& o, int corner) {
  int q = corner / 4, k = corner % 4;
  int nb[3] = {4 * q + (k + 3) % 4, 4 * q + (k + 1) % 4, g.link_of(corner)};
  for (int w : nb)
    if (w >= 0) o.rev[g.edge_between(corner, w)] ^= 1;
}

int wk(const DecoratedGraph& g, const Orientation& o, const std::vector<int>& corners) {
  require(corners.size() >= 2, ErrorCode::InvalidPath, "walk too short");
  int sign = 1;
  for (size_t i = 0; i + 1 < corners.size(); ++i) {
    int e = g.edge_between(corners[i], corners[i + 1]);
    require(e >= 0, ErrorCode::InvalidPath, "walk hops over a non-edge");
    if (arrow_tail(g, o, e) == corners[i + 1]) sign = -sign;
  }
  return sign;
}

Orientation carry(const DecoratedGraph& old_g, const Orientation& old_o,
                  const DecoratedGraph& new_g) {
  std::map<std::pair<int, int>, uint8_t> known;
  for (int e = 0; e < old_g.num_edges(); ++e) {
    auto [a, b] = old_g.edge_corners(e);
    known[{a, b}] = old_o.rev[e];
  }
  int ne = new_g.num_edges();
  Orientation o;
  o.rev.assign(ne, 0);
  std::vector<uint8_t> fresh(ne, 0);
  for (int e = 0; e < ne; ++e) {
    auto it = known.find(new_g.edge_corners(e));
    if (it != known.end())
      o.rev[e] = it->second;
    else
      fresh[e] = 1;
  }
  // Fix fresh edges one at a time against a face whose other edges are known.
  std::vector<uint8_t> pending = fresh;
  int remaining = 0;
  for (uint8_t f : pending) remaining += f;
  while (remaining > 0) {
    bool progress = false;
    for (int e = 0; e < ne; ++e) {
      if (!pending[e]) continue;
      auto [a, b] = new_g.edge_corners(e);
      for (int f : {new_g.face_at(a, b), new_g.face_at(b, a)}) {
        if (new_g.faces()[f].outer) continue;
        const auto& cyc = new_g.faces()[f].corners;
        bool others_known = true;
        for (size_t i = 0; i < cyc.size(); ++i) {
          int e2 = new_g.edge_between(cyc[i], cyc[(i + 1) % cyc.size()]);
          if (e2 != e && pending[e2]) others_known = false;
        }
        if (!others_known) continue;
        o.rev[e] = 0;
        if (face_cw_count(new_g, o, f) % 2 == 0) o.rev[e] = 1;
        pending[e] = 0;
        --remaining;
        progress = true;
        break;
      }
    }
    require(progress, ErrorCode::ValidationFailed, "orientation transport stuck");
  }
  require(check(new_g, o), ErrorCode::ValidationFailed, "orientation transport failed");
  return o;
}

}  // namespace psc::kasteleyn
