#include "psc/surface_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "psc/error.hpp"

namespace psc {

int SurfaceGraph::index_of(int id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return (int)(it - ids_.begin());
}

bool SurfaceGraph::edge_exists(int a, int b) const {
  std::pair<int, int> e{std::min(a, b), std::max(a, b)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

SurfaceGraph SurfaceGraph::build(const GraphSpec& spec) {
  SurfaceGraph g;
  require(!spec.qubits.empty(), ErrorCode::UnsupportedGeometry, "no qubits");
  std::vector<std::pair<int, Vec2>> qs = spec.qubits;
  std::sort(qs.begin(), qs.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < qs.size(); ++i)
    require(qs[i].first != qs[i + 1].first, ErrorCode::ValidationFailed,
            "duplicate qubit id " + std::to_string(qs[i].first));
  for (auto& [id, p] : qs) {
    g.ids_.push_back(id);
    g.pos_.push_back(p);
  }
  int n = g.num_qubits();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(norm(g.pos_[i] - g.pos_[j]) > kGeomEps, ErrorCode::NonPlanarEmbedding,
              "coincident qubit positions");

  std::set<std::pair<int, int>> eset;
  for (auto& [a, b] : spec.edges) {
    int ia = g.index_of(a), ib = g.index_of(b);
    require(ia >= 0 && ib >= 0, ErrorCode::ValidationFailed, "edge references unknown qubit");
    require(ia != ib, ErrorCode::BadDegree, "self edge");
    auto e = std::minmax(ia, ib);
    require(eset.insert({e.first, e.second}).second, ErrorCode::AngleTie,
            "parallel edge " + std::to_string(a) + "-" + std::to_string(b));
  }
  g.edges_.assign(eset.begin(), eset.end());

  // Straight-line planarity: no two edges cross except at shared endpoints.
  for (size_t i = 0; i < g.edges_.size(); ++i)
    for (size_t j = i + 1; j < g.edges_.size(); ++j) {
      auto [a, b] = g.edges_[i];
      auto [c, d] = g.edges_[j];
      if (a == c || a == d || b == c || b == d) continue;
      require(!segments_cross(g.pos_[a], g.pos_[b], g.pos_[c], g.pos_[d]),
              ErrorCode::NonPlanarEmbedding, "edges cross in the embedding");
    }

  // Rotation system from ccw angle sort; reject angle ties.
  g.rot_.assign(n, {});
  for (auto& [a, b] : g.edges_) {
    g.rot_[a].push_back(b);
    g.rot_[b].push_back(a);
  }
  for (int v = 0; v < n; ++v) {
    int d = (int)g.rot_[v].size();
    require(d >= 2 && d <= 4, ErrorCode::BadDegree,
            "qubit " + std::to_string(g.ids_[v]) + " has degree " + std::to_string(d));
    std::sort(g.rot_[v].begin(), g.rot_[v].end(), [&](int p, int q) {
      return angle_of(g.pos_[p] - g.pos_[v]) < angle_of(g.pos_[q] - g.pos_[v]);
    });
    for (int k = 0; k < d; ++k) {
      double a0 = angle_of(g.pos_[g.rot_[v][k]] - g.pos_[v]);
      double a1 = angle_of(g.pos_[g.rot_[v][(k + 1) % d]] - g.pos_[v]);
      double gap = a1 - a0;
      if (k + 1 == d) gap += 2.0 * M_PI;
      require(gap > kGeomEps, ErrorCode::AngleTie,
              "tied edge angles at qubit " + std::to_string(g.ids_[v]));
    }
  }

  // Connectivity.
  std::vector<int> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.rot_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        stack.push_back(w);
      }
  }
  require(cnt == n, ErrorCode::UnsupportedGeometry, "graph not connected");

  g.trace_faces();
  g.check_euler();
  require(g.counting_law_holds(), ErrorCode::ValidationFailed, "counting law violated");
  return g;
}

void SurfaceGraph::trace_faces() {
  faces_.clear();
  int n = num_qubits();
  // dart (v, k): the directed edge v -> rot_[v][k]
  std::map<std::pair<int, int>, int> dart_face;
  auto rot_index = [&](int v, int w) {
    for (int k = 0; k < (int)rot_[v].size(); ++k)
      if (rot_[v][k] == w) return k;
    return -1;
  };
  for (int v0 = 0; v0 < n; ++v0) {
    for (int k0 = 0; k0 < (int)rot_[v0].size(); ++k0) {
      if (dart_face.count({v0, k0})) continue;
      Face f;
      int fi = (int)faces_.size();
      int v = v0, k = k0;
      do {
        dart_face[{v, k}] = fi;
        int w = rot_[v][k];
        f.cycle.push_back(v);
        // Arriving at w via (v -> w): continue with the dart just before
        // (w -> v) in w's ccw rotation.
        int back = rot_index(w, v);
        int d = (int)rot_[w].size();
        int nk = (back + d - 1) % d;
        v = w;
        k = nk;
      } while (!(v == v0 && k == k0));
      std::vector<Vec2> poly;
      for (int u : f.cycle) poly.push_back(pos_[u]);
      f.area2 = signed_area2(poly);
      for (size_t i = 0; i < f.cycle.size(); ++i)
        f.circumference += norm(pos_[f.cycle[i]] - pos_[f.cycle[(i + 1) % f.cycle.size()]]);
      std::vector<int> q;
      for (int u : f.cycle) q.push_back(ids_[u]);
      std::sort(q.begin(), q.end());
      q.erase(std::unique(q.begin(), q.end()), q.end());
      std::string key;
      for (size_t i = 0; i < q.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(q[i]);
      }
      f.key = key;
      faces_.push_back(std::move(f));
    }
  }
  // Outer face: the unique negative-signed-area cycle of the embedding.
  outer_ = -1;
  int negatives = 0;
  for (int i = 0; i < (int)faces_.size(); ++i)
    if (faces_[i].area2 < 0) {
      ++negatives;
      outer_ = i;
    }
  require(negatives == 1, ErrorCode::NonPlanarEmbedding, "expected one outer face");
  faces_[outer_].outer = true;
}

void SurfaceGraph::check_euler() const {
  int v = num_qubits();
  int e = (int)edges_.size();
  int f = (int)faces_.size();
  require(v - e + f == 2, ErrorCode::NonPlanarEmbedding, "Euler check failed");
}

int SurfaceGraph::num_stabilizers() const { return (int)faces_.size() - 1; }

int SurfaceGraph::num_sigma() const {
  int s = 0;
  for (int v = 0; v < num_qubits(); ++v) {
    if (degree(v) == 2) s += 2;
    if (degree(v) == 3) s += 1;
  }
  return s;
}

bool SurfaceGraph::counting_law_holds() const {
  return num_qubits() - num_stabilizers() == num_sigma() / 2 - 1;
}

GraphSpec SurfaceGraph::parse(const std::string& text) {
  GraphSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "qubit") {
      int id;
      double x, y;
      require(bool(ls >> id >> x >> y), ErrorCode::ValidationFailed,
              "bad qubit line " + std::to_string(lineno));
      spec.qubits.push_back({id, {x, y}});
    } else if (tok == "edge") {
      int a, b;
      require(bool(ls >> a >> b), ErrorCode::ValidationFailed,
              "bad edge line " + std::to_string(lineno));
      spec.edges.push_back({a, b});
    } else {
      fail(ErrorCode::ValidationFailed, "unknown directive '" + tok + "' at line " + std::to_string(lineno));
    }
  }
  return spec;
}

SurfaceGraph SurfaceGraph::load(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorCode::ValidationFailed, "cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return build(parse(ss.str()));
}

std::string SurfaceGraph::serialize() const {
  std::ostringstream out;
  for (int i = 0; i < num_qubits(); ++i) {
    out << "qubit " << ids_[i] << " " << pos_[i].x << " " << pos_[i].y << "\n";
  }
  std::vector<std::pair<int, int>> es;
  for (auto& [a, b] : edges_) {
    int ia = ids_[a], ib = ids_[b];
    es.push_back({std::min(ia, ib), std::max(ia, ib)});
  }
  std::sort(es.begin(), es.end());
  for (auto& [a, b] : es) out << "edge " << a << " " << b << "\n";
  return out.str();
}

}  // namespace psc
