#include "psc/decorated_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "psc/error.hpp"

namespace psc {

namespace {
constexpr uint64_t kFnvOffset = 14695981039346656037ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = kFnvOffset;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= kFnvPrime;
  }
  return h;
}
}  // namespace

int DecoratedGraph::qubit_index_of_id(int id) const {
  auto it = std::lower_bound(qubit_ids_.begin(), qubit_ids_.end(), id);
  if (it == qubit_ids_.end() || *it != id) return -1;
  return (int)(it - qubit_ids_.begin());
}

std::vector<int> DecoratedGraph::sigmas() const {
  std::vector<int> s;
  for (int c = 0; c < num_corners(); ++c)
    if (link_of_[c] < 0) s.push_back(c);
  return s;
}

int DecoratedGraph::num_sigma() const { return (int)sigmas().size(); }

int DecoratedGraph::degree(int q) const {
  int d = 0;
  for (int k = 0; k < 4; ++k)
    if (link_of_[4 * q + k] >= 0) ++d;
  return d;
}

bool DecoratedGraph::g_edge_exists(int qa, int qb) const {
  for (int k = 0; k < 4; ++k) {
    int p = link_of_[4 * qa + k];
    if (p >= 0 && p / 4 == qb) return true;
  }
  return false;
}

int DecoratedGraph::corner_by_compass(int q, char compass) const {
  double target;
  switch (compass) {
    case 'E': target = 0.0; break;
    case 'N': target = M_PI / 2; break;
    case 'W': target = M_PI; break;
    case 'S': target = 3 * M_PI / 2; break;
    default: fail(ErrorCode::SlotMissing, std::string("bad compass '") + compass + "'");
  }
  for (int k = 0; k < 4; ++k) {
    double a = angle_of(corner_dir_[4 * q + k]);
    double d = std::abs(a - target);
    if (d > M_PI) d = 2 * M_PI - d;
    if (d < M_PI / 12) return 4 * q + k;
  }
  fail(ErrorCode::SlotMissing, std::string("no ") + compass + " corner on qubit " +
                                   std::to_string(qubit_ids_[q]));
}

std::pair<int, int> DecoratedGraph::edge_corners(int edge_id) const {
  if (is_l_edge(edge_id)) {
    int q = edge_id / 4, k = edge_id % 4;
    return {4 * q + k, 4 * q + (k + 1) % 4};
  }
  return links_[edge_id - 4 * nq_];
}

int DecoratedGraph::edge_between(int ca, int cb) const {
  if (ca / 4 == cb / 4) {
    int q = ca / 4, ka = ca % 4, kb = cb % 4;
    if ((ka + 1) % 4 == kb) return 4 * q + ka;
    if ((kb + 1) % 4 == ka) return 4 * q + kb;
    return -1;
  }
  if (link_of_[ca] != cb) return -1;
  std::pair<int, int> key{std::min(ca, cb), std::max(ca, cb)};
  auto it = std::lower_bound(links_.begin(), links_.end(), key);
  return 4 * nq_ + (int)(it - links_.begin());
}

int DecoratedGraph::dart_id(int c_from, int c_to) const {
  int q = c_from / 4, k = c_from % 4;
  if (c_to / 4 == q) {
    if (c_to % 4 == (k + 3) % 4) return 3 * c_from + 0;
    if (c_to % 4 == (k + 1) % 4) return 3 * c_from + 2;
    return -1;
  }
  if (link_of_[c_from] == c_to) return 3 * c_from + 1;
  return -1;
}

int DecoratedGraph::face_at(int c_from, int c_to) const {
  int d = dart_id(c_from, c_to);
  require(d >= 0, ErrorCode::ValidationFailed, "no such dart");
  return dart_face_[d];
}

int DecoratedGraph::big_face_at(int c) const {
  require(link_of_[c] < 0, ErrorCode::ValidationFailed, "big_face_at expects an unpaired corner");
  int q = c / 4, k = c % 4;
  return face_at(c, 4 * q + (k + 3) % 4);
}

std::vector<int> DecoratedGraph::stabilizer_faces() const {
  std::vector<int> out;
  for (int i = 0; i < (int)faces_.size(); ++i)
    if (!faces_[i].diamond && !faces_[i].outer) out.push_back(i);
  return out;
}

int DecoratedGraph::face_by_key(const std::string& key) const {
  for (int i = 0; i < (int)faces_.size(); ++i)
    if (faces_[i].key == key) return i;
  return -1;
}

int DecoratedGraph::enclosing_plaquette(int sigma_corner) const {
  int f = big_face_at(sigma_corner);
  return faces_[f].outer ? -1 : f;
}

int DecoratedGraph::num_stabilizers() const { return (int)stabilizer_faces().size(); }

void DecoratedGraph::check_euler() const {
  int v = num_corners();
  int e = num_edges();
  int f = (int)faces_.size();
  require(v - e + f == 2, ErrorCode::NonPlanarEmbedding, "decorated Euler check failed");
}

bool DecoratedGraph::counting_law_holds() const {
  return nq_ - num_stabilizers() == num_sigma() / 2 - 1;
}

DecoratedGraph DecoratedGraph::decorate(const SurfaceGraph& sg) {
  DecoratedGraph dg;
  dg.nq_ = sg.num_qubits();
  for (int q = 0; q < dg.nq_; ++q) {
    dg.qubit_ids_.push_back(sg.qubit_id(q));
    dg.qubit_pos_.push_back(sg.pos(q));
  }
  dg.corner_dir_.assign(4 * dg.nq_, Vec2{});
  dg.link_of_.assign(4 * dg.nq_, -1);

  double min_edge = 1e300;
  for (auto& [a, b] : sg.edges()) min_edge = std::min(min_edge, norm(sg.pos(a) - sg.pos(b)));
  dg.delta_ = 0.25 * min_edge;

  // Slot angles: one per incident edge, plus gap bisectors up to four.
  std::vector<std::map<int, int>> slot_of_neighbor(dg.nq_);
  for (int q = 0; q < dg.nq_; ++q) {
    std::vector<double> edge_angles;
    for (int w : sg.rotation(q)) edge_angles.push_back(angle_of(sg.pos(w) - sg.pos(q)));
    std::vector<double> slots = edge_angles;
    int d = (int)edge_angles.size();
    if (d < 4) {
      // Gap sizes between consecutive edge angles (cyclic, ccw order).
      std::vector<std::pair<double, double>> gaps;  // (size, start)
      for (int k = 0; k < d; ++k) {
        double a0 = edge_angles[k];
        double a1 = edge_angles[(k + 1) % d] + (k + 1 == d ? 2 * M_PI : 0.0);
        gaps.push_back({a1 - a0, a0});
      }
      if (d == 2) {
        for (auto& [size, start] : gaps) slots.push_back(std::fmod(start + size / 2, 2 * M_PI));
      } else {  // d == 3: bisect the largest gap; ties broken by smallest start
        std::sort(gaps.begin(), gaps.end(), [](auto& a, auto& b) {
          if (a.first != b.first) return a.first > b.first;
          return a.second < b.second;
        });
        slots.push_back(std::fmod(gaps[0].second + gaps[0].first / 2, 2 * M_PI));
      }
    }
    std::sort(slots.begin(), slots.end());
    for (int k = 0; k < 4; ++k) dg.corner_dir_[4 * q + k] = unit_from_angle(slots[k]);
    for (int e = 0; e < d; ++e) {
      int slot = -1;
      for (int k = 0; k < 4; ++k)
        if (std::abs(slots[k] - edge_angles[e]) < 1e-12) slot = k;
      require(slot >= 0, ErrorCode::SlotMissing, "edge slot not found");
      slot_of_neighbor[q][sg.rotation(q)[e]] = slot;
    }
  }
  for (auto& [a, b] : sg.edges()) {
    int ca = 4 * a + slot_of_neighbor[a].at(b);
    int cb = 4 * b + slot_of_neighbor[b].at(a);
    dg.link_of_[ca] = cb;
    dg.link_of_[cb] = ca;
  }

  dg.rebuild_links();
  dg.retrace_faces();
  // Initial outer face: the unique negative-area cycle of corner positions.
  int neg = -1;
  for (int i = 0; i < (int)dg.faces_.size(); ++i) {
    std::vector<Vec2> poly;
    for (int c : dg.faces_[i].corners) poly.push_back(dg.corner_pos(c));
    if (signed_area2(poly) < 0) {
      require(neg < 0, ErrorCode::NonPlanarEmbedding, "multiple negative-area faces");
      neg = i;
    }
  }
  require(neg >= 0, ErrorCode::NonPlanarEmbedding, "no outer face found");
  dg.outer_ = neg;
  dg.faces_[neg].outer = true;
  dg.validate_map();
  return dg;
}

void DecoratedGraph::rebuild_links() {
  links_.clear();
  for (int c = 0; c < num_corners(); ++c)
    if (link_of_[c] > c) links_.push_back({c, link_of_[c]});
  std::sort(links_.begin(), links_.end());
}

void DecoratedGraph::retrace_faces() {
  faces_.clear();
  dart_face_.assign(3 * num_corners(), -1);
  auto rot = [&](int c) {
    // ccw: previous corner, link partner (if any), next corner
    int q = c / 4, k = c % 4;
    std::vector<int> r{4 * q + (k + 3) % 4};
    if (link_of_[c] >= 0) r.push_back(link_of_[c]);
    r.push_back(4 * q + (k + 1) % 4);
    return r;
  };
  for (int d0 = 0; d0 < 3 * num_corners(); ++d0) {
    if (dart_face_[d0] >= 0) continue;
    int c0 = d0 / 3, kind = d0 % 3;
    if (kind == 1 && link_of_[c0] < 0) continue;  // dart does not exist
    Face f;
    int fi = (int)faces_.size();
    int c = c0, kd = kind;
    do {
      dart_face_[3 * c + kd] = fi;
      f.corners.push_back(c);
      int q = c / 4, k = c % 4;
      int to = (kd == 0) ? 4 * q + (k + 3) % 4 : (kd == 1) ? link_of_[c] : 4 * q + (k + 1) % 4;
      // Arriving at `to` via (c -> to): continue with the neighbor cyclically
      // before c in the rotation at `to`.
      std::vector<int> r = rot(to);
      int idx = -1;
      for (int i = 0; i < (int)r.size(); ++i)
        if (r[i] == c) idx = i;
      require(idx >= 0, ErrorCode::ValidationFailed, "rotation inconsistency");
      int w = r[(idx + (int)r.size() - 1) % (int)r.size()];
      int nd = dart_id(to, w);
      require(nd >= 0, ErrorCode::ValidationFailed, "dart inconsistency");
      c = nd / 3;
      kd = nd % 3;
    } while (!(c == c0 && kd == kind));

    f.diamond = f.corners.size() == 4 && f.corners[0] / 4 == f.corners[1] / 4 &&
                f.corners[0] / 4 == f.corners[2] / 4 && f.corners[0] / 4 == f.corners[3] / 4;
    std::vector<int> qs;
    for (int cc : f.corners) qs.push_back(qubit_ids_[cc / 4]);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    f.qubit_ids = qs;
    if (f.diamond) {
      f.key = "d" + std::to_string(qs[0]);
    } else {
      for (size_t i = 0; i < qs.size(); ++i) {
        if (i) f.key += ',';
        f.key += std::to_string(qs[i]);
      }
    }
    faces_.push_back(std::move(f));
  }
  std::set<std::string> keys;
  for (auto& f : faces_)
    require(keys.insert(f.key).second, ErrorCode::ValidationFailed,
            "ambiguous face key " + f.key);
  outer_ = -1;  // caller must set (relocate_outer or geometric)
}

void DecoratedGraph::relocate_outer(const DecoratedGraph& old) {
  std::set<int> touched;  // qubits whose diamonds changed pairing
  for (int c = 0; c < num_corners(); ++c)
    if (old.link_of_[c] != link_of_[c]) touched.insert(c / 4);

  std::map<int, int> votes;
  const Face& of = old.faces_[old.outer_];
  int m = (int)of.corners.size();
  for (int i = 0; i < m; ++i) {
    int u = of.corners[i], v = of.corners[(i + 1) % m];
    if (touched.count(u / 4) || touched.count(v / 4)) continue;
    int d = dart_id(u, v);
    if (d < 0) continue;
    votes[dart_face_[d]]++;
  }
  int best = -1, best_votes = 0;
  for (auto& [f, n] : votes)
    if (n > best_votes || (n == best_votes && f < best)) {
      best = f;
      best_votes = n;
    }
  if (best < 0) {
    for (int i = 0; i < (int)faces_.size(); ++i) {
      std::vector<Vec2> poly;
      for (int c : faces_[i].corners) poly.push_back(corner_pos(c));
      if (signed_area2(poly) < 0) {
        require(best < 0, ErrorCode::ValidationFailed, "cannot identify outer face");
        best = i;
      }
    }
    require(best >= 0, ErrorCode::ValidationFailed, "cannot identify outer face");
  }
  outer_ = best;
  faces_[outer_].outer = true;
}

void DecoratedGraph::validate_map() const {
  for (int q = 0; q < nq_; ++q) {
    int d = degree(q);
    require(d >= 2 && d <= 4, ErrorCode::BadDegree,
            "qubit " + std::to_string(qubit_ids_[q]) + " has degree " + std::to_string(d));
  }
  for (int c = 0; c < num_corners(); ++c)
    if (link_of_[c] >= 0) {
      require(link_of_[link_of_[c]] == c, ErrorCode::ValidationFailed, "pairing not involutive");
      require(link_of_[c] / 4 != c / 4, ErrorCode::ValidationFailed, "self-paired diamond");
    }
  check_euler();
  // Connectivity over corners.
  std::vector<int> seen(num_corners(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    int q = c / 4, k = c % 4;
    int nb[3] = {4 * q + (k + 3) % 4, 4 * q + (k + 1) % 4, link_of_[c]};
    for (int w : nb)
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        ++cnt;
        stack.push_back(w);
      }
  }
  require(cnt == num_corners(), ErrorCode::ValidationFailed, "decorated graph disconnected");
  require(outer_ >= 0 && outer_ < (int)faces_.size() && !faces_[outer_].diamond,
          ErrorCode::ValidationFailed, "bad outer face");
}

DecoratedGraph DecoratedGraph::delete_L_link(int ca, int cb) const {
  require(ca >= 0 && ca < num_corners() && cb >= 0 && cb < num_corners(),
          ErrorCode::LinkAbsent, "corner out of range");
  require(link_of_[ca] == cb, ErrorCode::LinkAbsent,
          "no L-link between corners " + std::to_string(ca) + "," + std::to_string(cb));
  require(face_at(ca, cb) != face_at(cb, ca), ErrorCode::ValidationFailed,
          "L-link is a bridge");
  require(degree(ca / 4) > 2 && degree(cb / 4) > 2, ErrorCode::BadDegree,
          "deletion would drop a degree below 2");
  DecoratedGraph g = *this;
  g.link_of_[ca] = -1;
  g.link_of_[cb] = -1;
  g.rebuild_links();
  g.retrace_faces();
  g.relocate_outer(*this);
  g.validate_map();
  return g;
}

DecoratedGraph DecoratedGraph::add_L_link(int ca, int cb) const {
  require(ca >= 0 && ca < num_corners() && cb >= 0 && cb < num_corners(),
          ErrorCode::ValidationFailed, "corner out of range");
  require(link_of_[ca] < 0 && link_of_[cb] < 0, ErrorCode::CornersPaired,
          "corners must both be unpaired");
  require(ca / 4 != cb / 4, ErrorCode::NotAdjacent, "corners on the same diamond");
  require(!g_edge_exists(ca / 4, cb / 4), ErrorCode::NonPlanarEmbedding,
          "parallel edge between diamonds");
  require(degree(ca / 4) < 4 && degree(cb / 4) < 4, ErrorCode::BadDegree,
          "addition would raise a degree above 4");
  require(big_face_at(ca) == big_face_at(cb), ErrorCode::NotAdjacent,
          "corners do not face a shared plaquette");
  DecoratedGraph g = *this;
  g.link_of_[ca] = cb;
  g.link_of_[cb] = ca;
  g.rebuild_links();
  g.retrace_faces();
  g.relocate_outer(*this);
  g.validate_map();
  return g;
}

DecoratedGraph::MoveSurgeryResult DecoratedGraph::rewire_move(int anyon_corner,
                                                              int target_corner) const {
  require(anyon_corner >= 0 && anyon_corner < num_corners() && target_corner >= 0 &&
              target_corner < num_corners(),
          ErrorCode::ValidationFailed, "corner out of range");
  require(link_of_[anyon_corner] < 0, ErrorCode::NotUnpaired, "anyon corner is paired");
  int p = big_face_at(anyon_corner);
  require(!faces_[p].outer && !faces_[p].diamond, ErrorCode::NoSharedPlaquette,
          "anyon is on the outer face");
  require(link_of_[target_corner] >= 0, ErrorCode::LinkAbsent, "target corner has no L-link");
  int c3 = link_of_[target_corner];
  bool on_p = dart_id(target_corner, c3) >= 0 &&
              (dart_face_[dart_id(target_corner, c3)] == p ||
               dart_face_[dart_id(c3, target_corner)] == p);
  require(on_p, ErrorCode::NoSharedPlaquette, "target L-link not on the anyon's plaquette");

  int qa = anyon_corner / 4, qb = target_corner / 4, qc = c3 / 4;
  require(qc != qa, ErrorCode::NotAdjacent, "rewiring would create a self edge");
  if (qa != qb) {
    require(!g_edge_exists(qa, qc), ErrorCode::NonPlanarEmbedding,
            "rewiring would create a parallel edge");
    require(degree(qa) < 4, ErrorCode::BadDegree, "move would raise a degree above 4");
    require(degree(qb) > 2, ErrorCode::BadDegree, "move would drop a degree below 2");
  }

  // Path along the plaquette from the anyon to the target, arriving on an
  // l-edge (the arc that enters the target through its L-link is invalid).
  const std::vector<int>& cyc = faces_[p].corners;
  int m = (int)cyc.size();
  int i1 = -1, i2 = -1;
  for (int i = 0; i < m; ++i) {
    if (cyc[i] == anyon_corner) {
      require(i1 < 0, ErrorCode::ValidationFailed, "anyon corner repeats on plaquette");
      i1 = i;
    }
    if (cyc[i] == target_corner) {
      require(i2 < 0, ErrorCode::ValidationFailed, "target corner repeats on plaquette");
      i2 = i;
    }
  }
  require(i1 >= 0 && i2 >= 0 && i1 != i2, ErrorCode::NoSharedPlaquette,
          "corners not on a shared plaquette");

  std::vector<int> fwd, bwd;
  for (int i = i1;; i = (i + 1) % m) {
    fwd.push_back(cyc[i]);
    if (cyc[i] == target_corner) break;
  }
  for (int i = i1;; i = (i + m - 1) % m) {
    bwd.push_back(cyc[i]);
    if (cyc[i] == target_corner) break;
  }
  auto arrives_on_l = [&](const std::vector<int>& pc) {
    int a = pc[pc.size() - 2], b = pc.back();
    return a / 4 == b / 4;
  };
  bool f_ok = arrives_on_l(fwd), b_ok = arrives_on_l(bwd);
  require(f_ok != b_ok, ErrorCode::ValidationFailed, "ambiguous plaquette path");
  std::vector<int> path = f_ok ? fwd : bwd;

  MoveSurgeryResult res{*this, path};
  DecoratedGraph& g = res.graph;
  g.link_of_[target_corner] = -1;
  g.link_of_[c3] = anyon_corner;
  g.link_of_[anyon_corner] = c3;
  g.rebuild_links();
  g.retrace_faces();
  g.relocate_outer(*this);
  g.validate_map();
  return res;
}

std::string DecoratedGraph::canonical_dump() const {
  std::string s = "nq=" + std::to_string(nq_) + ";ids=";
  for (int id : qubit_ids_) s += std::to_string(id) + ",";
  s += ";links=";
  for (int c = 0; c < num_corners(); ++c) s += std::to_string(link_of_[c]) + ",";
  return s;
}

uint64_t DecoratedGraph::structure_hash() const { return fnv1a(canonical_dump()); }

bool DecoratedGraph::same_structure(const DecoratedGraph& o) const {
  return nq_ == o.nq_ && qubit_ids_ == o.qubit_ids_ && link_of_ == o.link_of_;
}

}  // namespace psc
