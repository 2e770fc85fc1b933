#include "psc/compiler.hpp"

#include <algorithm>
#include <map>

#include "psc/error.hpp"
#include "psc/geometry.hpp"
#include "psc/paths.hpp"

namespace psc::compiler {

PauliString compile_walk(const DecoratedGraph& g, const std::vector<int>& corners) {
  require(corners.size() >= 2, ErrorCode::InvalidPath, "walk too short");
  int n = g.num_qubits();
  PauliString acc = PauliString::identity(n);
  for (size_t i = 0; i + 1 < corners.size(); ++i) {
    int e = g.edge_between(corners[i], corners[i + 1]);
    require(e >= 0, ErrorCode::InvalidPath, "walk hops over a non-edge");
    if (!g.is_l_edge(e)) continue;
    PauliString t = PauliString::single(n, e / 4, DecoratedGraph::l_letter(e % 4));
    acc = PauliString::mul(t, acc);  // later hops multiply from the left
  }
  acc.mul_phase_exp(3 * paths::n_ll(g, corners));  // (-i) per interior ll vertex
  return acc;
}

PauliString compile_loop(const DecoratedGraph& g, const std::vector<int>& loop) {
  int m = (int)loop.size();
  require(m >= 3, ErrorCode::NotALoop, "loop too short");
  int open_at = -1;
  std::pair<int, int> best{-1, -1};
  for (int i = 0; i < m; ++i) {
    int a = loop[i], b = loop[(i + 1) % m];
    int e = g.edge_between(a, b);
    require(e >= 0, ErrorCode::NotALoop, "loop hops over a non-edge");
    if (g.is_l_edge(e)) continue;
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (open_at < 0 || key < best) {
      open_at = i;
      best = key;
    }
  }
  require(open_at >= 0, ErrorCode::NotALoop, "loop has no L-link to open at");
  std::vector<int> walk;
  for (int i = 1; i <= m; ++i) walk.push_back(loop[(open_at + i) % m]);
  require(paths::is_valid(g, walk), ErrorCode::InvalidPath, "opened loop is not a valid walk");
  return compile_walk(g, walk);
}

PauliString stabilizer(const DecoratedGraph& g, int face) {
  require(face >= 0 && face < (int)g.faces().size(), ErrorCode::ValidationFailed,
          "face out of range");
  const auto& f = g.faces()[face];
  require(!f.outer && !f.diamond, ErrorCode::ValidationFailed,
          "stabilizers live on interior non-diamond faces");
  PauliString b = compile_loop(g, f.corners);
  require(b.hermitian(), ErrorCode::ValidationFailed, "plaquette operator not Hermitian");
  return b;
}

ThooftResult compile_thooft(const DecoratedGraph& g, const std::vector<int>& face_seq) {
  require(face_seq.size() >= 2, ErrorCode::InvalidPath, "dual path too short");
  for (int f : face_seq)
    require(f >= 0 && f < (int)g.faces().size(), ErrorCode::ValidationFailed,
            "face out of range");
  ThooftResult res;
  res.closed = face_seq.front() == face_seq.back();

  struct Crossing {
    int edge;
    int from_face;
    int to_face;
  };
  std::vector<Crossing> cr;
  int ne = g.num_edges();
  for (size_t i = 0; i + 1 < face_seq.size(); ++i) {
    int fa = face_seq[i], fb = face_seq[i + 1];
    require(fa != fb, ErrorCode::InvalidPath, "dual path repeats a face");
    int hit = -1;
    for (int e = 4 * g.num_qubits(); e < ne; ++e) {
      auto [a, b] = g.edge_corners(e);
      int f1 = g.face_at(a, b), f2 = g.face_at(b, a);
      if ((f1 == fa && f2 == fb) || (f1 == fb && f2 == fa)) {
        require(hit < 0, ErrorCode::ValidationFailed, "ambiguous dual step");
        hit = e;
      }
    }
    require(hit >= 0, ErrorCode::NotAdjacent, "dual step between non-adjacent faces");
    cr.push_back({hit, fa, fb});
  }
  require(cr.size() % 2 == 0, ErrorCode::OddOpenPath,
          "disorder line crosses an odd number of L-links");

  if (res.closed) {
    int start = 0;
    auto key = [&](int i) {
      auto [a, b] = g.edge_corners(cr[i].edge);
      return std::pair<int, int>{std::min(a, b), std::max(a, b)};
    };
    for (int i = 1; i < (int)cr.size(); ++i)
      if (key(i) < key(start)) start = i;
    std::rotate(cr.begin(), cr.begin() + start, cr.end());
  } else {
    res.start_face_key = g.faces()[face_seq.front()].key;
    res.end_face_key = g.faces()[face_seq.back()].key;
  }

  auto centroid = [&](int face) {
    Vec2 c{0, 0};
    const auto& fc = g.faces()[face].corners;
    for (int cc : fc) c = c + g.corner_pos(cc);
    return c * (1.0 / (double)fc.size());
  };
  auto right_majorana = [&](const Crossing& x) {
    auto [a, b] = g.edge_corners(x.edge);
    Vec2 mid = (g.corner_pos(a) + g.corner_pos(b)) * 0.5;
    // the outer face's centroid sits inside the sample; anchor that side on
    // the crossing itself so the travel direction stays outward-consistent
    Vec2 src = (x.from_face == g.outer_face()) ? mid : centroid(x.from_face);
    Vec2 dst = (x.to_face == g.outer_face()) ? mid : centroid(x.to_face);
    Vec2 d = dst - src;
    double ca = cross(d, g.corner_pos(a) - mid);
    double cb = cross(d, g.corner_pos(b) - mid);
    require(ca * cb < 0, ErrorCode::ValidationFailed, "degenerate crossing geometry");
    return ca < 0 ? a : b;
  };

  int n = g.num_qubits();
  PauliString acc = PauliString::identity(n);
  for (size_t j = 0; j + 1 < cr.size(); j += 2) {
    int m1 = right_majorana(cr[j]);
    int m2 = right_majorana(cr[j + 1]);
    int face = cr[j].to_face;
    require(face == cr[j + 1].from_face, ErrorCode::ValidationFailed,
            "dual path bookkeeping broken");
    const auto& cyc = g.faces()[face].corners;
    int mlen = (int)cyc.size();
    int p = -1;
    for (int i = 0; i < mlen; ++i)
      if (cyc[i] == m1) {
        require(p < 0, ErrorCode::ValidationFailed, "face visits a corner twice");
        p = i;
      }
    require(p >= 0, ErrorCode::ValidationFailed, "crossing endpoint not on face");
    int partner = g.link_of(m1);
    int dir = (cyc[(p + 1) % mlen] == partner) ? -1 : +1;
    require(cyc[(p + dir + mlen) % mlen] != partner, ErrorCode::ValidationFailed,
            "face boundary inconsistent at crossing");
    std::vector<int> seg{m1};
    for (int i = (p + dir + mlen) % mlen; seg.back() != m2; i = (i + dir + mlen) % mlen) {
      seg.push_back(cyc[i]);
      require((int)seg.size() <= mlen, ErrorCode::ValidationFailed,
              "segment endpoint unreachable on face");
    }
    require(paths::is_valid(g, seg), ErrorCode::InvalidPath, "disorder segment invalid");
    acc = PauliString::mul(compile_walk(g, seg), acc);
  }
  require(acc.hermitian(), ErrorCode::ValidationFailed, "disorder line not Hermitian");
  res.op = acc;
  return res;
}

bool in_group_with_plus_sign(const std::vector<PauliString>& generators,
                             const PauliString& target, bool* letters_expressible) {
  int n = target.num_qubits();
  auto lowest_bit = [n](const PauliString& p) {
    for (int q = 0; q < n; ++q) {
      if (p.x_bit(q)) return 2 * q;
      if (p.z_bit(q)) return 2 * q + 1;
    }
    return -1;
  };
  auto has_bit = [](const PauliString& p, int bit) {
    return (bit & 1) ? p.z_bit(bit / 2) : p.x_bit(bit / 2);
  };
  std::map<int, PauliString> rows;
  for (const PauliString& gen : generators) {
    PauliString r = gen;
    for (auto& [pivot, row] : rows)
      if (has_bit(r, pivot)) r = PauliString::mul(row, r);
    int pivot = lowest_bit(r);
    if (pivot >= 0) rows.insert({pivot, r});
  }
  PauliString r = target;
  PauliString acc = PauliString::identity(n);
  for (auto& [pivot, row] : rows)
    if (has_bit(r, pivot)) {
      r = PauliString::mul(row, r);
      acc = PauliString::mul(row, acc);
    }
  bool expressible = r.is_identity_letters();
  if (letters_expressible) *letters_expressible = expressible;
  return expressible && acc == target;
}

namespace {

// Face-key -> expected sign on one side of the surgery. Coinciding entries
// multiply; 0 (unconstrained) absorbs everything.
std::map<std::string, int> flux_side(const DecoratedGraph& gr,
                                     const std::vector<CornerFlux>& corner_fluxes,
                                     const std::map<std::string, int>& parked_flux,
                                     bool old_side) {
  std::map<std::string, int> m;
  for (const auto& [key, sign] : parked_flux) {
    int f = gr.face_by_key(key);
    require(f >= 0 && !gr.faces()[f].diamond && !gr.faces()[f].outer, ErrorCode::ValidationFailed,
            "parked flux plaquette " + key + " disturbed by the move");
    auto [it, fresh] = m.emplace(key, sign);
    if (!fresh) it->second *= sign;
  }
  for (const CornerFlux& cf : corner_fluxes) {
    int c = old_side ? cf.old_corner : cf.new_corner;
    int f = gr.enclosing_plaquette(c);
    require(f >= 0, ErrorCode::ValidationFailed, "attached flux sits on the outer face");
    auto [it, fresh] = m.emplace(gr.faces()[f].key, cf.sign);
    if (!fresh) it->second *= cf.sign;
  }
  return m;
}

int flux_sign(const std::map<std::string, int>& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? +1 : it->second;
}

}  // namespace

MoveOutcome elementary_move(const DecoratedGraph& g, const Orientation& o, int anyon_corner,
                            int target_corner, const std::vector<CornerFlux>& corner_fluxes,
                            const std::map<std::string, int>& parked_flux) {
  auto surgery = g.rewire_move(anyon_corner, target_corner);
  MoveOutcome out{std::move(surgery.graph), {}, std::move(surgery.path_corners),
                  PauliString::identity(g.num_qubits()), 0};
  out.orientation = kasteleyn::carry(g, o, out.graph);
  out.w = compile_walk(g, out.path);
  require(out.w.hermitian(), ErrorCode::ValidationFailed, "move line not Hermitian");

  auto old_flux = flux_side(g, corner_fluxes, parked_flux, /*old_side=*/true);
  auto new_flux = flux_side(out.graph, corner_fluxes, parked_flux, /*old_side=*/false);

  std::vector<PauliString> old_stabs;
  for (int f : g.stabilizer_faces()) {
    int s = flux_sign(old_flux, g.faces()[f].key);
    if (s == 0) continue;
    PauliString b = stabilizer(g, f);
    if (s < 0) b.mul_phase_exp(2);
    old_stabs.push_back(std::move(b));
  }

  struct Check {
    PauliString b;
    int sign;
  };
  std::vector<Check> checks;
  for (int f : out.graph.stabilizer_faces()) {
    int s = flux_sign(new_flux, out.graph.faces()[f].key);
    if (s == 0) continue;
    checks.push_back({stabilizer(out.graph, f), s});
  }

  for (int zeta : {+1, -1}) {
    bool all_ok = true;
    for (const Check& ck : checks) {
      PauliString r = ck.b;
      if (!out.w.commutes(ck.b)) {
        r = PauliString::mul(out.w, ck.b);
        r.mul_phase_exp(zeta > 0 ? 1 : 3);  // U^dag B U = zeta i W B
      }
      if (ck.sign < 0) r.mul_phase_exp(2);
      bool letters_ok = false;
      bool ok = in_group_with_plus_sign(old_stabs, r, &letters_ok);
      require(letters_ok, ErrorCode::ValidationFailed,
              "moved plaquette leaves the old stabilizer span");
      if (!ok) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) {
      require(out.zeta == 0, ErrorCode::ValidationFailed, "rotation sense ambiguous");
      out.zeta = zeta;
    }
  }
  require(out.zeta != 0, ErrorCode::ValidationFailed, "no rotation sense preserves fluxes");
  return out;
}

GateList decompose_rotation(const PauliString& axis) {
  require(axis.hermitian(), ErrorCode::NonHermitianAxis, "rotation axis not Hermitian");
  bool negative = axis.phase_exp() == 2;
  GateList gl;
  std::vector<int> qs;
  for (int q = 0; q < axis.num_qubits(); ++q)
    if (axis.letter(q) != 'I') qs.push_back(q);
  if (qs.empty()) {
    gl.global_phase_eighths = negative ? +1 : -1;  // exp(-+ i pi/4)
    return gl;
  }
  for (int q : qs) {
    char l = axis.letter(q);
    if (l == 'X') {
      gl.lines.push_back("H " + std::to_string(q));
    } else if (l == 'Y') {
      gl.lines.push_back("SDG " + std::to_string(q));
      gl.lines.push_back("H " + std::to_string(q));
    }
  }
  for (size_t i = 0; i + 1 < qs.size(); ++i)
    gl.lines.push_back("CNOT " + std::to_string(qs[i]) + " " + std::to_string(qs[i + 1]));
  if (negative) {
    gl.lines.push_back("SDG " + std::to_string(qs.back()));
    gl.global_phase_eighths = +1;
  } else {
    gl.lines.push_back("S " + std::to_string(qs.back()));
    gl.global_phase_eighths = -1;
  }
  for (size_t i = qs.size() - 1; i >= 1; --i)
    gl.lines.push_back("CNOT " + std::to_string(qs[i - 1]) + " " + std::to_string(qs[i]));
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    char l = axis.letter(*it);
    if (l == 'X') {
      gl.lines.push_back("H " + std::to_string(*it));
    } else if (l == 'Y') {
      gl.lines.push_back("H " + std::to_string(*it));
      gl.lines.push_back("S " + std::to_string(*it));
    }
  }
  return gl;
}

}  // namespace psc::compiler
