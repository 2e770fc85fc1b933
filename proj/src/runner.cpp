#include "psc/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "psc/error.hpp"
#include "psc/paths.hpp"

namespace psc {

namespace {

using ordered_json = nlohmann::ordered_json;

uint64_t mix_hash(uint64_t h, uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

// Pairing-only hash; decorations are frozen, so link_of determines the map.
uint64_t link_hash(const DecoratedGraph& g) {
  uint64_t h = 1469598103934665603ull;
  for (int c = 0; c < g.num_corners(); ++c) h = mix_hash(h, (uint64_t)(g.link_of(c) + 1));
  return h;
}

}  // namespace

// Exchange plans are searched over the pairing vector alone: decorations are
// frozen, so the rotation system (hence faces and move legality) is a pure
// function of link_of. Nodes live in an arena; states are Zobrist-hashed.
namespace {

struct FaceWalk {
  std::vector<int> cyc;  // corner visit order
  double area2 = 0.0;    // doubled signed area, interior faces positive
};

// Trace the face containing dart (c0, kind0); kinds: 0 = previous corner on
// the diamond, 1 = link partner, 2 = next corner. Unpaired corners border
// their diamond via kind-2 darts and their big face via kind-0 darts.
FaceWalk trace_link_face(const std::vector<int16_t>& link, const DecoratedGraph& g, int c0,
                         int kind0) {
  FaceWalk f;
  const int cap = 3 * (int)link.size();
  int c = c0, kd = kind0;
  do {
    f.cyc.push_back(c);
    int q = c / 4, k = c % 4;
    int to = (kd == 0) ? 4 * q + (k + 3) % 4 : (kd == 1) ? link[c] : 4 * q + (k + 1) % 4;
    int tq = to / 4, tk = to % 4;
    int rot[3];
    int rn = 0;
    rot[rn++] = 4 * tq + (tk + 3) % 4;
    if (link[to] >= 0) rot[rn++] = link[to];
    rot[rn++] = 4 * tq + (tk + 1) % 4;
    int idx = -1;
    for (int i = 0; i < rn; ++i)
      if (rot[i] == c) idx = i;
    if (idx < 0 || (int)f.cyc.size() > cap) return {};  // inconsistent pairing
    int w = rot[(idx + rn - 1) % rn];
    c = to;
    kd = (link[to] >= 0 && w == link[to]) ? 1 : (w == 4 * tq + (tk + 3) % 4) ? 0 : 2;
  } while (!(c == c0 && kd == kind0));
  for (size_t i = 0; i < f.cyc.size(); ++i) {
    Vec2 p = g.corner_pos(f.cyc[i]);
    Vec2 r = g.corner_pos(f.cyc[(i + 1) % f.cyc.size()]);
    f.area2 += cross(p, r);
  }
  return f;
}

int link_degree(const std::vector<int16_t>& link, int q) {
  int d = 0;
  for (int k = 0; k < 4; ++k) d += link[4 * q + k] >= 0;
  return d;
}

}  // namespace

std::vector<std::pair<int, int>> find_exchange_moves(const DecoratedGraph& g0, int corner_a,
                                                     int corner_b, bool ccw) {
  require(corner_a != corner_b, ErrorCode::ValidationFailed, "cannot exchange an anyon with itself");
  require(g0.unpaired(corner_a) && g0.unpaired(corner_b), ErrorCode::NotUnpaired,
          "exchange endpoints must carry anyons");
  static std::map<std::tuple<uint64_t, int, int, bool>, std::vector<std::pair<int, int>>> cache;
  const auto cache_key = std::make_tuple(link_hash(g0), corner_a, corner_b, ccw);
  if (auto it = cache.find(cache_key); it != cache.end()) return it->second;

  const int nc = g0.num_corners();
  const int nq = g0.num_qubits();
  std::vector<int16_t> root(nc);
  for (int c = 0; c < nc; ++c) root[c] = (int16_t)g0.link_of(c);

  // Movers: unpaired corners with an interior big face within graph distance
  // 4 of either exchanged anyon. Everything else stays parked.
  std::vector<int> dist(nq, -1);
  std::vector<int> bq{corner_a / 4};
  dist[corner_a / 4] = 0;
  if (dist[corner_b / 4] < 0) {
    dist[corner_b / 4] = 0;
    bq.push_back(corner_b / 4);
  }
  for (size_t h = 0; h < bq.size(); ++h) {
    int u = bq[h];
    if (dist[u] >= 4) continue;
    for (int k = 0; k < 4; ++k) {
      int t = root[4 * u + k];
      if (t >= 0 && dist[t / 4] < 0) {
        dist[t / 4] = dist[u] + 1;
        bq.push_back(t / 4);
      }
    }
  }
  std::vector<int> movers;
  for (int c = 0; c < nc; ++c) {
    if (root[c] >= 0 || dist[c / 4] < 0) continue;
    FaceWalk f = trace_link_face(root, g0, c, 0);
    if (!f.cyc.empty() && f.area2 > kGeomEps) movers.push_back(c);
  }
  const int M = (int)movers.size();
  int ia = -1, ib = -1;
  for (int i = 0; i < M; ++i) {
    if (movers[i] == corner_a) ia = i;
    if (movers[i] == corner_b) ib = i;
  }
  require(ia >= 0 && ib >= 0, ErrorCode::NoSharedPlaquette,
          "exchanged anyons must sit on interior plaquettes");

  // Zobrist tables for pairing entries and mover positions.
  Rng zr(0x7ab1e5eed);
  std::vector<uint64_t> zlink((size_t)nc * (nc + 1));
  for (auto& z : zlink) z = zr.next();
  std::vector<uint64_t> zpos((size_t)M * nc);
  for (auto& z : zpos) z = zr.next();
  auto zl = [&](int c, int v) { return zlink[(size_t)c * (nc + 1) + (v + 1)]; };

  struct Node {
    int parent;
    int16_t from, to;
    int8_t mover;
    int8_t depth;
    float ang;
  };
  const double target = ccw ? M_PI : -M_PI;
  const int max_depth = 14;
  std::vector<Node> arena;
  std::vector<int16_t> pos_arena;
  arena.push_back({-1, -1, -1, -1, 0, 0.f});
  for (int i = 0; i < M; ++i) pos_arena.push_back((int16_t)movers[i]);
  uint64_t root_lh = 0, root_ph = 0;
  for (int c = 0; c < nc; ++c) root_lh ^= zl(c, root[c]);
  for (int i = 0; i < M; ++i) root_ph ^= zpos[(size_t)i * nc + movers[i]];
  std::unordered_set<uint64_t> seen;
  seen.insert(mix_hash(mix_hash(root_lh, root_ph), 64));

  std::vector<int16_t> link(nc), child(nc);
  std::vector<std::pair<int16_t, int16_t>> chain;
  long expansions = 0;
  const long expansion_cap = 20000000;
  int goal = -1;

  for (size_t ni = 0; ni < arena.size() && goal < 0; ++ni) {
    const Node n = arena[ni];
    if (n.depth >= max_depth) continue;
    // Rebuild this node's pairing by replaying its move chain.
    chain.clear();
    for (int a = (int)ni; a > 0; a = arena[a].parent) chain.push_back({arena[a].from, arena[a].to});
    link = root;
    uint64_t lh = root_lh;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      int f = it->first, t = it->second, c3 = link[t];
      lh ^= zl(f, link[f]) ^ zl(f, c3) ^ zl(t, c3) ^ zl(t, -1) ^ zl(c3, t) ^ zl(c3, f);
      link[f] = (int16_t)c3;
      link[c3] = (int16_t)f;
      link[t] = -1;
    }
    const std::vector<int16_t> pos(pos_arena.begin() + ni * M, pos_arena.begin() + (ni + 1) * M);
    uint64_t ph = 0;
    for (int i = 0; i < M; ++i) ph ^= zpos[(size_t)i * nc + pos[i]];

    for (int mi = 0; mi < M && goal < 0; ++mi) {
      const int c = pos[mi];
      FaceWalk f = trace_link_face(link, g0, c, 0);
      if (f.cyc.empty() || f.area2 <= kGeomEps) continue;
      const int m = (int)f.cyc.size();
      int c_count = 0;
      for (int x : f.cyc) c_count += x == c;
      if (c_count != 1) continue;
      std::vector<int> targets;
      for (int t : f.cyc)
        if (t != c && link[t] >= 0) targets.push_back(t);
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (int t : targets) {
        if (++expansions > expansion_cap)
          fail(ErrorCode::UnsupportedGeometry, "exchange search exceeded the node budget");
        const int c3 = link[t];
        const int qa = c / 4, qb = t / 4, qc = c3 / 4;
        if (qc == qa) continue;
        if (qa != qb) {
          bool parallel = false;
          for (int k = 0; k < 4; ++k) parallel |= link[4 * qa + k] >= 0 && link[4 * qa + k] / 4 == qc;
          if (parallel || link_degree(link, qa) >= 4 || link_degree(link, qb) <= 2) continue;
        }
        int i2 = -1, t_count = 0, c3_on = 0;
        for (int i = 0; i < m; ++i) {
          if (f.cyc[i] == t) {
            i2 = i;
            ++t_count;
          }
          if ((f.cyc[i] == t && f.cyc[(i + 1) % m] == c3) ||
              (f.cyc[i] == c3 && f.cyc[(i + 1) % m] == t))
            c3_on = 1;
        }
        if (t_count != 1 || !c3_on) continue;
        bool f_ok = false, b_ok = false;
        {
          int prev = f.cyc[(i2 + m - 1) % m], nxt = f.cyc[(i2 + 1) % m];
          // walking forward from the anyon arrives at t from its cycle
          // predecessor; backward arrives from its successor
          f_ok = prev / 4 == t / 4;
          b_ok = nxt / 4 == t / 4;
        }
        if (f_ok == b_ok) continue;
        // child state
        std::copy(link.begin(), link.end(), child.begin());
        uint64_t clh = lh ^ zl(c, -1) ^ zl(c, c3) ^ zl(t, c3) ^ zl(t, -1) ^ zl(c3, t) ^ zl(c3, c);
        child[c] = (int16_t)c3;
        child[c3] = (int16_t)c;
        child[t] = -1;
        uint64_t cph = ph ^ zpos[(size_t)mi * nc + c] ^ zpos[(size_t)mi * nc + t];
        double ang = n.ang;
        if (mi == ia || mi == ib) {
          int na = mi == ia ? t : pos[ia];
          int nb = mi == ib ? t : pos[ib];
          Vec2 ro = g0.corner_pos(pos[ia]) - g0.corner_pos(pos[ib]);
          Vec2 rn = g0.corner_pos(na) - g0.corner_pos(nb);
          ang += std::atan2(cross(ro, rn), dot(ro, rn));
        }
        uint64_t key = mix_hash(mix_hash(clh, cph),
                                (uint64_t)(long)(std::llround(ang * 4.0 / M_PI) + 64));
        if (!seen.insert(key).second) continue;
        arena.push_back({(int)ni, (int16_t)c, (int16_t)t, (int8_t)mi, (int8_t)(n.depth + 1),
                         (float)ang});
        for (int i = 0; i < M; ++i) pos_arena.push_back(i == mi ? (int16_t)t : pos[i]);
        // goal: tracked anyons swapped, helpers home, pairing restored,
        // relative winding one half turn in the requested sense
        if (std::abs(ang - target) < 0.5 && child == root) {
          const int16_t* cp = &pos_arena[(arena.size() - 1) * M];
          bool ok = cp[ia] == corner_b && cp[ib] == corner_a;
          for (int i = 0; ok && i < M; ++i)
            if (i != ia && i != ib) ok = cp[i] == movers[i];
          if (ok) goal = (int)arena.size() - 1;
        }
      }
    }
  }
  require(goal >= 0, ErrorCode::UnsupportedGeometry, "no exchange sequence found");
  std::vector<std::pair<int, int>> plan;
  for (int a = goal; a > 0; a = arena[a].parent) plan.push_back({arena[a].from, arena[a].to});
  std::reverse(plan.begin(), plan.end());
  cache[cache_key] = plan;
  return plan;
}

Runner::Runner(const Scenario& sc, Backend backend, std::optional<uint64_t> seed_override)
    : sc_(sc), backend_(backend), seed_override_(seed_override) {}

int Runner::anyon_corner(const std::string& name) const { return anyon(name); }

int Runner::anyon(const std::string& name) const {
  auto it = anyons_.find(name);
  require(it != anyons_.end(), ErrorCode::ValidationFailed, "unknown anyon " + name);
  return it->second;
}

int Runner::qubit_index(int qubit_id) const {
  int q = g_.qubit_index_of_id(qubit_id);
  require(q >= 0, ErrorCode::ValidationFailed, "unknown qubit id " + std::to_string(qubit_id));
  return q;
}

int Runner::slot_corner(int qubit_idx, const std::string& slot) const {
  if (slot.size() == 1 && std::isalpha((unsigned char)slot[0]))
    return g_.corner_by_compass(qubit_idx, (char)std::toupper((unsigned char)slot[0]));
  require(slot.size() == 1 && slot[0] >= '0' && slot[0] <= '3', ErrorCode::ValidationFailed,
          "slot must be 0..3 or N/E/S/W");
  return 4 * qubit_idx + (slot[0] - '0');
}

PauliString Runner::parse_pauli(const std::string& text) const {
  PauliString p = PauliString::from_text(text);
  require(p.num_qubits() == g_.num_qubits(), ErrorCode::ValidationFailed,
          "operator length does not match the graph");
  return p;
}

int Runner::measure_observable(const PauliString& obs) {
  require(inited_ && rng_, ErrorCode::ValidationFailed, "measurement before init");
  if (engine_) return engine_->measure(obs, *rng_);
  return oracle_->measure(obs, *rng_);
}

int Runner::expectation_observable(const PauliString& obs) const {
  require(inited_, ErrorCode::ValidationFailed, "expectation before init");
  if (engine_) return engine_->expectation(obs);
  double e = oracle_->expectation(obs);
  if (e > 1.0 - 1e-7) return +1;
  if (e < -1.0 + 1e-7) return -1;
  require(std::abs(e) < 1e-7, ErrorCode::ValidationFailed,
          "expectation is neither stabilized nor zero");
  return 0;
}

void Runner::apply_pauli_both(const PauliString& p) {
  if (engine_) engine_->apply_pauli(p);
  if (oracle_) oracle_->apply_pauli(p);
}

std::map<std::string, int> Runner::flux_map() const {
  std::map<std::string, int> m = parked_flux_;
  for (const auto& [name, sign] : attached_flux_) {
    int f = g_.enclosing_plaquette(anyon(name));
    require(f >= 0, ErrorCode::ValidationFailed, "attached flux sits on the outer face");
    auto [it, fresh] = m.emplace(g_.faces()[f].key, sign);
    if (!fresh) it->second *= sign;
  }
  return m;
}

void Runner::check_fluxes() const {
  if (!inited_) return;
  auto expected = flux_map();
  for (int f : g_.stabilizer_faces()) {
    const std::string& key = g_.faces()[f].key;
    auto it = expected.find(key);
    int want = it == expected.end() ? +1 : it->second;
    if (want == 0) continue;
    int got = expectation_observable(compiler::stabilizer(g_, f));
    require(got == want, ErrorCode::ValidationFailed,
            "unexpected flux at plaquette " + key + " (got " + std::to_string(got) + ", want " +
                std::to_string(want) + ")");
  }
}

void Runner::rebuild_parked() {
  parked_flux_.clear();
  std::map<std::string, int> att;
  for (const auto& [name, sign] : attached_flux_) {
    int f = g_.enclosing_plaquette(anyon(name));
    require(f >= 0, ErrorCode::ValidationFailed, "attached flux sits on the outer face");
    auto [it, fresh] = att.emplace(g_.faces()[f].key, sign);
    if (!fresh) it->second *= sign;
  }
  for (int f : g_.stabilizer_faces()) {
    const std::string& key = g_.faces()[f].key;
    int e = expectation_observable(compiler::stabilizer(g_, f));
    auto it = att.find(key);
    int parked = e == 0 ? 0 : (it == att.end() ? e : e * it->second);
    if (parked != +1) parked_flux_[key] = parked;
  }
}

std::map<std::string, int> Runner::stabilizer_signs() const {
  std::map<std::string, int> m;
  if (!inited_) return m;
  for (int f : g_.stabilizer_faces())
    m[g_.faces()[f].key] = expectation_observable(compiler::stabilizer(g_, f));
  return m;
}

void Runner::exec_load(const Instruction& ins) {
  namespace fs = std::filesystem;
  fs::path p(ins.path);
  if (p.is_relative() && !sc_.source_path.empty()) {
    fs::path joined = fs::path(sc_.source_path).parent_path() / p;
    if (fs::exists(joined) || !fs::exists(p)) p = joined;
  }
  sg_ = SurfaceGraph::load(p.string());
  g_ = DecoratedGraph::decorate(sg_);
  orient_ = kasteleyn::find(g_);
  loaded_ = true;
}

std::vector<PauliString> Runner::auto_candidates() const {
  std::vector<PauliString> out;
  std::vector<int> sigmas = g_.sigmas();
  // Intra-diamond pair lines first.
  for (int q = 0; q < g_.num_qubits(); ++q) {
    std::vector<int> s;
    for (int k = 0; k < 4; ++k)
      if (g_.unpaired(4 * q + k)) s.push_back(4 * q + k);
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j) {
        std::vector<int> walk = paths::lift_line(g_, s[i], s[j], {});
        paths::canonicalize(g_, walk);
        out.push_back(compiler::compile_walk(g_, walk));
      }
  }
  // Then shortest corner walks between sigma corners of distinct diamonds.
  const int nc = g_.num_corners();
  for (int sa : sigmas) {
    std::vector<int> parent(nc, -1);
    std::vector<char> vis(nc, 0);
    std::vector<int> queue{sa};
    vis[sa] = 1;
    for (size_t h = 0; h < queue.size(); ++h) {
      int c = queue[h];
      int q = c / 4, k = c % 4;
      std::vector<int> nb{4 * q + (k + 3) % 4, 4 * q + (k + 1) % 4};
      if (g_.link_of(c) >= 0) nb.push_back(g_.link_of(c));
      std::sort(nb.begin(), nb.end());
      for (int v : nb)
        if (!vis[v]) {
          vis[v] = 1;
          parent[v] = c;
          queue.push_back(v);
        }
    }
    for (int sb : sigmas) {
      if (sb <= sa || sb / 4 == sa / 4 || !vis[sb]) continue;
      std::vector<int> walk;
      for (int c = sb; c >= 0; c = parent[c]) walk.push_back(c);
      std::reverse(walk.begin(), walk.end());
      paths::canonicalize(g_, walk);
      out.push_back(compiler::compile_walk(g_, walk));
    }
  }
  return out;
}

void Runner::exec_init(const Instruction& ins) {
  require(loaded_, ErrorCode::ValidationFailed, "init before load");
  if (seed_override_) seed_ = *seed_override_;
  rng_.emplace(seed_);
  const int n = g_.num_qubits();

  std::vector<PauliString> gens;
  auto dependent = [&](const PauliString& p) {
    bool letters = false;
    compiler::in_group_with_plus_sign(gens, p, &letters);
    return letters;
  };
  for (int f : g_.stabilizer_faces()) {
    PauliString b = compiler::stabilizer(g_, f);
    require(!dependent(b), ErrorCode::ValidationFailed, "dependent plaquette set");
    gens.push_back(std::move(b));
  }
  for (const std::string& lt : ins.logicals) {
    PauliString p = parse_pauli(lt);
    require(p.hermitian(), ErrorCode::NonHermitianObservable, "logical " + lt + " not Hermitian");
    for (const PauliString& gp : gens)
      require(gp.commutes(p), ErrorCode::NonCommuting, "logical " + lt + " breaks the group");
    require(!dependent(p), ErrorCode::RankDeficient, "logical " + lt + " already determined");
    gens.push_back(std::move(p));
  }
  if (ins.auto_init && (int)gens.size() < n) {
    for (const PauliString& cand : auto_candidates()) {
      if ((int)gens.size() == n) break;
      if (!cand.hermitian()) continue;
      bool ok = true;
      for (const PauliString& gp : gens)
        if (!gp.commutes(cand)) {
          ok = false;
          break;
        }
      if (!ok || dependent(cand)) continue;
      gens.push_back(cand);
    }
  }
  require((int)gens.size() == n, ErrorCode::RankDeficient, "initial state underdetermined");
  if (backend_ == Backend::Engine)
    engine_.emplace(n, gens);
  else
    oracle_.emplace(n, gens);
  inited_ = true;
  check_fluxes();
}

std::vector<int> Runner::lex_smaller_arc(int face, int ca, int cb) const {
  const auto& cyc = g_.faces()[face].corners;
  const int n = (int)cyc.size();
  int ia = -1, seen_a = 0, seen_b = 0;
  for (int i = 0; i < n; ++i) {
    if (cyc[i] == ca) {
      ++seen_a;
      ia = i;
    }
    if (cyc[i] == cb) ++seen_b;
  }
  require(seen_a == 1 && seen_b == 1, ErrorCode::ValidationFailed, "ambiguous arc endpoints");
  auto walk = [&](int step) {
    std::vector<int> arc{ca};
    int i = ia;
    while (cyc[i] != cb) {
      i = (i + step + n) % n;
      arc.push_back(cyc[i]);
      require((int)arc.size() <= n, ErrorCode::ValidationFailed, "endpoint not on the face");
    }
    return arc;
  };
  std::vector<int> fwd = walk(+1), bwd = walk(-1);
  return std::min(fwd, bwd);
}

void Runner::exec_create(const Instruction& ins) {
  int qa = qubit_index(ins.q1), qb = qubit_index(ins.q2);
  int ca = -1, cb = -1;
  for (int k = 0; k < 4 && ca < 0; ++k) {
    int c = 4 * qa + k, l = g_.link_of(c);
    if (l >= 0 && l / 4 == qb) {
      ca = c;
      cb = l;
    }
  }
  require(ca >= 0, ErrorCode::LinkAbsent, "no L-link between the named qubits");
  DecoratedGraph g2 = g_.delete_L_link(ca, cb);
  orient_ = kasteleyn::carry(g_, orient_, g2);
  g_ = std::move(g2);
  anyons_[ins.a] = ca;
  anyons_[ins.b] = cb;

  int f = g_.big_face_at(ca);
  require(f >= 0 && f == g_.big_face_at(cb), ErrorCode::ValidationFailed,
          "creation corners separated");
  std::vector<int> arc = lex_smaller_arc(f, ca, cb);
  require(paths::is_valid(g_, arc), ErrorCode::InvalidPath, "creation arc is not a valid path");
  PauliString op = compiler::compile_walk(g_, arc);
  require(op.hermitian(), ErrorCode::NonHermitianObservable, "pair line not Hermitian");
  tracked_.push_back({ins.a, ins.b, std::move(arc), std::move(op)});
  rebuild_parked();
  check_fluxes();
}

int Runner::exec_move_anyon(const std::string& name, int target_corner) {
  return exec_move_corner(anyon(name), target_corner, name);
}

int Runner::exec_move_corner(int c1, int target_corner, const std::string& name) {
  std::vector<compiler::CornerFlux> cfs;
  for (const auto& [an, sign] : attached_flux_)
    cfs.push_back({anyon(an), an == name ? target_corner : anyon(an), sign});
  auto mo = compiler::elementary_move(g_, orient_, c1, target_corner, cfs, parked_flux_);

  if (engine_) engine_->apply_rotation(mo.w, mo.zeta);
  if (oracle_) oracle_->apply_rotation(mo.w, mo.zeta);

  for (auto& tl : tracked_) {
    // the line extends only when its own endpoint moves; bystander moves leave
    // the path, and hence the operator, untouched
    bool endpoint_move = !name.empty() && (tl.a == name || tl.b == name);
    if (endpoint_move && !mo.w.commutes(tl.op)) {
      tl.op = PauliString::mul(mo.w, tl.op);
      tl.op.mul_phase_exp(mo.zeta > 0 ? 3 : 1);  // U P U^dag = -zeta i W P
    }
    // a retracting move shortens the route instead of leaving a spur: the
    // spur's two traversals cancel, and its compiled sign with them
    if (tl.a == name && !tl.corners.empty() && tl.corners.front() == c1) {
      std::vector<int> seg = paths::reversed(mo.path);
      size_t i = seg.size() - 1, j = 0;
      while (i > 0 && j + 1 < tl.corners.size() && seg[i - 1] == tl.corners[j + 1]) {
        --i;
        ++j;
      }
      std::vector<int> ext(seg.begin(), seg.begin() + i + 1);
      ext.insert(ext.end(), tl.corners.begin() + j + 1, tl.corners.end());
      tl.corners = std::move(ext);
    } else if (tl.b == name && !tl.corners.empty() && tl.corners.back() == c1) {
      const std::vector<int>& seg = mo.path;
      size_t i = tl.corners.size() - 1, j = 0;
      while (i > 0 && j + 1 < seg.size() && tl.corners[i - 1] == seg[j + 1]) {
        --i;
        ++j;
      }
      tl.corners.resize(i + 1);
      tl.corners.insert(tl.corners.end(), seg.begin() + j + 1, seg.end());
    }
  }

  g_ = std::move(mo.graph);
  orient_ = std::move(mo.orientation);
  if (!name.empty()) anyons_[name] = target_corner;
  check_fluxes();
  return mo.zeta;
}

std::vector<int> Runner::exec_braid(const std::string& a, const std::string& b, bool cw) {
  uint64_t h0 = g_.structure_hash();
  int ca = anyon(a), cb = anyon(b);
  auto plan = find_exchange_moves(g_, ca, cb, !cw);
  std::vector<int> zetas;
  for (const auto& [from, to] : plan) {
    std::string name;  // helpers may be unnamed native sigmas; moving them is still legal
    for (const auto& [nm, cc] : anyons_)
      if (cc == from) {
        name = nm;
        break;
      }
    zetas.push_back(exec_move_corner(from, to, name));
  }
  require(anyons_.at(a) == cb && anyons_.at(b) == ca, ErrorCode::ValidationFailed,
          "exchange failed to swap the anyons");
  require(g_.structure_hash() == h0, ErrorCode::ValidationFailed,
          "exchange failed to restore the graph");
  return zetas;
}

int Runner::exec_fuse(const Instruction& ins) {
  int ca = anyon(ins.a), cb = anyon(ins.b);
  int f = g_.big_face_at(ca);
  require(f >= 0 && f == g_.big_face_at(cb), ErrorCode::NotAdjacent,
          "fused anyons share no face");
  std::vector<int> arc = lex_smaller_arc(f, ca, cb);
  require(paths::is_valid(g_, arc), ErrorCode::InvalidPath, "fusion arc is not a valid path");
  PauliString op = compiler::compile_walk(g_, arc);
  require(op.hermitian(), ErrorCode::NonHermitianObservable, "fusion line not Hermitian");
  int outcome = measure_observable(op);

  DecoratedGraph g2 = g_.add_L_link(ca, cb);
  orient_ = kasteleyn::carry(g_, orient_, g2);
  g_ = std::move(g2);
  anyons_.erase(ins.a);
  anyons_.erase(ins.b);
  attached_flux_.erase(ins.a);
  attached_flux_.erase(ins.b);
  tracked_.erase(std::remove_if(tracked_.begin(), tracked_.end(),
                                [&](const TrackedLine& tl) {
                                  return (tl.a == ins.a && tl.b == ins.b) ||
                                         (tl.a == ins.b && tl.b == ins.a);
                                }),
                 tracked_.end());
  rebuild_parked();
  check_fluxes();
  return outcome;
}

int Runner::exec_thooft(const Instruction& ins) {
  std::vector<int> seq;
  for (const std::string& key : ins.keys) {
    int f = g_.face_by_key(key);
    require(f >= 0, ErrorCode::ValidationFailed, "unknown face key " + key);
    seq.push_back(f);
  }
  auto res = compiler::compile_thooft(g_, seq);
  require(res.op.hermitian(), ErrorCode::NonHermitianObservable, "disorder line not Hermitian");
  int outcome = measure_observable(res.op);
  if (!res.closed) rebuild_parked();  // the end plaquettes decohere
  check_fluxes();
  return outcome;
}

void Runner::exec_flux(const Instruction& ins) {
  int c = anyon(ins.a);
  int f0 = g_.enclosing_plaquette(c);
  require(f0 >= 0, ErrorCode::ValidationFailed, "anyon plaquette is the outer face");
  require(!ins.keys.empty() && ins.keys.front() == g_.faces()[f0].key, ErrorCode::ValidationFailed,
          "flux path must start at the anyon plaquette");
  std::vector<int> seq;
  for (const std::string& key : ins.keys) {
    int f = g_.face_by_key(key);
    require(f >= 0, ErrorCode::ValidationFailed, "unknown face key " + key);
    seq.push_back(f);
  }
  auto res = compiler::compile_thooft(g_, seq);
  require(!res.closed, ErrorCode::ValidationFailed, "flux path must be open");
  apply_pauli_both(res.op);
  auto it = attached_flux_.find(ins.a);
  if (it == attached_flux_.end())
    attached_flux_[ins.a] = -1;
  else
    attached_flux_.erase(it);
  rebuild_parked();
  check_fluxes();
}

Runner::Outcome Runner::exec(const Instruction& ins) {
  switch (ins.op) {
    case Op::Load:
      exec_load(ins);
      return {};
    case Op::Seed:
      if (!seed_override_) seed_ = ins.seed;
      return {};
    case Op::Init:
      exec_init(ins);
      return {};
    case Op::Create:
      exec_create(ins);
      return {};
    case Op::Move: {
      int q = qubit_index(ins.q1);
      int zeta = exec_move_anyon(ins.a, slot_corner(q, ins.slot));
      return {Outcome::Value, zeta, {}};
    }
    case Op::Braid: {
      std::vector<int> zetas = exec_braid(ins.a, ins.b, ins.cw);
      return {Outcome::List, 0, std::move(zetas)};
    }
    case Op::MeasureWilson: {
      std::vector<int> via;
      for (int id : ins.via) via.push_back(qubit_index(id));
      std::vector<int> walk = paths::lift_line(g_, anyon(ins.a), anyon(ins.b), via);
      int ratio = paths::canonicalize(g_, walk);
      PauliString op = compiler::compile_walk(g_, walk);
      if (ratio < 0) op.mul_phase_exp(2);  // measured line is the uncanonicalized one
      require(op.hermitian(), ErrorCode::NonHermitianObservable, "line not Hermitian");
      int r = measure_observable(op);
      check_fluxes();
      return {Outcome::Value, r, {}};
    }
    case Op::MeasureTracked: {
      for (const TrackedLine& tl : tracked_)
        if ((tl.a == ins.a && tl.b == ins.b) || (tl.a == ins.b && tl.b == ins.a)) {
          // the path is the authoritative record of the pair's history; compile
          // it fresh when it is live on the current graph
          PauliString op = tl.op;
          if (paths::is_valid(g_, tl.corners)) {
            std::vector<int> walk = tl.corners;
            int ratio = paths::canonicalize(g_, walk);
            op = compiler::compile_walk(g_, walk);
            if (ratio < 0) op.mul_phase_exp(2);  // history path, not its canonical form
          }
          require(op.hermitian(), ErrorCode::NonHermitianObservable,
                  "tracked line not Hermitian");
          int r = measure_observable(op);
          check_fluxes();
          return {Outcome::Value, r, {}};
        }
      fail(ErrorCode::ValidationFailed, "no tracked line between " + ins.a + " and " + ins.b);
    }
    case Op::MeasureThooft:
      return {Outcome::Value, exec_thooft(ins), {}};
    case Op::Fuse:
      return {Outcome::Value, exec_fuse(ins), {}};
    case Op::Expect:
      return {Outcome::Value, expectation_observable(parse_pauli(ins.pauli)), {}};
    case Op::Flux:
      exec_flux(ins);
      return {};
  }
  fail(ErrorCode::ValidationFailed, "unhandled directive");
}

std::string Runner::run() {
  sc_.validate();
  ordered_json rec;
  rec["seed"] = 0;
  rec["instructions"] = ordered_json::array();
  for (size_t i = 0; i < sc_.instructions.size(); ++i) {
    const Instruction& ins = sc_.instructions[i];
    ordered_json entry;
    entry["op"] = ins.text;
    Outcome oc;
    try {
      oc = exec(ins);
    } catch (const Error& e) {
      fail(e.code(), "instruction " + std::to_string(i) + " (line " + std::to_string(ins.line) +
                         "): " + e.detail());
    }
    switch (oc.kind) {
      case Outcome::Null:
        entry["outcome"] = nullptr;
        break;
      case Outcome::Value:
        entry["outcome"] = oc.value;
        break;
      case Outcome::List:
        entry["outcome"] = oc.list;
        break;
    }
    entry["stabilizer_signs"] = ordered_json::object();
    for (const auto& [key, sign] : stabilizer_signs()) entry["stabilizer_signs"][key] = sign;
    rec["instructions"].push_back(std::move(entry));
  }
  rec["seed"] = seed_;
  if (engine_) engine_->self_check();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)g_.structure_hash());
  rec["final_graph_hash"] = loaded_ ? std::string(hex) : std::string();
  record_ = rec.dump(1) + "\n";
  return record_;
}

std::string run_scenario(const Scenario& sc, Backend backend,
                         std::optional<uint64_t> seed_override) {
  Runner r(sc, backend, seed_override);
  return r.run();
}

}  // namespace psc
