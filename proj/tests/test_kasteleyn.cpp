#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "psc/decorated_graph.hpp"
#include "psc/error.hpp"
#include "psc/kasteleyn.hpp"
#include "psc/paths.hpp"
#include "psc/rng.hpp"
#include "psc/surface_graph.hpp"

namespace {

using namespace psc;

DecoratedGraph load_decorated(const std::string& name) {
  return DecoratedGraph::decorate(SurfaceGraph::load("data/" + name));
}

TEST_CASE("admissible orientation exists on every bundled graph") {
  for (const char* f : {"strip10.psc", "strip14.psc", "strip100.psc", "fig5a.psc", "ghz16.psc"}) {
    CAPTURE(f);
    DecoratedGraph g = load_decorated(f);
    Orientation o = kasteleyn::find(g);
    CHECK(kasteleyn::check(g, o));
    for (size_t fi = 0; fi < g.faces().size(); ++fi) {
      if (g.faces()[fi].outer) continue;
      CHECK(kasteleyn::face_cw_count(g, o, (int)fi) % 2 == 1);
    }
  }
}

TEST_CASE("arrow endpoints") {
  DecoratedGraph g = load_decorated("strip10.psc");
  Orientation o = kasteleyn::find(g);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [a, b] = g.edge_corners(e);
    int t = kasteleyn::arrow_tail(g, o, e), h = kasteleyn::arrow_head(g, o, e);
    CHECK(((t == a && h == b) || (t == b && h == a)));
  }
}

TEST_CASE("gauge flips preserve admissibility") {
  DecoratedGraph g = load_decorated("strip10.psc");
  Orientation o = kasteleyn::find(g);
  Rng rng(2024);
  for (int k = 0; k < 50; ++k) {
    kasteleyn::gauge_flip(g, o, (int)(rng.next() % g.num_corners()));
    CHECK(kasteleyn::check(g, o));
  }
}

TEST_CASE("wk gauge covariance on open walks") {
  DecoratedGraph g = load_decorated("strip10.psc");
  Orientation o = kasteleyn::find(g);
  // a plaquette arc: corner path along part of the 0,1,5,6 boundary
  int f = g.face_by_key("0,1,5,6");
  const auto& cyc = g.faces()[f].corners;
  std::vector<int> walk(cyc.begin(), cyc.begin() + 5);
  int w0 = kasteleyn::wk(g, o, walk);
  CHECK((w0 == 1 || w0 == -1));

  Orientation o2 = o;  // interior corner flip leaves wk alone
  kasteleyn::gauge_flip(g, o2, walk[2]);
  CHECK(kasteleyn::wk(g, o2, walk) == w0);

  Orientation o3 = o;  // endpoint flip negates wk
  kasteleyn::gauge_flip(g, o3, walk[0]);
  CHECK(kasteleyn::wk(g, o3, walk) == -w0);
}

TEST_CASE("plaquette boundary loops carry wk == -1") {
  for (const char* f : {"strip10.psc", "fig5a.psc", "ghz16.psc"}) {
    CAPTURE(f);
    DecoratedGraph g = load_decorated(f);
    Orientation o = kasteleyn::find(g);
    for (int fi : g.stabilizer_faces()) {
      std::vector<int> loop = g.faces()[fi].corners;
      loop.push_back(loop.front());
      CHECK(kasteleyn::wk(g, o, loop) == -1);
    }
  }
}

TEST_CASE("carry across link surgery") {
  DecoratedGraph g = load_decorated("strip10.psc");
  Orientation o = kasteleyn::find(g);
  int ca = g.corner_by_compass(6, 'S');
  int cb = g.corner_by_compass(1, 'N');

  DecoratedGraph g2 = g.delete_L_link(ca, cb);
  Orientation o2 = kasteleyn::carry(g, o, g2);
  CHECK(kasteleyn::check(g2, o2));
  for (int e = 0; e < g2.num_l_edges(); ++e)  // l-edges survive with their arrows
    CHECK(kasteleyn::arrow_tail(g2, o2, e) == kasteleyn::arrow_tail(g, o, e));

  DecoratedGraph g3 = g2.add_L_link(ca, cb);
  Orientation o3 = kasteleyn::carry(g2, o2, g3);
  CHECK(kasteleyn::check(g3, o3));
}

TEST_CASE("canonicalize preserves the wk ratio") {
  DecoratedGraph g = load_decorated("strip10.psc");
  Orientation o = kasteleyn::find(g);
  int s1 = g.corner_by_compass(1, 'S');
  int s6 = g.corner_by_compass(6, 'N');
  std::vector<int> walk = paths::lift_line(g, s1, s6, {g.qubit_index_of_id(2),
                                                       g.qubit_index_of_id(7)});
  std::vector<int> canon = walk;
  int r = paths::canonicalize(g, canon);
  CHECK(kasteleyn::wk(g, o, canon) == r * kasteleyn::wk(g, o, walk));
}

}  // namespace
