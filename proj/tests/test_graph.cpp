#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "psc/decorated_graph.hpp"
#include "psc/error.hpp"
#include "psc/surface_graph.hpp"

namespace {

using namespace psc;

SurfaceGraph load_graph(const std::string& name) { return SurfaceGraph::load("data/" + name); }

GraphSpec square_spec() {
  GraphSpec s;
  s.qubits = {{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}};
  s.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return s;
}

TEST_CASE("census of the bundled graphs") {
  struct Row {
    const char* file;
    int q, s, sig;
  };
  const Row rows[] = {
      {"strip10.psc", 10, 4, 14},   {"strip14.psc", 14, 6, 18}, {"strip100.psc", 100, 49, 104},
      {"fig5a.psc", 25, 24, 4},     {"ghz16.psc", 16, 15, 4},
  };
  for (const Row& r : rows) {
    CAPTURE(r.file);
    SurfaceGraph sg = load_graph(r.file);
    CHECK(sg.num_qubits() == r.q);
    CHECK(sg.num_stabilizers() == r.s);
    CHECK(sg.num_sigma() == r.sig);
    CHECK(sg.counting_law_holds());
    sg.check_euler();
  }
}

TEST_CASE("single square") {
  SurfaceGraph sg = SurfaceGraph::build(square_spec());
  CHECK(sg.num_qubits() == 4);
  CHECK(sg.num_stabilizers() == 1);
  CHECK(sg.num_sigma() == 8);
  CHECK(sg.counting_law_holds());
  CHECK(sg.faces().size() == 2);
  CHECK(sg.faces()[sg.outer_face()].outer);
}

TEST_CASE("rotation system is ccw by angle") {
  SurfaceGraph sg = load_graph("strip10.psc");
  CHECK(sg.rotation(sg.index_of(0)) == std::vector<int>{sg.index_of(1), sg.index_of(5)});
  CHECK(sg.rotation(sg.index_of(6)) ==
        std::vector<int>{sg.index_of(7), sg.index_of(5), sg.index_of(1)});
  CHECK(sg.degree(sg.index_of(0)) == 2);
  CHECK(sg.degree(sg.index_of(6)) == 3);
  CHECK(sg.edge_exists(sg.index_of(1), sg.index_of(6)));
  CHECK(!sg.edge_exists(sg.index_of(0), sg.index_of(6)));
}

TEST_CASE("serialize round trip") {
  SurfaceGraph sg = load_graph("strip10.psc");
  SurfaceGraph sg2 = SurfaceGraph::build(SurfaceGraph::parse(sg.serialize()));
  CHECK(sg2.serialize() == sg.serialize());
  CHECK(sg2.num_sigma() == sg.num_sigma());
}

TEST_CASE("degree and embedding rejections") {
  GraphSpec leaf;
  leaf.qubits = {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {1, 1}}};
  leaf.edges = {{0, 1}, {1, 2}, {1, 3}};
  CHECK_THROWS_AS(SurfaceGraph::build(leaf), Error);

  GraphSpec star;  // hub of degree five on a pentagon rim
  star.qubits = {{0, {0, 0}}};
  for (int k = 0; k < 5; ++k) {
    double a = 2 * 3.14159265358979 * k / 5;
    star.qubits.push_back({k + 1, {2 * std::cos(a), 2 * std::sin(a)}});
    star.edges.push_back({0, k + 1});
    star.edges.push_back({k + 1, (k + 1) % 5 + 1});
  }
  try {
    SurfaceGraph::build(star);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadDegree);
  }

  GraphSpec tie = square_spec();  // two edges leaving 0 at the same angle
  tie.qubits.push_back({4, {2, 0}});
  tie.edges.push_back({0, 4});
  tie.edges.push_back({1, 4});
  CHECK_THROWS_AS(SurfaceGraph::build(tie), Error);
}

TEST_CASE("a bare cycle has colliding face keys") {
  // the square's plaquette and outer face cover the same qubits; such thin
  // samples are rejected at decoration time
  CHECK_THROWS_AS(DecoratedGraph::decorate(SurfaceGraph::build(square_spec())), Error);
}

TEST_CASE("decoration of the domino") {
  GraphSpec s;
  s.qubits = {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {0, 1}}, {4, {1, 1}}, {5, {2, 1}}};
  s.edges = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
  DecoratedGraph g = DecoratedGraph::decorate(SurfaceGraph::build(s));
  CHECK(g.num_corners() == 24);
  CHECK(g.num_l_edges() == 24);
  CHECK(g.links().size() == 7);
  CHECK(g.num_edges() == 31);
  CHECK(g.faces().size() == 9);  // six diamonds, two plaquettes, outer
  CHECK(g.stabilizer_faces().size() == 2);
  CHECK(g.num_sigma() == 10);
  CHECK(g.counting_law_holds());
  g.check_euler();
  for (int c = 0; c < g.num_corners(); ++c)
    if (!g.unpaired(c)) {
      CHECK(g.link_of(g.link_of(c)) == c);
      CHECK(g.edge_between(c, g.link_of(c)) >= g.num_l_edges());
    }
}

TEST_CASE("l edge letters alternate") {
  CHECK(DecoratedGraph::l_letter(0) == 'Z');
  CHECK(DecoratedGraph::l_letter(1) == 'X');
  CHECK(DecoratedGraph::l_letter(2) == 'Z');
  CHECK(DecoratedGraph::l_letter(3) == 'X');
}

TEST_CASE("compass slots on the strip") {
  DecoratedGraph g = DecoratedGraph::decorate(load_graph("strip10.psc"));
  int e0 = g.corner_by_compass(0, 'E');
  CHECK(!g.unpaired(e0));
  int s2 = g.corner_by_compass(2, 'S');
  CHECK(g.unpaired(s2));
  CHECK(g.enclosing_plaquette(s2) == -1);  // points off the sample
  CHECK_THROWS_AS(g.corner_by_compass(0, 'S'), Error);

  // the bottom-right qubit keeps one sigma facing the interior plaquette
  int nw4 = -1;
  for (int c = 4 * 4; c < 4 * 5; ++c)
    if (g.unpaired(c) && g.corner_dir(c).x < 0 && g.corner_dir(c).y > 0) nw4 = c;
  REQUIRE(nw4 >= 0);
  int f = g.enclosing_plaquette(nw4);
  REQUIRE(f >= 0);
  CHECK(g.faces()[f].key == "3,4,8,9");
}

TEST_CASE("face keys") {
  DecoratedGraph g = DecoratedGraph::decorate(load_graph("strip10.psc"));
  CHECK(g.stabilizer_faces().size() == 4);
  for (const char* key : {"0,1,5,6", "1,2,6,7", "2,3,7,8", "3,4,8,9"})
    CHECK(g.face_by_key(key) >= 0);
  CHECK(g.face_by_key("d3") >= 0);
  CHECK(g.face_by_key("nope") == -1);
  CHECK(g.faces()[g.outer_face()].key == "0,1,2,3,4,5,6,7,8,9");
}

TEST_CASE("link surgery round trip") {
  DecoratedGraph g = DecoratedGraph::decorate(load_graph("strip10.psc"));
  uint64_t h = g.structure_hash();
  int ca = g.corner_by_compass(6, 'S');
  int cb = g.corner_by_compass(1, 'N');
  DecoratedGraph g2 = g.delete_L_link(ca, cb);
  CHECK(g2.num_sigma() == g.num_sigma() + 2);
  CHECK(g2.stabilizer_faces().size() == 3);
  CHECK(g2.counting_law_holds());
  CHECK(g2.face_by_key("0,1,2,5,6,7") >= 0);
  CHECK_THROWS_AS(g2.delete_L_link(ca, cb), Error);
  DecoratedGraph g3 = g2.add_L_link(ca, cb);
  CHECK(g3.structure_hash() == h);
  CHECK(g3.same_structure(g));
}

}  // namespace
