#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "psc/compiler.hpp"
#include "psc/decorated_graph.hpp"
#include "psc/dense.hpp"
#include "psc/error.hpp"
#include "psc/kasteleyn.hpp"
#include "psc/paths.hpp"
#include "psc/pauli.hpp"
#include "psc/rng.hpp"
#include "psc/surface_graph.hpp"

namespace {

using namespace psc;

DecoratedGraph load(const std::string& name) {
  return DecoratedGraph::decorate(SurfaceGraph::load("data/" + name));
}

std::vector<PauliString> plaquettes(const DecoratedGraph& g) {
  std::vector<PauliString> out;
  for (int f : g.stabilizer_faces()) out.push_back(compiler::stabilizer(g, f));
  return out;
}

TEST_CASE("stabilizers are Hermitian, commuting, and match their loops") {
  for (const char* name : {"strip10.psc", "fig5a.psc", "ghz16.psc"}) {
    DecoratedGraph g = load(name);
    std::vector<PauliString> ps = plaquettes(g);
    for (size_t i = 0; i < ps.size(); ++i) {
      CHECK(ps[i].hermitian());
      for (size_t j = i + 1; j < ps.size(); ++j) CHECK(ps[i].commutes(ps[j]));
    }
    for (int f : g.stabilizer_faces())
      CHECK(compiler::compile_loop(g, g.faces()[f].corners) == compiler::stabilizer(g, f));
  }
}

TEST_CASE("stabilizer letters") {
  DecoratedGraph s = load("strip10.psc");
  CHECK(compiler::stabilizer(s, s.face_by_key("0,1,5,6")).text() == "+1|YXIIIYZIII");

  DecoratedGraph f = load("fig5a.psc");
  PauliString b = compiler::stabilizer(f, f.face_by_key("6,7,11,12"));
  CHECK(b.letter(f.qubit_index_of_id(6)) == 'Z');
  CHECK(b.letter(f.qubit_index_of_id(7)) == 'X');
  CHECK(b.letter(f.qubit_index_of_id(11)) == 'X');
  CHECK(b.letter(f.qubit_index_of_id(12)) == 'Z');
  CHECK(b.weight() == 4);
}

TEST_CASE("intra-diamond bilinear") {
  DecoratedGraph g = load("strip10.psc");
  std::vector<int> w = paths::lift_line(g, 1, 3, {});
  CHECK(compiler::compile_walk(g, w).text() == "+1|YIIIIIIIII");
}

TEST_CASE("rotation decomposition, frozen single-qubit circuits") {
  struct Row {
    const char* axis;
    int eighths;
    std::vector<std::string> lines;
  };
  const std::vector<Row> rows = {
      {"+1|X", -1, {"H 0", "S 0", "H 0"}},
      {"+1|Y", -1, {"SDG 0", "H 0", "S 0", "H 0", "S 0"}},
      {"+1|Z", -1, {"S 0"}},
      {"-1|X", 1, {"H 0", "SDG 0", "H 0"}},
      {"-1|Y", 1, {"SDG 0", "H 0", "SDG 0", "H 0", "S 0"}},
      {"-1|Z", 1, {"SDG 0"}},
  };
  for (const Row& r : rows) {
    compiler::GateList gl = compiler::decompose_rotation(PauliString::from_text(r.axis));
    CHECK(gl.global_phase_eighths == r.eighths);
    CHECK(gl.lines == r.lines);
  }
}

TEST_CASE("rotation decomposition agrees with the dense rotation") {
  Rng rng(2026);
  auto random_state = [&](int n) {
    std::vector<std::complex<double>> amp(size_t(1) << n);
    double norm = 0;
    for (auto& a : amp) {
      double re = double(rng.next() >> 11) / 9007199254740992.0 - 0.5;
      double im = double(rng.next() >> 11) / 9007199254740992.0 - 0.5;
      a = {re, im};
      norm += std::norm(a);
    }
    for (auto& a : amp) a /= std::sqrt(norm);
    return amp;
  };
  for (const char* t : {"+1|X", "-1|Y", "+1|ZZ", "-1|XY", "+1|ZXY", "-1|YIZ", "+1|XXXX"}) {
    PauliString axis = PauliString::from_text(t);
    int n = axis.num_qubits();
    std::vector<std::complex<double>> amp = random_state(n);
    DenseOracle a(n, amp), b(n, amp);
    a.apply_rotation(axis, +1);
    compiler::GateList gl = compiler::decompose_rotation(axis);
    for (const std::string& line : gl.lines) b.apply_gate_line(line);
    b.apply_phase_eighths(gl.global_phase_eighths);
    for (size_t i = 0; i < amp.size(); ++i)
      CHECK(std::abs(a.amplitudes()[i] - b.amplitudes()[i]) < 1e-12);
  }
}

TEST_CASE("disorder lines") {
  DecoratedGraph s = load("strip10.psc");
  std::vector<int> seq = {s.face_by_key("0,1,5,6"), s.face_by_key("1,2,6,7"),
                          s.face_by_key("2,3,7,8")};
  compiler::ThooftResult open = compiler::compile_thooft(s, seq);
  CHECK(!open.closed);
  CHECK(open.op.text() == "+1|IZXIIIIIII");
  CHECK(open.start_face_key == "0,1,5,6");
  CHECK(open.end_face_key == "2,3,7,8");
  CHECK(open.op.hermitian());

  // an odd number of crossed links is not a measurable line
  try {
    compiler::compile_thooft(s, {seq[0], seq[1]});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddOpenPath);
  }

  // a closed dual loop compiles into the plus-signed stabilizer group
  DecoratedGraph f = load("fig5a.psc");
  std::vector<int> loop;
  for (const char* k : {"5,6,10,11", "6,7,11,12", "11,12,16,17", "10,11,15,16", "5,6,10,11"})
    loop.push_back(f.face_by_key(k));
  compiler::ThooftResult closed = compiler::compile_thooft(f, loop);
  CHECK(closed.closed);
  CHECK(compiler::in_group_with_plus_sign(plaquettes(f), closed.op));
}

TEST_CASE("disorder line through the outer face") {
  DecoratedGraph g0 = load("ghz16.psc");
  DecoratedGraph g1 = g0.delete_L_link(g0.corner_by_compass(9, 'S'), g0.corner_by_compass(5, 'N'));
  DecoratedGraph g = g1.delete_L_link(g1.corner_by_compass(10, 'S'), g1.corner_by_compass(6, 'N'));
  std::vector<int> seq;
  for (const char* k :
       {"", "0,1,2,3", "1,2,5,6", "4,5,6,7,8,9,10,11", "9,10,13,14", "12,13,14,15", ""})
    seq.push_back(*k ? g.face_by_key(k) : g.outer_face());
  compiler::ThooftResult res = compiler::compile_thooft(g, seq);
  CHECK(res.closed);
  CHECK(res.op.text() == "+1|IIZXIIYZIIYZIIZX");
  for (int f : g.stabilizer_faces()) CHECK(res.op.commutes(compiler::stabilizer(g, f)));
}

TEST_CASE("elementary move") {
  DecoratedGraph g0 = load("strip10.psc");
  DecoratedGraph g = g0.delete_L_link(g0.corner_by_compass(6, 'S'), g0.corner_by_compass(1, 'N'));
  Orientation o = kasteleyn::find(g);
  kasteleyn::check(g, o);
  int a = g.corner_by_compass(6, 'S');
  int t = g.corner_by_compass(7, 'S');

  compiler::MoveOutcome out = compiler::elementary_move(g, o, a, t);
  CHECK(out.zeta == 1);
  CHECK(out.w.hermitian());
  CHECK(out.path.front() == a);
  CHECK(out.path.back() == t);
  CHECK(paths::is_valid(g, out.path));
  kasteleyn::check(out.graph, out.orientation);
  CHECK(out.graph.unpaired(t));
  CHECK(!out.graph.unpaired(a));

  // the reverse hop undoes the surgery with the opposite rotation sense
  compiler::MoveOutcome back = compiler::elementary_move(out.graph, out.orientation, t, a);
  CHECK(back.zeta == -1);
  CHECK(back.graph.same_structure(g));

  // an attached pi flux flips the rotation sense of the same hop
  compiler::MoveOutcome composite =
      compiler::elementary_move(g, o, a, t, {compiler::CornerFlux{a, t, -1}});
  CHECK(composite.zeta == -out.zeta);
  CHECK(composite.graph.same_structure(out.graph));

  // a parked flux on a plaquette the hop splits is refused
  try {
    compiler::elementary_move(g, o, a, t, {}, {{"0,1,2,5,6,7", -1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationFailed);
  }
  // one far away is carried through untouched
  compiler::MoveOutcome far =
      compiler::elementary_move(g, o, a, t, {}, {{"3,4,8,9", -1}});
  CHECK(far.zeta == out.zeta);
}

TEST_CASE("plus-signed group membership") {
  DecoratedGraph g = load("strip10.psc");
  std::vector<PauliString> ps = plaquettes(g);
  REQUIRE(ps.size() == 4);

  PauliString prod = PauliString::mul(ps[0], ps[2]);
  bool letters = false;
  CHECK(compiler::in_group_with_plus_sign(ps, prod, &letters));
  CHECK(letters);

  PauliString neg = ps[1];
  neg.mul_phase_exp(2);
  letters = false;
  CHECK(!compiler::in_group_with_plus_sign(ps, neg, &letters));
  CHECK(letters);

  PauliString off = PauliString::single(g.num_qubits(), 0, 'X');
  letters = true;
  CHECK(!compiler::in_group_with_plus_sign(ps, off, &letters));
  CHECK(!letters);

  CHECK(compiler::in_group_with_plus_sign(ps, PauliString::identity(g.num_qubits())));
}

}  // namespace
