#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psc/compiler.hpp"
#include "psc/decorated_graph.hpp"
#include "psc/error.hpp"
#include "psc/kasteleyn.hpp"
#include "psc/paths.hpp"
#include "psc/render.hpp"
#include "psc/runner.hpp"
#include "psc/scenario.hpp"
#include "psc/surface_graph.hpp"

namespace {

using namespace psc;

DecoratedGraph load_decorated(const std::string& path) {
  return DecoratedGraph::decorate(SurfaceGraph::load(path));
}

int slot_corner(const DecoratedGraph& g, int qubit_id, const std::string& slot) {
  int q = g.qubit_index_of_id(qubit_id);
  require(q >= 0, ErrorCode::ValidationFailed, "unknown qubit id " + std::to_string(qubit_id));
  if (slot.size() == 1 && std::isalpha((unsigned char)slot[0]))
    return g.corner_by_compass(q, (char)std::toupper((unsigned char)slot[0]));
  require(slot.size() == 1 && slot[0] >= '0' && slot[0] <= '3', ErrorCode::ValidationFailed,
          "slot must be 0..3 or N/E/S/W");
  return 4 * q + (slot[0] - '0');
}

void print_op_and_gates(const PauliString& op) {
  std::cout << "op " << op.text() << "\n";
  if (!op.hermitian()) return;
  for (int sense : {+1, -1}) {
    PauliString axis = op;
    if (sense < 0) axis.mul_phase_exp(2);
    auto gl = compiler::decompose_rotation(axis);
    std::cout << (sense > 0 ? "U+" : "U-") << " phase_eighths " << gl.global_phase_eighths
              << "\n";
    for (const std::string& line : gl.lines) std::cout << "  " << line << "\n";
  }
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::ValidationFailed, "cannot write " + path);
  out << content;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"plaquette surface code tools"};
  app.require_subcommand(1);

  std::string graph_path, scn_path, out_path, svg_path, backend = "both", slot_a, slot_b;
  std::vector<int> route;
  std::vector<std::string> keys, path_specs;
  std::optional<uint64_t> seed;
  int qa = 0, qb = 0;
  bool with_orientation = false;

  auto* verify = app.add_subcommand("verify", "check a graph file and its invariants");
  verify->add_option("graph", graph_path)->required();

  auto* compile = app.add_subcommand("compile", "compile operators on a graph");
  compile->require_subcommand(1);
  auto* cline = compile->add_subcommand("line", "open string between two sigma corners");
  cline->add_option("graph", graph_path)->required();
  cline->add_option("qubit_a", qa)->required();
  cline->add_option("slot_a", slot_a)->required();
  cline->add_option("qubit_b", qb)->required();
  cline->add_option("slot_b", slot_b)->required();
  cline->add_option("--via", route, "intermediate qubit ids");
  auto* cloop = compile->add_subcommand("loop", "closed string along a qubit cycle");
  cloop->add_option("graph", graph_path)->required();
  cloop->add_option("cycle", route, "qubit ids around the loop")->required()->expected(-3);
  auto* cstab = compile->add_subcommand("stabilizer", "plaquette operator by face key");
  cstab->add_option("graph", graph_path)->required();
  cstab->add_option("key", keys, "face key")->required()->expected(1);
  auto* cthooft = compile->add_subcommand("thooft", "disorder line along a dual path");
  cthooft->add_option("graph", graph_path)->required();
  cthooft->add_option("keys", keys, "face keys of the dual path")->required()->expected(-2);

  auto* run = app.add_subcommand("run", "execute a scenario");
  run->add_option("scenario", scn_path)->required();
  run->add_option("--backend", backend)->check(CLI::IsMember({"engine", "oracle", "both"}));
  run->add_option("--seed", seed)->envname("PSC_SEED");
  run->add_option("--out", out_path, "record file (stdout when omitted)");

  auto* render = app.add_subcommand("render", "render a graph to SVG");
  render->add_option("graph", graph_path)->required();
  render->add_option("--svg", svg_path)->required();
  render->add_flag("--orientation", with_orientation);
  render->add_option("--path", path_specs, "comma-separated corner walk, repeatable");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    SurfaceGraph sg = SurfaceGraph::load(graph_path);
    DecoratedGraph g = DecoratedGraph::decorate(sg);
    Orientation o = kasteleyn::find(g);
    bool balance = sg.counting_law_holds();
    bool kast = kasteleyn::check(g, o);
    std::cout << "qubits " << sg.num_qubits() << "\n";
    std::cout << "stabilizers " << sg.num_stabilizers() << "\n";
    std::cout << "sigma " << sg.num_sigma() << "\n";
    std::cout << "balance " << (balance ? "ok" : "violated") << "\n";
    std::cout << "kasteleyn " << (kast ? "ok" : "violated") << "\n";
    return balance && kast ? 0 : 1;
  }
  if (cline->parsed()) {
    DecoratedGraph g = load_decorated(graph_path);
    std::vector<int> via;
    for (int id : route) {
      int q = g.qubit_index_of_id(id);
      require(q >= 0, ErrorCode::ValidationFailed, "unknown qubit id " + std::to_string(id));
      via.push_back(q);
    }
    std::vector<int> walk =
        paths::lift_line(g, slot_corner(g, qa, slot_a), slot_corner(g, qb, slot_b), via);
    paths::canonicalize(g, walk);
    print_op_and_gates(compiler::compile_walk(g, walk));
    return 0;
  }
  if (cloop->parsed()) {
    DecoratedGraph g = load_decorated(graph_path);
    std::vector<int> cycle;
    for (int id : route) {
      int q = g.qubit_index_of_id(id);
      require(q >= 0, ErrorCode::ValidationFailed, "unknown qubit id " + std::to_string(id));
      cycle.push_back(q);
    }
    print_op_and_gates(compiler::compile_loop(g, paths::lift_loop(g, cycle)));
    return 0;
  }
  if (cstab->parsed()) {
    DecoratedGraph g = load_decorated(graph_path);
    int f = g.face_by_key(keys[0]);
    require(f >= 0, ErrorCode::ValidationFailed, "unknown face key " + keys[0]);
    print_op_and_gates(compiler::stabilizer(g, f));
    return 0;
  }
  if (cthooft->parsed()) {
    DecoratedGraph g = load_decorated(graph_path);
    std::vector<int> seq;
    for (const std::string& key : keys) {
      int f = g.face_by_key(key);
      require(f >= 0, ErrorCode::ValidationFailed, "unknown face key " + key);
      seq.push_back(f);
    }
    auto res = compiler::compile_thooft(g, seq);
    std::cout << (res.closed ? "closed" : "open " + res.start_face_key + " " + res.end_face_key)
              << "\n";
    print_op_and_gates(res.op);
    return 0;
  }
  if (run->parsed()) {
    Scenario sc = Scenario::parse_file(scn_path);
    if (backend == "both") {
      std::string re = run_scenario(sc, Backend::Engine, seed);
      std::string ro = run_scenario(sc, Backend::Oracle, seed);
      require(re == ro, ErrorCode::ValidationFailed, "engine and oracle records diverge");
      write_out(out_path, re);
    } else {
      write_out(out_path, run_scenario(
                              sc, backend == "engine" ? Backend::Engine : Backend::Oracle, seed));
    }
    return 0;
  }
  if (render->parsed()) {
    DecoratedGraph g = load_decorated(graph_path);
    Orientation o;
    RenderOptions opts;
    if (with_orientation) {
      o = kasteleyn::find(g);
      opts.orientation = &o;
    }
    for (const std::string& spec : path_specs) {
      std::vector<int> walk;
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) walk.push_back(std::stoi(tok));
      opts.paths.push_back(std::move(walk));
    }
    write_out(svg_path, render_svg(g, opts));
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    std::cerr << "ERR " << code_name(e.code()) << " " << e.detail() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERR ValidationFailed " << e.what() << "\n";
    return 1;
  }
}
