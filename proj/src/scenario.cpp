#include "psc/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "psc/error.hpp"

namespace psc {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& t, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(t, &used);
    require(used == t.size(), ErrorCode::ValidationFailed, "");
    return v;
  } catch (...) {
    fail(ErrorCode::ValidationFailed,
         "line " + std::to_string(line) + ": expected an integer, got '" + t + "'");
  }
}

}  // namespace

Scenario Scenario::parse_text(const std::string& text, const std::string& source_path) {
  Scenario sc;
  sc.source_path = source_path;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    std::vector<std::string> t = tokenize(raw);
    if (t.empty()) continue;
    Instruction ins;
    ins.line = ln;
    for (size_t i = 0; i < t.size(); ++i) ins.text += (i ? " " : "") + t[i];
    auto need = [&](bool ok, const std::string& usage) {
      require(ok, ErrorCode::ValidationFailed,
              "line " + std::to_string(ln) + ": expected '" + usage + "'");
    };
    const std::string& kw = t[0];
    if (kw == "load") {
      need(t.size() == 2, "load <graph-file>");
      ins.op = Op::Load;
      ins.path = t[1];
    } else if (kw == "seed") {
      need(t.size() == 2, "seed <value>");
      ins.op = Op::Seed;
      try {
        ins.seed = std::stoull(t[1]);
      } catch (...) {
        need(false, "seed <value>");
      }
    } else if (kw == "init") {
      ins.op = Op::Init;
      size_t i = 1;
      if (i < t.size() && t[i] == "auto") {
        ins.auto_init = true;
        ++i;
      }
      if (i < t.size()) {
        need(t[i] == "logical" && i + 1 < t.size(), "init [auto] [logical <pauli>...]");
        for (++i; i < t.size(); ++i) ins.logicals.push_back(t[i]);
      }
    } else if (kw == "create") {
      need(t.size() == 6 && t[3] == "edge", "create <a> <b> edge <q1> <q2>");
      ins.op = Op::Create;
      ins.a = t[1];
      ins.b = t[2];
      ins.q1 = parse_int(t[4], ln);
      ins.q2 = parse_int(t[5], ln);
    } else if (kw == "move") {
      need(t.size() == 5 && t[2] == "to", "move <anyon> to <qubit> <slot>");
      ins.op = Op::Move;
      ins.a = t[1];
      ins.q1 = parse_int(t[3], ln);
      ins.slot = t[4];
    } else if (kw == "braid") {
      need(t.size() == 3 || (t.size() == 4 && t[3] == "cw"), "braid <a> <b> [cw]");
      ins.op = Op::Braid;
      ins.a = t[1];
      ins.b = t[2];
      ins.cw = t.size() == 4;
    } else if (kw == "measure") {
      need(t.size() >= 2, "measure wilson|tracked|thooft ...");
      const std::string& what = t[1];
      if (what == "wilson") {
        need(t.size() >= 4, "measure wilson <a> <b> [via <q>...]");
        ins.op = Op::MeasureWilson;
        ins.a = t[2];
        ins.b = t[3];
        if (t.size() > 4) {
          need(t[4] == "via" && t.size() > 5, "measure wilson <a> <b> via <q>...");
          for (size_t i = 5; i < t.size(); ++i) ins.via.push_back(parse_int(t[i], ln));
        }
      } else if (what == "tracked") {
        need(t.size() == 4, "measure tracked <a> <b>");
        ins.op = Op::MeasureTracked;
        ins.a = t[2];
        ins.b = t[3];
      } else if (what == "thooft") {
        need(t.size() >= 4, "measure thooft <face-key> <face-key> ...");
        ins.op = Op::MeasureThooft;
        for (size_t i = 2; i < t.size(); ++i) ins.keys.push_back(t[i]);
      } else {
        need(false, "measure wilson|tracked|thooft ...");
      }
    } else if (kw == "fuse") {
      need(t.size() == 3, "fuse <a> <b>");
      ins.op = Op::Fuse;
      ins.a = t[1];
      ins.b = t[2];
    } else if (kw == "expect") {
      need(t.size() == 2, "expect <pauli>");
      ins.op = Op::Expect;
      ins.pauli = t[1];
    } else if (kw == "flux") {
      need(t.size() >= 4, "flux <anyon> <face-key> <face-key> ...");
      ins.op = Op::Flux;
      ins.a = t[1];
      for (size_t i = 2; i < t.size(); ++i) ins.keys.push_back(t[i]);
    } else {
      need(false, "a known directive");
    }
    sc.instructions.push_back(std::move(ins));
  }
  sc.validate();
  return sc;
}

Scenario Scenario::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ValidationFailed, "cannot open scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void Scenario::validate() const {
  bool loaded = false, inited = false;
  std::set<std::string> anyons;
  for (size_t i = 0; i < instructions.size(); ++i) {
    const Instruction& ins = instructions[i];
    auto ctx = [&](const std::string& msg) {
      return "instruction " + std::to_string(i) + " (line " + std::to_string(ins.line) +
             "): " + msg;
    };
    auto known = [&](const std::string& name) {
      require(anyons.count(name), ErrorCode::ValidationFailed, ctx("unknown anyon " + name));
    };
    switch (ins.op) {
      case Op::Load:
        require(!loaded, ErrorCode::ValidationFailed, ctx("duplicate load"));
        loaded = true;
        break;
      case Op::Seed:
        require(!inited, ErrorCode::ValidationFailed, ctx("seed after init"));
        break;
      case Op::Init:
        require(loaded, ErrorCode::ValidationFailed, ctx("init before load"));
        require(!inited, ErrorCode::ValidationFailed, ctx("duplicate init"));
        inited = true;
        break;
      case Op::Create:
        require(inited, ErrorCode::ValidationFailed, ctx("create before init"));
        require(ins.a != ins.b, ErrorCode::ValidationFailed, ctx("anyon names coincide"));
        require(!anyons.count(ins.a) && !anyons.count(ins.b), ErrorCode::ValidationFailed,
                ctx("anyon name reused"));
        anyons.insert(ins.a);
        anyons.insert(ins.b);
        break;
      case Op::Move:
        known(ins.a);
        break;
      case Op::Braid:
        known(ins.a);
        known(ins.b);
        require(ins.a != ins.b, ErrorCode::ValidationFailed, ctx("braid needs two anyons"));
        break;
      case Op::MeasureWilson:
      case Op::MeasureTracked:
        known(ins.a);
        known(ins.b);
        break;
      case Op::Fuse:
        known(ins.a);
        known(ins.b);
        require(ins.a != ins.b, ErrorCode::ValidationFailed, ctx("fuse needs two anyons"));
        anyons.erase(ins.a);
        anyons.erase(ins.b);
        break;
      case Op::Flux:
        known(ins.a);
        break;
      case Op::MeasureThooft:
      case Op::Expect:
        require(inited, ErrorCode::ValidationFailed, ctx("measurement before init"));
        break;
    }
  }
}

}  // namespace psc
