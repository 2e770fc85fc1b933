#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psc {

enum class Op {
  Load,
  Seed,
  Init,
  Create,
  Move,
  Braid,
  MeasureWilson,
  MeasureTracked,
  MeasureThooft,
  Fuse,
  Expect,
  Flux,
};

struct Instruction {
  Op op;
  int line = 0;
  std::string text;  // original directive text, echoed into the run record

  std::string a, b;                   // anyon names
  int q1 = -1, q2 = -1;               // qubit ids
  std::string slot;                   // move target slot: 0..3 or N/E/S/W
  bool cw = false;                    // braid chirality
  bool auto_init = false;             // init auto
  std::vector<std::string> logicals;  // init logical operators (pauli text)
  std::vector<std::string> keys;      // face keys (thooft, flux)
  std::vector<int> via;               // wilson route qubit ids
  std::string pauli;                  // expect operand
  uint64_t seed = 0;
  std::string path;                   // load operand
};

struct Scenario {
  std::string source_path;
  std::vector<Instruction> instructions;

  static Scenario parse_file(const std::string& path);
  static Scenario parse_text(const std::string& text, const std::string& source_path);

  // Static checks: ordering, duplicate names, references to unknown anyons.
  void validate() const;
};

}  // namespace psc
