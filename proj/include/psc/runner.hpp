#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psc/compiler.hpp"
#include "psc/decorated_graph.hpp"
#include "psc/dense.hpp"
#include "psc/kasteleyn.hpp"
#include "psc/rng.hpp"
#include "psc/scenario.hpp"
#include "psc/tableau.hpp"

namespace psc {

enum class Backend { Engine, Oracle };

// Move plan for one ccw (or cw) exchange of the anyons at two corners; each
// entry is (corner the anyon sits on, corner it hops to). Restores the graph
// structure and swaps the two positions.
std::vector<std::pair<int, int>> find_exchange_moves(const DecoratedGraph& g, int corner_a,
                                                     int corner_b, bool ccw);

class Runner {
 public:
  Runner(const Scenario& sc, Backend backend, std::optional<uint64_t> seed_override);

  // Executes every instruction and returns the serialized run record.
  std::string run();

  const DecoratedGraph& graph() const { return g_; }
  const StabilizerEngine* engine() const { return engine_ ? &*engine_ : nullptr; }
  const DenseOracle* oracle() const { return oracle_ ? &*oracle_ : nullptr; }
  int anyon_corner(const std::string& name) const;

 private:
  struct TrackedLine {
    std::string a, b;
    std::vector<int> corners;  // from a to b; bookkeeping, the op is the truth
    PauliString op;            // exact operator, conjugated through moves
  };

  struct Outcome {
    enum Kind { Null, Value, List } kind = Null;
    int value = 0;
    std::vector<int> list;
  };

  Outcome exec(const Instruction& ins);
  void exec_load(const Instruction& ins);
  void exec_init(const Instruction& ins);
  void exec_create(const Instruction& ins);
  int exec_move_anyon(const std::string& name, int target_corner);  // returns zeta
  int exec_move_corner(int c1, int target_corner, const std::string& name);  // name may be empty
  std::vector<int> exec_braid(const std::string& a, const std::string& b, bool cw);
  int exec_fuse(const Instruction& ins);
  int exec_thooft(const Instruction& ins);
  void exec_flux(const Instruction& ins);

  std::vector<PauliString> auto_candidates() const;
  std::vector<int> lex_smaller_arc(int face, int ca, int cb) const;
  int measure_observable(const PauliString& obs);
  int expectation_observable(const PauliString& obs) const;
  void apply_pauli_both(const PauliString& p);
  void check_fluxes() const;
  void rebuild_parked();
  std::map<std::string, int> flux_map() const;
  std::map<std::string, int> stabilizer_signs() const;
  int qubit_index(int qubit_id) const;
  int slot_corner(int qubit_idx, const std::string& slot) const;
  int anyon(const std::string& name) const;
  PauliString parse_pauli(const std::string& text) const;

  Scenario sc_;
  Backend backend_;
  std::optional<uint64_t> seed_override_;

  SurfaceGraph sg_;
  DecoratedGraph g_;
  Orientation orient_;
  bool loaded_ = false;
  bool inited_ = false;
  uint64_t seed_ = 1;
  std::optional<Rng> rng_;
  std::optional<StabilizerEngine> engine_;
  std::optional<DenseOracle> oracle_;

  std::map<std::string, int> anyons_;       // name -> corner
  std::vector<TrackedLine> tracked_;        // one per created pair
  std::map<std::string, int> parked_flux_;  // face key -> sign (-1 or 0)
  std::map<std::string, int> attached_flux_;  // anyon name -> -1
  std::string record_;
};

// Runs the scenario on the requested backend(s); for Both semantics callers
// run twice and compare. Returns the record text.
std::string run_scenario(const Scenario& sc, Backend backend,
                         std::optional<uint64_t> seed_override);

}  // namespace psc
