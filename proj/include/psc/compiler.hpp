#pragma once

#include <map>
#include <string>
#include <vector>

#include "psc/decorated_graph.hpp"
#include "psc/kasteleyn.hpp"
#include "psc/pauli.hpp"

namespace psc::compiler {

// Operator of an open corner walk: one letter per l-edge hop (earliest hop
// rightmost), L-hops silent, times (-i) per interior all-l vertex.
PauliString compile_walk(const DecoratedGraph& g, const std::vector<int>& corners);

// Loop operator: the loop is opened at its lexicographically smallest L-link
// and compiled as the resulting open walk.
PauliString compile_loop(const DecoratedGraph& g, const std::vector<int>& loop);

// Plaquette stabilizer: the ccw boundary loop of an interior non-diamond face.
PauliString stabilizer(const DecoratedGraph& g, int face);

struct ThooftResult {
  PauliString op;
  bool closed = false;
  std::string start_face_key;  // flux endpoints for open lines
  std::string end_face_key;
};

// Disorder line along a dual path (sequence of face indices; closed if the
// first face repeats at the end). Crossed L-links are paired in travel order,
// each pair bridged by the Wilson arc between them; later arcs multiply from
// the left. Odd crossing counts are rejected.
ThooftResult compile_thooft(const DecoratedGraph& g, const std::vector<int>& face_seq);

struct MoveOutcome {
  DecoratedGraph graph;
  Orientation orientation;
  std::vector<int> path;  // corner walk from the old to the new position
  PauliString w;          // move line operator (old graph)
  int zeta = 0;           // +1 or -1
};

// Declared flux riding on the plaquette that encloses a sigma corner. The
// corner is named before and after the surgery (they differ only for the
// moved anyon itself); sign -1 marks a pi flux, 0 leaves that plaquette
// unconstrained on both sides.
struct CornerFlux {
  int old_corner;
  int new_corner;
  int sign;
};

// One anyon hop: rewires the target L-link, transports the edge orientation,
// and determines the rotation sense so every new plaquette operator equals
// its declared sign times a +1 product of signed old ones (exact
// phase-tracked elimination). Plaquettes keyed in parked_flux carry a static
// sign and must survive the surgery; absent keys mean +1, value 0 excludes
// the plaquette from both sides.
MoveOutcome elementary_move(const DecoratedGraph& g, const Orientation& o, int anyon_corner,
                            int target_corner, const std::vector<CornerFlux>& corner_fluxes = {},
                            const std::map<std::string, int>& parked_flux = {});

// True iff target equals a +1-signed product of the given commuting
// generators (letters and phase both reproduced).
bool in_group_with_plus_sign(const std::vector<PauliString>& generators,
                             const PauliString& target, bool* letters_expressible = nullptr);

struct GateList {
  std::vector<std::string> lines;  // H q | S q | SDG q | X q | Z q | CNOT a b
  int global_phase_eighths = 0;    // unitary = e^{i pi/4 * eighths} * gates
};

// Circuit for exp(-i pi/4 * axis); axis must be Hermitian (phase +-1).
GateList decompose_rotation(const PauliString& axis);

}  // namespace psc::compiler
