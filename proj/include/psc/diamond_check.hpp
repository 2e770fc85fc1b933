#pragma once

namespace psc {

// Numerically verifies the two-qubit diamond algebra: four Majorana corner
// operators, admissibly oriented l-edge parities, their pairing-independent
// product, and the induced qubit algebra on the physical subspace. Also
// checks that flipping one arrow breaks pairing independence. Returns the
// largest deviation across the positive checks.
double diamond_check();

}  // namespace psc
