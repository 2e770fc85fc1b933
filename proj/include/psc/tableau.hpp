#pragma once

#include <vector>

#include "psc/pauli.hpp"
#include "psc/rng.hpp"

namespace psc {

// Stabilizer state as n commuting independent generators (no destabilizers).
class StabilizerEngine {
 public:
  StabilizerEngine(int num_qubits, const std::vector<PauliString>& generators);

  int num_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return gens_; }

  // Conjugate the state by exp(-zeta i pi/4 W).
  void apply_rotation(const PauliString& w, int zeta);

  // Conjugate the state by a Pauli unitary.
  void apply_pauli(const PauliString& p);

  // +1/-1 for determined observables, 0 otherwise. Consumes no randomness.
  int expectation(const PauliString& obs) const;

  // Projective measurement; consumes one draw exactly when the outcome is
  // random.
  int measure(const PauliString& obs, Rng& rng);

  // Invariants: commuting, independent, Hermitian signs.
  void self_check() const;

 private:
  int determined_sign(const PauliString& obs) const;  // +1/-1/0

  int n_;
  std::vector<PauliString> gens_;
};

}  // namespace psc
