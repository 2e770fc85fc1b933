#pragma once

#include <complex>
#include <vector>

#include "psc/pauli.hpp"
#include "psc/rng.hpp"

namespace psc {

// Full state-vector simulation, capped at 16 qubits.
class DenseOracle {
 public:
  static constexpr int kMaxQubits = 16;

  // The unique joint +1 eigenstate of the generators.
  DenseOracle(int num_qubits, const std::vector<PauliString>& generators);

  // An explicit state (used by tests); must be normalized.
  DenseOracle(int num_qubits, std::vector<std::complex<double>> amplitudes);

  int num_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

  void apply_pauli(const PauliString& p);
  void apply_rotation(const PauliString& w, int zeta);  // exp(-zeta i pi/4 W)

  // H/S/SDG/X/Z/CNOT lines as produced by the rotation decomposition.
  void apply_gate_line(const std::string& line);
  void apply_phase_eighths(int m);  // multiply by e^{i pi m / 4}

  double expectation(const PauliString& obs) const;
  int measure(const PauliString& obs, Rng& rng);  // projects the state

  static std::vector<std::complex<double>> apply_pauli_to(
      const PauliString& p, const std::vector<std::complex<double>>& v);

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace psc
