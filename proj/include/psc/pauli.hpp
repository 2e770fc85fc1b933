#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace psc {

// Pauli string on n qubits with a Z4 phase: operator = i^phase_exp * prod_q letter_q.
// Letters are I, X, Y, Z with Y = i X Z (so XZ = -iY).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);
  static PauliString identity(int n) { return PauliString(n); }
  static PauliString single(int n, int qubit, char letter);
  static PauliString from_text(const std::string& text);

  int num_qubits() const { return n_; }
  int phase_exp() const { return phase_exp_; }
  void set_phase_exp(int e) { phase_exp_ = ((e % 4) + 4) % 4; }
  void mul_phase_exp(int e) { set_phase_exp(phase_exp_ + e); }

  bool x_bit(int q) const;
  bool z_bit(int q) const;
  char letter(int q) const;
  void set_letter(int q, char letter);

  bool is_identity_letters() const;
  bool is_identity() const { return phase_exp_ == 0 && is_identity_letters(); }
  bool hermitian() const;  // phase_exp in {0, 2} (letters are Hermitian)
  int weight() const;

  // this <- other * this
  void mul_left(const PauliString& other) { *this = mul(other, *this); }
  // this <- this * other
  void mul_right(const PauliString& other) { *this = mul(*this, other); }
  static PauliString mul(const PauliString& a, const PauliString& b);

  PauliString adjoint() const;
  bool commutes(const PauliString& other) const;
  bool equal_letters(const PauliString& other) const;
  bool operator==(const PauliString& other) const;

  std::string text() const;

  // 2x2 complex matrix of a single letter, for oracle-side checks.
  static void letter_matrix(char letter, std::complex<double> m[2][2]);

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

 private:
  int n_ = 0;
  int phase_exp_ = 0;
  std::vector<uint64_t> x_, z_;
};

}  // namespace psc
