#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "psc/error.hpp"
#include "psc/pauli.hpp"
#include "psc/rng.hpp"

namespace {

using psc::PauliString;
using cd = std::complex<double>;

std::vector<cd> matrix_of(const PauliString& p) {
  const int n = p.num_qubits();
  const size_t dim = 1ull << n;
  cd phase = 1.0;
  for (int k = 0; k < p.phase_exp(); ++k) phase *= cd(0, 1);
  std::vector<cd> m(dim * dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) {
      cd v = phase;
      for (int q = 0; q < n; ++q) {
        cd lm[2][2];
        PauliString::letter_matrix(p.letter(q), lm);
        v *= lm[(r >> q) & 1][(c >> q) & 1];
      }
      m[r * dim + c] = v;
    }
  return m;
}

std::vector<cd> mat_mul(const std::vector<cd>& a, const std::vector<cd>& b, size_t dim) {
  std::vector<cd> m(dim * dim, 0.0);
  for (size_t r = 0; r < dim; ++r)
    for (size_t k = 0; k < dim; ++k)
      for (size_t c = 0; c < dim; ++c) m[r * dim + c] += a[r * dim + k] * b[k * dim + c];
  return m;
}

bool mat_eq(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  return true;
}

std::vector<cd> dagger(const std::vector<cd>& a, size_t dim) {
  std::vector<cd> m(dim * dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) m[c * dim + r] = std::conj(a[r * dim + c]);
  return m;
}

PauliString random_string(psc::Rng& rng, int n) {
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  PauliString p(n);
  for (int q = 0; q < n; ++q) p.set_letter(q, letters[rng.next() % 4]);
  p.set_phase_exp((int)(rng.next() % 4));
  return p;
}

TEST_CASE("single-qubit products match the matrix algebra") {
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (char la : letters)
    for (char lb : letters) {
      PauliString a = PauliString::single(1, 0, la);
      PauliString b = PauliString::single(1, 0, lb);
      PauliString ab = PauliString::mul(a, b);
      CHECK(mat_eq(matrix_of(ab), mat_mul(matrix_of(a), matrix_of(b), 2)));
    }
  auto prod = [](char la, char lb) {
    return PauliString::mul(PauliString::single(1, 0, la), PauliString::single(1, 0, lb)).text();
  };
  CHECK(prod('X', 'Z') == "-i|Y");
  CHECK(prod('Z', 'X') == "+i|Y");
  CHECK(prod('X', 'Y') == "+i|Z");
  CHECK(prod('Y', 'X') == "-i|Z");
  CHECK(prod('Y', 'Z') == "+i|X");
  CHECK(prod('Z', 'Y') == "-i|X");
  CHECK(prod('X', 'X') == "+1|I");
  CHECK(prod('Y', 'Y') == "+1|I");
}

TEST_CASE("multi-qubit products, commutation and adjoints match dense matrices") {
  psc::Rng rng(0x9a11);
  const size_t dim = 16;
  for (int trial = 0; trial < 60; ++trial) {
    PauliString a = random_string(rng, 4);
    PauliString b = random_string(rng, 4);
    auto ma = matrix_of(a), mb = matrix_of(b);
    CHECK(mat_eq(matrix_of(PauliString::mul(a, b)), mat_mul(ma, mb, dim)));
    CHECK(a.commutes(b) == mat_eq(mat_mul(ma, mb, dim), mat_mul(mb, ma, dim)));
    CHECK(mat_eq(matrix_of(a.adjoint()), dagger(ma, dim)));
    CHECK(a.hermitian() == mat_eq(ma, dagger(ma, dim)));
  }
}

TEST_CASE("mul_left and mul_right orientations") {
  PauliString x = PauliString::single(1, 0, 'X');
  PauliString z = PauliString::single(1, 0, 'Z');
  PauliString p = z;
  p.mul_left(x);  // X * Z
  CHECK(p.text() == "-i|Y");
  p = z;
  p.mul_right(x);  // Z * X
  CHECK(p.text() == "+i|Y");
}

TEST_CASE("text round trip and parse errors") {
  psc::Rng rng(0x7e57);
  for (int trial = 0; trial < 40; ++trial) {
    PauliString p = random_string(rng, 7);
    CHECK(PauliString::from_text(p.text()) == p);
  }
  CHECK(PauliString::from_text("+i|IXYZ").text() == "+i|IXYZ");
  CHECK_THROWS_AS((void)PauliString::from_text("XIZ"), psc::Error);
  CHECK_THROWS_AS((void)PauliString::from_text("2|XX"), psc::Error);
  CHECK_THROWS_AS((void)PauliString::from_text("+1|XQ"), psc::Error);
}

TEST_CASE("identity, weight and phase bookkeeping") {
  PauliString p(3);
  CHECK(p.is_identity());
  CHECK(p.weight() == 0);
  p.set_letter(1, 'Y');
  CHECK(p.weight() == 1);
  CHECK(p.hermitian());
  p.mul_phase_exp(3);
  p.mul_phase_exp(3);
  CHECK(p.phase_exp() == 2);
  CHECK(p.hermitian());
  p.mul_phase_exp(1);
  CHECK(!p.hermitian());
  PauliString q = PauliString::mul(p, p);
  CHECK(q.is_identity_letters());
}

}  // namespace
