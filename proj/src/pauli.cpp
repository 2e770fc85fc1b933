#include "psc/pauli.hpp"

#include <bit>

#include "psc/error.hpp"

namespace psc {

namespace {
int words_for(int n) { return (n + 63) / 64; }
}  // namespace

PauliString::PauliString(int n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::single(int n, int qubit, char letter) {
  PauliString p(n);
  p.set_letter(qubit, letter);
  return p;
}

bool PauliString::x_bit(int q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
bool PauliString::z_bit(int q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

char PauliString::letter(int q) const {
  bool x = x_bit(q), z = z_bit(q);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(int q, char letter) {
  uint64_t mask = 1ull << (q & 63);
  uint64_t xb = 0, zb = 0;
  switch (letter) {
    case 'I': break;
    case 'X': xb = mask; break;
    case 'Y': xb = mask; zb = mask; break;
    case 'Z': zb = mask; break;
    default: fail(ErrorCode::ValidationFailed, std::string("bad Pauli letter '") + letter + "'");
  }
  x_[q >> 6] = (x_[q >> 6] & ~mask) | xb;
  z_[q >> 6] = (z_[q >> 6] & ~mask) | zb;
}

bool PauliString::is_identity_letters() const {
  for (size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | z_[w]) return false;
  return true;
}

bool PauliString::hermitian() const { return phase_exp_ == 0 || phase_exp_ == 2; }

int PauliString::weight() const {
  int c = 0;
  for (size_t w = 0; w < x_.size(); ++w) c += std::popcount(x_[w] | z_[w]);
  return c;
}

PauliString PauliString::mul(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) fail(ErrorCode::ValidationFailed, "Pauli size mismatch in mul");
  PauliString r(a.n_);
  // Per qubit: (x1,z1)*(x2,z2) = i^{x1 z1 + x2 z2 - x3 z3} (-1)^{z1 x2} (x3,z3),
  // with x3 = x1^x2, z3 = z1^z2 and letters encoded as i^{xz} X^x Z^z.
  int64_t e = a.phase_exp_ + b.phase_exp_;
  for (size_t w = 0; w < r.x_.size(); ++w) {
    uint64_t x1 = a.x_[w], z1 = a.z_[w], x2 = b.x_[w], z2 = b.z_[w];
    uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
    e += std::popcount(x1 & z1);
    e += std::popcount(x2 & z2);
    e += 3ll * std::popcount(x3 & z3);
    e += 2ll * std::popcount(z1 & x2);
    r.x_[w] = x3;
    r.z_[w] = z3;
  }
  r.phase_exp_ = (int)(e & 3);
  return r;
}

PauliString PauliString::adjoint() const {
  PauliString r = *this;
  r.phase_exp_ = (4 - phase_exp_) & 3;
  return r;
}

bool PauliString::commutes(const PauliString& other) const {
  if (n_ != other.n_) fail(ErrorCode::ValidationFailed, "Pauli size mismatch in commutes");
  int par = 0;
  for (size_t w = 0; w < x_.size(); ++w) {
    par ^= std::popcount((x_[w] & other.z_[w]) ^ 0ull) & 1;
    par ^= std::popcount(z_[w] & other.x_[w]) & 1;
  }
  return par == 0;
}

bool PauliString::equal_letters(const PauliString& other) const {
  return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliString::operator==(const PauliString& other) const {
  return equal_letters(other) && phase_exp_ == other.phase_exp_;
}

std::string PauliString::text() const {
  static const char* phases[4] = {"+1", "+i", "-1", "-i"};
  std::string s = phases[phase_exp_];
  s += '|';
  for (int q = 0; q < n_; ++q) s += letter(q);
  return s;
}

PauliString PauliString::from_text(const std::string& text) {
  size_t bar = text.find('|');
  if (bar == std::string::npos) fail(ErrorCode::ValidationFailed, "Pauli text missing '|'");
  std::string ph = text.substr(0, bar);
  std::string letters = text.substr(bar + 1);
  PauliString p((int)letters.size());
  if (ph == "+1") p.phase_exp_ = 0;
  else if (ph == "+i") p.phase_exp_ = 1;
  else if (ph == "-1") p.phase_exp_ = 2;
  else if (ph == "-i") p.phase_exp_ = 3;
  else fail(ErrorCode::ValidationFailed, "bad Pauli phase '" + ph + "'");
  for (size_t q = 0; q < letters.size(); ++q) p.set_letter((int)q, letters[q]);
  return p;
}

void PauliString::letter_matrix(char letter, std::complex<double> m[2][2]) {
  const std::complex<double> i(0.0, 1.0);
  switch (letter) {
    case 'I': m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = 1; break;
    case 'X': m[0][0] = 0; m[0][1] = 1; m[1][0] = 1; m[1][1] = 0; break;
    case 'Y': m[0][0] = 0; m[0][1] = -i; m[1][0] = i; m[1][1] = 0; break;
    case 'Z': m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = -1; break;
    default: fail(ErrorCode::ValidationFailed, "bad Pauli letter");
  }
}

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::AngleTie: return "AngleTie";
    case ErrorCode::LinkAbsent: return "LinkAbsent";
    case ErrorCode::CornersPaired: return "CornersPaired";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::NoSharedPlaquette: return "NoSharedPlaquette";
    case ErrorCode::NotUnpaired: return "NotUnpaired";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::OddOpenPath: return "OddOpenPath";
    case ErrorCode::NonSimpleLoop: return "NonSimpleLoop";
    case ErrorCode::SegmentNotOnFace: return "SegmentNotOnFace";
    case ErrorCode::SlotMissing: return "SlotMissing";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::NonHermitianAxis: return "NonHermitianAxis";
    case ErrorCode::NonHermitianObservable: return "NonHermitianObservable";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::UnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

}  // namespace psc
