#include "psc/dense.hpp"

#include <cmath>
#include <sstream>

#include "psc/error.hpp"

namespace psc {

namespace {
constexpr double kEps = 1e-9;

std::complex<double> phase_factor(int exp4) {
  static const std::complex<double> t[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return t[exp4 & 3];
}
}  // namespace

DenseOracle::DenseOracle(int num_qubits, std::vector<std::complex<double>> amplitudes)
    : n_(num_qubits), amp_(std::move(amplitudes)) {
  require(n_ >= 1 && n_ <= kMaxQubits, ErrorCode::TooManyQubits,
          "dense oracle supports 1.." + std::to_string(kMaxQubits) + " qubits");
  require((int)amp_.size() == 1 << n_, ErrorCode::ValidationFailed, "bad amplitude count");
}

DenseOracle::DenseOracle(int num_qubits, const std::vector<PauliString>& generators)
    : n_(num_qubits) {
  require(n_ >= 1 && n_ <= kMaxQubits, ErrorCode::TooManyQubits,
          "dense oracle supports 1.." + std::to_string(kMaxQubits) + " qubits");
  size_t dim = 1ull << n_;
  // Deterministic generic start vector, then project with (1+g)/2 per
  // generator. A generic start almost surely overlaps the stabilized line.
  Rng r(0x5eedull);
  amp_.resize(dim);
  double nrm = 0;
  for (auto& a : amp_) {
    double re = (double)(r.next() >> 11) / (double)(1ull << 53) - 0.5;
    double im = (double)(r.next() >> 11) / (double)(1ull << 53) - 0.5;
    a = {re, im};
    nrm += std::norm(a);
  }
  for (auto& a : amp_) a /= std::sqrt(nrm);
  for (const PauliString& g : generators) {
    require(g.num_qubits() == n_, ErrorCode::ValidationFailed, "generator qubit count mismatch");
    std::vector<std::complex<double>> gv = apply_pauli_to(g, amp_);
    nrm = 0;
    for (size_t i = 0; i < dim; ++i) {
      amp_[i] = 0.5 * (amp_[i] + gv[i]);
      nrm += std::norm(amp_[i]);
    }
    require(nrm > 1e-12, ErrorCode::Inconsistent, "stabilizer projection annihilated the state");
    for (auto& a : amp_) a /= std::sqrt(nrm);
  }
  for (const PauliString& g : generators)
    require(std::abs(expectation(g) - 1.0) < 1e-7, ErrorCode::Inconsistent,
            "generator not stabilized after projection");
}

std::vector<std::complex<double>> DenseOracle::apply_pauli_to(
    const PauliString& p, const std::vector<std::complex<double>>& v) {
  int n = p.num_qubits();
  size_t dim = 1ull << n;
  uint64_t xm = 0, zm = 0;
  int ys = 0;
  for (int q = 0; q < n; ++q) {
    if (p.x_bit(q)) xm |= 1ull << q;
    if (p.z_bit(q)) zm |= 1ull << q;
    if (p.x_bit(q) && p.z_bit(q)) ++ys;
  }
  std::complex<double> base = phase_factor(p.phase_exp() + ys);
  std::vector<std::complex<double>> out(dim);
  for (size_t b = 0; b < dim; ++b) {
    std::complex<double> c = base * v[b];
    if (__builtin_popcountll(b & zm) & 1) c = -c;
    out[b ^ xm] = c;
  }
  return out;
}

void DenseOracle::apply_pauli(const PauliString& p) { amp_ = apply_pauli_to(p, amp_); }

void DenseOracle::apply_rotation(const PauliString& w, int zeta) {
  require(w.hermitian(), ErrorCode::NonHermitianAxis, "rotation axis not Hermitian");
  require(zeta == 1 || zeta == -1, ErrorCode::ValidationFailed, "bad rotation sense");
  std::vector<std::complex<double>> wv = apply_pauli_to(w, amp_);
  const double inv = 1.0 / std::sqrt(2.0);
  std::complex<double> iz(0, zeta);
  for (size_t b = 0; b < amp_.size(); ++b) amp_[b] = inv * (amp_[b] - iz * wv[b]);
}

void DenseOracle::apply_gate_line(const std::string& line) {
  std::istringstream in(line);
  std::string op;
  int a = -1, b = -1;
  in >> op >> a;
  size_t dim = amp_.size();
  if (op == "CNOT") {
    in >> b;
    require(a >= 0 && b >= 0 && a < n_ && b < n_ && a != b, ErrorCode::ValidationFailed,
            "bad CNOT line");
    for (size_t i = 0; i < dim; ++i)
      if ((i >> a & 1) && !(i >> b & 1)) std::swap(amp_[i], amp_[i | (1ull << b)]);
    return;
  }
  require(a >= 0 && a < n_, ErrorCode::ValidationFailed, "bad gate line " + line);
  uint64_t m = 1ull << a;
  const double inv = 1.0 / std::sqrt(2.0);
  for (size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    std::complex<double>&v0 = amp_[i], &v1 = amp_[i | m];
    if (op == "H") {
      std::complex<double> t0 = inv * (v0 + v1), t1 = inv * (v0 - v1);
      v0 = t0;
      v1 = t1;
    } else if (op == "S") {
      v1 *= std::complex<double>(0, 1);
    } else if (op == "SDG") {
      v1 *= std::complex<double>(0, -1);
    } else if (op == "X") {
      std::swap(v0, v1);
    } else if (op == "Z") {
      v1 = -v1;
    } else {
      fail(ErrorCode::ValidationFailed, "unknown gate line " + line);
    }
  }
}

void DenseOracle::apply_phase_eighths(int m) {
  double th = M_PI * m / 4.0;
  std::complex<double> f(std::cos(th), std::sin(th));
  for (auto& a : amp_) a *= f;
}

double DenseOracle::expectation(const PauliString& obs) const {
  std::vector<std::complex<double>> ov = apply_pauli_to(obs, amp_);
  std::complex<double> e = 0;
  for (size_t b = 0; b < amp_.size(); ++b) e += std::conj(amp_[b]) * ov[b];
  return e.real();
}

int DenseOracle::measure(const PauliString& obs, Rng& rng) {
  require(obs.hermitian(), ErrorCode::NonHermitianObservable, "observable not Hermitian");
  double e = expectation(obs);
  int s;
  if (e > 1.0 - kEps) {
    s = +1;
  } else if (e < -1.0 + kEps) {
    s = -1;
  } else {
    require(std::abs(e) < kEps, ErrorCode::ValidationFailed,
            "measurement is neither fixed nor balanced");
    s = rng.outcome();
  }
  std::vector<std::complex<double>> ov = apply_pauli_to(obs, amp_);
  double nrm = 0;
  for (size_t b = 0; b < amp_.size(); ++b) {
    amp_[b] = 0.5 * (amp_[b] + (double)s * ov[b]);
    nrm += std::norm(amp_[b]);
  }
  require(nrm > 1e-12, ErrorCode::ValidationFailed, "projection annihilated the state");
  for (auto& a : amp_) a /= std::sqrt(nrm);
  return s;
}

}  // namespace psc
