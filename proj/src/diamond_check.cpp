#include "psc/diamond_check.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "psc/error.hpp"

namespace psc {

namespace {

using C = std::complex<double>;
using M4 = std::array<std::array<C, 4>, 4>;

M4 eye(C s = 1.0) {
  M4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = s;
  return m;
}

M4 mul(const M4& a, const M4& b) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) m[i][j] += a[i][k] * b[k][j];
  return m;
}

M4 add(const M4& a, const M4& b) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = a[i][j] + b[i][j];
  return m;
}

M4 sub(const M4& a, const M4& b) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = a[i][j] - b[i][j];
  return m;
}

M4 scale(C s, const M4& a) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = s * a[i][j];
  return m;
}

double max_abs(const M4& a) {
  double mx = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mx = std::max(mx, std::abs(a[i][j]));
  return mx;
}

M4 dagger(const M4& a) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = std::conj(a[j][i]);
  return m;
}

C trace(const M4& a) {
  C t = 0;
  for (int i = 0; i < 4; ++i) t += a[i][i];
  return t;
}

using M2 = std::array<std::array<C, 2>, 2>;

M4 kron(const M2& a, const M2& b) {
  M4 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return m;
}

}  // namespace

double diamond_check() {
  const M2 I2{{{1, 0}, {0, 1}}};
  const M2 X{{{0, 1}, {1, 0}}};
  const M2 Y{{{0, C(0, -1)}, {C(0, 1), 0}}};
  const M2 Z{{{1, 0}, {0, -1}}};

  // One Majorana per diamond corner, Jordan-Wigner over the two local modes.
  M4 a[5];
  a[1] = kron(X, I2);
  a[2] = kron(Y, I2);
  a[3] = kron(Z, X);
  a[4] = kron(Z, Y);

  double dev = 0;
  for (int j = 1; j <= 4; ++j) {
    dev = std::max(dev, max_abs(sub(a[j], dagger(a[j]))));
    for (int k = 1; k <= 4; ++k) {
      M4 anti = add(mul(a[j], a[k]), mul(a[k], a[j]));
      dev = std::max(dev, max_abs(sub(anti, eye(j == k ? 2.0 : 0.0))));
    }
  }

  // l-edge parities for the admissible diamond arrows c0->c1, c1->c2,
  // c2->c3, c0->c3: each is i * alpha_head * alpha_tail.
  auto parity = [&](int head, int tail) { return scale(C(0, 1), mul(a[head], a[tail])); };
  M4 t1 = parity(2, 1);
  M4 t2 = parity(3, 2);
  M4 t1p = parity(4, 3);
  M4 t2p = parity(4, 1);

  M4 gamma = scale(-1.0, mul(mul(a[1], a[2]), mul(a[3], a[4])));
  dev = std::max(dev, max_abs(sub(mul(gamma, gamma), eye())));
  for (int j = 1; j <= 4; ++j)
    dev = std::max(dev, max_abs(add(mul(mul(gamma, a[j]), gamma), a[j])));

  // Pairing independence requires the admissible arrows.
  dev = std::max(dev, max_abs(sub(mul(t1, t1p), gamma)));
  dev = std::max(dev, max_abs(sub(mul(t2, t2p), gamma)));

  for (const M4& t : {t1, t2, t1p, t2p}) {
    dev = std::max(dev, max_abs(sub(t, dagger(t))));
    dev = std::max(dev, max_abs(sub(mul(t, t), eye())));
    require(max_abs(sub(t, eye())) > 0.5 && max_abs(add(t, eye())) > 0.5,
            ErrorCode::ValidationFailed, "edge parity degenerated to a scalar");
  }

  dev = std::max(dev, max_abs(sub(mul(t1, t1p), mul(t1p, t1))));
  dev = std::max(dev, max_abs(add(mul(t1, t2), mul(t2, t1))));

  // Induced qubit algebra on the physical (gamma = +1) subspace.
  M4 p = scale(0.5, add(eye(), gamma));
  dev = std::max(dev, std::abs(trace(p) - C(2.0)));
  dev = std::max(dev, std::abs(trace(mul(t1, p))));
  dev = std::max(dev, std::abs(trace(mul(t2, p))));
  dev = std::max(dev, std::abs(trace(mul(mul(t1, t2), p))));
  for (const M4& t : {t1, t2}) {
    dev = std::max(dev, max_abs(sub(mul(p, t), mul(t, p))));
    dev = std::max(dev, max_abs(sub(mul(mul(p, t), mul(t, p)), p)));
  }

  // Negative control: one flipped arrow (c1->c0) breaks pairing independence.
  M4 t1_bad = parity(1, 2);
  require(max_abs(sub(mul(t1_bad, t1p), mul(t2, t2p))) > 1.0, ErrorCode::ValidationFailed,
          "flipped arrow failed to break pairing independence");
  return dev;
}

}  // namespace psc
