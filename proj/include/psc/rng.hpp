#pragma once

#include <cstdint>

namespace psc {

// xorshift64* with the documented outcome convention: each measurement that
// needs randomness consumes one draw and uses its top bit (0 -> +1, 1 -> -1).
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1Dull;
  }

  int outcome() { return (next() >> 63) ? -1 : +1; }

 private:
  uint64_t s_;
};

}  // namespace psc
