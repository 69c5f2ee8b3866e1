#pragma once

#include <cstdint>

#include "glcoh/errors.hpp"

namespace glcoh {

// Coefficient ring Z/p^n with p an odd prime, 3 < p <= 97, n in {1, 2}.
// Everything downstream assumes the modulus is a prime power of this shape;
// the constructor is the single validation point.
struct Ring {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t modulus = 0;

  Ring() = default;
  Ring(std::uint32_t p_, std::uint32_t n_);

  friend bool operator==(const Ring&, const Ring&) = default;
};

// p-adic valuation of x within Z/p^n, in 0..n; val(0) = n by convention.
std::uint32_t valuation(std::uint32_t x, const Ring& r);

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t m);  // throws NotAUnit

// One element of Z/mZ. Arithmetic requires equal moduli.
class Residue {
 public:
  Residue(std::uint64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  bool is_unit() const;
  Residue inverse() const;  // throws NotAUnit on non-units

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  std::uint32_t value_;
  std::uint32_t modulus_;
};

}  // namespace glcoh
