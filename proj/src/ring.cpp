#include "glcoh/ring.hpp"

#include <string>

namespace glcoh {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Ring::Ring(std::uint32_t p_, std::uint32_t n_) : p(p_), n(n_) {
  if (!is_prime(p) || p <= 3 || p > 97)
    throw ModulusMismatch("p must be a prime with 3 < p <= 97, got " +
                          std::to_string(p));
  if (n < 1 || n > 2)
    throw ModulusMismatch("n must be 1 or 2, got " + std::to_string(n));
  modulus = p;
  for (std::uint32_t i = 1; i < n; ++i) modulus *= p;
}

std::uint32_t valuation(std::uint32_t x, const Ring& r) {
  if (x % r.modulus == 0) return r.n;
  std::uint32_t v = 0;
  while (x % r.p == 0) {
    x /= r.p;
    ++v;
  }
  return v;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t m) {
  // Extended Euclid on (a, m); a must be a unit.
  std::int64_t r0 = a % m, r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1)
    throw NotAUnit(std::to_string(a) + " is not a unit mod " +
                   std::to_string(m));
  std::int64_t inv = s0 % static_cast<std::int64_t>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint32_t>(inv);
}

Residue::Residue(std::uint64_t value, std::uint32_t modulus)
    : value_(static_cast<std::uint32_t>(value % modulus)), modulus_(modulus) {
  if (modulus == 0) throw ModulusMismatch("modulus must be positive");
}

bool Residue::is_unit() const {
  std::uint32_t a = value_, b = modulus_;
  while (b) {
    std::uint32_t t = a % b;
    a = b;
    b = t;
  }
  return a == 1;
}

Residue Residue::inverse() const {
  return Residue(inverse_mod(value_, modulus_), modulus_);
}

namespace {
void require_same(std::uint32_t a, std::uint32_t b) {
  if (a != b)
    throw ModulusMismatch("residue moduli differ: " + std::to_string(a) +
                          " vs " + std::to_string(b));
}
}  // namespace

Residue Residue::operator+(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<std::uint64_t>(value_) + o.value_, modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<std::uint64_t>(value_) + modulus_ - o.value_,
                 modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<std::uint64_t>(value_) * o.value_, modulus_);
}

Residue Residue::operator-() const {
  return Residue(static_cast<std::uint64_t>(modulus_) - value_, modulus_);
}

}  // namespace glcoh
