#pragma once

#include <cstdint>
#include <vector>

#include "glcoh/matrix.hpp"
#include "glcoh/ring.hpp"

namespace glcoh {

// Submodule of (Z/p^n)^ambient, stored as the unique Howell basis of its
// row span. Equal submodules compare equal entry-wise.
class Submodule {
 public:
  Submodule(const Ring& ring, std::size_t ambient);  // zero submodule
  static Submodule from_rows(const Ring& ring, const RingMatrix& rows);
  static Submodule full(const Ring& ring, std::size_t ambient);

  const Ring& ring() const { return ring_; }
  std::size_t ambient() const { return ambient_; }
  const RingMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }

  std::uint64_t order() const;  // throws OrderOverflow past 2^63
  bool is_zero() const { return basis_.rows() == 0; }

  bool contains(const std::uint32_t* v) const;
  bool contains(const std::vector<std::uint32_t>& v) const;
  bool contains(const Submodule& other) const;
  friend bool operator==(const Submodule&, const Submodule&) = default;

  Submodule sum(const Submodule& other) const;
  Submodule intersect(const Submodule& other) const;
  Submodule scaled(std::uint32_t c) const;

  // Image {A v : v in this} under a linear map given on column vectors;
  // A must be square of size = ambient.
  Submodule apply(const RingMatrix& a) const;

  // Canonical basis of {y : y . v = 0 for all v in this}; membership in the
  // submodule is equivalent to vanishing against these rows (double
  // annihilator over Z/p^n).
  RingMatrix annihilator() const;

 private:
  Ring ring_;
  std::size_t ambient_;
  RingMatrix basis_;
};

// Invariant factors of num/den as a list of prime powers, ascending.
// Throws NotASubmodule unless den is contained in num.
std::vector<std::uint64_t> quotient_invariants(const Submodule& num,
                                               const Submodule& den);

// Invariants together with generator lifts: generators.row(i) has order
// invariants[i] in the quotient, chosen greedily from the Howell basis of
// num (maximal quotient order, first row on ties).
struct QuotientPresentation {
  std::vector<std::uint64_t> invariants;
  RingMatrix generators;
};
QuotientPresentation quotient_presentation(const Submodule& num,
                                           const Submodule& den);

// Column span of a matrix, as a submodule of the codomain.
Submodule column_span(const Ring& ring, const RingMatrix& a);

// Solution space {x : a x = 0}, as a submodule of the domain.
Submodule kernel_submodule(const Ring& ring, const RingMatrix& a);

}  // namespace glcoh
