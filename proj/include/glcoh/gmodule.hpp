#pragma once

#include "glcoh/ring.hpp"
#include "glcoh/submodule.hpp"

namespace glcoh {

// Coefficient module for group cohomology: a submodule of (Z/p^n)^2 on
// which 2x2 matrices act by left multiplication on column vectors. The
// support is the full module for ordinary coefficients and a proper
// submodule for fixed-point coefficients of quotient groups.
struct GModule {
  Ring ring;
  Submodule support;

  static GModule full(const Ring& r) {
    return GModule{r, Submodule::full(r, 2)};
  }
  static GModule over(const Submodule& s) { return GModule{s.ring(), s}; }

  bool is_full() const { return support.order() == full_order(); }
  std::uint64_t order() const { return support.order(); }

 private:
  std::uint64_t full_order() const {
    return static_cast<std::uint64_t>(ring.modulus) * ring.modulus;
  }
};

}  // namespace glcoh
