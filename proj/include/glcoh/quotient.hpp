#pragma once

#include <cstddef>
#include <vector>

#include "glcoh/matgroup.hpp"
#include "glcoh/matrix.hpp"
#include "glcoh/ring.hpp"

namespace glcoh {

// Factor group G/N materialized as an abstract multiplication table over
// canonical coset representatives (the minimal parent index in each coset).
// It exposes the same indexed-group surface as MatrixGroup, so the cocycle
// engine runs on it unchanged; element(i) returns the representative's
// matrix, which is how a coset acts on coefficients fixed by N.
class QuotientGroup {
 public:
  // Throws NotASubgroup if n is not contained in g, NotNormal if it is not
  // normal in g.
  QuotientGroup(const MatrixGroup& g, const MatrixGroup& n);

  const Ring& ring() const { return parent_->ring(); }
  std::size_t order() const { return reps_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mult(std::size_t i, std::size_t j) const {
    return coset_of_[parent_->mult(reps_[i], reps_[j])];
  }
  RingMatrix element(std::size_t i) const {
    return parent_->element(reps_[i]);
  }
  const std::vector<std::size_t>& generator_indices() const {
    return gen_idx_;
  }

  const MatrixGroup& parent() const { return *parent_; }
  std::size_t coset_of_parent(std::size_t parent_index) const {
    return coset_of_[parent_index];
  }
  std::size_t representative(std::size_t i) const { return reps_[i]; }

 private:
  const MatrixGroup* parent_;
  std::vector<std::size_t> reps_;      // quotient index -> parent index
  std::vector<std::size_t> coset_of_;  // parent index -> quotient index
  std::vector<std::size_t> gen_idx_;   // images of the parent generators
};

}  // namespace glcoh
