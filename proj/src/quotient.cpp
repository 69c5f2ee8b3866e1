#include "glcoh/quotient.hpp"

#include <algorithm>

#include "glcoh/check.hpp"
#include "glcoh/errors.hpp"

namespace glcoh {

QuotientGroup::QuotientGroup(const MatrixGroup& g, const MatrixGroup& n)
    : parent_(&g) {
  std::vector<std::size_t> n_idx;
  n_idx.reserve(n.order());
  for (std::size_t i = 0; i < n.order(); ++i) {
    std::size_t j = g.index_of(n.raw(i));
    if (j == ElementIndex::npos)
      throw NotASubgroup("quotient kernel has elements outside the group");
    n_idx.push_back(j);
  }
  if (!is_normal(n, g))
    throw NotNormal("quotient kernel is not normal in the group");

  const std::size_t npos = static_cast<std::size_t>(-1);
  coset_of_.assign(g.order(), npos);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of_[x] != npos) continue;
    // x is the least index of its coset: all smaller indices are assigned.
    std::size_t q = reps_.size();
    reps_.push_back(x);
    for (std::size_t j : n_idx) coset_of_[g.mult(x, j)] = q;
    GLCOH_CHECK(coset_of_[x] == q, "coset of x must contain x");
  }
  GLCOH_CHECK(reps_.size() * n.order() == g.order(),
              "cosets must partition the group evenly");

  for (std::size_t pg : g.generator_indices()) {
    std::size_t q = coset_of_[pg];
    if (q == identity()) continue;
    if (std::find(gen_idx_.begin(), gen_idx_.end(), q) == gen_idx_.end())
      gen_idx_.push_back(q);
  }
}

}  // namespace glcoh
