#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "glcoh/submodule.hpp"

namespace glcoh {

// Flat open-addressing map from packed 2x2 matrices to element indices.
// Deterministic layout; lookups sit on the hot path of closure and of the
// all-pairs cocycle validation.
class ElementIndex {
 public:
  explicit ElementIndex(std::size_t expected = 8);

  static constexpr std::uint32_t npos = 0xffffffffu;

  bool insert(std::uint64_t key, std::uint32_t val);  // false if present
  std::uint32_t find(std::uint64_t key) const;        // npos if absent

 private:
  void grow();
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::uint64_t mask_;
  std::size_t count_ = 0;
};

using Mat2 = std::array<std::uint32_t, 4>;  // row major [a, b, c, d]

std::uint64_t pack_mat2(const Mat2& m, std::uint32_t modulus);
Mat2 mat2_of(const RingMatrix& m);
RingMatrix mat2_to_matrix(const Mat2& m, std::uint32_t modulus);
Mat2 mat2_mul(const Mat2& x, const Mat2& y, std::uint32_t modulus);
Mat2 mat2_identity();

// Finite subgroup of GL2(Z/p^n) materialized by breadth-first closure from
// its generator list. Element 0 is the identity; the element order is the
// BFS discovery order under left multiplication by the generators, so it is
// a pure function of (ring, generator list).
class MatrixGroup {
 public:
  static constexpr std::size_t default_cap = 20000;

  // Throws NotInvertible on a non-unit generator determinant and CapExceeded
  // when the closure would pass cap.
  static MatrixGroup close(const Ring& ring,
                           const std::vector<RingMatrix>& generators,
                           std::size_t cap = default_cap);

  // Rebuilds a group from an explicit element set (greedy generator pick in
  // the given order, then BFS). Throws NotASubgroup if the set is not closed.
  static MatrixGroup from_elements(const Ring& ring,
                                   const std::vector<Mat2>& elements);

  const Ring& ring() const { return ring_; }
  std::size_t order() const { return elems_.size(); }
  std::size_t identity() const { return 0; }
  const Mat2& raw(std::size_t i) const { return elems_[i]; }
  RingMatrix element(std::size_t i) const {
    return mat2_to_matrix(elems_[i], ring_.modulus);
  }
  const std::vector<RingMatrix>& generators() const { return gens_; }
  const std::vector<std::size_t>& generator_indices() const {
    return gen_idx_;
  }

  std::size_t index_of(const Mat2& m) const;  // npos if absent
  bool contains(const Mat2& m) const {
    return index_of(m) != ElementIndex::npos;
  }
  std::size_t mult(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inv_[i]; }

  // Sorted packed element keys; equal groups produce equal keys.
  std::vector<std::uint64_t> canonical_key() const;

 private:
  MatrixGroup(const Ring& ring) : ring_(ring) {}
  void finalize();

  Ring ring_;
  std::vector<RingMatrix> gens_;
  std::vector<std::size_t> gen_idx_;
  std::vector<Mat2> elems_;
  std::vector<std::uint32_t> inv_;
  ElementIndex index_;
};

std::uint64_t element_order(const RingMatrix& g);
std::uint64_t element_order(const MatrixGroup& g, std::size_t i);

// Distinct cyclic subgroups, one per element-set, in first-generator order.
std::vector<MatrixGroup> cyclic_subgroups(const MatrixGroup& g);

// Index of one generator per distinct cyclic subgroup (light form of the
// above, used by local-condition sweeps).
std::vector<std::size_t> distinct_cyclic_generators(const MatrixGroup& g);

// Mod-p reduction of a level-p^2 group: image and kernel, with
// |group| = |image| * |kernel|.
struct ReductionSplit {
  MatrixGroup image;   // subgroup of GL2(Z/p)
  MatrixGroup kernel;  // elements congruent to the identity mod p
};
ReductionSplit reduction_split(const MatrixGroup& g);

// F_p-dimension of a reduction-kernel group {I + pA}; throws
// NotReductionKernel when some element is not congruent to I mod p.
std::uint32_t reduction_kernel_dim(const MatrixGroup& h);

struct SylowResult {
  MatrixGroup subgroup;
  bool normal;  // false signals a group outside the verified family
};
SylowResult p_sylow(const MatrixGroup& g);

MatrixGroup diagonal_part(const MatrixGroup& g);

// Lines of (Z/p)^2 stable under every generator, as order-p submodules, in
// the fixed representative order (0,1), (1,0), (1,1), ..., (1,p-1).
// The count is always one of {0, 1, 2, p+1}.
std::vector<Submodule> invariant_lines(const MatrixGroup& g);

enum class ClassTag {
  TwoLinesDiagonal,
  OneLineBorel,
  NoLine,
  ManyLinesScalar,
};

const char* class_tag_name(ClassTag t);

// Shape classification of a mod-p group. basis_change U conjugates the
// group into the advertised shape: diagonal for two lines, upper triangular
// with unipotent_generator = [[1,1],[0,1]] for one line. Distinguished
// generators are reported in the conjugated basis and are present when the
// group decomposes as <diagonal_generator, unipotent_generator>.
struct Classification {
  ClassTag tag;
  std::size_t line_count;
  RingMatrix basis_change;
  bool diagonal_cyclic;  // cyclicity of the conjugated diagonal part
  std::optional<RingMatrix> diagonal_generator;
  std::optional<RingMatrix> unipotent_generator;
};
Classification classify_mod_p(const MatrixGroup& g);

RingMatrix commutator(const RingMatrix& a, const RingMatrix& b);

// Does every conjugate of sub by group generators stay inside sub?
// Throws NotASubgroup unless sub's elements all lie in g.
bool is_normal(const MatrixGroup& sub, const MatrixGroup& g);

// Sorted distinct determinant values, reduced mod out (out must be p or the
// group modulus).
std::vector<std::uint32_t> det_image(const MatrixGroup& g, std::uint32_t out);

std::optional<RingMatrix> contains_nontrivial_scalar(const MatrixGroup& g);

bool is_cyclic(const MatrixGroup& g);

// {m : g m = m for all g}, intersected over the generators.
Submodule fixed_submodule(const MatrixGroup& g);

// Smallest generator of the multiplicative group mod p.
std::uint32_t primitive_root(std::uint32_t p);

// The whole invertible-2x2 group at level 1 (order (p^2-1)(p^2-p)),
// generated by the two transvections and diag(primitive_root(p), 1).
// Level-2 full groups are beyond the closure cap by design.
MatrixGroup full_group_mod_p(const Ring& r);

}  // namespace glcoh
