#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "glcoh/matgroup.hpp"

namespace glcoh {

// Deterministic seed derivation: same (root, label) always yields the same
// stream seed, independent of check ordering.
std::uint64_t derive_seed(std::uint64_t root, const std::string& label);

// Uniform-ish draw below bound from a fixed-spec engine; the tiny modulo
// bias is irrelevant at the moduli used here (< 2^13 against 2^64).
std::uint32_t draw_below(std::mt19937_64& rng, std::uint32_t bound);

RingMatrix random_invertible(std::mt19937_64& rng, const Ring& ring);

// Entrywise lift of a mod-p matrix to the mod-p^2 ring (same residues).
RingMatrix lift_entrywise(const RingMatrix& a, const Ring& target);

// Lift of g (invertible mod p, order prime to p) to a mod-p^2 element of
// the same order: h^E for an entrywise lift h, with E = 1 mod ord(g) and
// E = 0 mod p. Throws NotInvertible-style misuse via GLCOH_CHECK if
// p divides the order.
RingMatrix order_preserving_lift(const RingMatrix& g, const Ring& target);

// I + p*A for a mod-p matrix A, in the mod-p^2 ring.
RingMatrix reduction_kernel_element(const RingMatrix& a, const Ring& target);

// One sampled-or-structured subgroup together with its provenance.
struct SampledGroup {
  MatrixGroup group;
  std::vector<RingMatrix> generators;  // exactly what close() received
  std::string family;
};

// Generation counters shared by all families: groups whose closure blows
// the element cap are skipped but counted.
struct SampleStats {
  std::size_t produced = 0;
  std::size_t cap_skipped = 0;
};

// --- mod-p families ---------------------------------------------------

// Fixed structured list: trivial, unipotent, diagonal cyclics, the full
// diagonal subgroup, a Borel for every diagonal pair, no-line groups
// (GL2, SL2, a nonsplit torus and its Weyl extension).
std::vector<SampledGroup> structured_mod_p(const Ring& ring);

// Groups guaranteed to contain a nontrivial scalar matrix.
std::vector<SampledGroup> sample_scalar_containing(const Ring& ring,
                                                   std::uint64_t seed,
                                                   std::size_t count,
                                                   SampleStats& stats);

// Random <=2-generator subgroups at either level, capped.
std::vector<SampledGroup> sample_two_generator(const Ring& ring,
                                               std::uint64_t seed,
                                               std::size_t count,
                                               std::size_t cap,
                                               SampleStats& stats);

// Random cyclic subgroups (single random invertible generator).
std::vector<SampledGroup> sample_cyclic(const Ring& ring, std::uint64_t seed,
                                        std::size_t count,
                                        SampleStats& stats);

// --- mod-p^2 families -------------------------------------------------

// Reduction-kernel slices over small structured bases: entrywise or
// order-preserving generator lifts plus I + pA slice generators chosen to
// land on every achievable kernel dimension. Groups are labeled by their
// measured dimension ("dim0".."dim4" inside the family tag).
std::vector<SampledGroup> structured_lifts(const Ring& target,
                                           SampleStats& stats);

// Borel lifts <rho~, sigma~> with the invariant {E11, E12} slice attached;
// rho ranges over all diagonal pairs. The shape mirrored by the
// rank-one-fixed-module mechanics checks.
std::vector<SampledGroup> borel_lifts(const Ring& target, SampleStats& stats);

// Entrywise lifts of scalar-containing mod-p groups with a random slice
// generator, for the level-2 half of the scalar-vanishing suite.
std::vector<SampledGroup> sample_scalar_lifts(const Ring& target,
                                              std::uint64_t seed,
                                              std::size_t count,
                                              SampleStats& stats);

// Serialization of generators for reports ("[[a,b],[c,d]] mod m").
std::string matrix_literal(const RingMatrix& a);

}  // namespace glcoh
