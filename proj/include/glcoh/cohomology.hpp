#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "glcoh/check.hpp"
#include "glcoh/errors.hpp"
#include "glcoh/gmodule.hpp"
#include "glcoh/matgroup.hpp"
#include "glcoh/matrix.hpp"
#include "glcoh/quotient.hpp"
#include "glcoh/ring.hpp"
#include "glcoh/submodule.hpp"

namespace glcoh {

// A one-cocycle as its flat value table: two coordinates per group element,
// indexed by the owning group's element order. The owning group is passed
// alongside wherever it matters, so the same shape serves matrix groups and
// quotient groups.
struct Cocycle {
  std::vector<std::uint32_t> values;
};

// First cohomology of a group acting on a coefficient module: the cocycle
// and coboundary spaces as canonical submodules of the flat table space,
// the invariant factors of their quotient (ascending prime powers), and one
// representative cocycle per invariant factor.
struct CohomologyGroup {
  std::uint64_t group_order;
  Submodule z1;
  Submodule b1;
  std::vector<std::uint64_t> invariants;
  std::vector<Cocycle> class_reps;
};

// Structural surface the cocycle engine needs: elements addressed by dense
// indices with 0-based identity, a multiplication table, a 2x2 acting
// matrix per element, and a generating set given by indices.
template <class G>
concept IndexedGroup = requires(const G& g, std::size_t i, std::size_t j) {
  { g.ring() } -> std::convertible_to<const Ring&>;
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.identity() } -> std::convertible_to<std::size_t>;
  { g.mult(i, j) } -> std::convertible_to<std::size_t>;
  { g.element(i) } -> std::convertible_to<RingMatrix>;
  {
    g.generator_indices()
  } -> std::convertible_to<const std::vector<std::size_t>&>;
};

// Unknown budget for the flat cocycle system (two unknowns per element).
inline constexpr std::size_t cocycle_unknown_budget = 60000;

namespace detail {

template <IndexedGroup G>
void check_coefficients(const G& g, const GModule& m) {
  if (m.ring.modulus != g.ring().modulus)
    throw ModulusMismatch("group and coefficients use different moduli");
  if (m.support.ambient() != 2)
    throw NotASubmodule("coefficient support must live in rank 2");
  if (2 * g.order() > cocycle_unknown_budget)
    throw CapExceeded("cocycle table exceeds the linear-algebra budget");
  if (m.is_full()) return;
  for (std::size_t gi : g.generator_indices()) {
    if (!(m.support.apply(g.element(gi)) == m.support))
      throw NotASubmodule("coefficient support is not preserved by the group");
  }
}

// Values of all cocycles at the engine generators, plus the linear map from
// generator values to every element's value.
//
// A cocycle is determined by its generator values w = (w_1, ..., w_k): walk
// the group breadth-first under left multiplication and propagate
//   value(g_j x) = w_j + g_j * value(x),
// i.e. value(x) = L_x * w for a 2 x 2k matrix L_x with L_identity = 0.
// Every edge that closes a cycle yields the consistency rows
// (L_y - E_j - g_j L_x) w = 0, and a proper support adds its annihilator on
// each w_j block; the solution space of the stacked system is exactly the
// generator-value space of Z^1 (values at non-tree edges then agree by
// construction, and the full pairwise identity follows by induction along
// the closure).
struct GeneratorSystem {
  std::vector<std::size_t> gens;      // engine generators (never identity)
  std::vector<RingMatrix> propagate;  // per element x: L_x, 2 x 2k
  RingMatrix solutions;               // rows: admissible generator values
};

template <IndexedGroup G>
GeneratorSystem solve_generator_system(const G& g, const GModule& m) {
  const Ring& r = g.ring();
  const std::uint32_t mod = r.modulus;

  std::vector<std::size_t> gens;
  for (std::size_t gi : g.generator_indices())
    if (gi != g.identity() &&
        std::find(gens.begin(), gens.end(), gi) == gens.end())
      gens.push_back(gi);
  const std::size_t k = gens.size();
  const std::size_t width = 2 * k;

  GeneratorSystem out{gens, {}, RingMatrix(0, width, mod)};
  if (k == 0) {
    GLCOH_CHECK(g.order() == 1, "a group without generators is trivial");
    out.propagate.assign(1, RingMatrix(2, 0, mod));
    return out;
  }

  std::vector<RingMatrix> act;
  act.reserve(k);
  for (std::size_t gi : gens) act.push_back(g.element(gi));

  std::vector<RingMatrix> l(g.order(), RingMatrix(2, width, mod));
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> order;
  order.reserve(g.order());
  RingMatrix cons(0, width, mod);

  seen[g.identity()] = 1;
  order.push_back(g.identity());
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const std::size_t x = order[qi];
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t y = g.mult(gens[j], x);
      RingMatrix cand = act[j] * l[x];
      cand.at(0, 2 * j) = (cand.at(0, 2 * j) + 1) % mod;
      cand.at(1, 2 * j + 1) = (cand.at(1, 2 * j + 1) + 1) % mod;
      if (!seen[y]) {
        seen[y] = 1;
        l[y] = std::move(cand);
        order.push_back(y);
      } else {
        RingMatrix diff = l[y] - cand;
        for (std::size_t row = 0; row < 2; ++row) {
          const std::uint32_t* d = diff.row(row);
          bool nonzero = false;
          for (std::size_t c = 0; c < width; ++c) nonzero |= d[c] != 0;
          if (nonzero) cons.append_row(d);
        }
      }
    }
  }
  GLCOH_CHECK(order.size() == g.order(),
              "generators must reach the whole group");

  if (!m.is_full()) {
    RingMatrix ann = m.support.annihilator();
    std::vector<std::uint32_t> row(width);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < ann.rows(); ++a) {
        std::fill(row.begin(), row.end(), 0);
        row[2 * j] = ann.at(a, 0);
        row[2 * j + 1] = ann.at(a, 1);
        cons.append_row(row.data());
      }
  }

  out.propagate = std::move(l);
  out.solutions = cons.rows() == 0
                      ? RingMatrix::identity(width, mod)
                      : right_kernel(howell_form(cons, r), r);
  return out;
}

// value(x) = L_x * w for every element, flattened into one table row.
template <IndexedGroup G>
std::vector<std::uint32_t> table_of(const G& g,
                                    const std::vector<RingMatrix>& l,
                                    const std::uint32_t* w,
                                    std::size_t width) {
  const std::uint32_t mod = g.ring().modulus;
  std::vector<std::uint32_t> table(2 * g.order());
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t row = 0; row < 2; ++row) {
      const std::uint32_t* lr = l[x].row(row);
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < width; ++c)
        acc += static_cast<std::uint64_t>(lr[c]) * w[c] % mod;
      table[2 * x + row] = static_cast<std::uint32_t>(acc % mod);
    }
  return table;
}

template <IndexedGroup G>
std::vector<std::size_t> cyclic_generator_indices(const G& g) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (i == g.identity()) continue;
    std::vector<std::size_t> orbit{g.identity()};
    for (std::size_t x = i; x != g.identity(); x = g.mult(x, i))
      orbit.push_back(x);
    std::sort(orbit.begin(), orbit.end());
    if (seen.insert(std::move(orbit)).second) out.push_back(i);
  }
  return out;
}

}  // namespace detail

// Space of one-cocycles as a submodule of the flat table space M^|G|
// (two columns per element, in the group's element order). Throws
// CapExceeded past the unknown budget and NotASubmodule if the support is
// not stable under the group.
template <IndexedGroup G>
Submodule cocycle_space(const G& g, const GModule& m) {
  detail::check_coefficients(g, m);
  const Ring& r = g.ring();
  auto sys = detail::solve_generator_system(g, m);
  const std::size_t width = 2 * sys.gens.size();
  RingMatrix tables(0, 2 * g.order(), r.modulus);
  for (std::size_t i = 0; i < sys.solutions.rows(); ++i)
    tables.append_row(
        detail::table_of(g, sys.propagate, sys.solutions.row(i), width)
            .data());
  return Submodule::from_rows(r, tables);
}

// Space of coboundaries x -> (x - 1) m over m in the support, as a
// submodule of the same flat table space.
template <IndexedGroup G>
Submodule coboundary_space(const G& g, const GModule& m) {
  detail::check_coefficients(g, m);
  const Ring& r = g.ring();
  const RingMatrix& sb = m.support.basis();
  RingMatrix tables(0, 2 * g.order(), r.modulus);
  std::vector<std::uint32_t> row(2 * g.order());
  for (std::size_t i = 0; i < sb.rows(); ++i) {
    const std::uint32_t v0 = sb.at(i, 0), v1 = sb.at(i, 1);
    for (std::size_t x = 0; x < g.order(); ++x) {
      RingMatrix a = g.element(x);
      std::uint64_t w0 = static_cast<std::uint64_t>(a.at(0, 0)) * v0 +
                         static_cast<std::uint64_t>(a.at(0, 1)) * v1 +
                         r.modulus - v0;
      std::uint64_t w1 = static_cast<std::uint64_t>(a.at(1, 0)) * v0 +
                         static_cast<std::uint64_t>(a.at(1, 1)) * v1 +
                         r.modulus - v1;
      row[2 * x] = static_cast<std::uint32_t>(w0 % r.modulus);
      row[2 * x + 1] = static_cast<std::uint32_t>(w1 % r.modulus);
    }
    tables.append_row(row.data());
  }
  return Submodule::from_rows(r, tables);
}

// Full first cohomology: Z^1, B^1, the invariant factors of Z^1/B^1, and a
// representative cocycle per invariant factor (Howell-basis lifts of the
// quotient generators, so output is deterministic).
template <IndexedGroup G>
CohomologyGroup h1(const G& g, const GModule& m) {
  Submodule z1 = cocycle_space(g, m);
  Submodule b1 = coboundary_space(g, m);
  GLCOH_CHECK(z1.contains(b1), "coboundaries must satisfy the cocycle law");
  QuotientPresentation qp = quotient_presentation(z1, b1);
  std::vector<Cocycle> reps;
  reps.reserve(qp.invariants.size());
  for (std::size_t i = 0; i < qp.generators.rows(); ++i) {
    const std::uint32_t* row = qp.generators.row(i);
    reps.push_back(Cocycle{{row, row + 2 * g.order()}});
  }
  return CohomologyGroup{g.order(), std::move(z1), std::move(b1),
                         std::move(qp.invariants), std::move(reps)};
}

// Locally trivial part of an already computed h1: classes whose restriction
// to every cyclic subgroup is a coboundary there. Computed twice -- once
// from per-element solvability of (g - 1) W = value(g) over all elements,
// once from the cyclic-subgroup characterization over one generator per
// distinct cyclic subgroup -- and the two answers are checked equal. The
// returned z1 is the space of locally trivial cocycles.
template <IndexedGroup G>
CohomologyGroup h1_loc_from(const G& g, const GModule& m,
                            const CohomologyGroup& cg) {
  if (cg.invariants.empty())
    return CohomologyGroup{cg.group_order, cg.z1, cg.b1, {}, {}};

  const Ring& r = g.ring();
  const std::uint32_t mod = r.modulus;
  const RingMatrix& zb = cg.z1.basis();
  const std::size_t t = zb.rows();
  const RingMatrix id2 = RingMatrix::identity(2, mod);

  // Rows over the coefficient space R^t that express "the combined cocycle
  // value at each listed element is in the image of (element - 1)".
  auto solvability_constraints = [&](const std::vector<std::size_t>& idxs) {
    RingMatrix rows(0, t, mod);
    std::vector<std::uint32_t> row(t);
    for (std::size_t gi : idxs) {
      RingMatrix shifted = g.element(gi) - id2;
      Submodule image = m.support.apply(shifted);
      if (image == m.support) continue;  // solvable for every value
      RingMatrix ann = image.annihilator();
      for (std::size_t a = 0; a < ann.rows(); ++a) {
        const std::uint64_t y0 = ann.at(a, 0), y1 = ann.at(a, 1);
        bool nonzero = false;
        for (std::size_t i = 0; i < t; ++i) {
          row[i] = static_cast<std::uint32_t>(
              (y0 * zb.at(i, 2 * gi) + y1 * zb.at(i, 2 * gi + 1)) % mod);
          nonzero |= row[i] != 0;
        }
        if (nonzero) rows.append_row(row.data());
      }
    }
    return rows;
  };

  auto kernel_of = [&](const RingMatrix& rows) {
    return rows.rows() == 0
               ? Submodule::full(r, t)
               : Submodule::from_rows(r,
                                      right_kernel(howell_form(rows, r), r));
  };

  std::vector<std::size_t> every;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (i != g.identity()) every.push_back(i);
  Submodule by_elements = kernel_of(solvability_constraints(every));
  Submodule by_cyclic =
      kernel_of(solvability_constraints(detail::cyclic_generator_indices(g)));
  GLCOH_CHECK(by_elements == by_cyclic,
              "per-element solvability must match the cyclic-subgroup test");

  // Back to table space: locally trivial cocycles = T * basis + B^1.
  RingMatrix tables(0, 2 * g.order(), mod);
  std::vector<std::uint32_t> table(2 * g.order());
  for (std::size_t i = 0; i < by_elements.basis().rows(); ++i) {
    const std::uint32_t* c = by_elements.basis().row(i);
    for (std::size_t col = 0; col < 2 * g.order(); ++col) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < t; ++j)
        acc += static_cast<std::uint64_t>(c[j]) * zb.at(j, col) % mod;
      table[col] = static_cast<std::uint32_t>(acc % mod);
    }
    tables.append_row(table.data());
  }
  for (std::size_t i = 0; i < cg.b1.basis().rows(); ++i)
    tables.append_row(cg.b1.basis().row(i));
  Submodule z1loc = Submodule::from_rows(r, tables);

  GLCOH_CHECK(z1loc.contains(cg.b1),
              "coboundaries are locally trivial by construction");
  QuotientPresentation qp = quotient_presentation(z1loc, cg.b1);
  std::vector<Cocycle> reps;
  for (std::size_t i = 0; i < qp.generators.rows(); ++i) {
    const std::uint32_t* row = qp.generators.row(i);
    reps.push_back(Cocycle{{row, row + 2 * g.order()}});
  }
  return CohomologyGroup{g.order(), std::move(z1loc), cg.b1,
                         std::move(qp.invariants), std::move(reps)};
}

template <IndexedGroup G>
CohomologyGroup h1_loc(const G& g, const GModule& m) {
  CohomologyGroup cg = h1(g, m);
  return h1_loc_from(g, m, cg);
}

// --- Non-template operations on matrix groups -------------------------------

// Cyclic-group cohomology through the norm map: with d the order of delta
// and N = sum of delta^i (i < d), H^1 is ker(N on S) / (delta - 1) S, and a
// kernel vector v lifts to the cocycle value(delta^i) = sum_{j<i} delta^j v.
// Field contents mirror h1 and agree with it on every cyclic group.
CohomologyGroup cyclic_h1(const RingMatrix& delta, const GModule& m);

// Value table restricted to a subgroup, reindexed by the subgroup's own
// element order. Throws NotASubgroup when sub is not contained in g.
Cocycle restriction(const MatrixGroup& g, const Cocycle& z,
                    const MatrixGroup& sub);

// True iff (g - 1) W = value(g) is solvable within the support for every
// group element individually.
bool satisfies_local_conditions(const MatrixGroup& g, const Cocycle& z,
                                const GModule& m);

// Pull a cocycle on g/n back to g along the projection: the value at x is
// the value at its coset. Throws ValuesNotFixed unless every value is fixed
// by the kernel of the projection.
Cocycle inflate(const QuotientGroup& q, const Cocycle& zq);

// Fixed points of the support under every element of s.
Submodule fixed_submodule(const MatrixGroup& s, const GModule& m);

// Exhaustive audit of the pairwise cocycle law over every basis row of a
// table span: reports the first violating (basis row, x, y) in
// lexicographic order, or nothing when the span is clean. The serial and
// parallel versions compute identical answers; the parallel one splits the
// x-axis across threads.
struct PairViolation {
  std::size_t basis_row;
  std::size_t x;
  std::size_t y;
  friend bool operator==(const PairViolation&, const PairViolation&) = default;
};
std::optional<PairViolation> validate_all_pairs_serial(const MatrixGroup& g,
                                                       const Submodule& span);
std::optional<PairViolation> validate_all_pairs_parallel(
    const MatrixGroup& g, const Submodule& span);

}  // namespace glcoh
