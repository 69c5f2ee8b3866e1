#include "glcoh/cohomology.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace glcoh {

namespace {

// value(delta^i) = sum_{j<i} delta^j v, laid out in the group's indexing.
std::vector<std::uint32_t> cyclic_lift(const MatrixGroup& c,
                                       const RingMatrix& delta,
                                       const std::uint32_t* v) {
  const std::uint32_t mod = c.ring().modulus;
  std::vector<std::uint32_t> table(2 * c.order(), 0);
  RingMatrix power = RingMatrix::identity(2, mod);  // delta^i
  std::uint64_t acc0 = 0, acc1 = 0;                 // sum_{j<i} delta^j v
  for (std::size_t i = 0; i < c.order(); ++i) {
    std::size_t idx = c.index_of(mat2_of(power));
    GLCOH_CHECK(idx != ElementIndex::npos, "powers must enumerate the group");
    table[2 * idx] = static_cast<std::uint32_t>(acc0 % mod);
    table[2 * idx + 1] = static_cast<std::uint32_t>(acc1 % mod);
    acc0 += static_cast<std::uint64_t>(power.at(0, 0)) * v[0] % mod +
            static_cast<std::uint64_t>(power.at(0, 1)) * v[1] % mod;
    acc1 += static_cast<std::uint64_t>(power.at(1, 0)) * v[0] % mod +
            static_cast<std::uint64_t>(power.at(1, 1)) * v[1] % mod;
    power = power * delta;
  }
  return table;
}

}  // namespace

CohomologyGroup cyclic_h1(const RingMatrix& delta, const GModule& m) {
  const Ring& r = m.ring;
  if (delta.modulus() != r.modulus)
    throw ModulusMismatch("generator and coefficients use different moduli");
  MatrixGroup c = MatrixGroup::close(r, {delta});
  detail::check_coefficients(c, m);
  const std::uint32_t mod = r.modulus;

  RingMatrix norm(2, 2, mod);  // sum of delta^i over i < order
  RingMatrix power = RingMatrix::identity(2, mod);
  for (std::size_t i = 0; i < c.order(); ++i) {
    norm = norm + power;
    power = power * delta;
  }
  GLCOH_CHECK(power.is_identity(), "delta^order must be the identity");

  Submodule norm_kernel =
      m.support.intersect(kernel_submodule(r, norm));
  Submodule image = m.support.apply(delta - RingMatrix::identity(2, mod));
  GLCOH_CHECK(norm_kernel.contains(image),
              "the norm annihilates every (delta - 1) value");
  QuotientPresentation qp = quotient_presentation(norm_kernel, image);

  RingMatrix z_tables(0, 2 * c.order(), mod);
  for (std::size_t i = 0; i < norm_kernel.basis().rows(); ++i)
    z_tables.append_row(
        cyclic_lift(c, delta, norm_kernel.basis().row(i)).data());
  Submodule z1 = Submodule::from_rows(r, z_tables);
  Submodule b1 = coboundary_space(c, m);
  GLCOH_CHECK(z1.order() == norm_kernel.order(),
              "a cyclic cocycle is determined by its generator value");
  GLCOH_CHECK(b1.order() == image.order(),
              "coboundary tables biject with (delta - 1) values");
  GLCOH_CHECK(z1.contains(b1), "coboundaries must lift into the table span");

  std::vector<Cocycle> reps;
  for (std::size_t i = 0; i < qp.generators.rows(); ++i)
    reps.push_back(Cocycle{cyclic_lift(c, delta, qp.generators.row(i))});
  return CohomologyGroup{c.order(), std::move(z1), std::move(b1),
                         std::move(qp.invariants), std::move(reps)};
}

Cocycle restriction(const MatrixGroup& g, const Cocycle& z,
                    const MatrixGroup& sub) {
  if (z.values.size() != 2 * g.order())
    throw ModulusMismatch("value table does not match the group size");
  Cocycle out;
  out.values.resize(2 * sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i) {
    std::size_t j = g.index_of(sub.raw(i));
    if (j == ElementIndex::npos)
      throw NotASubgroup("restriction target is not a subgroup");
    out.values[2 * i] = z.values[2 * j];
    out.values[2 * i + 1] = z.values[2 * j + 1];
  }
  return out;
}

bool satisfies_local_conditions(const MatrixGroup& g, const Cocycle& z,
                                const GModule& m) {
  if (z.values.size() != 2 * g.order())
    throw ModulusMismatch("value table does not match the group size");
  const RingMatrix id2 = RingMatrix::identity(2, g.ring().modulus);
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (i == g.identity()) continue;
    Submodule image = m.support.apply(g.element(i) - id2);
    if (!image.contains(&z.values[2 * i])) return false;
  }
  return true;
}

Cocycle inflate(const QuotientGroup& q, const Cocycle& zq) {
  const MatrixGroup& g = q.parent();
  if (zq.values.size() != 2 * q.order())
    throw ModulusMismatch("value table does not match the quotient size");

  // Every value must be fixed by the projection kernel (the identity coset).
  const std::uint32_t mod = g.ring().modulus;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (q.coset_of_parent(x) != q.identity()) continue;
    RingMatrix a = g.element(x);
    for (std::size_t i = 0; i < q.order(); ++i) {
      const std::uint32_t v0 = zq.values[2 * i], v1 = zq.values[2 * i + 1];
      std::uint32_t w0 = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(a.at(0, 0)) * v0 +
           static_cast<std::uint64_t>(a.at(0, 1)) * v1) %
          mod);
      std::uint32_t w1 = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(a.at(1, 0)) * v0 +
           static_cast<std::uint64_t>(a.at(1, 1)) * v1) %
          mod);
      if (w0 != v0 || w1 != v1)
        throw ValuesNotFixed(
            "inflated values must be fixed by the projection kernel");
    }
  }

  Cocycle out;
  out.values.resize(2 * g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::size_t i = q.coset_of_parent(x);
    out.values[2 * x] = zq.values[2 * i];
    out.values[2 * x + 1] = zq.values[2 * i + 1];
  }
  return out;
}

Submodule fixed_submodule(const MatrixGroup& s, const GModule& m) {
  return m.support.intersect(fixed_submodule(s));
}

namespace {

// Pairwise law at one (row, x, y): value(x y) == value(x) + x * value(y).
inline bool pair_holds(const Mat2& ax, const std::uint32_t* table,
                       std::size_t x, std::size_t y, std::size_t xy,
                       std::uint32_t mod) {
  const std::uint32_t y0 = table[2 * y], y1 = table[2 * y + 1];
  const std::uint32_t lhs0 = table[2 * xy], lhs1 = table[2 * xy + 1];
  const std::uint32_t rhs0 = static_cast<std::uint32_t>(
      (table[2 * x] + static_cast<std::uint64_t>(ax[0]) * y0 +
       static_cast<std::uint64_t>(ax[1]) * y1) %
      mod);
  const std::uint32_t rhs1 = static_cast<std::uint32_t>(
      (table[2 * x + 1] + static_cast<std::uint64_t>(ax[2]) * y0 +
       static_cast<std::uint64_t>(ax[3]) * y1) %
      mod);
  return lhs0 == rhs0 && lhs1 == rhs1;
}

}  // namespace

std::optional<PairViolation> validate_all_pairs_serial(const MatrixGroup& g,
                                                       const Submodule& span) {
  GLCOH_CHECK(span.ambient() == 2 * g.order(),
              "table span must match the group size");
  const std::uint32_t mod = g.ring().modulus;
  const std::size_t n = g.order();
  std::vector<std::size_t> mult_row(n);
  for (std::size_t row = 0; row < span.basis().rows(); ++row) {
    const std::uint32_t* table = span.basis().row(row);
    for (std::size_t x = 0; x < n; ++x) {
      const Mat2& ax = g.raw(x);
      for (std::size_t y = 0; y < n; ++y)
        if (!pair_holds(ax, table, x, y, g.mult(x, y), mod))
          return PairViolation{row, x, y};
    }
  }
  return std::nullopt;
}

std::optional<PairViolation> validate_all_pairs_parallel(
    const MatrixGroup& g, const Submodule& span) {
  GLCOH_CHECK(span.ambient() == 2 * g.order(),
              "table span must match the group size");
  const std::uint32_t mod = g.ring().modulus;
  const std::size_t n = g.order();
  const std::size_t rows = span.basis().rows();
  const std::size_t none = static_cast<std::size_t>(-1);

  // One best-candidate slot per (row, x) strip keeps the scan deterministic
  // regardless of the thread count; the final reduction is serial.
  for (std::size_t row = 0; row < rows; ++row) {
    const std::uint32_t* table = span.basis().row(row);
    std::vector<std::size_t> best_y(n, none);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t x = 0; x < n; ++x) {
      const Mat2& ax = g.raw(x);
      for (std::size_t y = 0; y < n; ++y)
        if (!pair_holds(ax, table, x, y, g.mult(x, y), mod)) {
          best_y[x] = y;
          break;
        }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (best_y[x] != none) return PairViolation{row, x, best_y[x]};
  }
  return std::nullopt;
}

}  // namespace glcoh
