#include "glcoh/sampling.hpp"

#include <numeric>

#include "glcoh/check.hpp"
#include "glcoh/errors.hpp"

namespace glcoh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RingMatrix mk(std::uint32_t m, std::uint32_t a, std::uint32_t b,
              std::uint32_t c, std::uint32_t d) {
  RingMatrix x(2, 2, m);
  x.at(0, 0) = a % m;
  x.at(0, 1) = b % m;
  x.at(1, 0) = c % m;
  x.at(1, 1) = d % m;
  return x;
}

// Appends the closure of gens unless it trips the element cap.
void emit(std::vector<SampledGroup>& out, const Ring& ring,
          std::vector<RingMatrix> gens, std::string family,
          SampleStats& stats, std::size_t cap = 20000) {
  try {
    MatrixGroup g = MatrixGroup::close(ring, gens, cap);
    out.push_back(SampledGroup{std::move(g), std::move(gens),
                               std::move(family)});
    ++stats.produced;
  } catch (const CapExceeded&) {
    ++stats.cap_skipped;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, const std::string& label) {
  return splitmix64(root ^ fnv1a(label));
}

std::uint32_t draw_below(std::mt19937_64& rng, std::uint32_t bound) {
  GLCOH_CHECK(bound > 0, "draw bound must be positive");
  return static_cast<std::uint32_t>(rng() % bound);
}

RingMatrix random_invertible(std::mt19937_64& rng, const Ring& ring) {
  const std::uint32_t m = ring.modulus;
  for (;;) {
    RingMatrix a = mk(m, draw_below(rng, m), draw_below(rng, m),
                      draw_below(rng, m), draw_below(rng, m));
    if (a.det2() % ring.p != 0) return a;
  }
}

RingMatrix lift_entrywise(const RingMatrix& a, const Ring& target) {
  RingMatrix out(a.rows(), a.cols(), target.modulus);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  return out;
}

RingMatrix order_preserving_lift(const RingMatrix& g, const Ring& target) {
  RingMatrix h = lift_entrywise(g, target);
  std::uint64_t m = element_order(g);
  GLCOH_CHECK(m % target.p != 0,
              "order-preserving lifts need order prime to p");
  // E = 1 mod m, E = 0 mod p: E = p * (p^-1 mod m) works since gcd(p,m)=1.
  std::uint64_t pinv = 1;
  while ((target.p * pinv) % m != 1) ++pinv;
  RingMatrix out = h.pow(target.p * pinv);
  GLCOH_CHECK(element_order(out) == m, "lift must preserve the order");
  return out;
}

RingMatrix reduction_kernel_element(const RingMatrix& a, const Ring& target) {
  const std::uint32_t p = target.p, m = target.modulus;
  RingMatrix out = RingMatrix::identity(2, m);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out.at(i, j) = (out.at(i, j) + p * (a.at(i, j) % p)) % m;
  return out;
}

std::vector<SampledGroup> structured_mod_p(const Ring& ring) {
  GLCOH_CHECK(ring.n == 1, "mod-p families live at level 1");
  const std::uint32_t p = ring.p;
  SampleStats ignored;
  std::vector<SampledGroup> out;
  auto add = [&](std::vector<RingMatrix> gens, std::string fam) {
    emit(out, ring, std::move(gens), std::move(fam), ignored);
  };

  add({}, "trivial");
  add({mk(p, 1, 1, 0, 1)}, "unipotent");
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t d = 1; d < p; ++d) {
      if (a == 1 && d == 1) continue;
      add({mk(p, a, 0, 0, d)}, "diagonal-cyclic");
    }
  const std::uint32_t w = primitive_root(p);
  add({mk(p, w, 0, 0, 1), mk(p, 1, 0, 0, w)}, "diagonal-full");
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t d = 1; d < p; ++d)
      add({mk(p, a, 0, 0, d), mk(p, 1, 1, 0, 1)}, "borel");

  // No-line groups: the full group, SL2, a nonsplit torus (first matrix of
  // order p^2 - 1 in lexicographic scan), and its Weyl extension.
  add({mk(p, 1, 1, 0, 1), mk(p, 1, 0, 1, 1), mk(p, w, 0, 0, 1)},
      "full-group");
  add({mk(p, 1, 1, 0, 1), mk(p, 1, 0, 1, 1)}, "sl2");
  for (std::uint32_t a = 0;; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < p && !found; ++b)
      for (std::uint32_t c = 0; c < p && !found; ++c)
        for (std::uint32_t d = 0; d < p && !found; ++d) {
          RingMatrix x = mk(p, a, b, c, d);
          if (x.det2() % p == 0) continue;
          if (element_order(x) == static_cast<std::uint64_t>(p) * p - 1) {
            add({x}, "nonsplit-torus");
            add({x, mk(p, 0, 1, 1, 0)}, "nonsplit-weyl");
            found = true;
          }
        }
    if (found) break;
    GLCOH_CHECK(a < p, "GL2(F_p) contains an element of order p^2 - 1");
  }
  return out;
}

std::vector<SampledGroup> sample_scalar_containing(const Ring& ring,
                                                   std::uint64_t seed,
                                                   std::size_t count,
                                                   SampleStats& stats) {
  GLCOH_CHECK(ring.n == 1, "scalar family samples at level 1");
  const std::uint32_t p = ring.p;
  std::mt19937_64 rng(seed);
  std::vector<SampledGroup> out;
  while (out.size() < count) {
    std::uint32_t c = 2 + draw_below(rng, p - 2);  // nontrivial scalar
    std::vector<RingMatrix> gens = {mk(p, c, 0, 0, c)};
    std::size_t extra = draw_below(rng, 3);  // 0, 1 or 2 companions
    for (std::size_t i = 0; i < extra; ++i)
      gens.push_back(random_invertible(rng, ring));
    emit(out, ring, std::move(gens), "scalar-containing", stats);
  }
  return out;
}

std::vector<SampledGroup> sample_two_generator(const Ring& ring,
                                               std::uint64_t seed,
                                               std::size_t count,
                                               std::size_t cap,
                                               SampleStats& stats) {
  std::mt19937_64 rng(seed);
  std::vector<SampledGroup> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 20 * count + 50) {
    ++attempts;
    std::vector<RingMatrix> gens = {random_invertible(rng, ring)};
    if (draw_below(rng, 2) == 1) gens.push_back(random_invertible(rng, ring));
    std::size_t before = out.size();
    emit(out, ring, std::move(gens), "random-2gen", stats, cap);
    (void)before;
  }
  return out;
}

std::vector<SampledGroup> sample_cyclic(const Ring& ring, std::uint64_t seed,
                                        std::size_t count,
                                        SampleStats& stats) {
  std::mt19937_64 rng(seed);
  std::vector<SampledGroup> out;
  while (out.size() < count) {
    std::vector<RingMatrix> gens = {random_invertible(rng, ring)};
    emit(out, ring, std::move(gens), "random-cyclic", stats);
  }
  return out;
}

std::vector<SampledGroup> structured_lifts(const Ring& target,
                                           SampleStats& stats) {
  GLCOH_CHECK(target.n == 2, "lift families live at level 2");
  const std::uint32_t p = target.p, m = target.modulus;
  const Ring base(p, 1);
  std::vector<SampledGroup> out;

  // Slice generators, as mod-p matrices A giving I + pA.
  const RingMatrix e11 = mk(p, 1, 0, 0, 0), e12 = mk(p, 0, 1, 0, 0);
  const RingMatrix e21 = mk(p, 0, 0, 1, 0), e22 = mk(p, 0, 0, 0, 1);
  const RingMatrix tless = mk(p, 1, 0, 0, p - 1);
  const std::vector<std::vector<RingMatrix>> slices = {
      {},                      // whatever the bare lift produces
      {e12},                   // one-dimensional
      {e11, e12},              // Borel-invariant plane
      {e12, e21},              // off-diagonal plane
      {e12, e21, tless},       // traceless hyperplane
      {e11, e12, e21, e22},    // everything
  };

  // Base groups mod p: cyclic prime-to-p ones get order-preserving lifts
  // (the only way to reach dimension 0), the rest entrywise lifts.
  struct Base {
    std::vector<RingMatrix> gens;
    bool prime_to_p;
    const char* name;
  };
  std::vector<Base> bases = {
      {{}, true, "trivial"},
      {{mk(p, 1, 1, 0, 1)}, false, "unipotent"},
      {{mk(p, 2, 0, 0, 3)}, true, "diagonal-cyclic"},
      {{mk(p, 1, 0, 0, 2)}, true, "diagonal-fixing"},
      {{mk(p, primitive_root(p), 0, 0, 1), mk(p, 1, 0, 0, primitive_root(p))},
       true,
       "diagonal-full"},
      {{mk(p, 2, 0, 0, 3), mk(p, 1, 1, 0, 1)}, false, "borel"},
      {{mk(p, 1, 0, 0, 2), mk(p, 1, 1, 0, 1)}, false, "borel-fixing"},
  };

  for (const Base& b : bases) {
    for (std::size_t si = 0; si < slices.size(); ++si) {
      std::vector<RingMatrix> gens;
      for (const RingMatrix& g0 : b.gens)
        gens.push_back(b.prime_to_p
                           ? order_preserving_lift(g0, target)
                           : lift_entrywise(g0, target));
      for (const RingMatrix& a : slices[si])
        gens.push_back(reduction_kernel_element(a, target));
      std::string fam = std::string("lift-") + b.name;
      // Label with the measured kernel dimension after closing.
      try {
        MatrixGroup g = MatrixGroup::close(target, gens, 20000);
        std::uint32_t dim = reduction_kernel_dim(reduction_split(g).kernel);
        out.push_back(SampledGroup{std::move(g), std::move(gens),
                                   fam + "-dim" + std::to_string(dim)});
        ++stats.produced;
      } catch (const CapExceeded&) {
        ++stats.cap_skipped;
      }
    }
  }

  // A nonsplit torus lift (order preserved, no invariant line downstairs).
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b2 = 0; b2 < p; ++b2)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          RingMatrix x = mk(p, a, b2, c, d);
          if (x.det2() % p == 0) continue;
          if (element_order(x) != static_cast<std::uint64_t>(p) * p - 1)
            continue;
          emit(out, target, {order_preserving_lift(x, target)},
               "lift-nonsplit-dim0", stats);
          emit(out, target,
               {order_preserving_lift(x, target),
                reduction_kernel_element(e12, target)},
               "lift-nonsplit-slice", stats);
          a = b2 = c = d = p;  // first hit only
        }
  (void)m;
  return out;
}

std::vector<SampledGroup> borel_lifts(const Ring& target, SampleStats& stats) {
  GLCOH_CHECK(target.n == 2, "lift families live at level 2");
  const std::uint32_t p = target.p;
  std::vector<SampledGroup> out;
  const RingMatrix e11 = mk(p, 1, 0, 0, 0), e12 = mk(p, 0, 1, 0, 0);
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t d = 1; d < p; ++d) {
      std::vector<RingMatrix> gens = {
          lift_entrywise(mk(p, a, 0, 0, d), target),
          lift_entrywise(mk(p, 1, 1, 0, 1), target),
          reduction_kernel_element(e11, target),
          reduction_kernel_element(e12, target)};
      emit(out, target, std::move(gens), "borel-lift-plane", stats);
    }
  return out;
}

std::vector<SampledGroup> sample_scalar_lifts(const Ring& target,
                                              std::uint64_t seed,
                                              std::size_t count,
                                              SampleStats& stats) {
  GLCOH_CHECK(target.n == 2, "lift families live at level 2");
  const std::uint32_t p = target.p;
  const Ring base(p, 1);
  std::mt19937_64 rng(seed);
  std::vector<SampledGroup> out;
  while (out.size() < count) {
    std::uint32_t c = 2 + draw_below(rng, p - 2);
    std::vector<RingMatrix> gens = {
        lift_entrywise(mk(p, c, 0, 0, c), target)};
    if (draw_below(rng, 2) == 1)
      gens.push_back(lift_entrywise(random_invertible(rng, base), target));
    RingMatrix a = mk(p, draw_below(rng, p), draw_below(rng, p),
                      draw_below(rng, p), draw_below(rng, p));
    if (!a.is_zero()) gens.push_back(reduction_kernel_element(a, target));
    emit(out, target, std::move(gens), "scalar-lift", stats, 4000);
  }
  return out;
}

}  // namespace glcoh
