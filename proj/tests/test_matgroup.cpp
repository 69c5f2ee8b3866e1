#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "glcoh/errors.hpp"
#include "glcoh/matgroup.hpp"
#include "glcoh/matrix.hpp"
#include "glcoh/ring.hpp"
#include "glcoh/submodule.hpp"

using namespace glcoh;

namespace {

RingMatrix mat(std::initializer_list<std::initializer_list<std::uint32_t>> v,
               std::uint32_t mod) {
  RingMatrix m(2, 2, mod);
  std::size_t i = 0;
  for (const auto& row : v) {
    std::size_t j = 0;
    for (auto x : row) m.at(i, j++) = x % mod;
    ++i;
  }
  return m;
}

using Arr = std::array<std::uint32_t, 4>;

Arr arr_mul(const Arr& x, const Arr& y, std::uint32_t mod) {
  auto dot = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c,
                 std::uint32_t d) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b + static_cast<std::uint64_t>(c) * d) %
        mod);
  };
  return {dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]),
          dot(x[2], y[0], x[3], y[2]), dot(x[2], y[1], x[3], y[3])};
}

// Independent closure oracle: plain fixpoint iteration over a std::set,
// multiplying on both sides each pass until nothing new appears.
std::set<Arr> closure_oracle(const std::vector<Arr>& gens, std::uint32_t mod) {
  std::set<Arr> s;
  s.insert({1, 0, 0, 1});
  for (const auto& g : gens) s.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Arr> cur(s.begin(), s.end());
    for (const auto& x : cur)
      for (const auto& g : gens) {
        if (s.insert(arr_mul(g, x, mod)).second) grew = true;
        if (s.insert(arr_mul(x, g, mod)).second) grew = true;
      }
  }
  return s;
}

std::set<Arr> group_as_set(const MatrixGroup& g) {
  std::set<Arr> s;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Mat2& e = g.raw(i);
    s.insert({e[0], e[1], e[2], e[3]});
  }
  return s;
}

std::uint64_t order_oracle(const RingMatrix& m) {
  RingMatrix id = RingMatrix::identity(2, m.modulus());
  RingMatrix x = m;
  std::uint64_t t = 1;
  while (!(x == id)) {
    x = x * m;
    ++t;
  }
  return t;
}

RingMatrix random_invertible(std::mt19937_64& rng, const Ring& r) {
  for (;;) {
    RingMatrix m(2, 2, r.modulus);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        m.at(i, j) = static_cast<std::uint32_t>(rng() % r.modulus);
    if (m.det2() % r.p != 0) return m;
  }
}

bool divides(std::uint64_t a, std::uint64_t b) { return b % a == 0; }

}  // namespace

TEST_CASE("closure: frozen orders and independent fixpoint oracle") {
  Ring r5(5, 1);

  MatrixGroup uni = MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)});
  CHECK(uni.order() == 5);
  CHECK(group_as_set(uni) == closure_oracle({{1, 1, 0, 1}}, 5));

  MatrixGroup borel =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  CHECK(borel.order() == 20);
  CHECK(group_as_set(borel) == closure_oracle({{2, 0, 0, 1}, {1, 1, 0, 1}}, 5));

  // Element 0 is the identity; inverses multiply back to it.
  CHECK(borel.element(0).is_identity());
  for (std::size_t i = 0; i < borel.order(); ++i)
    CHECK(borel.mult(i, borel.inverse(i)) == 0);

  // Closure is a pure function of (ring, generator list).
  MatrixGroup again =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  CHECK(again.canonical_key() == borel.canonical_key());
  for (std::size_t i = 0; i < borel.order(); ++i)
    CHECK(again.raw(i) == borel.raw(i));
}

TEST_CASE("closure: all invertible matrices over Z/5 by brute-force count") {
  Ring r5(5, 1);
  // Elementary transvections generate the det-1 subgroup; adding diag(2,1)
  // (det = 2, a generator of the units) yields every invertible matrix.
  MatrixGroup gl = MatrixGroup::close(
      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{1, 0}, {1, 1}}, 5),
           mat({{2, 0}, {0, 1}}, 5)});
  CHECK(gl.order() == 480);

  std::set<Arr> brute;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b)
      for (std::uint32_t c = 0; c < 5; ++c)
        for (std::uint32_t d = 0; d < 5; ++d)
          if ((a * d + 5 * 5 - b * c) % 5 != 0) brute.insert({a, b, c, d});
  CHECK(brute.size() == 480);
  CHECK(group_as_set(gl) == brute);
}

TEST_CASE("closure: error paths") {
  Ring r5(5, 1), r25(5, 2);
  CHECK_THROWS_AS(MatrixGroup::close(
                      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{1, 0}, {1, 1}}, 5),
                           mat({{2, 0}, {0, 1}}, 5)},
                      100),
                  CapExceeded);
  CHECK_THROWS_AS(MatrixGroup::close(r25, {mat({{1, 0}, {0, 5}}, 25)}),
                  NotInvertible);

  // Absent elements resolve to npos / false.
  MatrixGroup uni = MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)});
  CHECK(uni.index_of(Mat2{2, 0, 0, 2}) == ElementIndex::npos);
  CHECK(!uni.contains(Mat2{2, 0, 0, 2}));
  CHECK(uni.contains(Mat2{1, 3, 0, 1}));
}

TEST_CASE("from_elements: round trip and non-closed rejection") {
  Ring r5(5, 1);
  MatrixGroup borel =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  std::vector<Mat2> elems;
  for (std::size_t i = 0; i < borel.order(); ++i) elems.push_back(borel.raw(i));
  MatrixGroup rebuilt = MatrixGroup::from_elements(r5, elems);
  CHECK(rebuilt.order() == 20);
  CHECK(rebuilt.canonical_key() == borel.canonical_key());

  CHECK_THROWS_AS(
      MatrixGroup::from_elements(r5, {Mat2{1, 0, 0, 1}, Mat2{1, 1, 0, 1}}),
      NotASubgroup);
}

TEST_CASE("element orders: frozen values and multiplication oracle") {
  CHECK(element_order(RingMatrix::identity(2, 5)) == 1);
  CHECK(element_order(mat({{1, 1}, {0, 1}}, 25)) == 25);
  CHECK(order_oracle(mat({{1, 1}, {0, 1}}, 25)) == 25);
  CHECK(element_order(mat({{2, 0}, {0, 3}}, 5)) == 4);

  RingMatrix gamma = mat({{2, 1}, {0, 2}}, 5);
  CHECK(element_order(gamma) == 20);
  CHECK(gamma.pow(4) == mat({{1, 2}, {0, 1}}, 5));
  MatrixGroup cyc = MatrixGroup::close(Ring(5, 1), {gamma});
  CHECK(cyc.contains(Mat2{1, 1, 0, 1}));

  // Group-indexed overload agrees with the free function.
  for (std::size_t i = 0; i < cyc.order(); ++i)
    CHECK(element_order(cyc, i) == order_oracle(cyc.element(i)));
}

TEST_CASE("scaled-unipotent power identity at p = 5 and 7") {
  // For every [[a,b],[0,a]] with a a unit and b nonzero, the (p-1)-st power
  // is [[1, (p-1)*a^(p-2)*b],[0,1]] -- checked exhaustively.
  for (std::uint32_t p : {5u, 7u}) {
    for (std::uint32_t a = 1; a < p; ++a)
      for (std::uint32_t b = 1; b < p; ++b) {
        RingMatrix g = mat({{a, b}, {0, a}}, p);
        std::uint64_t apm2 = 1;
        for (std::uint32_t k = 0; k + 2 < p; ++k) apm2 = apm2 * a % p;
        std::uint32_t off =
            static_cast<std::uint32_t>((p - 1) * apm2 % p * b % p);
        CHECK(g.pow(p - 1) == mat({{1, off}, {0, 1}}, p));
      }
  }
}

TEST_CASE("cyclic subgroups: dedup against per-element oracle") {
  Ring r5(5, 1);

  MatrixGroup trivial = MatrixGroup::close(r5, {RingMatrix::identity(2, 5)});
  CHECK(cyclic_subgroups(trivial).size() == 1);
  CHECK(cyclic_subgroups(trivial)[0].order() == 1);

  MatrixGroup uni = MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)});
  auto subs = cyclic_subgroups(uni);
  CHECK(subs.size() == 2);  // trivial and the whole prime-order group

  MatrixGroup diag =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 0}, {0, 2}}, 5)});
  CHECK(diag.order() == 16);
  auto dsubs = cyclic_subgroups(diag);

  // Oracle: one closure per element, deduplicated by element set.
  std::set<std::set<Arr>> oracle;
  for (std::size_t i = 0; i < diag.order(); ++i)
    oracle.insert(group_as_set(MatrixGroup::close(r5, {diag.element(i)})));
  CHECK(dsubs.size() == oracle.size());
  CHECK(dsubs.size() == 10);

  std::set<std::set<Arr>> got;
  for (const auto& s : dsubs) {
    CHECK(divides(s.order(), diag.order()));
    for (std::size_t i = 0; i < s.order(); ++i) CHECK(diag.contains(s.raw(i)));
    got.insert(group_as_set(s));
  }
  CHECK(got == oracle);

  // distinct_cyclic_generators yields exactly one generator per subgroup.
  auto gens = distinct_cyclic_generators(diag);
  CHECK(gens.size() == 10);
}

TEST_CASE("reduction split: frozen examples") {
  Ring r25(5, 2);

  // Full reduction kernel: every I + 5A.
  MatrixGroup full = MatrixGroup::close(
      r25, {mat({{6, 0}, {0, 1}}, 25), mat({{1, 5}, {0, 1}}, 25),
            mat({{1, 0}, {5, 1}}, 25), mat({{1, 0}, {0, 6}}, 25)});
  CHECK(full.order() == 625);
  ReductionSplit fs = reduction_split(full);
  CHECK(fs.image.order() == 1);
  CHECK(fs.kernel.order() == 625);
  CHECK(reduction_kernel_dim(fs.kernel) == 4);

  MatrixGroup lift = MatrixGroup::close(r25, {mat({{1, 1}, {0, 1}}, 25)});
  CHECK(lift.order() == 25);
  ReductionSplit ls = reduction_split(lift);
  CHECK(ls.image.order() == 5);
  CHECK(ls.kernel.order() == 5);
  CHECK(reduction_kernel_dim(ls.kernel) == 1);

  MatrixGroup dlift = MatrixGroup::close(r25, {mat({{2, 0}, {0, 3}}, 25)});
  CHECK(element_order(mat({{2, 0}, {0, 3}}, 25)) == 20);
  CHECK(dlift.order() == 20);
  ReductionSplit ds = reduction_split(dlift);
  CHECK(ds.image.order() == 4);
  CHECK(ds.kernel.order() == 5);
  CHECK(reduction_kernel_dim(ds.kernel) == 1);

  // Prime-to-p lift: powering away the p-part leaves a trivial kernel.
  MatrixGroup tlift = MatrixGroup::close(r25, {mat({{7, 0}, {0, 18}}, 25)});
  CHECK(tlift.order() == 4);
  ReductionSplit ts = reduction_split(tlift);
  CHECK(ts.image.order() == 4);
  CHECK(ts.kernel.order() == 1);
  CHECK(reduction_kernel_dim(ts.kernel) == 0);

  // |G2| = |G1| * |H| on each example.
  CHECK(fs.image.order() * fs.kernel.order() == full.order());
  CHECK(ls.image.order() * ls.kernel.order() == lift.order());
  CHECK(ds.image.order() * ds.kernel.order() == dlift.order());
  CHECK(ts.image.order() * ts.kernel.order() == tlift.order());

  // Kernel elements have the shape I + 5A.
  for (std::size_t i = 0; i < ls.kernel.order(); ++i) {
    const Mat2& e = ls.kernel.raw(i);
    CHECK(e[0] % 5 == 1);
    CHECK(e[1] % 5 == 0);
    CHECK(e[2] % 5 == 0);
    CHECK(e[3] % 5 == 1);
  }
}

TEST_CASE("reduction kernel dimension: one-parameter family and errors") {
  Ring r25(5, 2);
  MatrixGroup one = MatrixGroup::close(r25, {mat({{1, 5}, {0, 1}}, 25)});
  CHECK(one.order() == 5);
  CHECK(reduction_kernel_dim(one) == 1);

  MatrixGroup lift = MatrixGroup::close(r25, {mat({{1, 1}, {0, 1}}, 25)});
  CHECK_THROWS_AS(reduction_kernel_dim(lift), NotReductionKernel);

  MatrixGroup modp = MatrixGroup::close(Ring(5, 1), {mat({{1, 1}, {0, 1}}, 5)});
  CHECK_THROWS_AS(reduction_kernel_dim(modp), NotReductionKernel);
}

TEST_CASE("p-sylow: frozen examples and normality flag") {
  Ring r5(5, 1), r25(5, 2);

  SylowResult none = p_sylow(MatrixGroup::close(r5, {mat({{2, 0}, {0, 3}}, 5)}));
  CHECK(none.subgroup.order() == 1);
  CHECK(none.normal);

  MatrixGroup borel =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  SylowResult bs = p_sylow(borel);
  CHECK(bs.subgroup.order() == 5);
  CHECK(bs.normal);
  CHECK(group_as_set(bs.subgroup) ==
        group_as_set(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)})));

  MatrixGroup lift = MatrixGroup::close(r25, {mat({{1, 1}, {0, 1}}, 25)});
  SylowResult ps = p_sylow(lift);
  CHECK(ps.subgroup.order() == 25);
  CHECK(ps.normal);

  // The full invertible group has several conjugate 5-Sylows: the result is
  // still one of them, but it is flagged non-normal.
  MatrixGroup gl = MatrixGroup::close(
      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{1, 0}, {1, 1}}, 5),
           mat({{2, 0}, {0, 1}}, 5)});
  SylowResult gs = p_sylow(gl);
  CHECK(gs.subgroup.order() == 5);
  CHECK(!gs.normal);
  for (std::size_t i = 0; i < gs.subgroup.order(); ++i)
    CHECK(gl.contains(gs.subgroup.raw(i)));
}

TEST_CASE("diagonal part: frozen examples") {
  Ring r5(5, 1);
  MatrixGroup diag =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 0}, {0, 2}}, 5)});
  CHECK(diagonal_part(diag).order() == 16);

  MatrixGroup borel =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  MatrixGroup gd = diagonal_part(borel);
  CHECK(gd.order() == 4);
  CHECK(group_as_set(gd) ==
        group_as_set(MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5)})));

  // Oracle: direct filter of the elements.
  std::size_t diag_count = 0;
  for (std::size_t i = 0; i < borel.order(); ++i) {
    const Mat2& e = borel.raw(i);
    if (e[1] == 0 && e[2] == 0) ++diag_count;
  }
  CHECK(diag_count == gd.order());

  CHECK(diagonal_part(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)})).order() ==
        1);
}

TEST_CASE("invariant lines: counts and representatives") {
  Ring r5(5, 1);

  auto scalar_lines = invariant_lines(MatrixGroup::close(r5, {mat({{2, 0}, {0, 2}}, 5)}));
  CHECK(scalar_lines.size() == 6);
  for (const auto& l : scalar_lines) CHECK(l.order() == 5);

  auto uni_lines = invariant_lines(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)}));
  REQUIRE(uni_lines.size() == 1);
  std::uint32_t e1[2] = {1, 0};
  CHECK(uni_lines[0].contains(e1));
  CHECK(uni_lines[0].order() == 5);

  auto diag_lines = invariant_lines(MatrixGroup::close(r5, {mat({{2, 0}, {0, 3}}, 5)}));
  REQUIRE(diag_lines.size() == 2);
  std::uint32_t e2[2] = {0, 1};
  CHECK(diag_lines[0].contains(e2));  // representatives come in lex order
  CHECK(diag_lines[1].contains(e1));

  CHECK(invariant_lines(MatrixGroup::close(r5, {mat({{0, 1}, {2, 0}}, 5)})).empty());

  MatrixGroup gl = MatrixGroup::close(
      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{1, 0}, {1, 1}}, 5),
           mat({{2, 0}, {0, 1}}, 5)});
  CHECK(invariant_lines(gl).empty());
}

TEST_CASE("classification: two lines, diagonal cyclic") {
  Ring r5(5, 1);
  MatrixGroup g = MatrixGroup::close(r5, {mat({{2, 0}, {0, 3}}, 5)});
  Classification c = classify_mod_p(g);
  CHECK(c.tag == ClassTag::TwoLinesDiagonal);
  CHECK(std::string(class_tag_name(c.tag)) == "TwoLines-DiagonalCyclic");
  CHECK(c.line_count == 2);
  CHECK(c.diagonal_cyclic);
  REQUIRE(c.diagonal_generator.has_value());
  // The basis change really diagonalizes the generator.
  RingMatrix u = c.basis_change;
  RingMatrix conj = u.inv2() * mat({{2, 0}, {0, 3}}, 5) * u;
  CHECK(conj.at(0, 1) == 0);
  CHECK(conj.at(1, 0) == 0);
}

TEST_CASE("classification: non-cyclic diagonal group keeps the flag down") {
  Ring r5(5, 1);
  MatrixGroup diag =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 0}, {0, 2}}, 5)});
  Classification c = classify_mod_p(diag);
  CHECK(c.tag == ClassTag::TwoLinesDiagonal);
  CHECK(!c.diagonal_cyclic);
}

TEST_CASE("classification: one line, distinguished generators") {
  Ring r5(5, 1);
  MatrixGroup g = MatrixGroup::close(
      r5, {mat({{1, 0}, {0, 2}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  CHECK(g.order() == 20);
  Classification c = classify_mod_p(g);
  CHECK(c.tag == ClassTag::OneLineBorel);
  CHECK(std::string(class_tag_name(c.tag)) == "OneLine-Borel");
  CHECK(c.line_count == 1);
  CHECK(c.diagonal_cyclic);
  REQUIRE(c.unipotent_generator.has_value());
  CHECK(*c.unipotent_generator == mat({{1, 1}, {0, 1}}, 5));
  REQUIRE(c.diagonal_generator.has_value());
  CHECK(*c.diagonal_generator == mat({{1, 0}, {0, 2}}, 5));

  // The distinguished pair regenerates the whole (conjugated) group; here the
  // basis change is trivial so it is the group itself.
  CHECK(c.basis_change.is_identity());
  MatrixGroup span = MatrixGroup::close(
      r5, {*c.diagonal_generator, *c.unipotent_generator});
  CHECK(span.canonical_key() == g.canonical_key());

  // Coset identity: |G| / |G_D| = p.
  CHECK(g.order() / diagonal_part(g).order() == 5);
}

TEST_CASE("classification: scaled unipotent generator") {
  Ring r5(5, 1);
  RingMatrix gamma = mat({{2, 1}, {0, 2}}, 5);
  MatrixGroup g = MatrixGroup::close(r5, {gamma});
  Classification c = classify_mod_p(g);
  CHECK(c.tag == ClassTag::OneLineBorel);
  CHECK(c.diagonal_cyclic);
  REQUIRE(c.diagonal_generator.has_value());
  CHECK(*c.diagonal_generator == mat({{2, 0}, {0, 2}}, 5));

  // After the recorded basis change the standard unipotent lies in the group.
  RingMatrix u = c.basis_change;
  MatrixGroup conj = MatrixGroup::close(r5, {u.inv2() * gamma * u});
  CHECK(conj.contains(Mat2{1, 1, 0, 1}));
  CHECK(g.order() / diagonal_part(g).order() == 5);
}

TEST_CASE("classification: scalar and line-free tags") {
  Ring r5(5, 1);
  Classification s =
      classify_mod_p(MatrixGroup::close(r5, {mat({{2, 0}, {0, 2}}, 5)}));
  CHECK(s.tag == ClassTag::ManyLinesScalar);
  CHECK(std::string(class_tag_name(s.tag)) == "ManyLines-Scalarish");
  CHECK(s.line_count == 6);
  CHECK(s.diagonal_cyclic);

  Classification n =
      classify_mod_p(MatrixGroup::close(r5, {mat({{0, 1}, {2, 0}}, 5)}));
  CHECK(n.tag == ClassTag::NoLine);
  CHECK(n.line_count == 0);
}

TEST_CASE("commutator: frozen example and trivial cases") {
  RingMatrix delta = mat({{1, 1}, {0, 1}}, 5);
  RingMatrix gamma = mat({{2, 0}, {0, 3}}, 5);
  RingMatrix c = commutator(delta, gamma);
  CHECK(c == mat({{1, 2}, {0, 1}}, 5));
  // Oracle: direct product.
  CHECK(c == delta * gamma * delta.inv2() * gamma.inv2());

  CHECK(commutator(gamma, gamma).is_identity());
  CHECK(commutator(mat({{2, 0}, {0, 1}}, 5), mat({{1, 0}, {0, 3}}, 5))
            .is_identity());
}

TEST_CASE("normality: frozen examples and subgroup check") {
  Ring r5(5, 1);
  MatrixGroup borel =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 1}, {0, 1}}, 5)});
  MatrixGroup sigma = MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)});
  MatrixGroup gd = MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5)});

  CHECK(is_normal(sigma, borel));
  CHECK(!is_normal(gd, borel));

  MatrixGroup diag =
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 1}}, 5), mat({{1, 0}, {0, 2}}, 5)});
  CHECK(is_normal(gd, diag));  // subgroup of an abelian group

  CHECK_THROWS_AS(is_normal(sigma, diag), NotASubgroup);
}

TEST_CASE("determinant image: frozen examples") {
  Ring r5(5, 1), r25(5, 2);

  CHECK(det_image(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)}), 5) ==
        std::vector<std::uint32_t>{1});

  // det diag(2,3) = 6 = 1, so the image collapses to {1}.
  MatrixGroup d = MatrixGroup::close(r5, {mat({{2, 0}, {0, 3}}, 5)});
  CHECK(det_image(d, 5) == std::vector<std::uint32_t>{1});
  std::set<std::uint32_t> oracle;
  for (std::size_t i = 0; i < d.order(); ++i)
    oracle.insert(static_cast<std::uint32_t>(d.element(i).det2() % 5));
  CHECK(oracle == std::set<std::uint32_t>{1});

  MatrixGroup gl = MatrixGroup::close(
      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{1, 0}, {1, 1}}, 5),
           mat({{2, 0}, {0, 1}}, 5)});
  CHECK(det_image(gl, 5) == std::vector<std::uint32_t>{1, 2, 3, 4});

  // Lifted torus: det = 6 generates the order-5 unit subgroup mod 25,
  // so 5 divides the image size (the hypothesis filter of the search).
  MatrixGroup d2 = MatrixGroup::close(r25, {mat({{2, 0}, {0, 3}}, 25)});
  CHECK(det_image(d2, 25) == std::vector<std::uint32_t>{1, 6, 11, 16, 21});
  CHECK(det_image(d2, 5) == std::vector<std::uint32_t>{1});

  CHECK_THROWS_AS(det_image(d2, 7), ModulusMismatch);
}

TEST_CASE("scalar detection") {
  Ring r5(5, 1);
  auto s = contains_nontrivial_scalar(
      MatrixGroup::close(r5, {mat({{2, 0}, {0, 2}}, 5)}));
  REQUIRE(s.has_value());
  CHECK(*s == mat({{2, 0}, {0, 2}}, 5));

  CHECK(!contains_nontrivial_scalar(
             MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)}))
             .has_value());

  auto t = contains_nontrivial_scalar(MatrixGroup::close(
      r5, {mat({{2, 0}, {0, 2}}, 5), mat({{1, 1}, {0, 1}}, 5)}));
  REQUIRE(t.has_value());
  CHECK(t->at(0, 0) == t->at(1, 1));
  CHECK(t->at(0, 1) == 0);
  CHECK(t->at(1, 0) == 0);
  CHECK(t->at(0, 0) != 1);
}

TEST_CASE("fixed submodule: frozen examples") {
  Ring r5(5, 1), r25(5, 2);

  Submodule f1 = fixed_submodule(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)}));
  CHECK(f1.order() == 5);
  std::uint32_t e1[2] = {1, 0};
  CHECK(f1.contains(e1));

  CHECK(fixed_submodule(MatrixGroup::close(r5, {mat({{2, 0}, {0, 3}}, 5)})).order() ==
        1);

  Submodule f2 = fixed_submodule(MatrixGroup::close(r5, {mat({{1, 0}, {0, 2}}, 5)}));
  CHECK(f2.order() == 5);
  CHECK(f2.contains(e1));

  CHECK(fixed_submodule(MatrixGroup::close(r5, {RingMatrix::identity(2, 5)})).order() ==
        25);

  // mod 25: the fixed points of I + 5*E12 form a module of order 125.
  Submodule f3 =
      fixed_submodule(MatrixGroup::close(r25, {mat({{1, 5}, {0, 1}}, 25)}));
  CHECK(f3.order() == 125);
  std::uint32_t v[2] = {1, 0};
  CHECK(f3.contains(v));
  std::uint32_t w[2] = {0, 5};
  CHECK(f3.contains(w));
  std::uint32_t x[2] = {0, 1};
  CHECK(!f3.contains(x));
}

TEST_CASE("sampled subgroups: tags, lines, Lagrange, Sylow consistency") {
  for (std::uint32_t p : {5u, 7u}) {
    Ring r(p, 1);
    std::mt19937_64 rng(0x5eed0000u + p);
    for (int trial = 0; trial < (p == 5 ? 40 : 15); ++trial) {
      std::vector<RingMatrix> gens;
      gens.push_back(random_invertible(rng, r));
      if (rng() % 2) gens.push_back(random_invertible(rng, r));
      MatrixGroup g = MatrixGroup::close(r, gens);

      auto lines = invariant_lines(g);
      Classification c = classify_mod_p(g);
      CHECK(c.line_count == lines.size());
      switch (c.tag) {
        case ClassTag::TwoLinesDiagonal:
          CHECK(lines.size() == 2);
          break;
        case ClassTag::OneLineBorel:
          CHECK(lines.size() == 1);
          // Coset identity |G| / |G_D| = p in the conjugated basis.
          {
            RingMatrix u = c.basis_change;
            std::vector<RingMatrix> cg;
            for (const auto& m : g.generators()) cg.push_back(u.inv2() * m * u);
            MatrixGroup conj = MatrixGroup::close(r, cg);
            CHECK(conj.order() / diagonal_part(conj).order() == p);
          }
          break;
        case ClassTag::NoLine:
          CHECK(lines.size() == 0);
          break;
        case ClassTag::ManyLinesScalar:
          CHECK(lines.size() == p + 1);
          break;
      }

      MatrixGroup gd = diagonal_part(g);
      CHECK(divides(gd.order(), g.order()));

      SylowResult sy = p_sylow(g);
      std::uint64_t ppart = 1;
      std::uint64_t rest = g.order();
      while (rest % p == 0) {
        ppart *= p;
        rest /= p;
      }
      CHECK(sy.subgroup.order() == ppart);
      CHECK(divides(sy.subgroup.order(), g.order()));

      for (const auto& s : cyclic_subgroups(g))
        CHECK(divides(s.order(), g.order()));
    }
  }
}
