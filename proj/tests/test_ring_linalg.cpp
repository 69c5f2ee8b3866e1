#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "glcoh/submodule.hpp"
#include "oracles.hpp"

using namespace glcoh;

namespace {

RingMatrix mat(std::initializer_list<std::initializer_list<std::uint32_t>> rows,
               std::uint32_t mod) {
  std::size_t r = rows.size(), c = rows.begin()->size();
  RingMatrix m(r, c, mod);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (auto x : row) m.at(i, j++) = x % mod;
    ++i;
  }
  return m;
}

std::set<oracle::Vec> as_set(const Submodule& s) {
  return oracle::span_of_rows(s.basis());
}

RingMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                         std::uint32_t mod) {
  RingMatrix m(r, c, mod);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = static_cast<std::uint32_t>(rng() % mod);
  return m;
}

}  // namespace

TEST_CASE("residue arithmetic and units") {
  Residue a(7, 25), b(19, 25);
  CHECK((a + b).value() == 1);
  CHECK((a - b).value() == 13);
  CHECK((a * b).value() == (7 * 19) % 25);
  CHECK((-a).value() == 18);
  CHECK(a.is_unit());
  CHECK_FALSE(Residue(10, 25).is_unit());
  CHECK(a.inverse().value() * 7 % 25 == 1);
  CHECK_THROWS_AS(Residue(10, 25).inverse(), NotAUnit);
  CHECK_THROWS_AS(Residue(1, 25) + Residue(1, 5), ModulusMismatch);
}

TEST_CASE("ring validation") {
  CHECK(Ring(5, 2).modulus == 25);
  CHECK(Ring(7, 1).modulus == 7);
  CHECK(Ring(97, 2).modulus == 9409);
  CHECK_THROWS_AS(Ring(4, 1), ModulusMismatch);
  CHECK_THROWS_AS(Ring(3, 1), ModulusMismatch);
  CHECK_THROWS_AS(Ring(101, 1), ModulusMismatch);
  CHECK_THROWS_AS(Ring(5, 3), ModulusMismatch);
}

TEST_CASE("howell form fixed examples") {
  Ring r25(5, 2), r5(5, 1);
  CHECK(howell_form(mat({{5, 0}, {10, 0}}, 25), r25) == mat({{5, 0}}, 25));
  CHECK(howell_form(mat({{2, 4}, {0, 0}}, 5), r5) == mat({{1, 2}}, 5));
  RingMatrix id2 = RingMatrix::identity(2, 25);
  CHECK(howell_form(id2, r25) == id2);
}

TEST_CASE("howell form is canonical: idempotent and span-preserving") {
  std::mt19937_64 rng(12345);
  for (const Ring& ring : {Ring(5, 1), Ring(5, 2), Ring(7, 1)}) {
    for (int iter = 0; iter < 60; ++iter) {
      RingMatrix a = random_matrix(rng, 1 + rng() % 3, 2, ring.modulus);
      RingMatrix h = howell_form(a, ring);
      CHECK(howell_form(h, ring) == h);
      CHECK(oracle::span_of_rows(a) == oracle::span_of_rows(h));
    }
  }
}

TEST_CASE("howell form of row-permuted and unit-scaled input agrees") {
  std::mt19937_64 rng(99);
  Ring ring(5, 2);
  for (int iter = 0; iter < 40; ++iter) {
    RingMatrix a = random_matrix(rng, 2, 3, 25);
    RingMatrix b(2, 3, 25);
    for (std::size_t j = 0; j < 3; ++j) {
      b.at(0, j) = a.at(1, j);
      b.at(1, j) = static_cast<std::uint32_t>(a.at(0, j) * 7ull % 25);
    }
    CHECK(howell_form(a, ring) == howell_form(b, ring));
  }
}

TEST_CASE("kernel fixed examples") {
  Ring r25(5, 2), r5(5, 1);
  Submodule kz = kernel_submodule(r25, RingMatrix(2, 2, 25));
  CHECK(kz.order() == 625);
  Submodule ki = kernel_submodule(r25, RingMatrix::identity(2, 25));
  CHECK(ki.order() == 1);
  Submodule k5 = kernel_submodule(r25, mat({{5, 0}, {0, 5}}, 25));
  CHECK(k5.order() == 25);
  std::uint32_t v[2] = {5, 20};
  CHECK(k5.contains(v));
  std::uint32_t w[2] = {1, 0};
  CHECK_FALSE(k5.contains(w));
  (void)r5;
}

TEST_CASE("kernel and image agree with enumeration") {
  std::mt19937_64 rng(777);
  for (const Ring& ring : {Ring(5, 1), Ring(5, 2), Ring(7, 1)}) {
    for (int iter = 0; iter < 80; ++iter) {
      RingMatrix a = random_matrix(rng, 2, 2, ring.modulus);
      Submodule k = kernel_submodule(ring, a);
      CHECK(as_set(k) == oracle::kernel_vectors(a));
      Submodule im = column_span(ring, a);
      CHECK(as_set(im) == oracle::image_vectors(a));
      // |image| * |kernel| = |R^2|
      std::uint64_t m2 =
          static_cast<std::uint64_t>(ring.modulus) * ring.modulus;
      CHECK(im.order() * k.order() == m2);
    }
  }
}

TEST_CASE("image fixed examples") {
  Ring r5(5, 1);
  CHECK(column_span(r5, RingMatrix::identity(2, 5)).order() == 25);
  Submodule line = column_span(r5, mat({{0, 1}, {0, 0}}, 5));
  CHECK(line.order() == 5);
  std::uint32_t e1[2] = {1, 0};
  CHECK(line.contains(e1));
  // sigma - 1 has column span the fixed line
  Submodule sig = column_span(r5, mat({{0, 1}, {0, 0}}, 5));
  CHECK(sig == line);
}

TEST_CASE("submodule sum and intersection against enumeration") {
  std::mt19937_64 rng(4242);
  Ring ring(5, 2);
  for (int iter = 0; iter < 60; ++iter) {
    Submodule s = Submodule::from_rows(ring, random_matrix(rng, 1, 2, 25));
    Submodule t = Submodule::from_rows(ring, random_matrix(rng, 1, 2, 25));
    auto ss = as_set(s), ts = as_set(t);
    std::set<oracle::Vec> inter;
    for (const auto& v : ss)
      if (ts.count(v)) inter.insert(v);
    CHECK(as_set(s.intersect(t)) == inter);
    std::set<oracle::Vec> sum_set;
    for (const auto& v : ss)
      for (const auto& w : ts) {
        oracle::Vec u(2);
        for (int i = 0; i < 2; ++i) u[i] = (v[i] + w[i]) % 25;
        sum_set.insert(u);
      }
    CHECK(as_set(s.sum(t)) == sum_set);
  }
}

TEST_CASE("sum of the two p-lines mod 25 has order 25") {
  Ring ring(5, 2);
  Submodule a = Submodule::from_rows(ring, mat({{5, 0}}, 25));
  Submodule b = Submodule::from_rows(ring, mat({{0, 5}}, 25));
  CHECK(a.sum(b).order() == 25);
}

TEST_CASE("quotient invariants fixed examples") {
  Ring r25(5, 2), r5(5, 1);
  Submodule full25 = Submodule::full(r25, 2);
  CHECK(quotient_invariants(full25, full25).empty());
  CHECK(quotient_invariants(full25, Submodule(r25, 2)) ==
        std::vector<std::uint64_t>{25, 25});
  Submodule full5 = Submodule::full(r5, 2);
  Submodule line = Submodule::from_rows(r5, mat({{1, 0}}, 5));
  CHECK(quotient_invariants(full5, line) == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(quotient_invariants(line, full5), NotASubmodule);
}

TEST_CASE("quotient invariants agree with coset enumeration") {
  std::mt19937_64 rng(31337);
  Ring ring(5, 2);
  for (int iter = 0; iter < 40; ++iter) {
    Submodule num = Submodule::from_rows(ring, random_matrix(rng, 2, 2, 25));
    Submodule den = num.scaled(static_cast<std::uint32_t>(rng() % 25));
    REQUIRE(num.contains(den));
    auto inv = quotient_invariants(num, den);
    auto ref = oracle::quotient_invariants_sets(as_set(num), as_set(den), 25);
    CHECK(inv == ref);
    // Generator lifts have the advertised orders and generate the quotient.
    auto pres = quotient_presentation(num, den);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < pres.invariants.size(); ++i) {
      prod *= pres.invariants[i];
      CHECK(num.contains(pres.generators.row(i)));
    }
    CHECK(prod == num.order() / den.order());
  }
}

TEST_CASE("annihilator double-dual recovers the submodule") {
  std::mt19937_64 rng(5150);
  for (const Ring& ring : {Ring(5, 2), Ring(7, 1)}) {
    for (int iter = 0; iter < 40; ++iter) {
      Submodule s =
          Submodule::from_rows(ring, random_matrix(rng, 2, 2, ring.modulus));
      RingMatrix ann = s.annihilator();
      // v in s iff ann . v = 0
      Submodule back = kernel_submodule(ring, ann);
      CHECK(back == s);
    }
  }
}

TEST_CASE("order overflow is reported") {
  // 97^2 per row over many rows exceeds 2^63 eventually.
  Ring ring(97, 2);
  RingMatrix big = RingMatrix::identity(4, ring.modulus);
  Submodule s = Submodule::from_rows(ring, big);
  CHECK(s.order() == 9409ull * 9409 * 9409 * 9409);
  RingMatrix bigger = RingMatrix::identity(5, ring.modulus);
  CHECK_THROWS_AS(Submodule::from_rows(ring, bigger).order(), OrderOverflow);
}
