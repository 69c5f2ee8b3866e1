#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <optional>
#include <vector>

#include "glcoh/cohomology.hpp"
#include "glcoh/gmodule.hpp"
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

// Recomputes the pairwise law for one basis row at one pair, by direct
// arithmetic, to confirm a reported violation is genuine.
bool row_violates_at(const MatrixGroup& g, const Submodule& span,
                     const PairViolation& v) {
  const std::uint32_t mod = g.ring().modulus;
  const RingMatrix& b = span.basis();
  const std::uint32_t* t = b.row(v.basis_row);
  RingMatrix e = g.element(v.x);
  const std::size_t xy = g.mult(v.x, v.y);
  const std::uint64_t w0 = t[2 * v.y], w1 = t[2 * v.y + 1];
  const std::uint64_t lhs0 = (t[2 * v.x] + e.at(0, 0) * w0 + e.at(0, 1) * w1) %
                             mod;
  const std::uint64_t lhs1 =
      (t[2 * v.x + 1] + e.at(1, 0) * w0 + e.at(1, 1) * w1) % mod;
  return lhs0 != t[2 * xy] || lhs1 != t[2 * xy + 1];
}

// Serial and parallel audits must return identical answers, and any reported
// violation must be real.
void check_agreement(const MatrixGroup& g, const Submodule& span,
                     bool expect_clean) {
  const auto serial = validate_all_pairs_serial(g, span);
  const auto parallel = validate_all_pairs_parallel(g, span);
  CHECK(serial == parallel);
  CHECK(validate_all_pairs_parallel(g, span) == parallel);  // repeatable
  if (expect_clean) {
    CHECK(!serial.has_value());
  } else if (serial.has_value()) {
    CHECK(row_violates_at(g, span, *serial));
    CHECK(serial->basis_row < span.rank());
    CHECK(serial->x < g.order());
    CHECK(serial->y < g.order());
  }
}

std::vector<MatrixGroup> audit_groups() {
  const Ring r5(5, 1), r25(5, 2);
  std::vector<MatrixGroup> out;
  out.push_back(MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)}));
  out.push_back(MatrixGroup::close(
      r5, {mat({{1, 1}, {0, 1}}, 5), mat({{2, 0}, {0, 3}}, 5)}));
  out.push_back(MatrixGroup::close(r25, {mat({{1, 1}, {0, 1}}, 25)}));
  out.push_back(MatrixGroup::close(
      r25, {mat({{2, 1}, {0, 3}}, 25), mat({{1, 5}, {0, 1}}, 25)}));
  out.push_back(full_group_mod_p(r5));
  return out;
}

}  // namespace

TEST_CASE("cocycle spans audit clean in both modes") {
  for (const MatrixGroup& g : audit_groups()) {
    GModule m = GModule::full(g.ring());
    CohomologyGroup cg = h1(g, m);
    check_agreement(g, cg.z1, true);
    check_agreement(g, cg.b1, true);
    // The zero span has nothing to violate.
    check_agreement(g, Submodule(g.ring(), 2 * g.order()), true);
  }
}

TEST_CASE("corrupted spans report the same violation in both modes") {
  for (const MatrixGroup& g : audit_groups()) {
    GModule m = GModule::full(g.ring());
    CohomologyGroup cg = h1(g, m);
    if (cg.z1.rank() == 0) continue;

    std::size_t corrupted_found = 0;
    const RingMatrix& basis = cg.z1.basis();
    for (std::size_t row = 0; row < basis.rows(); ++row)
      for (std::size_t shift : {std::size_t{2}, basis.cols() - 1}) {
        RingMatrix tweaked = basis;
        tweaked.at(row, shift) =
            (tweaked.at(row, shift) + 1) % g.ring().modulus;
        Submodule span = Submodule::from_rows(g.ring(), tweaked);
        const auto serial = validate_all_pairs_serial(g, span);
        const auto parallel = validate_all_pairs_parallel(g, span);
        CHECK(serial == parallel);
        if (serial.has_value()) {
          CHECK(row_violates_at(g, span, *serial));
          ++corrupted_found;
        }
      }
    // Nudging basis entries must break the law at least once per group;
    // the audits may not mask it.
    CHECK(corrupted_found > 0);
  }
}

TEST_CASE("single corrupt rows are pinpointed") {
  const Ring r5(5, 1);
  MatrixGroup g = MatrixGroup::close(r5, {mat({{1, 1}, {0, 1}}, 5)});

  // A lone delta table (one nonzero entry) is never a cocycle here.
  RingMatrix rows(1, 2 * g.order(), 5);
  rows.at(0, 4) = 1;
  Submodule span = Submodule::from_rows(r5, rows);
  const auto serial = validate_all_pairs_serial(g, span);
  const auto parallel = validate_all_pairs_parallel(g, span);
  REQUIRE(serial.has_value());
  CHECK(serial == parallel);
  CHECK(row_violates_at(g, span, *serial));

  // Lexicographically first: no earlier pair for that row violates.
  const PairViolation v = *serial;
  for (std::size_t x = 0; x <= v.x; ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (x == v.x && y >= v.y) break;
      CHECK(!row_violates_at(g, span, PairViolation{v.basis_row, x, y}));
    }
}
