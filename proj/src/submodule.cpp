#include "glcoh/submodule.hpp"

#include <algorithm>
#include <cassert>

#include "glcoh/check.hpp"

namespace glcoh {

Submodule::Submodule(const Ring& ring, std::size_t ambient)
    : ring_(ring), ambient_(ambient), basis_(0, ambient, ring.modulus) {}

Submodule Submodule::from_rows(const Ring& ring, const RingMatrix& rows) {
  Submodule s(ring, rows.cols());
  s.basis_ = howell_form(rows, ring);
  return s;
}

Submodule Submodule::full(const Ring& ring, std::size_t ambient) {
  return from_rows(ring, RingMatrix::identity(ambient, ring.modulus));
}

std::uint64_t Submodule::order() const {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::uint32_t v = ring_.n;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (basis_.at(i, c)) {
        v = valuation(basis_.at(i, c), ring_);
        break;
      }
    }
    std::uint64_t row_order = 1;
    for (std::uint32_t k = v; k < ring_.n; ++k) row_order *= ring_.p;
    if (acc > (std::uint64_t{1} << 62) / row_order)
      throw OrderOverflow("submodule order exceeds 64-bit range");
    acc *= row_order;
  }
  return acc;
}

bool Submodule::contains(const std::uint32_t* v) const {
  return in_row_span(basis_, v, ring_);
}

bool Submodule::contains(const std::vector<std::uint32_t>& v) const {
  assert(v.size() == ambient_);
  return contains(v.data());
}

bool Submodule::contains(const Submodule& other) const {
  for (std::size_t i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Submodule Submodule::sum(const Submodule& other) const {
  if (ring_ != other.ring_ || ambient_ != other.ambient_)
    throw ModulusMismatch("submodule sum: mismatched ambients or rings");
  RingMatrix stack(0, ambient_, ring_.modulus);
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    stack.append_row(basis_.row(i));
  for (std::size_t i = 0; i < other.basis_.rows(); ++i)
    stack.append_row(other.basis_.row(i));
  return from_rows(ring_, stack);
}

Submodule Submodule::intersect(const Submodule& other) const {
  if (ring_ != other.ring_ || ambient_ != other.ambient_)
    throw ModulusMismatch("submodule intersect: mismatched ambients or rings");
  const std::size_t s = basis_.rows(), t = other.basis_.rows();
  if (s == 0 || t == 0) return Submodule(ring_, ambient_);
  RingMatrix stack(0, ambient_, ring_.modulus);
  for (std::size_t i = 0; i < s; ++i) stack.append_row(basis_.row(i));
  for (std::size_t i = 0; i < t; ++i) stack.append_row(other.basis_.row(i));
  // Left-kernel rows (a | b) of the stacked basis satisfy a.basis = -b.other,
  // so the a-parts sweep out the intersection.
  RingMatrix lk = left_kernel(stack, ring_);
  RingMatrix gens(0, ambient_, ring_.modulus);
  std::vector<std::uint32_t> tmp(ambient_);
  for (std::size_t i = 0; i < lk.rows(); ++i) {
    std::fill(tmp.begin(), tmp.end(), 0);
    for (std::size_t j = 0; j < s; ++j) {
      std::uint64_t c = lk.at(i, j);
      if (!c) continue;
      for (std::size_t k = 0; k < ambient_; ++k)
        tmp[k] = static_cast<std::uint32_t>(
            (tmp[k] + c * basis_.at(j, k)) % ring_.modulus);
    }
    gens.append_row(tmp.data());
  }
  return from_rows(ring_, gens);
}

Submodule Submodule::scaled(std::uint32_t c) const {
  return from_rows(ring_, basis_.scaled(c));
}

Submodule Submodule::apply(const RingMatrix& a) const {
  assert(a.rows() == ambient_ && a.cols() == ambient_);
  // Rows transform by right multiplication with the transpose.
  return from_rows(ring_, basis_ * a.transpose());
}

RingMatrix Submodule::annihilator() const { return right_kernel(basis_, ring_); }

namespace {

std::uint32_t log_p(std::uint64_t x, std::uint32_t p) {
  std::uint32_t e = 0;
  while (x > 1) {
    assert(x % p == 0);
    x /= p;
    ++e;
  }
  return e;
}

// Order of the class of v in ambient/den: smallest p-power P with P*v in den.
std::uint64_t class_order(const Submodule& den, const std::uint32_t* v,
                          const Ring& ring) {
  std::vector<std::uint32_t> w(v, v + den.ambient());
  std::uint64_t ord = 1;
  for (std::uint32_t k = 0; k <= ring.n; ++k) {
    if (den.contains(w.data())) return ord;
    for (auto& x : w)
      x = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(x) * ring.p) % ring.modulus);
    ord *= ring.p;
  }
  GLCOH_CHECK(false, "class order must divide p^n");
  return ord;
}

}  // namespace

QuotientPresentation quotient_presentation(const Submodule& num,
                                           const Submodule& den) {
  if (num.ring() != den.ring() || num.ambient() != den.ambient())
    throw ModulusMismatch("quotient: mismatched ambients or rings");
  if (!num.contains(den))
    throw NotASubmodule("quotient denominator is not inside the numerator");
  const Ring& ring = num.ring();

  // Counting route: |Q| = p^t, |Q/pQ| = p^r determine the number of Z/p and
  // Z/p^2 factors (exponent of Q is at most p^2).
  std::uint64_t t = log_p(num.order() / den.order(), ring.p);
  std::uint64_t r =
      log_p(num.order() / num.scaled(ring.p).sum(den).order(), ring.p);
  GLCOH_CHECK(t >= r && 2 * r >= t, "quotient rank bookkeeping");

  // Greedy generators: repeatedly take the basis row of maximal order in the
  // current quotient; each pick splits off a direct summand.
  QuotientPresentation out{{}, RingMatrix(0, num.ambient(), ring.modulus)};
  Submodule d = den;
  std::vector<std::uint64_t> orders;
  while (d.order() < num.order()) {
    std::size_t best = num.basis().rows();
    std::uint64_t best_ord = 0;
    for (std::size_t i = 0; i < num.basis().rows(); ++i) {
      std::uint64_t o = class_order(d, num.basis().row(i), ring);
      if (o > best_ord) {
        best_ord = o;
        best = i;
        if (best_ord == ring.modulus) break;
      }
    }
    GLCOH_CHECK(best < num.basis().rows(),
                "greedy quotient generator must exist");
    orders.push_back(best_ord);
    out.generators.append_row(num.basis().row(best));
    RingMatrix one(1, num.ambient(), ring.modulus);
    for (std::size_t k = 0; k < num.ambient(); ++k)
      one.at(0, k) = num.basis().at(best, k);
    d = d.sum(Submodule::from_rows(ring, one));
  }

  // Cross-check the two derivations of the invariant list.
  std::vector<std::uint64_t> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t expect_p2 = (ring.n == 2) ? t - r : 0;
  std::uint64_t expect_p1 = t - 2 * expect_p2;
  std::uint64_t got_p1 = 0, got_p2 = 0;
  for (auto o : sorted) (o == ring.p ? got_p1 : got_p2) += 1;
  GLCOH_CHECK(got_p1 == expect_p1 && got_p2 == expect_p2,
              "independent invariant-factor derivations disagree");

  // Ascending invariants; reorder generator rows to match.
  std::vector<std::size_t> idx(orders.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return orders[a] < orders[b];
  });
  RingMatrix gens(0, num.ambient(), ring.modulus);
  for (auto i : idx) {
    out.invariants.push_back(orders[i]);
    gens.append_row(out.generators.row(i));
  }
  out.generators = gens;
  return out;
}

std::vector<std::uint64_t> quotient_invariants(const Submodule& num,
                                               const Submodule& den) {
  return quotient_presentation(num, den).invariants;
}

Submodule column_span(const Ring& ring, const RingMatrix& a) {
  return Submodule::from_rows(ring, a.transpose());
}

Submodule kernel_submodule(const Ring& ring, const RingMatrix& a) {
  return Submodule::from_rows(ring, right_kernel(a, ring));
}

}  // namespace glcoh
