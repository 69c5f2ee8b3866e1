#include "glcoh/matrix.hpp"

#include <cassert>
#include <string>

namespace glcoh {

RingMatrix::RingMatrix(std::size_t rows, std::size_t cols,
                       std::uint32_t modulus)
    : rows_(rows), cols_(cols), mod_(modulus), e_(rows * cols, 0) {
  if (modulus == 0) throw ModulusMismatch("matrix modulus must be positive");
}

RingMatrix RingMatrix::identity(std::size_t k, std::uint32_t modulus) {
  RingMatrix m(k, k, modulus);
  for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1 % modulus;
  return m;
}

namespace {
void require_same_mod(const RingMatrix& a, const RingMatrix& b) {
  if (a.modulus() != b.modulus())
    throw ModulusMismatch("matrix moduli differ: " +
                          std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()));
}
}  // namespace

RingMatrix RingMatrix::operator+(const RingMatrix& o) const {
  require_same_mod(*this, o);
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RingMatrix r(rows_, cols_, mod_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = (e_[i] + o.e_[i]) % mod_;
  return r;
}

RingMatrix RingMatrix::operator-(const RingMatrix& o) const {
  require_same_mod(*this, o);
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RingMatrix r(rows_, cols_, mod_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = (e_[i] + mod_ - o.e_[i]) % mod_;
  return r;
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
  require_same_mod(*this, o);
  assert(cols_ == o.rows_);
  RingMatrix r(rows_, o.cols_, mod_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t aik = at(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) =
            static_cast<std::uint32_t>((r.at(i, j) + aik * o.at(k, j)) % mod_);
    }
  return r;
}

RingMatrix RingMatrix::scaled(std::uint32_t c) const {
  RingMatrix r(rows_, cols_, mod_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(e_[i]) * c) % mod_);
  return r;
}

RingMatrix RingMatrix::transpose() const {
  RingMatrix r(cols_, rows_, mod_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RingMatrix RingMatrix::pow(std::uint64_t e) const {
  assert(rows_ == cols_);
  RingMatrix acc = identity(rows_, mod_);
  RingMatrix base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

RingMatrix RingMatrix::reduced(std::uint32_t new_modulus) const {
  if (new_modulus == 0 || mod_ % new_modulus != 0)
    throw ModulusMismatch("reduction target must divide the modulus");
  RingMatrix r(rows_, cols_, new_modulus);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] % new_modulus;
  return r;
}

bool RingMatrix::is_zero() const {
  for (auto x : e_)
    if (x) return false;
  return true;
}

bool RingMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_, mod_);
}

std::uint32_t RingMatrix::det2() const {
  assert(rows_ == 2 && cols_ == 2);
  std::uint64_t ad = static_cast<std::uint64_t>(at(0, 0)) * at(1, 1) % mod_;
  std::uint64_t bc = static_cast<std::uint64_t>(at(0, 1)) * at(1, 0) % mod_;
  return static_cast<std::uint32_t>((ad + mod_ - bc) % mod_);
}

RingMatrix RingMatrix::inv2() const {
  assert(rows_ == 2 && cols_ == 2);
  std::uint32_t d = det2();
  std::uint32_t di;
  try {
    di = inverse_mod(d, mod_);
  } catch (const NotAUnit&) {
    throw NotInvertible("2x2 matrix determinant " + std::to_string(d) +
                        " is not a unit mod " + std::to_string(mod_));
  }
  RingMatrix r(2, 2, mod_);
  auto m = [&](std::uint64_t x) {
    return static_cast<std::uint32_t>(x * di % mod_);
  };
  r.at(0, 0) = m(at(1, 1));
  r.at(0, 1) = m(mod_ - at(0, 1) % mod_);
  r.at(1, 0) = m(mod_ - at(1, 0) % mod_);
  r.at(1, 1) = m(at(0, 0));
  for (auto& x : r.e_) x %= mod_;
  return r;
}

void RingMatrix::append_row(const std::uint32_t* v) {
  e_.insert(e_.end(), v, v + cols_);
  ++rows_;
}

namespace {

// row[i] -= q * other[i]
void row_submul(std::uint32_t* row, const std::uint32_t* other, std::uint64_t q,
                std::size_t cols, std::uint32_t mod) {
  if (!q) return;
  for (std::size_t i = 0; i < cols; ++i) {
    std::uint64_t s = other[i] * q % mod;
    row[i] = static_cast<std::uint32_t>((row[i] + mod - s) % mod);
  }
}

void row_scale(std::uint32_t* row, std::uint64_t u, std::size_t cols,
               std::uint32_t mod) {
  for (std::size_t i = 0; i < cols; ++i)
    row[i] = static_cast<std::uint32_t>(row[i] * u % mod);
}

std::uint32_t pow_u32(std::uint32_t b, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

RingMatrix howell_form(const RingMatrix& a, const Ring& ring) {
  if (a.modulus() != ring.modulus)
    throw ModulusMismatch("howell_form: ring does not match matrix modulus");
  const std::uint32_t mod = ring.modulus;
  const std::size_t cols = a.cols();

  // Working copy as an extensible row list; annihilator rows p^(n-v) * pivot
  // are appended so the row set stays saturated.
  std::vector<std::vector<std::uint32_t>> w;
  w.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    w.emplace_back(a.row(i), a.row(i) + cols);

  std::size_t r = 0;  // next pivot row slot
  std::vector<std::pair<std::size_t, std::uint32_t>> pivots;  // (col, val)
  for (std::size_t c = 0; c < cols; ++c) {
    // Pick the row at or below r with minimal valuation in column c.
    std::size_t best = w.size();
    std::uint32_t best_val = ring.n + 1;
    for (std::size_t i = r; i < w.size(); ++i) {
      if (!w[i][c]) continue;
      std::uint32_t v = valuation(w[i][c], ring);
      if (v < best_val) {
        best_val = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == w.size()) continue;
    std::swap(w[r], w[best]);
    // Normalize the pivot to exactly p^v.
    std::uint32_t pv = pow_u32(ring.p, best_val);
    std::uint32_t unit = w[r][c] / pv;
    row_scale(w[r].data(), inverse_mod(unit, mod), cols, mod);
    for (std::size_t i = r + 1; i < w.size(); ++i) {
      if (!w[i][c]) continue;
      row_submul(w[i].data(), w[r].data(), w[i][c] / pv, cols, mod);
    }
    if (best_val > 0) {
      std::vector<std::uint32_t> ann(w[r]);
      row_scale(ann.data(), mod / pv, cols, mod);
      bool nonzero = false;
      for (auto x : ann) nonzero |= (x != 0);
      if (nonzero) w.push_back(std::move(ann));
    }
    pivots.emplace_back(c, best_val);
    ++r;
  }

  // Reduce entries above each pivot mod p^v.
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    auto [c, v] = pivots[i];
    std::uint32_t pv = pow_u32(ring.p, v);
    for (std::size_t k = 0; k < i; ++k)
      row_submul(w[k].data(), w[i].data(), w[k][c] / pv, cols, mod);
  }

  RingMatrix out(0, cols, mod);
  for (std::size_t i = 0; i < r; ++i) out.append_row(w[i].data());
  return out;
}

RingMatrix left_kernel(const RingMatrix& a, const Ring& ring) {
  const std::size_t rows = a.rows(), cols = a.cols();
  RingMatrix aug(rows, cols + rows, a.modulus());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, cols + i) = 1 % a.modulus();
  }
  RingMatrix h = howell_form(aug, ring);
  // Rows whose a-part vanished carry left-kernel elements in the tail part;
  // the Howell property makes this list complete and canonical.
  RingMatrix out(0, rows, a.modulus());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < cols && zero; ++j) zero = (h.at(i, j) == 0);
    if (zero) out.append_row(h.row(i) + cols);
  }
  return out;
}

RingMatrix right_kernel(const RingMatrix& a, const Ring& ring) {
  return left_kernel(a.transpose(), ring);
}

std::optional<std::vector<std::uint32_t>> row_span_coords(
    const RingMatrix& howell, const std::uint32_t* v, const Ring& ring) {
  (void)ring;
  const std::size_t cols = howell.cols();
  const std::uint32_t mod = howell.modulus();
  std::vector<std::uint32_t> x(v, v + cols);
  std::vector<std::uint32_t> coef(howell.rows(), 0);
  std::size_t c = 0;
  for (std::size_t i = 0; i < howell.rows(); ++i) {
    while (c < cols && howell.at(i, c) == 0) ++c;
    if (c == cols) break;
    if (x[c]) {
      std::uint32_t pv = howell.at(i, c);  // pivot is exactly p^v
      if (x[c] % pv != 0) return std::nullopt;
      coef[i] = (x[c] / pv) % mod;
      row_submul(x.data(), howell.row(i), coef[i], cols, mod);
    }
  }
  for (auto t : x)
    if (t) return std::nullopt;
  return coef;
}

bool in_row_span(const RingMatrix& howell, const std::uint32_t* v,
                 const Ring& ring) {
  (void)ring;
  const std::size_t cols = howell.cols();
  std::vector<std::uint32_t> x(v, v + cols);
  std::size_t c = 0;
  for (std::size_t i = 0; i < howell.rows(); ++i) {
    while (c < cols && howell.at(i, c) == 0) ++c;
    if (c == cols) break;
    if (x[c]) {
      std::uint32_t pv = howell.at(i, c);  // pivot is exactly p^v
      if (x[c] % pv != 0) return false;
      row_submul(x.data(), howell.row(i), x[c] / pv, cols, howell.modulus());
    }
  }
  for (auto t : x)
    if (t) return false;
  return true;
}

}  // namespace glcoh
