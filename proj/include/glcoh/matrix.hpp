#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "glcoh/ring.hpp"

namespace glcoh {

// Dense matrix over Z/mZ, row major, raw uint32 entries in [0, m).
// Small fixed moduli (m <= 97^2), sizes range from 2x2 group elements to
// wide cocycle bases with tens of thousands of columns.
class RingMatrix {
 public:
  RingMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus);

  static RingMatrix identity(std::size_t k, std::uint32_t modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return mod_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const {
    return e_[r * cols_ + c];
  }
  const std::uint32_t* row(std::size_t r) const { return &e_[r * cols_]; }
  std::uint32_t* row(std::size_t r) { return &e_[r * cols_]; }

  RingMatrix operator+(const RingMatrix& o) const;
  RingMatrix operator-(const RingMatrix& o) const;
  RingMatrix operator*(const RingMatrix& o) const;
  RingMatrix scaled(std::uint32_t c) const;
  RingMatrix transpose() const;
  RingMatrix pow(std::uint64_t e) const;

  // Entry-wise reduction to a divisor of the modulus (level p^2 -> p).
  RingMatrix reduced(std::uint32_t new_modulus) const;

  bool is_zero() const;
  bool is_identity() const;
  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

  // 2x2 helpers used throughout the group layer.
  std::uint32_t det2() const;
  RingMatrix inv2() const;  // throws NotInvertible if det is not a unit

  void append_row(const std::uint32_t* v);
  void clear_rows() { rows_ = 0; e_.clear(); }

 private:
  std::size_t rows_, cols_;
  std::uint32_t mod_;
  std::vector<std::uint32_t> e_;
};

// Canonical Howell form of the row span over Z/p^n. Unique for the span:
// pivots are p^v in strictly increasing columns, entries above a pivot are
// reduced mod p^v, and the row set is saturated (every span element whose
// leading coordinates vanish is generated by the later rows).
RingMatrix howell_form(const RingMatrix& a, const Ring& ring);

// Rows y with y * a = 0, as a canonical (Howell) basis of the left kernel.
RingMatrix left_kernel(const RingMatrix& a, const Ring& ring);

// Solutions x of a * x = 0, returned as rows of the result.
RingMatrix right_kernel(const RingMatrix& a, const Ring& ring);

// Membership of v (length = a.cols()) in the row span of a Howell form.
bool in_row_span(const RingMatrix& howell, const std::uint32_t* v,
                 const Ring& ring);

// Coefficients c with c * howell = v, when v lies in the row span; one entry
// per basis row. Empty optional when v is outside the span.
std::optional<std::vector<std::uint32_t>> row_span_coords(
    const RingMatrix& howell, const std::uint32_t* v, const Ring& ring);

}  // namespace glcoh
