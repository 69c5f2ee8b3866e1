#pragma once

#include <string>
#include <vector>

#include "glcoh/matrix.hpp"
#include "glcoh/ring.hpp"
#include "glcoh/verifier.hpp"

namespace glcoh {

struct CohomologyGroup;

// Parses one matrix literal `[[a,b],[c,d]] mod m` (entries are decimal
// integers in [0, m)). The `mod m` suffix may be omitted when a default
// ring is supplied; when both are present the moduli must agree. Throws
// ParseError with 1-based line/column on malformed input; `line` reports
// the literal's position when it came from a file.
RingMatrix parse_matrix_literal(const std::string& text,
                                const Ring* default_ring = nullptr,
                                std::size_t line = 1);

// A group description file: `#` starts a comment, the first significant
// line is a header `mod p^n` (or `mod m` with m = p or p^2), and every
// later significant line is one generator in the matrix literal format.
struct GroupFile {
  Ring ring;
  std::vector<RingMatrix> generators;
};

GroupFile parse_group_file(const std::string& content);

// Renders `[[a,b],[c,d]] mod m`; inverse of parse_matrix_literal.
std::string matrix_literal(const RingMatrix& m);

// JSON text (2-space indent, keys sorted, trailing newline) for a
// cohomology computation: group_order, z1_order, b1_order, invariants,
// h1loc_invariants.
std::string cohomology_json(const CohomologyGroup& h1_result,
                            const std::vector<std::uint64_t>& h1loc_invariants);

// JSON / table renderings of verification reports. JSON contains only
// reproducible fields (the timing lives in the table output).
std::string report_json(const std::vector<VerdictReport>& reports);
std::string report_table(const std::vector<VerdictReport>& reports);

}  // namespace glcoh
