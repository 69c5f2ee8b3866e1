#include "glcoh/io.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "glcoh/cohomology.hpp"
#include "glcoh/errors.hpp"

namespace glcoh {

namespace {

// Single-line scanner with 1-based column reporting.
struct Cursor {
  const std::string& text;
  std::size_t line;
  std::size_t pos = 0;

  std::size_t col() const { return pos + 1; }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string shown = done() ? "end of input" : "'" + text.substr(pos, 1) + "'";
    throw ParseError(msg + " at " + shown, line, col());
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool consume_word(const std::string& w) {
    skip_ws();
    if (text.compare(pos, w.size(), w) != 0) return false;
    std::size_t end = pos + w.size();
    if (end < text.size() &&
        std::isalnum(static_cast<unsigned char>(text[end])))
      return false;
    pos = end;
    return true;
  }

  std::uint64_t integer() {
    skip_ws();
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a decimal integer");
    std::uint64_t v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > 1000000000000ULL) fail("integer is too large");
      ++pos;
    }
    return v;
  }
};

bool small_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

std::string aggregate_verdict(const std::vector<VerdictReport>& reports) {
  bool inconclusive = false;
  for (const VerdictReport& r : reports) {
    if (r.verdict == "fail") return "fail";
    if (r.verdict == "inconclusive-budget") inconclusive = true;
  }
  return inconclusive ? "inconclusive-budget" : "pass";
}

}  // namespace

RingMatrix parse_matrix_literal(const std::string& text,
                                const Ring* default_ring, std::size_t line) {
  Cursor c{text, line};
  struct Entry {
    std::uint64_t value;
    std::size_t column;
  };
  Entry e[4];
  c.expect('[');
  for (int r = 0; r < 2; ++r) {
    c.expect('[');
    for (int k = 0; k < 2; ++k) {
      if (k) c.expect(',');
      c.skip_ws();
      std::size_t at = c.col();
      e[2 * r + k] = Entry{c.integer(), at};
    }
    c.expect(']');
    if (r == 0) c.expect(',');
  }
  c.expect(']');

  std::uint64_t m = 0;
  c.skip_ws();
  if (c.consume_word("mod")) {
    c.skip_ws();
    std::size_t at = c.col();
    m = c.integer();
    if (m < 2)
      throw ParseError("modulus must be at least 2", line, at);
    if (default_ring && m != default_ring->modulus)
      throw ParseError("literal modulus " + std::to_string(m) +
                           " does not match the configured modulus " +
                           std::to_string(default_ring->modulus),
                       line, at);
  } else if (default_ring) {
    m = default_ring->modulus;
  } else {
    c.fail("expected 'mod m' (no default modulus is configured)");
  }
  c.skip_ws();
  if (!c.done()) c.fail("unexpected trailing characters");

  RingMatrix out(2, 2, static_cast<std::uint32_t>(m));
  for (int i = 0; i < 4; ++i) {
    if (e[i].value >= m)
      throw ParseError("entry " + std::to_string(e[i].value) +
                           " is outside [0, " + std::to_string(m) + ")",
                       line, e[i].column);
    out.at(static_cast<std::size_t>(i / 2), static_cast<std::size_t>(i % 2)) =
        static_cast<std::uint32_t>(e[i].value);
  }
  return out;
}

GroupFile parse_group_file(const std::string& content) {
  std::istringstream in(content);
  std::string raw;
  std::size_t line_no = 0;
  bool have_ring = false;
  Ring ring;
  std::vector<RingMatrix> generators;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string text = raw.substr(0, raw.find('#'));
    bool blank = true;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;

    if (!have_ring) {
      Cursor c{text, line_no};
      if (!c.consume_word("mod"))
        c.fail("expected the header 'mod p^n' before any generator");
      c.skip_ws();
      std::size_t at = c.col();
      std::uint64_t first = c.integer();
      std::uint64_t p = 0, n = 0;
      c.skip_ws();
      if (c.peek() == '^') {
        ++c.pos;
        p = first;
        n = c.integer();
      } else if (small_prime(first)) {
        p = first;
        n = 1;
      } else {
        std::uint64_t q = 2;
        while (q * q < first) ++q;
        if (q * q == first && small_prime(q)) {
          p = q;
          n = 2;
        } else {
          throw ParseError("modulus must be p or p^2 for a prime p", line_no,
                           at);
        }
      }
      if (!small_prime(p) || p <= 3 || p > 97)
        throw ParseError("p must be a prime with 3 < p <= 97, got " +
                             std::to_string(p),
                         line_no, at);
      if (n < 1 || n > 2)
        throw ParseError("n must be 1 or 2, got " + std::to_string(n), line_no,
                         at);
      c.skip_ws();
      if (!c.done()) c.fail("unexpected trailing characters");
      ring = Ring(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n));
      have_ring = true;
      continue;
    }
    generators.push_back(parse_matrix_literal(text, &ring, line_no));
  }
  if (!have_ring)
    throw ParseError("missing 'mod p^n' header line", 1, 1);
  return GroupFile{ring, std::move(generators)};
}

std::string matrix_literal(const RingMatrix& a) {
  return "[[" + std::to_string(a.at(0, 0)) + "," + std::to_string(a.at(0, 1)) +
         "],[" + std::to_string(a.at(1, 0)) + "," + std::to_string(a.at(1, 1)) +
         "]] mod " + std::to_string(a.modulus());
}

std::string cohomology_json(
    const CohomologyGroup& h1_result,
    const std::vector<std::uint64_t>& h1loc_invariants) {
  nlohmann::json j;
  j["group_order"] = h1_result.group_order;
  j["z1_order"] = h1_result.z1.order();
  j["b1_order"] = h1_result.b1.order();
  j["invariants"] = h1_result.invariants;
  j["h1loc_invariants"] = h1loc_invariants;
  return j.dump(2) + "\n";
}

std::string report_json(const std::vector<VerdictReport>& reports) {
  nlohmann::json out;
  out["reports"] = nlohmann::json::array();
  for (const VerdictReport& r : reports) {
    nlohmann::json c;
    c["check"] = {{"id", r.spec.id},
                  {"p", r.spec.p},
                  {"n", r.spec.n},
                  {"family", r.spec.family},
                  {"seed", r.spec.seed},
                  {"budget_secs", r.spec.budget_secs}};
    c["groups_tested"] = r.groups_tested;
    nlohmann::json fails = nlohmann::json::array();
    for (const FailureWitness& f : r.failures)
      fails.push_back({{"generators", f.generators},
                       {"data", f.data},
                       {"group_key", f.group_key}});
    c["failures"] = fails;
    c["notes"] = r.notes;
    c["coverage"] = r.coverage;
    c["verdict"] = r.verdict;
    out["reports"].push_back(c);
  }
  out["verdict"] = aggregate_verdict(reports);
  return out.dump(2) + "\n";
}

std::string report_table(const std::vector<VerdictReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "check" << std::right << std::setw(4)
      << "p" << std::setw(4) << "n" << std::setw(8) << "groups" << std::setw(10)
      << "failures" << std::setw(8) << "notes" << "  " << std::left
      << std::setw(21) << "verdict" << std::right << std::setw(9) << "elapsed"
      << "\n";
  out << std::string(82, '-') << "\n";
  for (const VerdictReport& r : reports) {
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(1) << r.elapsed_secs << "s";
    out << std::left << std::setw(18) << r.spec.id << std::right << std::setw(4)
        << r.spec.p << std::setw(4) << r.spec.n << std::setw(8)
        << r.groups_tested << std::setw(10) << r.failures.size() << std::setw(8)
        << r.notes.size() << "  " << std::left << std::setw(21) << r.verdict
        << std::right << std::setw(9) << secs.str() << "\n";
  }
  out << std::string(82, '-') << "\n";
  out << "overall: " << aggregate_verdict(reports) << "\n";
  for (const VerdictReport& r : reports) {
    for (const FailureWitness& f : r.failures) {
      out << "\n[" << r.spec.id << "] FAILURE: " << f.data << "\n";
      for (const std::string& g : f.generators) out << "  generator " << g << "\n";
    }
    for (const std::string& nline : r.notes)
      out << "\n[" << r.spec.id << "] note: " << nline << "\n";
  }
  return out.str();
}

}  // namespace glcoh
