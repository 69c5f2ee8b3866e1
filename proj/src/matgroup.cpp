#include "glcoh/matgroup.hpp"

#include <algorithm>
#include <cassert>

#include "glcoh/check.hpp"
#include <set>
#include <string>

namespace glcoh {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

ElementIndex::ElementIndex(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < 4 * expected) cap <<= 1;
  keys_.assign(cap, ~0ull);
  vals_.assign(cap, npos);
  mask_ = cap - 1;
}

void ElementIndex::grow() {
  std::vector<std::uint64_t> ok;
  std::vector<std::uint32_t> ov;
  ok.swap(keys_);
  ov.swap(vals_);
  keys_.assign(ok.size() * 2, ~0ull);
  vals_.assign(ov.size() * 2, npos);
  mask_ = keys_.size() - 1;
  count_ = 0;
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (ok[i] != ~0ull) insert(ok[i], ov[i]);
}

bool ElementIndex::insert(std::uint64_t key, std::uint32_t val) {
  if (2 * (count_ + 1) > keys_.size()) grow();
  std::uint64_t i = splitmix(key) & mask_;
  while (keys_[i] != ~0ull) {
    if (keys_[i] == key) return false;
    i = (i + 1) & mask_;
  }
  keys_[i] = key;
  vals_[i] = val;
  ++count_;
  return true;
}

std::uint32_t ElementIndex::find(std::uint64_t key) const {
  std::uint64_t i = splitmix(key) & mask_;
  while (keys_[i] != ~0ull) {
    if (keys_[i] == key) return vals_[i];
    i = (i + 1) & mask_;
  }
  return npos;
}

std::uint64_t pack_mat2(const Mat2& m, std::uint32_t modulus) {
  std::uint64_t k = 0;
  for (auto x : m) k = k * modulus + x;
  return k;
}

Mat2 mat2_of(const RingMatrix& m) {
  assert(m.rows() == 2 && m.cols() == 2);
  return {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
}

RingMatrix mat2_to_matrix(const Mat2& m, std::uint32_t modulus) {
  RingMatrix r(2, 2, modulus);
  r.at(0, 0) = m[0];
  r.at(0, 1) = m[1];
  r.at(1, 0) = m[2];
  r.at(1, 1) = m[3];
  return r;
}

Mat2 mat2_mul(const Mat2& x, const Mat2& y, std::uint32_t m) {
  return {static_cast<std::uint32_t>(
              (static_cast<std::uint64_t>(x[0]) * y[0] + static_cast<std::uint64_t>(x[1]) * y[2]) % m),
          static_cast<std::uint32_t>(
              (static_cast<std::uint64_t>(x[0]) * y[1] + static_cast<std::uint64_t>(x[1]) * y[3]) % m),
          static_cast<std::uint32_t>(
              (static_cast<std::uint64_t>(x[2]) * y[0] + static_cast<std::uint64_t>(x[3]) * y[2]) % m),
          static_cast<std::uint32_t>(
              (static_cast<std::uint64_t>(x[2]) * y[1] + static_cast<std::uint64_t>(x[3]) * y[3]) % m)};
}

Mat2 mat2_identity() { return {1, 0, 0, 1}; }

MatrixGroup MatrixGroup::close(const Ring& ring,
                               const std::vector<RingMatrix>& generators,
                               std::size_t cap) {
  MatrixGroup g(ring);
  for (const auto& m : generators) {
    if (m.rows() != 2 || m.cols() != 2 || m.modulus() != ring.modulus)
      throw ModulusMismatch("generator shape or modulus mismatch");
    m.inv2();  // determinant unit check
    g.gens_.push_back(m);
  }
  g.elems_.push_back(mat2_identity());
  g.index_.insert(pack_mat2(g.elems_[0], ring.modulus), 0);
  std::vector<Mat2> graw;
  for (const auto& m : g.gens_) graw.push_back(mat2_of(m));
  for (std::size_t q = 0; q < g.elems_.size(); ++q) {
    Mat2 x = g.elems_[q];
    for (const auto& gen : graw) {
      Mat2 y = mat2_mul(gen, x, ring.modulus);
      std::uint64_t key = pack_mat2(y, ring.modulus);
      if (g.index_.find(key) != ElementIndex::npos) continue;
      if (g.elems_.size() >= cap)
        throw CapExceeded("group closure exceeds cap " + std::to_string(cap));
      g.index_.insert(key, static_cast<std::uint32_t>(g.elems_.size()));
      g.elems_.push_back(y);
    }
  }
  g.finalize();
  return g;
}

void MatrixGroup::finalize() {
  gen_idx_.clear();
  for (const auto& m : gens_) {
    std::size_t i = index_of(mat2_of(m));
    GLCOH_CHECK(i != ElementIndex::npos, "generator must lie in its closure");
    gen_idx_.push_back(i);
  }
  inv_.resize(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    RingMatrix inv = element(i).inv2();
    std::size_t j = index_of(mat2_of(inv));
    if (j == ElementIndex::npos)
      throw NotASubgroup("element inverse missing from closure");
    inv_[i] = static_cast<std::uint32_t>(j);
  }
}

MatrixGroup MatrixGroup::from_elements(const Ring& ring,
                                       const std::vector<Mat2>& elements) {
  // Greedy generator pick in the given order, closing over packed keys only.
  std::vector<RingMatrix> gens;
  std::set<std::uint64_t> closed{pack_mat2(mat2_identity(), ring.modulus)};
  std::vector<Mat2> closed_list{mat2_identity()};
  for (const auto& e : elements) {
    if (closed.count(pack_mat2(e, ring.modulus))) continue;
    gens.push_back(mat2_to_matrix(e, ring.modulus));
    std::vector<Mat2> work = closed_list;
    for (std::size_t q = 0; q < work.size(); ++q) {
      for (const auto& g : gens) {
        Mat2 y = mat2_mul(mat2_of(g), work[q], ring.modulus);
        if (closed.insert(pack_mat2(y, ring.modulus)).second)
          work.push_back(y);
      }
    }
    closed_list = std::move(work);
  }
  MatrixGroup g = close(ring, gens, std::max<std::size_t>(
                                        default_cap, 2 * elements.size()));
  if (g.order() != elements.size())
    throw NotASubgroup("element set of size " +
                       std::to_string(elements.size()) +
                       " closes to a group of order " +
                       std::to_string(g.order()));
  return g;
}

std::size_t MatrixGroup::index_of(const Mat2& m) const {
  return index_.find(pack_mat2(m, ring_.modulus));
}

std::size_t MatrixGroup::mult(std::size_t i, std::size_t j) const {
  Mat2 y = mat2_mul(elems_[i], elems_[j], ring_.modulus);
  std::size_t k = index_.find(pack_mat2(y, ring_.modulus));
  assert(k != ElementIndex::npos);
  return k;
}

std::vector<std::uint64_t> MatrixGroup::canonical_key() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(elems_.size());
  for (const auto& e : elems_) keys.push_back(pack_mat2(e, ring_.modulus));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::uint64_t element_order(const RingMatrix& g) {
  RingMatrix id = RingMatrix::identity(2, g.modulus());
  RingMatrix cur = g;
  std::uint64_t ord = 1;
  while (!(cur == id)) {
    cur = cur * g;
    ++ord;
    if (ord > 10'000'000ull)
      throw CapExceeded("element order iteration exceeded bound");
  }
  return ord;
}

std::uint64_t element_order(const MatrixGroup& g, std::size_t i) {
  const std::uint32_t m = g.ring().modulus;
  Mat2 cur = g.raw(i);
  Mat2 id = mat2_identity();
  std::uint64_t ord = 1;
  while (cur != id) {
    cur = mat2_mul(cur, g.raw(i), m);
    ++ord;
  }
  return ord;
}

namespace {

// Element indices of the cyclic group generated by index i, unsorted.
std::vector<std::uint32_t> cycle_indices(const MatrixGroup& g, std::size_t i) {
  std::vector<std::uint32_t> cyc{static_cast<std::uint32_t>(g.identity())};
  std::size_t cur = i;
  while (cur != g.identity()) {
    cyc.push_back(static_cast<std::uint32_t>(cur));
    cur = g.mult(cur, i);
  }
  return cyc;
}

}  // namespace

std::vector<std::size_t> distinct_cyclic_generators(const MatrixGroup& g) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto cyc = cycle_indices(g, i);
    std::sort(cyc.begin(), cyc.end());
    if (seen.insert(std::move(cyc)).second) out.push_back(i);
  }
  return out;
}

std::vector<MatrixGroup> cyclic_subgroups(const MatrixGroup& g) {
  std::vector<MatrixGroup> out;
  for (std::size_t i : distinct_cyclic_generators(g))
    out.push_back(
        MatrixGroup::close(g.ring(), {g.element(i)}, g.order() + 1));
  return out;
}

ReductionSplit reduction_split(const MatrixGroup& g) {
  const Ring& r2 = g.ring();
  if (r2.n != 2)
    throw ModulusMismatch("reduction_split expects a level-p^2 group");
  Ring r1(r2.p, 1);
  std::vector<RingMatrix> red_gens;
  for (const auto& m : g.generators()) red_gens.push_back(m.reduced(r2.p));
  MatrixGroup image = MatrixGroup::close(r1, red_gens, g.order() + 1);
  std::vector<Mat2> ker;
  Mat2 id = mat2_identity();
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Mat2& e = g.raw(i);
    bool in_ker = true;
    for (int k = 0; k < 4; ++k) in_ker &= (e[k] % r2.p == id[k]);
    if (in_ker) ker.push_back(e);
  }
  MatrixGroup kernel = MatrixGroup::from_elements(r2, ker);
  if (image.order() * kernel.order() != g.order())
    throw NotASubgroup("reduction split sizes are inconsistent");
  return {std::move(image), std::move(kernel)};
}

std::uint32_t reduction_kernel_dim(const MatrixGroup& h) {
  const Ring& r2 = h.ring();
  if (r2.n != 2)
    throw NotReductionKernel("kernel groups live at level p^2");
  Ring rp(r2.p, 1);
  RingMatrix rows(0, 4, r2.p);
  Mat2 id = mat2_identity();
  for (std::size_t i = 0; i < h.order(); ++i) {
    const Mat2& e = h.raw(i);
    std::uint32_t v[4];
    for (int k = 0; k < 4; ++k) {
      if (e[k] % r2.p != id[k])
        throw NotReductionKernel(
            "group contains an element not congruent to I mod p");
      v[k] = (e[k] + r2.modulus - id[k]) % r2.modulus / r2.p;
    }
    rows.append_row(v);
  }
  std::uint32_t dim =
      static_cast<std::uint32_t>(howell_form(rows, rp).rows());
  // |H| = p^dim since A -> I + pA is an isomorphism onto H.
  std::uint64_t expect = 1;
  for (std::uint32_t i = 0; i < dim; ++i) expect *= r2.p;
  if (expect != h.order())
    throw NotReductionKernel("kernel group is not an F_p-space of its size");
  return dim;
}

SylowResult p_sylow(const MatrixGroup& g) {
  const std::uint32_t p = g.ring().p;
  std::uint64_t pa = 1;
  {
    std::uint64_t n = g.order();
    while (n % p == 0) {
      n /= p;
      pa *= p;
    }
  }
  std::vector<std::size_t> candidates;
  std::vector<Mat2> cand_elems;
  for (std::size_t i = 0; i < g.order(); ++i) {
    std::uint64_t o = element_order(g, i);
    bool ppow = true;
    while (o > 1) {
      if (o % p) {
        ppow = false;
        break;
      }
      o /= p;
    }
    if (ppow) {
      candidates.push_back(i);
      cand_elems.push_back(g.raw(i));
    }
  }

  MatrixGroup syl = MatrixGroup::close(g.ring(), {}, 2);
  if (pa > 1 && cand_elems.size() == pa) {
    // The p-power-order elements usually already form the (then unique)
    // Sylow subgroup; fall through to the greedy search if they do not.
    try {
      syl = MatrixGroup::from_elements(g.ring(), cand_elems);
    } catch (const NotASubgroup&) {
    }
  }
  while (syl.order() < pa) {
    bool progress = false;
    for (std::size_t i : candidates) {
      if (syl.contains(g.raw(i))) continue;
      std::vector<RingMatrix> trial_gens = syl.generators();
      trial_gens.push_back(g.element(i));
      MatrixGroup trial =
          MatrixGroup::close(g.ring(), trial_gens, g.order() + 1);
      std::uint64_t o = trial.order();
      while (o % p == 0) o /= p;
      if (o == 1 && trial.order() <= pa) {
        syl = std::move(trial);
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  GLCOH_CHECK(syl.order() == pa, "greedy Sylow search must reach full size");

  bool normal = true;
  for (std::size_t gi : g.generator_indices()) {
    for (std::size_t i = 0; normal && i < syl.order(); ++i) {
      std::size_t conj =
          g.mult(g.mult(gi, g.index_of(syl.raw(i))), g.inverse(gi));
      normal = syl.contains(g.raw(conj));
    }
    if (!normal) break;
  }
  return {std::move(syl), normal};
}

MatrixGroup diagonal_part(const MatrixGroup& g) {
  std::vector<Mat2> diag;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Mat2& e = g.raw(i);
    if (e[1] == 0 && e[2] == 0) diag.push_back(e);
  }
  return MatrixGroup::from_elements(g.ring(), diag);
}

std::vector<Submodule> invariant_lines(const MatrixGroup& g) {
  const Ring& r = g.ring();
  if (r.n != 1) throw ModulusMismatch("invariant lines live at level p");
  const std::uint32_t p = r.p;
  std::vector<std::array<std::uint32_t, 2>> reps;
  reps.push_back({0, 1});
  for (std::uint32_t t = 0; t < p; ++t) reps.push_back({1, t});
  std::vector<Submodule> out;
  for (const auto& v : reps) {
    bool ok = true;
    for (const auto& gen : g.generators()) {
      Mat2 m = mat2_of(gen);
      std::uint32_t w0 = (m[0] * v[0] + m[1] * v[1]) % p;
      std::uint32_t w1 = (m[2] * v[0] + m[3] * v[1]) % p;
      // w parallel to v iff the 2x2 determinant |w v| vanishes
      if ((static_cast<std::uint64_t>(w0) * v[1] + static_cast<std::uint64_t>(p - 1) * w1 % p * v[0]) % p != 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      RingMatrix row(1, 2, p);
      row.at(0, 0) = v[0];
      row.at(0, 1) = v[1];
      out.push_back(Submodule::from_rows(r, row));
    }
  }
  return out;
}

const char* class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::TwoLinesDiagonal:
      return "TwoLines-DiagonalCyclic";
    case ClassTag::OneLineBorel:
      return "OneLine-Borel";
    case ClassTag::NoLine:
      return "NoLine";
    case ClassTag::ManyLinesScalar:
      return "ManyLines-Scalarish";
  }
  return "?";
}

bool is_cyclic(const MatrixGroup& g) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (element_order(g, i) == g.order()) return true;
  return false;
}

namespace {

RingMatrix conjugated(const RingMatrix& u_inv, const RingMatrix& m,
                      const RingMatrix& u) {
  return u_inv * m * u;
}

std::optional<RingMatrix> cyclic_generator(const MatrixGroup& g) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (element_order(g, i) == g.order()) return g.element(i);
  return std::nullopt;
}

}  // namespace

Classification classify_mod_p(const MatrixGroup& g) {
  const Ring& r = g.ring();
  auto lines = invariant_lines(g);
  const std::uint32_t p = r.p;
  RingMatrix id = RingMatrix::identity(2, p);

  Classification out{ClassTag::NoLine, lines.size(), id, false,
                     std::nullopt,     std::nullopt};

  if (lines.size() == 0) {
    out.tag = ClassTag::NoLine;
    return out;
  }
  if (lines.size() == p + 1) {
    out.tag = ClassTag::ManyLinesScalar;
    for (std::size_t i = 0; i < g.order(); ++i) {
      const Mat2& e = g.raw(i);
      GLCOH_CHECK(e[1] == 0 && e[2] == 0 && e[0] == e[3],
                  "a group fixing every line is scalar");
    }
    out.diagonal_cyclic = is_cyclic(g);
    if (auto c = cyclic_generator(g)) out.diagonal_generator = *c;
    return out;
  }

  auto line_vec = [&](const Submodule& s) {
    return std::array<std::uint32_t, 2>{s.basis().at(0, 0), s.basis().at(0, 1)};
  };

  if (lines.size() == 2) {
    auto v1 = line_vec(lines[0]), v2 = line_vec(lines[1]);
    RingMatrix u(2, 2, p);
    u.at(0, 0) = v1[0];
    u.at(1, 0) = v1[1];
    u.at(0, 1) = v2[0];
    u.at(1, 1) = v2[1];
    RingMatrix ui = u.inv2();
    MatrixGroup conj = MatrixGroup::close(
        r, [&] {
          std::vector<RingMatrix> cg;
          for (const auto& m : g.generators())
            cg.push_back(conjugated(ui, m, u));
          return cg;
        }(),
        g.order() + 1);
    for (std::size_t i = 0; i < conj.order(); ++i) {
      const Mat2& e = conj.raw(i);
      GLCOH_CHECK(e[1] == 0 && e[2] == 0,
                  "two-line conjugate must be diagonal");
    }
    out.tag = ClassTag::TwoLinesDiagonal;
    out.basis_change = u;
    out.diagonal_cyclic = is_cyclic(conj);
    if (out.diagonal_cyclic) out.diagonal_generator = cyclic_generator(conj);
    return out;
  }

  // Exactly one line: triangularize, then locate a unipotent and rescale the
  // second basis vector so it becomes [[1,1],[0,1]].
  auto v1 = line_vec(lines[0]);
  std::array<std::uint32_t, 2> v2{0, 0};
  for (std::uint32_t a = 0; a < p && !(v2[0] | v2[1]); ++a)
    for (std::uint32_t b = 0; b < p; ++b) {
      std::uint64_t det =
          (static_cast<std::uint64_t>(v1[0]) * b + static_cast<std::uint64_t>(p - 1) * v1[1] % p * a) % p;
      if (det % p) {
        v2 = {a, b};
        break;
      }
    }
  RingMatrix u0(2, 2, p);
  u0.at(0, 0) = v1[0];
  u0.at(1, 0) = v1[1];
  u0.at(0, 1) = v2[0];
  u0.at(1, 1) = v2[1];
  RingMatrix u0i = u0.inv2();

  std::uint32_t c = 0;
  for (std::size_t i = 0; i < g.order() && !c; ++i) {
    RingMatrix m = conjugated(u0i, g.element(i), u0);
    GLCOH_CHECK(m.at(1, 0) == 0, "one-line conjugate must be triangular");
    if (m.at(0, 0) == 1 && m.at(1, 1) == 1 && m.at(0, 1) != 0) c = m.at(0, 1);
  }
  GLCOH_CHECK(c != 0, "a one-line group always contains a unipotent");
  RingMatrix w(2, 2, p);
  w.at(0, 0) = 1;
  w.at(1, 1) = inverse_mod(c, p);
  RingMatrix u = u0 * w;
  RingMatrix ui = u.inv2();

  out.tag = ClassTag::OneLineBorel;
  out.basis_change = u;
  MatrixGroup conj = MatrixGroup::close(
      r, [&] {
        std::vector<RingMatrix> cg;
        for (const auto& m : g.generators()) cg.push_back(conjugated(ui, m, u));
        return cg;
      }(),
      g.order() + 1);
  RingMatrix sigma(2, 2, p);
  sigma.at(0, 0) = 1;
  sigma.at(0, 1) = 1;
  sigma.at(1, 1) = 1;
  GLCOH_CHECK(conj.contains(mat2_of(sigma)),
              "rescaled basis must expose the standard unipotent");
  out.unipotent_generator = sigma;
  MatrixGroup gd = diagonal_part(conj);
  out.diagonal_cyclic = is_cyclic(gd);
  if (out.diagonal_cyclic) {
    auto rho = cyclic_generator(gd);
    // The decomposition <rho, sigma> must recover the whole group.
    if (rho && gd.order() * element_order(sigma) == conj.order()) {
      MatrixGroup span =
          MatrixGroup::close(r, {*rho, sigma}, conj.order() + 1);
      if (span.order() == conj.order()) out.diagonal_generator = rho;
    }
  }
  return out;
}

RingMatrix commutator(const RingMatrix& a, const RingMatrix& b) {
  return a * b * a.inv2() * b.inv2();
}

bool is_normal(const MatrixGroup& sub, const MatrixGroup& g) {
  std::vector<std::size_t> sub_idx;
  for (std::size_t i = 0; i < sub.order(); ++i) {
    std::size_t j = g.index_of(sub.raw(i));
    if (j == ElementIndex::npos)
      throw NotASubgroup("candidate subgroup has elements outside the group");
    sub_idx.push_back(j);
  }
  for (std::size_t gi : g.generator_indices())
    for (std::size_t j : sub_idx) {
      std::size_t conj = g.mult(g.mult(gi, j), g.inverse(gi));
      if (!sub.contains(g.raw(conj))) return false;
    }
  return true;
}

std::vector<std::uint32_t> det_image(const MatrixGroup& g, std::uint32_t out) {
  if (out != g.ring().p && out != g.ring().modulus)
    throw ModulusMismatch("det image modulus must be p or the group modulus");
  std::set<std::uint32_t> dets;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Mat2& e = g.raw(i);
    std::uint64_t d = (static_cast<std::uint64_t>(e[0]) * e[3] +
                       static_cast<std::uint64_t>(e[1]) * (g.ring().modulus - 1) % g.ring().modulus * e[2]) %
                      g.ring().modulus;
    dets.insert(static_cast<std::uint32_t>(d % out));
  }
  return {dets.begin(), dets.end()};
}

std::optional<RingMatrix> contains_nontrivial_scalar(const MatrixGroup& g) {
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Mat2& e = g.raw(i);
    if (e[1] == 0 && e[2] == 0 && e[0] == e[3] && e[0] != 1)
      return g.element(i);
  }
  return std::nullopt;
}

Submodule fixed_submodule(const MatrixGroup& g) {
  const Ring& r = g.ring();
  Submodule fixed = Submodule::full(r, 2);
  for (const auto& m : g.generators()) {
    RingMatrix shifted = m - RingMatrix::identity(2, r.modulus);
    fixed = fixed.intersect(kernel_submodule(r, shifted));
  }
  return fixed;
}

std::uint32_t primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 2; g < p; ++g) {
    std::uint64_t x = g % p;
    std::uint32_t ord = 1;
    while (x != 1) {
      x = x * g % p;
      ++ord;
    }
    if (ord == p - 1) return g;
  }
  throw ModulusMismatch("no primitive root; p must be prime");
}

MatrixGroup full_group_mod_p(const Ring& r) {
  if (r.n != 1)
    throw ModulusMismatch("the full group is built at level 1 only");
  RingMatrix upper = RingMatrix::identity(2, r.p);
  upper.at(0, 1) = 1;
  RingMatrix lower = RingMatrix::identity(2, r.p);
  lower.at(1, 0) = 1;
  RingMatrix torus = RingMatrix::identity(2, r.p);
  torus.at(0, 0) = primitive_root(r.p);
  std::uint64_t order = static_cast<std::uint64_t>(r.p) * r.p;
  order = (order - 1) * (order - r.p);
  return MatrixGroup::close(r, {upper, lower, torus}, order + 1);
}

}  // namespace glcoh
