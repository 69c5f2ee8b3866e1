#include "glcoh/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "glcoh/check.hpp"
#include "glcoh/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace glcoh {

namespace {

// ---- deterministic sizing ---------------------------------------------

// Budgets shrink the sampling plan as a pure function of the requested
// seconds (never a wall-clock cutoff), so a report is reproducible
// bit-for-bit from (id, p, n, seed, budget).
struct Plan {
  double scale = 1.0;
  bool truncated = false;
  std::size_t of(std::size_t full) const {
    if (!truncated) return full;
    std::size_t s = static_cast<std::size_t>(static_cast<double>(full) * scale);
    return s < 1 ? 1 : s;
  }
};

Plan make_plan(const CheckSpec& spec) {
  Plan plan;
  if (spec.budget_secs < 60.0) {
    plan.scale = spec.budget_secs <= 0.0 ? 0.0 : spec.budget_secs / 60.0;
    plan.truncated = true;
  }
  return plan;
}

std::size_t by_p(const CheckSpec& spec, std::size_t at5, std::size_t at7) {
  return spec.p == 5 ? at5 : at7;
}

// ---- small formatting helpers ------------------------------------------

std::string invariants_str(const std::vector<std::uint64_t>& inv) {
  std::string s = "[";
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(inv[i]);
  }
  return s + "]";
}

std::vector<std::string> literals(const std::vector<RingMatrix>& gens) {
  std::vector<std::string> out;
  out.reserve(gens.size());
  for (const RingMatrix& g : gens) out.push_back(matrix_literal(g));
  return out;
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

void add_failure(VerdictReport& rep, const SampledGroup& sg,
                 std::string data) {
  rep.failures.push_back(FailureWitness{literals(sg.generators),
                                        std::move(data),
                                        sg.group.canonical_key()});
}

void finalize(VerdictReport& rep, const Plan& plan) {
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const FailureWitness& a, const FailureWitness& b) {
              if (a.group_key != b.group_key) return a.group_key < b.group_key;
              return a.data < b.data;
            });
  if (!rep.failures.empty())
    rep.verdict = "fail";
  else
    rep.verdict = plan.truncated ? "inconclusive-budget" : "pass";
}

GModule full_module(const Ring& r) { return GModule::full(r); }

// Runs fn over every group, in parallel when available; fn returns an empty
// string for a clean group and the failure data otherwise. Slot-indexed
// results keep the aggregation order deterministic.
template <class F>
void sweep(const std::vector<SampledGroup>& groups, VerdictReport& rep,
           F&& fn) {
  std::vector<std::string> outcome(groups.size());
  const std::int64_t count = static_cast<std::int64_t>(groups.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      outcome[static_cast<std::size_t>(i)] =
          fn(groups[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      outcome[static_cast<std::size_t>(i)] =
          std::string("unexpected error: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    ++rep.groups_tested;
    if (!outcome[i].empty()) add_failure(rep, groups[i], outcome[i]);
  }
}

// True iff the mod-p group fixes a nonzero vector of E[p] (any nonzero
// fixed vector there has exact order p).
bool has_fixed_point_of_order_p(const MatrixGroup& g1) {
  return fixed_submodule(g1).order() > 1;
}

bool det_hypothesis(const MatrixGroup& g2) {
  const std::uint32_t m = g2.ring().modulus;
  return det_image(g2, m).size() % g2.ring().p == 0;
}

// Conjugated copy U g U^-1 of a group, from its generators.
MatrixGroup conjugated(const MatrixGroup& g, const RingMatrix& u) {
  RingMatrix uinv = u.inv2();
  std::vector<RingMatrix> gens;
  for (std::size_t gi : g.generator_indices())
    gens.push_back(u * g.element(gi) * uinv);
  return MatrixGroup::close(g.ring(), gens, g.order() + 1);
}

// ---- registry id "lemma-2.3": scalar forces vanishing -------------------

VerdictReport check_scalar_vanishing(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "scalar-containing + scalar lifts";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  SampleStats st;

  std::vector<SampledGroup> level1;
  for (std::uint32_t c = 2; c < spec.p; ++c) {
    std::vector<RingMatrix> gens = {mk(spec.p, c, 0, 0, c)};
    level1.push_back(SampledGroup{MatrixGroup::close(base, gens),
                                  std::move(gens), "scalar-cyclic"});
  }
  {
    std::vector<RingMatrix> gens = {mk(spec.p, 2, 0, 0, 2),
                                    mk(spec.p, 1, 1, 0, 1)};
    level1.push_back(SampledGroup{MatrixGroup::close(base, gens),
                                  std::move(gens), "scalar-plus-unipotent"});
  }
  for (SampledGroup& sg : sample_scalar_containing(
           base, derive_seed(spec.seed, spec.id + ":level1"),
           plan.of(by_p(spec, 520, 160)), st))
    level1.push_back(std::move(sg));

  std::vector<SampledGroup> level2 = sample_scalar_lifts(
      lift, derive_seed(spec.seed, spec.id + ":level2"),
      plan.of(by_p(spec, 110, 30)), st);

  rep.coverage["level1-groups"] = level1.size();
  rep.coverage["level2-groups"] = level2.size();
  rep.coverage["cap-skipped"] = st.cap_skipped;

  sweep(level1, rep, [&](const SampledGroup& sg) -> std::string {
    if (!contains_nontrivial_scalar(sg.group))
      return "expected a nontrivial scalar in the sampled group";
    auto inv = h1(sg.group, full_module(base)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  sweep(level2, rep, [&](const SampledGroup& sg) -> std::string {
    MatrixGroup g1 = reduction_split(sg.group).image;
    if (!contains_nontrivial_scalar(g1))
      return "expected a nontrivial scalar in the mod-p reduction";
    auto inv = h1(sg.group, full_module(lift)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  finalize(rep, plan);
  return rep;
}

// ---- registry id "cor-2.4": non-cyclic diagonal part ---------------------

VerdictReport check_gd_noncyclic(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "diagonal pairs + filtered randoms + lifts";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;

  // All two-generator diagonal groups, deduplicated, plus Borel variants.
  std::vector<SampledGroup> qualifying;
  std::set<std::vector<std::uint64_t>> seen;
  std::size_t cyclic_skipped = 0;
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t d = 1; d < p; ++d)
      for (std::uint32_t a2 = 1; a2 < p; ++a2)
        for (std::uint32_t d2 = 1; d2 < p; ++d2) {
          std::vector<RingMatrix> gens = {mk(p, a, 0, 0, d),
                                          mk(p, a2, 0, 0, d2)};
          MatrixGroup g = MatrixGroup::close(base, gens);
          if (!seen.insert(g.canonical_key()).second) continue;
          if (is_cyclic(diagonal_part(g))) {
            ++cyclic_skipped;
            continue;
          }
          qualifying.push_back(
              SampledGroup{std::move(g), std::move(gens), "diagonal-pair"});
        }
  const std::size_t diag_count = qualifying.size();
  for (std::size_t i = 0; i < diag_count && i < 24; ++i) {
    std::vector<RingMatrix> gens = qualifying[i].generators;
    gens.push_back(mk(p, 1, 1, 0, 1));
    MatrixGroup g = MatrixGroup::close(base, gens);
    qualifying.push_back(
        SampledGroup{std::move(g), std::move(gens), "diagonal-pair-borel"});
  }

  std::vector<SampledGroup> randoms = sample_two_generator(
      base, derive_seed(spec.seed, spec.id + ":rand"),
      plan.of(by_p(spec, 150, 60)), MatrixGroup::default_cap, st);
  std::size_t random_skipped = 0;
  for (SampledGroup& sg : randoms) {
    if (is_cyclic(diagonal_part(sg.group))) {
      ++random_skipped;
      continue;
    }
    sg.family = "random-noncyclic-gd";
    qualifying.push_back(std::move(sg));
  }

  // Entrywise lifts of the first qualifying diagonal pairs.
  std::vector<SampledGroup> lifts;
  const RingMatrix e12 = mk(p, 0, 1, 0, 0);
  for (std::size_t i = 0; i < diag_count && i < plan.of(8); ++i) {
    std::vector<RingMatrix> gens;
    for (const RingMatrix& g0 : qualifying[i].generators)
      gens.push_back(lift_entrywise(g0, lift));
    gens.push_back(reduction_kernel_element(e12, lift));
    try {
      MatrixGroup g = MatrixGroup::close(lift, gens);
      lifts.push_back(
          SampledGroup{std::move(g), std::move(gens), "diagonal-pair-lift"});
    } catch (const CapExceeded&) {
      ++st.cap_skipped;
    }
  }

  rep.coverage["level1-groups"] = qualifying.size();
  rep.coverage["level2-groups"] = lifts.size();
  rep.coverage["cyclic-gd-skipped"] = cyclic_skipped + random_skipped;
  rep.coverage["cap-skipped"] = st.cap_skipped;

  sweep(qualifying, rep, [&](const SampledGroup& sg) -> std::string {
    // A non-cyclic diagonal part always brings a nontrivial scalar along
    // (the rank-two q-torsion is the full C_q x C_q), which is how the
    // vanishing is proved; record a failure if either half breaks.
    if (!contains_nontrivial_scalar(sg.group))
      return "non-cyclic diagonal part without a nontrivial scalar";
    auto inv = h1(sg.group, full_module(base)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  sweep(lifts, rep, [&](const SampledGroup& sg) -> std::string {
    auto inv = h1(sg.group, full_module(lift)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  finalize(rep, plan);
  return rep;
}

// ---- registry id "lemma-2.5": classification when H^1 survives ----------

VerdictReport check_classification(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "borel lifts + kernel slices + random lifts";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;

  std::vector<SampledGroup> pool = borel_lifts(lift, st);
  for (SampledGroup& sg : structured_lifts(lift, st))
    pool.push_back(std::move(sg));
  {
    std::vector<RingMatrix> gens = {lift_entrywise(mk(p, 1, 1, 0, 1), lift)};
    pool.push_back(SampledGroup{MatrixGroup::close(lift, gens),
                                std::move(gens), "unipotent-lift"});
  }
  for (SampledGroup& sg : sample_two_generator(
           lift, derive_seed(spec.seed, spec.id + ":rand"),
           plan.of(by_p(spec, 30, 10)), 6000, st))
    pool.push_back(std::move(sg));

  rep.coverage["pool"] = pool.size();
  rep.coverage["cap-skipped"] = st.cap_skipped;

  // Case tallies are gathered after the parallel sweep to stay ordered.
  std::vector<int> cases(pool.size(), -1);  // 0 = h1 zero, 1 = (i), 2 = (ii)
  std::vector<std::string> outcome(pool.size());
  const std::int64_t count = static_cast<std::int64_t>(pool.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    try {
      const SampledGroup& sg = pool[i];
      auto inv = h1(sg.group, full_module(lift)).invariants;
      if (inv.empty()) {
        cases[i] = 0;
        continue;
      }
      MatrixGroup g1 = reduction_split(sg.group).image;
      Classification cls = classify_mod_p(g1);
      switch (cls.tag) {
        case ClassTag::NoLine:
          outcome[i] = "H^1 nonzero without an invariant line";
          break;
        case ClassTag::ManyLinesScalar:
          if (g1.order() == 1) {
            cases[i] = 1;  // trivial reduction: vacuously diagonal cyclic
          } else {
            outcome[i] =
                "H^1 nonzero despite a nontrivial scalar in the reduction";
          }
          break;
        case ClassTag::TwoLinesDiagonal:
          if (!is_cyclic(g1))
            outcome[i] = "two invariant lines but the reduction is not cyclic";
          else
            cases[i] = 1;
          break;
        case ClassTag::OneLineBorel: {
          if (!cls.diagonal_generator || !cls.unipotent_generator) {
            outcome[i] = "one line but no <rho, sigma> decomposition";
            break;
          }
          const RingMatrix& rho = *cls.diagonal_generator;
          MatrixGroup g1c = conjugated(g1, cls.basis_change);
          MatrixGroup gd = diagonal_part(g1c);
          MatrixGroup rho_group = MatrixGroup::close(base, {rho});
          std::string bad;
          if (g1.order() != static_cast<std::uint64_t>(p) * gd.order())
            bad += "coset identity |G1| = p * |G_D| violated; ";
          if (gd.canonical_key() != rho_group.canonical_key())
            bad += "diagonal part differs from <rho>; ";
          if (g1.order() != static_cast<std::uint64_t>(p) * element_order(rho))
            bad += "index of <rho> is not p; ";
          if (is_normal(rho_group, g1c) != rho.is_identity())
            bad += "<rho> normality does not match rho = identity; ";
          if (!bad.empty()) {
            outcome[i] = bad + "(rho = " + matrix_literal(rho) + ")";
            break;
          }
          cases[i] = 2;
          break;
        }
      }
    } catch (const std::exception& e) {
      outcome[i] = std::string("unexpected error: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ++rep.groups_tested;
    if (!outcome[i].empty()) add_failure(rep, pool[i], outcome[i]);
    if (cases[i] == 0) ++rep.coverage["h1-zero"];
    if (cases[i] == 1) ++rep.coverage["case-i"];
    if (cases[i] == 2) ++rep.coverage["case-ii"];
  }
  finalize(rep, plan);
  return rep;
}

// ---- registry id "lemma-2.6": kernel dimension away from 2 ---------------

VerdictReport check_dim_h(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "kernel slices of dimension 0,1,3,4";
  const Ring lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;

  std::vector<SampledGroup> pool = structured_lifts(lift, st);

  // Seeded slice variations over a cyclic diagonal base.
  std::mt19937_64 rng(derive_seed(spec.seed, spec.id + ":slices"));
  const Ring base(p, 1);
  for (std::size_t i = 0; i < plan.of(by_p(spec, 20, 8)); ++i) {
    std::uint32_t a = 2 + draw_below(rng, p - 2);
    std::uint32_t d = 1 + draw_below(rng, p - 1);
    std::vector<RingMatrix> gens;
    if (element_order(mk(p, a, 0, 0, d)) % p != 0)
      gens.push_back(order_preserving_lift(mk(p, a, 0, 0, d), lift));
    std::size_t slice_count = 1 + draw_below(rng, 3);
    for (std::size_t s = 0; s < slice_count; ++s) {
      RingMatrix m0 = mk(p, draw_below(rng, p), draw_below(rng, p),
                         draw_below(rng, p), draw_below(rng, p));
      if (!m0.is_zero()) gens.push_back(reduction_kernel_element(m0, lift));
    }
    if (gens.empty()) continue;
    try {
      MatrixGroup g = MatrixGroup::close(lift, gens);
      pool.push_back(
          SampledGroup{std::move(g), std::move(gens), "seeded-slice"});
    } catch (const CapExceeded&) {
      ++st.cap_skipped;
    }
  }
  rep.coverage["cap-skipped"] = st.cap_skipped;

  std::vector<SampledGroup> eligible;
  for (SampledGroup& sg : pool) {
    std::uint32_t dim = reduction_kernel_dim(reduction_split(sg.group).kernel);
    if (dim == 2) {
      ++rep.coverage["dim2-excluded"];
      continue;
    }
    ++rep.coverage["dim" + std::to_string(dim)];
    eligible.push_back(std::move(sg));
  }

  sweep(eligible, rep, [&](const SampledGroup& sg) -> std::string {
    CohomologyGroup lg = h1_loc(sg.group, full_module(lift));
    if (!lg.invariants.empty())
      return "locally trivial classes survive: " +
             invariants_str(lg.invariants);
    return "";
  });
  finalize(rep, plan);
  return rep;
}

// ---- registry id "lemma-3.1": cyclic cohomology via the norm map ---------

VerdictReport check_cyclic_formula(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "all cyclic subgroups mod p + seeded cyclic mod p^2";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  SampleStats st;

  std::vector<SampledGroup> pool;
  MatrixGroup gl2 = full_group_mod_p(base);
  for (MatrixGroup& c : cyclic_subgroups(gl2)) {
    std::vector<RingMatrix> gens;
    for (std::size_t i = 0; i < c.order(); ++i)
      if (element_order(c, i) == c.order()) {
        gens.push_back(c.element(i));
        break;
      }
    pool.push_back(SampledGroup{std::move(c), std::move(gens), "gl2-cyclic"});
  }
  rep.coverage["mod-p-cyclic-subgroups"] = pool.size();
  const std::size_t mod_p_count = pool.size();
  for (SampledGroup& sg : sample_cyclic(
           lift, derive_seed(spec.seed, spec.id + ":lift"), plan.of(200), st))
    pool.push_back(std::move(sg));
  rep.coverage["mod-p2-seeded"] = pool.size() - mod_p_count;

  sweep(pool, rep, [&](const SampledGroup& sg) -> std::string {
    const Ring& r = sg.group.ring();
    RingMatrix delta = sg.generators.empty() ? RingMatrix::identity(2, r.modulus)
                                             : sg.generators[0];
    CohomologyGroup a = h1(sg.group, full_module(r));
    CohomologyGroup b = cyclic_h1(delta, full_module(r));
    if (a.invariants != b.invariants)
      return "engine " + invariants_str(a.invariants) + " vs norm-map " +
             invariants_str(b.invariants);
    if (a.z1.order() != b.z1.order() || a.b1.order() != b.b1.order())
      return "cocycle/coboundary counts disagree between the two routes";
    return "";
  });
  finalize(rep, plan);
  return rep;
}

// ---- registry id "prop-3.2": cyclic reduction with surviving classes -----

VerdictReport check_prop_cyclic(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "diagonal-cyclic lifts + seeded cyclic reductions";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;
  const RingMatrix id2 = RingMatrix::identity(2, lift.modulus);
  const RingMatrix e12 = mk(p, 0, 1, 0, 0), e11 = mk(p, 1, 0, 0, 0);

  // Proof-engine mechanics: for every diagonal with both eigenvalues away
  // from 1, any lift delta~ has invertible delta~ - I, and the norm-map
  // cohomology of <delta~> on each kernel-element fixed module vanishes.
  std::size_t unstable = 0;
  for (std::uint32_t l1 = 2; l1 < p; ++l1)
    for (std::uint32_t l2 = 2; l2 < p; ++l2) {
      RingMatrix delta = lift_entrywise(mk(p, l1, 0, 0, l2), lift);
      SampledGroup probe{MatrixGroup::close(lift, {delta}), {delta},
                         "mechanics"};
      ++rep.groups_tested;
      if ((delta - id2).det2() % p == 0) {
        add_failure(rep, probe, "delta~ - I is not invertible");
        continue;
      }
      const std::vector<std::vector<RingMatrix>> slices = {
          {}, {e12}, {e11, e12}};
      for (const auto& slice : slices) {
        std::vector<RingMatrix> gens = {delta};
        for (const RingMatrix& a : slice)
          gens.push_back(reduction_kernel_element(a, lift));
        MatrixGroup g2 = MatrixGroup::close(lift, gens);
        MatrixGroup h = reduction_split(g2).kernel;
        for (std::size_t gi = 0; gi < h.order(); ++gi) {
          MatrixGroup gamma = MatrixGroup::close(lift, {h.element(gi)});
          Submodule s = fixed_submodule(gamma);
          if (!(s.apply(delta) == s)) {
            ++unstable;
            continue;
          }
          if (!(s.apply(delta - id2) == s)) {
            add_failure(rep, probe,
                        "(delta~ - 1) does not cover the fixed module of " +
                            matrix_literal(h.element(gi)));
            continue;
          }
          auto inv = cyclic_h1(delta, GModule::over(s)).invariants;
          if (!inv.empty())
            add_failure(rep, probe,
                        "nonzero restriction term " + invariants_str(inv) +
                            " on the fixed module of " +
                            matrix_literal(h.element(gi)));
        }
      }
    }
  rep.coverage["gamma-unstable-skipped"] = unstable;

  // Sampled implication: qualifying (det hypothesis, surviving local
  // classes, cyclic reduction) groups must show a fixed point of exact
  // order p and an injective determinant on the reduction.
  std::vector<SampledGroup> pool;
  for (std::uint32_t l1 = 1; l1 < p; ++l1)
    for (std::uint32_t l2 = 1; l2 < p; ++l2) {
      if (l1 == 1 && l2 == 1) continue;
      for (int with_slice = 0; with_slice < 2; ++with_slice) {
        std::vector<RingMatrix> gens = {
            lift_entrywise(mk(p, l1, 0, 0, l2), lift)};
        if (with_slice)
          gens.push_back(reduction_kernel_element(e12, lift));
        pool.push_back(SampledGroup{MatrixGroup::close(lift, gens),
                                    std::move(gens), "diagonal-lift"});
      }
    }
  for (SampledGroup& sg : sample_cyclic(
           lift, derive_seed(spec.seed, spec.id + ":cyc"),
           plan.of(by_p(spec, 40, 15)), st))
    pool.push_back(std::move(sg));
  for (SampledGroup& sg : sample_two_generator(
           lift, derive_seed(spec.seed, spec.id + ":rand"),
           plan.of(by_p(spec, 40, 15)), 6000, st))
    pool.push_back(std::move(sg));
  rep.coverage["pool"] = pool.size();
  rep.coverage["cap-skipped"] = st.cap_skipped;

  std::vector<int> outcome_kind(pool.size(), 0);
  std::vector<std::string> outcome(pool.size());
  const std::int64_t count = static_cast<std::int64_t>(pool.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    try {
      const SampledGroup& sg = pool[i];
      MatrixGroup g1 = reduction_split(sg.group).image;
      if (!is_cyclic(g1)) {
        outcome_kind[i] = 1;
        continue;
      }
      if (!det_hypothesis(sg.group)) {
        outcome_kind[i] = 2;
        continue;
      }
      CohomologyGroup lg = h1_loc(sg.group, full_module(lift));
      if (lg.invariants.empty()) {
        outcome_kind[i] = 3;
        continue;
      }
      outcome_kind[i] = 4;
      std::string bad;
      if (!has_fixed_point_of_order_p(g1))
        bad += "no fixed point of exact order p; ";
      if (det_image(g1, p).size() != g1.order())
        bad += "determinant not injective on the reduction; ";
      if (!bad.empty())
        outcome[i] = bad + "local classes " + invariants_str(lg.invariants);
    } catch (const std::exception& e) {
      outcome[i] = std::string("unexpected error: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ++rep.groups_tested;
    if (!outcome[i].empty()) add_failure(rep, pool[i], outcome[i]);
    if (outcome_kind[i] == 1) ++rep.coverage["noncyclic-skipped"];
    if (outcome_kind[i] == 2) ++rep.coverage["det-hypothesis-excluded"];
    if (outcome_kind[i] == 3) ++rep.coverage["h1loc-zero"];
    if (outcome_kind[i] == 4) ++rep.coverage["qualifying"];
  }
  finalize(rep, plan);
  return rep;
}

// ---- registry id "prop-3.3": non-cyclic reduction mechanics --------------

VerdictReport check_prop_noncyclic(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "borel lifts with the invariant plane + random lifts";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;

  std::vector<SampledGroup> borels = borel_lifts(lift, st);
  const RingMatrix id2 = RingMatrix::identity(2, lift.modulus);

  for (const SampledGroup& sg : borels) {
    ++rep.groups_tested;
    const MatrixGroup& g2 = sg.group;
    MatrixGroup g1 = reduction_split(g2).image;
    Classification cls = classify_mod_p(g1);
    if (cls.tag != ClassTag::OneLineBorel || !cls.unipotent_generator) {
      ++rep.coverage["not-borel-skipped"];
      continue;
    }

    // sigma back in the original basis; its powers are the unipotents.
    RingMatrix uinv = cls.basis_change.inv2();
    RingMatrix sigma = uinv * (*cls.unipotent_generator) * cls.basis_change;
    MatrixGroup sigma_group = MatrixGroup::close(base, {sigma});
    if (!is_normal(sigma_group, g1)) {
      add_failure(rep, sg, "<sigma> is not normal in the reduction");
      continue;
    }

    // The fixed line of sigma downstairs, pointwise.
    Submodule line = fixed_submodule(sigma_group);
    GLCOH_CHECK(line.rank() == 1, "a unipotent fixes exactly one line");
    const std::uint32_t v0 = line.basis().at(0, 0);
    const std::uint32_t v1 = line.basis().at(0, 1);

    std::vector<Mat2> hp_elems;
    for (std::size_t i = 0; i < g2.order(); ++i) {
      RingMatrix a = g2.element(i);
      std::uint32_t w0 = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(a.at(0, 0)) * v0 +
           static_cast<std::uint64_t>(a.at(0, 1)) * v1) %
          p);
      std::uint32_t w1 = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(a.at(1, 0)) * v0 +
           static_cast<std::uint64_t>(a.at(1, 1)) * v1) %
          p);
      if (w0 != v0 % p || w1 != v1 % p) continue;
      if (a.det2() != 1) continue;
      hp_elems.push_back(g2.raw(i));
    }
    MatrixGroup hprime = MatrixGroup::from_elements(lift, hp_elems);

    if (hprime.order() != static_cast<std::uint64_t>(p) * p) {
      rep.notes.push_back("fixing-subgroup order " +
                          std::to_string(hprime.order()) + " (expected p^2) on " +
                          matrix_literal(sg.generators[0]));
      ++rep.coverage["hprime-order-mismatch"];
      continue;
    }
    ++rep.coverage["hprime-order-p2"];

    // Intersection with the reduction kernel: a cyclic group of order p.
    std::size_t in_kernel = 0;
    for (std::size_t i = 0; i < hprime.order(); ++i) {
      RingMatrix a = hprime.element(i);
      if (a.reduced(p).is_identity()) ++in_kernel;
    }
    if (in_kernel != p) {
      add_failure(rep, sg,
                  "kernel intersection has order " + std::to_string(in_kernel));
      continue;
    }
    CohomologyGroup hp_loc = h1_loc(hprime, full_module(lift));
    if (!hp_loc.invariants.empty()) {
      add_failure(rep, sg, "fixing subgroup has surviving local classes " +
                               invariants_str(hp_loc.invariants));
      continue;
    }

    // Rank-one fixed module: a generator of the cyclic quotient with
    // eigenvalue away from 1 must cover it with (delta - 1).
    Submodule s = fixed_submodule(hprime);
    if (s.rank() != 1) {
      ++rep.coverage["fixed-module-rank-not-1"];
      continue;
    }
    if (!is_normal(hprime, g2)) {
      add_failure(rep, sg, "fixing subgroup is not normal");
      continue;
    }
    QuotientGroup q(g2, hprime);
    std::size_t gen_coset = q.order();
    for (std::size_t i = 0; i < q.order() && gen_coset == q.order(); ++i) {
      std::size_t steps = 1, x = i;
      while (x != q.identity()) {
        x = q.mult(x, i);
        ++steps;
      }
      if (steps == q.order()) gen_coset = i;
    }
    if (gen_coset == q.order()) {
      ++rep.coverage["quotient-noncyclic"];
      continue;
    }
    RingMatrix delta = q.element(gen_coset);
    if (!(s.apply(delta) == s)) {
      add_failure(rep, sg, "fixed module not stable under the coset generator");
      continue;
    }
    // Eigenvalue of delta on the generator: (delta - 1) v = c v.
    std::vector<std::uint32_t> w(2);
    {
      const std::uint32_t* v = s.basis().row(0);
      RingMatrix shifted = delta - id2;
      for (std::size_t r0 = 0; r0 < 2; ++r0)
        w[r0] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(shifted.at(r0, 0)) * v[0] +
             static_cast<std::uint64_t>(shifted.at(r0, 1)) * v[1]) %
            lift.modulus);
    }
    auto coords = row_span_coords(s.basis(), w.data(), lift);
    if (!coords) {
      add_failure(rep, sg, "(delta - 1) leaves the rank-one fixed module");
      continue;
    }
    if ((*coords)[0] % p != 0) {
      if (!(s.apply(delta - id2) == s)) {
        add_failure(rep, sg,
                    "eigenvalue away from 1 but (delta - 1) not surjective");
        continue;
      }
      ++rep.coverage["surjectivity-verified"];
    } else {
      ++rep.coverage["eigenvalue-1-skipped"];
    }
  }

  // Sampled implication on non-cyclic reductions.
  std::vector<SampledGroup> pool = std::move(borels);
  for (SampledGroup& sg : sample_two_generator(
           lift, derive_seed(spec.seed, spec.id + ":rand"),
           plan.of(by_p(spec, 40, 15)), 6000, st))
    pool.push_back(std::move(sg));
  rep.coverage["cap-skipped"] = st.cap_skipped;

  std::vector<int> outcome_kind(pool.size(), 0);
  std::vector<std::string> outcome(pool.size());
  const std::int64_t count = static_cast<std::int64_t>(pool.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    try {
      const SampledGroup& sg = pool[i];
      MatrixGroup g1 = reduction_split(sg.group).image;
      if (is_cyclic(g1)) {
        outcome_kind[i] = 1;
        continue;
      }
      if (!det_hypothesis(sg.group)) {
        outcome_kind[i] = 2;
        continue;
      }
      CohomologyGroup lg = h1_loc(sg.group, full_module(lift));
      if (lg.invariants.empty()) {
        outcome_kind[i] = 3;
        continue;
      }
      outcome_kind[i] = 4;
      if (!has_fixed_point_of_order_p(g1)) {
        outcome[i] = "no fixed point of exact order p; local classes " +
                     invariants_str(lg.invariants);
        continue;
      }
      Classification cls = classify_mod_p(g1);
      if (cls.tag == ClassTag::OneLineBorel && cls.diagonal_generator &&
          cls.diagonal_generator->at(0, 0) % p != 1)
        outcome[i] = "distinguished diagonal does not fix the line generator";
    } catch (const std::exception& e) {
      outcome[i] = std::string("unexpected error: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ++rep.groups_tested;
    if (!outcome[i].empty()) add_failure(rep, pool[i], outcome[i]);
    if (outcome_kind[i] == 1) ++rep.coverage["cyclic-skipped"];
    if (outcome_kind[i] == 2) ++rep.coverage["det-hypothesis-excluded"];
    if (outcome_kind[i] == 3) ++rep.coverage["h1loc-zero"];
    if (outcome_kind[i] == 4) ++rep.coverage["qualifying"];
  }
  finalize(rep, plan);
  return rep;
}

// ---- registry id "thm-2.2": no invariant line forces vanishing -----------

VerdictReport check_isogeny_contrapositive(const CheckSpec& spec,
                                           const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "line-free groups mod p and their lifts";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  const std::uint32_t p = spec.p;
  SampleStats st;

  // Order of the full group by brute-force invertibility count.
  std::uint64_t invertible = 0;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d)
          if ((a * d % p + p - b * c % p) % p != 0) ++invertible;
  MatrixGroup gl2 = full_group_mod_p(base);
  rep.coverage["full-group-order"] = gl2.order();
  if (invertible != gl2.order()) {
    SampledGroup probe{gl2, gl2.generators(), "full-group"};
    add_failure(rep, probe,
                "brute-force invertible count " + std::to_string(invertible) +
                    " differs from the closure order " +
                    std::to_string(gl2.order()));
  }

  std::vector<SampledGroup> level1;
  std::size_t with_line = 0;
  for (SampledGroup& sg : structured_mod_p(base)) {
    if (!invariant_lines(sg.group).empty()) {
      ++with_line;
      continue;
    }
    level1.push_back(std::move(sg));
  }
  for (SampledGroup& sg : sample_two_generator(
           base, derive_seed(spec.seed, spec.id + ":rand"),
           plan.of(by_p(spec, 120, 50)), MatrixGroup::default_cap, st)) {
    if (!invariant_lines(sg.group).empty()) {
      ++with_line;
      continue;
    }
    sg.family = "random-line-free";
    level1.push_back(std::move(sg));
  }
  rep.coverage["line-skipped"] = with_line;
  rep.coverage["level1-groups"] = level1.size();

  std::vector<SampledGroup> level2;
  {
    std::vector<RingMatrix> gens = {lift_entrywise(mk(p, 1, 1, 0, 1), lift),
                                    lift_entrywise(mk(p, 1, 0, 1, 1), lift)};
    try {
      MatrixGroup g = MatrixGroup::close(lift, gens);
      level2.push_back(
          SampledGroup{std::move(g), std::move(gens), "sl2-lift"});
    } catch (const CapExceeded&) {
      ++st.cap_skipped;
    }
  }
  for (SampledGroup& sg : structured_lifts(lift, st))
    if (sg.family.rfind("lift-nonsplit", 0) == 0) level2.push_back(std::move(sg));
  std::size_t lift_with_line = 0;
  for (SampledGroup& sg : sample_two_generator(
           lift, derive_seed(spec.seed, spec.id + ":randlift"),
           plan.of(by_p(spec, 12, 5)), 16000, st)) {
    if (!invariant_lines(reduction_split(sg.group).image).empty()) {
      ++lift_with_line;
      continue;
    }
    sg.family = "random-line-free-lift";
    level2.push_back(std::move(sg));
  }
  rep.coverage["lift-line-skipped"] = lift_with_line;
  rep.coverage["level2-groups"] = level2.size();
  rep.coverage["cap-skipped"] = st.cap_skipped;

  sweep(level1, rep, [&](const SampledGroup& sg) -> std::string {
    auto inv = h1(sg.group, full_module(base)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  sweep(level2, rep, [&](const SampledGroup& sg) -> std::string {
    auto inv = h1(sg.group, full_module(lift)).invariants;
    if (!inv.empty()) return "H^1 invariants " + invariants_str(inv);
    return "";
  });
  finalize(rep, plan);
  return rep;
}

// ---- registry id "main-thm-search": counterexample hunt ------------------

VerdictReport main_theorem_search(const CheckSpec& spec, const Plan& plan) {
  VerdictReport rep{spec, 0, {}, {}, {}, 0.0, ""};
  rep.spec.family = "all structured lift families + seeded randoms";
  const Ring base(spec.p, 1), lift(spec.p, 2);
  SampleStats st;

  std::vector<SampledGroup> pool = structured_lifts(lift, st);
  for (SampledGroup& sg : borel_lifts(lift, st)) pool.push_back(std::move(sg));
  for (SampledGroup& sg : sample_scalar_lifts(
           lift, derive_seed(spec.seed, spec.id + ":scalar"),
           plan.of(by_p(spec, 25, 10)), st))
    pool.push_back(std::move(sg));
  for (SampledGroup& sg : sample_cyclic(
           lift, derive_seed(spec.seed, spec.id + ":cyc"),
           plan.of(by_p(spec, 30, 10)), st))
    pool.push_back(std::move(sg));
  for (SampledGroup& sg : sample_two_generator(
           lift, derive_seed(spec.seed, spec.id + ":rand"),
           plan.of(by_p(spec, 35, 12)), 12000, st))
    pool.push_back(std::move(sg));
  rep.coverage["pool"] = pool.size();
  rep.coverage["cap-skipped"] = st.cap_skipped;

  // 0 = det-excluded, 1 = fixed point present, 2 = local classes vanish,
  // 3 = flagged hit.
  std::vector<int> outcome_kind(pool.size(), -1);
  std::vector<std::string> hit_data(pool.size());
  const std::int64_t count = static_cast<std::int64_t>(pool.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const SampledGroup& sg = pool[i];
    if (!det_hypothesis(sg.group)) {
      outcome_kind[i] = 0;
      continue;
    }
    MatrixGroup g1 = reduction_split(sg.group).image;
    bool fixed = has_fixed_point_of_order_p(g1);
    CohomologyGroup lg = h1_loc(sg.group, full_module(lift));
    if (lg.invariants.empty()) {
      outcome_kind[i] = 2;
      continue;
    }
    if (fixed) {
      outcome_kind[i] = 1;
      continue;
    }
    outcome_kind[i] = 3;
    hit_data[i] = "surviving local classes " + invariants_str(lg.invariants) +
                  " without a fixed point of exact order p";
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ++rep.groups_tested;
    ++rep.coverage["family:" + pool[i].family];
    switch (outcome_kind[i]) {
      case 0: ++rep.coverage["det-hypothesis-excluded"]; break;
      case 1: ++rep.coverage["fixed-point-present"]; break;
      case 2: ++rep.coverage["h1loc-zero"]; break;
      case 3: {
        // A hit is recorded, flagged, and never asserted as a
        // contradiction: the sampled family is a superset of the
        // realizable groups, so the claim stays with the finding.
        ++rep.coverage["flagged-hits"];
        std::string gens;
        for (const std::string& s : literals(pool[i].generators)) {
          if (!gens.empty()) gens += "; ";
          gens += s;
        }
        rep.notes.push_back("possibly non-realizable: " + hit_data[i] +
                            " [" + gens + "]");
        break;
      }
      default: break;
    }
  }
  finalize(rep, plan);
  return rep;
}

using CheckFn = VerdictReport (*)(const CheckSpec&, const Plan&);

struct RegistryEntry {
  const char* id;
  CheckFn fn;
};

const RegistryEntry kRegistry[] = {
    {"lemma-2.3", check_scalar_vanishing},
    {"cor-2.4", check_gd_noncyclic},
    {"lemma-2.5", check_classification},
    {"lemma-2.6", check_dim_h},
    {"lemma-3.1", check_cyclic_formula},
    {"prop-3.2", check_prop_cyclic},
    {"prop-3.3", check_prop_noncyclic},
    {"thm-2.2", check_isogeny_contrapositive},
    {"main-thm-search", main_theorem_search},
};

}  // namespace

const std::vector<std::string>& check_registry() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const RegistryEntry& e : kRegistry) v.push_back(e.id);
    return v;
  }();
  return ids;
}

VerdictReport run_check(const CheckSpec& spec) {
  for (const RegistryEntry& e : kRegistry) {
    if (spec.id != e.id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Plan plan = make_plan(spec);
    VerdictReport rep = e.fn(spec, plan);
    rep.elapsed_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    GLCOH_CHECK((rep.verdict == "fail") == !rep.failures.empty(),
                "verdict fail exactly when failures exist");
    return rep;
  }
  throw UnknownCheck("no check is registered under id '" + spec.id + "'");
}

std::uint32_t default_check_level(const std::string& id) {
  bool known = false;
  for (const RegistryEntry& e : kRegistry)
    if (id == e.id) known = true;
  if (!known)
    throw UnknownCheck("no check is registered under id '" + id + "'");
  // Level-1 statements are about subgroups mod p (their reports still
  // exercise lifts); the rest inspect the mod-p^2 structure directly.
  return (id == "lemma-2.3" || id == "cor-2.4" || id == "thm-2.2") ? 1 : 2;
}

void set_worker_count(int workers) {
#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

std::vector<VerdictReport> run_all_checks(std::uint32_t p, std::uint64_t seed,
                                          double budget_secs, int workers) {
  set_worker_count(workers);
  std::vector<VerdictReport> out;
  for (const std::string& id : check_registry()) {
    CheckSpec spec;
    spec.id = id;
    spec.p = p;
    spec.n = default_check_level(id);
    spec.seed = seed;
    spec.budget_secs = budget_secs;
    out.push_back(run_check(spec));
  }
  return out;
}

int exit_status(const std::vector<VerdictReport>& reports) {
  bool inconclusive = false;
  for (const VerdictReport& r : reports) {
    if (r.verdict == "fail") return 1;
    if (r.verdict == "inconclusive-budget") inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace glcoh
