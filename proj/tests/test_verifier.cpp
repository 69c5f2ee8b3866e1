#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "glcoh/errors.hpp"
#include "glcoh/verifier.hpp"

using namespace glcoh;

namespace {

CheckSpec spec_for(const std::string& id, std::uint32_t p, double budget,
                   std::uint64_t seed = 42) {
  CheckSpec s;
  s.id = id;
  s.p = p;
  s.n = default_check_level(id);
  s.seed = seed;
  s.budget_secs = budget;
  return s;
}

bool same_report(const VerdictReport& a, const VerdictReport& b) {
  if (a.groups_tested != b.groups_tested) return false;
  if (a.verdict != b.verdict) return false;
  if (a.notes != b.notes) return false;
  if (a.coverage != b.coverage) return false;
  if (a.failures.size() != b.failures.size()) return false;
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    if (a.failures[i].generators != b.failures[i].generators) return false;
    if (a.failures[i].data != b.failures[i].data) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("registry lists every statement check in run order") {
  const std::vector<std::string> expected = {
      "lemma-2.3", "cor-2.4",  "lemma-2.5", "lemma-2.6",      "lemma-3.1",
      "prop-3.2",  "prop-3.3", "thm-2.2",   "main-thm-search"};
  CHECK(check_registry() == expected);

  for (const std::string& id : check_registry()) {
    const std::uint32_t n = default_check_level(id);
    CHECK((n == 1 || n == 2));
  }
  // Statements about the residue field default to level one; statements
  // about lifts default to level two.
  CHECK(default_check_level("lemma-2.3") == 1);
  CHECK(default_check_level("cor-2.4") == 1);
  CHECK(default_check_level("thm-2.2") == 1);
  CHECK(default_check_level("lemma-3.1") == 2);
  CHECK(default_check_level("prop-3.2") == 2);
  CHECK(default_check_level("prop-3.3") == 2);
  CHECK(default_check_level("main-thm-search") == 2);
}

TEST_CASE("unknown ids are rejected") {
  CHECK_THROWS_AS(default_check_level("lemma-9.9"), UnknownCheck);
  CheckSpec bogus;
  bogus.id = "no-such-check";
  CHECK_THROWS_AS(run_check(bogus), UnknownCheck);
}

TEST_CASE("a full-budget run passes and reports its sampling") {
  set_worker_count(1);
  VerdictReport r = run_check(spec_for("lemma-3.1", 5, 60.0));
  CHECK(r.verdict == "pass");
  CHECK(r.failures.empty());
  CHECK(r.groups_tested > 0);
  CHECK(!r.coverage.empty());
  CHECK(!r.spec.family.empty());
  CHECK(r.elapsed_secs >= 0.0);
  CHECK(r.spec.id == "lemma-3.1");

  // The verdict depends on failures alone, never on notes.
  CHECK((r.verdict == "fail") == !r.failures.empty());
}

TEST_CASE("tight budgets shrink the plan deterministically") {
  VerdictReport full = run_check(spec_for("lemma-3.1", 5, 60.0));
  VerdictReport tight = run_check(spec_for("lemma-3.1", 5, 5.0));
  CHECK(tight.verdict == "inconclusive-budget");
  CHECK(tight.failures.empty());
  CHECK(tight.groups_tested > 0);
  CHECK(tight.groups_tested < full.groups_tested);

  // Same spec, same report: the budget is a plan parameter, not a clock.
  VerdictReport again = run_check(spec_for("lemma-3.1", 5, 5.0));
  CHECK(same_report(tight, again));
}

TEST_CASE("reports reproduce for a fixed seed") {
  VerdictReport a = run_check(spec_for("lemma-2.3", 5, 60.0));
  VerdictReport b = run_check(spec_for("lemma-2.3", 5, 60.0));
  CHECK(a.verdict == "pass");
  CHECK(same_report(a, b));

  VerdictReport other_seed = run_check(spec_for("lemma-2.3", 5, 60.0, 7));
  CHECK(other_seed.verdict == "pass");

  VerdictReport scal = run_check(spec_for("prop-3.2", 5, 60.0));
  CHECK(scal.verdict == "pass");
  CHECK(scal.failures.empty());
  VerdictReport scal2 = run_check(spec_for("prop-3.2", 5, 60.0));
  CHECK(same_report(scal, scal2));
}

TEST_CASE("exit status favors failure over exhaustion") {
  VerdictReport pass, fail, budget;
  pass.verdict = "pass";
  fail.verdict = "fail";
  fail.failures.push_back(FailureWitness{{"[[1,0],[0,1]] mod 5"}, "x", {}});
  budget.verdict = "inconclusive-budget";

  CHECK(exit_status({}) == 0);
  CHECK(exit_status({pass, pass}) == 0);
  CHECK(exit_status({pass, budget}) == 2);
  CHECK(exit_status({budget, fail, pass}) == 1);
  CHECK(exit_status({fail}) == 1);
}
