#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glcoh/cohomology.hpp"
#include "glcoh/sampling.hpp"

namespace glcoh {

// One runnable statement check. `budget_secs` shrinks the sampling plan
// deterministically (never a wall-clock cutoff): the plan is a pure
// function of (id, p, n, seed, budget), so reports are byte-reproducible.
struct CheckSpec {
  std::string id;
  std::uint32_t p = 5;
  std::uint32_t n = 1;
  std::string family;  // descriptor of the sampling plan, filled by the run
  std::uint64_t seed = 0;
  double budget_secs = 60.0;
};

struct FailureWitness {
  std::vector<std::string> generators;  // replayable literals
  std::string data;                     // computed values that broke the claim
  std::vector<std::uint64_t> group_key; // canonical sort key, not serialized
};

struct VerdictReport {
  CheckSpec spec;
  std::size_t groups_tested = 0;
  std::vector<FailureWitness> failures;   // sorted by canonical group key
  std::vector<std::string> notes;         // model-validation observations
  std::map<std::string, std::size_t> coverage;  // per-family / filter counts
  double elapsed_secs = 0.0;  // table output only, never serialized
  std::string verdict;        // "pass" | "fail" | "inconclusive-budget"
};

// Registry ids in canonical run order. Every statement check has exactly
// one id; `verify --all` runs the whole list.
const std::vector<std::string>& check_registry();

// Runs one check. Throws UnknownCheck if the id is not registered.
VerdictReport run_check(const CheckSpec& spec);

// The level (n = 1 or 2) a registered check inspects by default; the
// value echoed in its report. Throws UnknownCheck for unknown ids.
std::uint32_t default_check_level(const std::string& id);

// Caps the per-group parallelism for subsequent runs (0 = library default;
// no effect in a serial build).
void set_worker_count(int workers);

// Runs the whole registry with a shared root seed and per-check budget.
// `workers` caps the per-group parallelism (0 = library default).
std::vector<VerdictReport> run_all_checks(std::uint32_t p, std::uint64_t seed,
                                          double budget_secs, int workers);

// Overall exit status for a set of reports: 0 all pass, 1 any fail,
// 2 any inconclusive-budget (fail wins over inconclusive).
int exit_status(const std::vector<VerdictReport>& reports);

}  // namespace glcoh
