#pragma once

#include <string>
#include <vector>

#include "qmap/report.hpp"

namespace qmap {

struct Check {
  std::string suite, name;
  bool ok = false;
  std::string detail;
  bool informational = false;  // corrected variants of failing printed claims; not counted
};

// resultants, idempotence, census, exceptional, identities, structure, merges
const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown suite
std::vector<Check> run_suite(const std::string& name);
bool all_pass(const std::vector<Check>& checks);

struct FuzzFailure {
  std::string start;
  unsigned trial_seed = 0;
  std::string detail;
};
struct FuzzSummary {
  int trials = 0, stable = 0;
  std::vector<FuzzFailure> failures;
};
// reduces random affine conjugates of canonical_form(start); trial i uses seed * 1000003 + i
FuzzSummary fuzz_class(const AffineClass& start, unsigned seed, int count, const Policy& policy = {});
// start classes drawn uniformly from the 64 representatives and small family parameters
FuzzSummary fuzz_random(unsigned seed, int count, const Policy& policy = {});
// replays one trial
FuzzFailure fuzz_trial(const AffineClass& start, unsigned trial_seed, const Policy& policy, bool& ok);

}  // namespace qmap
