#pragma once

// The acceptance suite: every headline result this laboratory reproduces,
// each with its tolerance pinned in code. Shared by the acceptance test
// binary and the `reproduce-paper` CLI subcommand.

#include <iosfwd>
#include <string>
#include <vector>

#include "benford/common.hpp"

namespace benford {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values, thresholds
  double seconds = 0.0;
};

// Runs all criteria in order, streaming one PASS/FAIL line per criterion
// to `progress` (when non-null). `seed` drives the randomized property
// suites. `only` restricts to the listed criterion ids (empty: all).
std::vector<CriterionResult> run_acceptance(u64 seed, std::ostream* progress,
                                            const std::vector<int>& only = {});

}  // namespace benford
